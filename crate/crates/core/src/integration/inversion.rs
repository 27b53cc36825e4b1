//! `I_a[f] = f * ψ_a` and the norm of `f - I_a[f]` as `a → 0⁺`.

use num_complex::Complex;
use rayon::prelude::*;

use super::kernels::{Kernel, KernelFamily};
use super::{integral_fhat_g_line, spread};
use crate::error::{invalid, Error, Result};
use crate::exponent::ExponentFunction;
use crate::funcspace::{BvFunction, CatalogFunction, SampledFunction};
use crate::modular::luxemburg_norm;
use crate::quadrature::{integrate_improper_with, Envelope, EnvelopeTerm, QuadOptions};
use crate::scalar::{lit, to_f64, Real};

/// `sup ψ_a` and `c` with `ψ_a(u) <= c u^{-2}`.
fn kernel_bounds<T: Real>(k: &Kernel<T>) -> (T, T) {
    let a = k.a;
    let pi = T::PI();
    match k.family {
        KernelFamily::CesaroFejer => (T::one() / (T::TAU() * a), lit::<T>(2.0) * a / pi),
        KernelFamily::AbelPoisson => (T::one() / (pi * a), a / pi),
        // max u² e^{-u²/4a²} = 4a²/e
        KernelFamily::GaussWeierstrass => (
            T::one() / (lit::<T>(2.0) * a * pi.sqrt()),
            lit::<T>(2.0) * a / (T::E() * pi.sqrt()),
        ),
    }
}

/// Bound on `|f(y) ψ_a(x - y)|` as a function of `y`.
fn product_envelope<T: Real>(f_env: &Envelope<T>, k: &Kernel<T>, x: T) -> Envelope<T> {
    let (sup_k, c_k) = kernel_bounds(k);
    let two = lit::<T>(2.0);
    let terms = f_env
        .terms
        .iter()
        .map(|t| match *t {
            EnvelopeTerm::Compact { lo, hi, bound } => EnvelopeTerm::Compact {
                lo,
                hi,
                bound: bound * sup_k,
            },
            EnvelopeTerm::Gaussian { scale, rate, center } => EnvelopeTerm::Gaussian {
                scale: scale * sup_k,
                rate,
                center,
            },
            EnvelopeTerm::Exponential { scale, rate, center } => EnvelopeTerm::Exponential {
                scale: scale * sup_k,
                rate,
                center,
            },
            // Beyond 2|x - center| the kernel factor is at most 4c / |y - center|².
            EnvelopeTerm::Power {
                scale,
                alpha,
                center,
                from,
                near,
            } => {
                let r = from.max(two * (x - center).abs()).max(T::one());
                EnvelopeTerm::Power {
                    scale: scale * lit::<T>(4.0) * c_k,
                    alpha: alpha + two,
                    center,
                    from: r,
                    near: near.max(scale * from.powf(-alpha)) * sup_k,
                }
            }
        })
        .collect();
    Envelope::new(terms)
}

/// `(f * ψ_a)(x) = ∫ f(y) ψ_a(x - y) dy`.
pub fn convolution_value<T: Real>(f: &CatalogFunction<T>, kernel: &Kernel<T>, x: T, tol: T) -> Result<Complex<T>> {
    if f.is_zero() {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    let env = product_envelope(&f.envelope(), kernel, x);
    let a = kernel.a;
    let mut pts = f.breakpoints();
    for m in [0.0, 1.0, -1.0, 4.0, -4.0, 16.0, -16.0] {
        pts.push(x + a * lit(m));
    }
    let opts = QuadOptions::new(tol)
        .breakpoints(pts)
        .frequency(f.max_frequency() + kernel.frequency());
    let r = integrate_improper_with(
        |y: T| f.eval(y) * kernel.psi(x - y),
        &env,
        T::neg_infinity(),
        T::infinity(),
        &opts,
    )?;
    Ok(r.value)
}

/// `∫ e^{ixs} K_a(s) f̂(s) ds`, computed as a line integral of `f̂` against
/// the weight `e^{ixs} K_a(s)`.
pub fn spectral_value<T: Real>(
    f: &CatalogFunction<T>,
    kernel: &Kernel<T>,
    x: T,
    p: &ExponentFunction<T>,
    tol: T,
) -> Result<Complex<T>> {
    let g = BvFunction::Catalog(kernel.modulated_multiplier(x)?);
    Ok(integral_fhat_g_line(f, &g, p, tol)?.value)
}

/// `I_a[f]` on a grid, both ways.
#[derive(Clone, Debug, PartialEq)]
pub struct InversionStep<T> {
    pub family: KernelFamily,
    pub a: T,
    pub x_grid: Vec<T>,
    /// `f * ψ_a`, the returned values.
    pub convolution: Vec<Complex<T>>,
    pub spectral: Vec<Complex<T>>,
    pub max_gap: T,
}

pub fn inversion_step<T: Real>(
    f: &CatalogFunction<T>,
    kernel: &Kernel<T>,
    x_grid: &[T],
    p: &ExponentFunction<T>,
    tol: T,
) -> Result<InversionStep<T>> {
    let pairs: Vec<(Complex<T>, Complex<T>)> = x_grid
        .par_iter()
        .map(|&x| {
            Ok((
                convolution_value(f, kernel, x, tol)?,
                spectral_value(f, kernel, x, p, tol)?,
            ))
        })
        .collect::<Result<_>>()?;
    let max_gap = pairs.iter().fold(T::zero(), |m, (c, s)| m.max((*c - *s).norm()));
    Ok(InversionStep {
        family: kernel.family,
        a: kernel.a,
        x_grid: x_grid.to_vec(),
        convolution: pairs.iter().map(|p| p.0).collect(),
        spectral: pairs.iter().map(|p| p.1).collect(),
        max_gap,
    })
}

/// Outer edge of the sampling grid for the difference.
const FAR: f64 = 1e4;

/// Nodes for sampling `f - f * ψ_a` at refinement `level`: a uniform core
/// with a doubled node at each jump of `f`, then a geometric outer grid.
fn difference_nodes<T: Real>(f: &CatalogFunction<T>, a: T, level: u32) -> Result<(Vec<T>, Vec<T>)> {
    let env = f.envelope();
    let reach = env
        .truncate(lit(1e-10), T::neg_infinity(), T::infinity())
        .map(|(lo, hi)| lo.abs().max(hi.abs()))
        .unwrap_or_else(|_| spread(&env))
        .min(lit(FAR * 0.5));
    let core = (reach + lit::<T>(12.0) * a).max(T::one());
    let refine = lit::<T>(2.0).powi(level as i32);
    let h = (a.min(T::one()) / lit(40.0)) / refine;
    let n = (core / h).ceil();
    let n_us = to_f64(n) as usize;
    if n_us > 5_000_000 {
        return Err(invalid("inversion grid too fine for this kernel scale"));
    }
    let h = core / n;
    let mut xs: Vec<T> = (0..=2 * n_us).map(|i| -core + h * T::from_usize(i).unwrap()).collect();
    let ratio = T::one() + lit::<T>(0.04) / refine;
    let mut r = core * ratio;
    while r < lit(FAR) {
        xs.push(r);
        xs.push(-r);
        r = r * ratio;
    }
    let jumps: Vec<T> = f
        .breakpoints()
        .into_iter()
        .filter(|&b| {
            let eps = lit::<T>(1e-9) * (T::one() + b.abs());
            (f.eval(b) - f.eval(b - eps)).norm() > lit(1e-6)
        })
        .collect();
    xs.retain(|x| !jumps.contains(x));
    xs.extend(jumps.iter().copied());
    xs.extend(jumps.iter().copied());
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok((xs, jumps))
}

/// `f - f * ψ_a` sampled at `level`.
fn sampled_difference<T: Real>(
    f: &CatalogFunction<T>,
    kernel: &Kernel<T>,
    level: u32,
    tol: T,
) -> Result<SampledFunction<T>> {
    let (xs, jumps) = difference_nodes(f, kernel.a, level)?;
    let conv: Vec<Complex<T>> = xs
        .par_iter()
        .map(|&x| convolution_value(f, kernel, x, tol))
        .collect::<Result<_>>()?;
    // At a doubled node the first copy carries the left limit of f.
    let mut ys = Vec::with_capacity(xs.len());
    for i in 0..xs.len() {
        let x = xs[i];
        let first_of_pair = i + 1 < xs.len() && xs[i + 1] == x && jumps.contains(&x);
        let fx = if first_of_pair {
            f.eval(x - lit::<T>(1e-12) * (T::one() + x.abs()))
        } else {
            f.eval(x)
        };
        ys.push(fx - conv[i]);
    }
    let (_, c_k) = kernel_bounds(kernel);
    let mass = f.envelope().total_mass().min(lit(1e300));
    let tail = f.envelope().plus(&Envelope::new(vec![EnvelopeTerm::Power {
        scale: lit::<T>(4.0) * c_k * mass,
        alpha: lit(2.0),
        center: T::zero(),
        from: lit(FAR),
        near: T::zero(),
    }]));
    Ok(SampledFunction::new(xs, ys)?.with_tail(tail))
}

/// `‖f - f * ψ_a‖_{p(·)}` on grids refined until two successive levels
/// agree within 5%. Returns the norm and the number of levels used.
pub fn difference_norm<T: Real>(
    f: &CatalogFunction<T>,
    kernel: &Kernel<T>,
    p: &ExponentFunction<T>,
    tol: T,
) -> Result<(T, u32)> {
    if f.is_zero() {
        return Ok((T::zero(), 0));
    }
    let inner = (tol * lit(1e-2)).max(lit(1e-12));
    let norm_at = |level: u32| -> Result<T> {
        let d = sampled_difference(f, kernel, level, inner)?;
        Ok(luxemburg_norm(&d, p, tol)?.value)
    };
    let mut prev = norm_at(0)?;
    for level in 1..=3 {
        let next = norm_at(level)?;
        let rel = (next - prev).abs() / next.abs().max(lit(1e-300));
        if rel < lit(0.05) {
            return Ok((next, level + 1));
        }
        prev = next;
    }
    Err(Error::NonConvergence {
        estimate_re: to_f64(prev),
        estimate_im: 0.0,
        error: 0.05,
    })
}

/// Closed-form `‖e^{-x²} - e^{-x²} * ψ_a‖_2` for the Gauss–Weierstrass
/// kernel, where the convolution is `e^{-x²/b}/√b` with `b = 1 + 4a²`.
pub fn gauss_weierstrass_gaussian_norm<T: Real>(a: T) -> T {
    let pi = T::PI();
    let two = lit::<T>(2.0);
    let b = T::one() + lit::<T>(4.0) * a * a;
    let sq = (pi / two).sqrt() + (pi / (two * b)).sqrt() - two * (pi / (b + T::one())).sqrt();
    sq.max(T::zero()).sqrt()
}

#[derive(Clone, Debug, PartialEq)]
pub struct InversionTrace<T> {
    pub family: KernelFamily,
    pub a_sequence: Vec<T>,
    /// `‖f - I_a[f]‖_{p(·)}` per `a`.
    pub norms: Vec<T>,
    /// `‖f‖_{p(·)}`.
    pub f_norm: T,
    /// Grid levels used per `a`.
    pub levels: Vec<u32>,
}

impl<T: Real> InversionTrace<T> {
    pub fn is_strictly_decreasing(&self) -> bool {
        self.norms.windows(2).all(|w| w[1] < w[0])
    }

    /// Strictly decreasing over the last `⌊n/2⌋ + 1` values (at least two).
    pub fn is_eventually_decreasing(&self) -> bool {
        let n = self.norms.len();
        if n < 2 {
            return true;
        }
        let k = (n / 2 + 1).max(2).min(n);
        self.norms[n - k..].windows(2).all(|w| w[1] < w[0])
    }

    pub fn final_norm(&self) -> T {
        self.norms.last().copied().unwrap_or(T::zero())
    }

    /// `final_norm / ‖f‖`, or 0 for `f = 0`.
    pub fn final_ratio(&self) -> T {
        if self.f_norm > T::zero() {
            self.final_norm() / self.f_norm
        } else {
            T::zero()
        }
    }
}

/// Norms of `f - I_a[f]` along a strictly decreasing sequence of scales,
/// evaluated concurrently.
pub fn inversion_run<T: Real>(
    f: &CatalogFunction<T>,
    family: KernelFamily,
    a_sequence: &[T],
    p: &ExponentFunction<T>,
    tol: T,
) -> Result<InversionTrace<T>> {
    if a_sequence.is_empty() {
        return Err(invalid("empty scale sequence"));
    }
    if a_sequence.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(invalid("scale sequence must be strictly decreasing"));
    }
    if p.p_plus().is_infinite() && p.check_lh1().is_none() {
        return Err(Error::Hypothesis(
            "inversion needs p_+ < ∞ or 1/p log-Hölder at infinity".into(),
        ));
    }
    let kernels = a_sequence
        .iter()
        .map(|&a| Kernel::new(family, a))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<(T, u32)> = kernels
        .par_iter()
        .map(|k| difference_norm(f, k, p, tol))
        .collect::<Result<_>>()?;
    let f_norm = if f.is_zero() {
        T::zero()
    } else {
        luxemburg_norm(f, p, tol)?.value
    };
    Ok(InversionTrace {
        family,
        a_sequence: a_sequence.to_vec(),
        norms: rows.iter().map(|r| r.0).collect(),
        f_norm,
        levels: rows.iter().map(|r| r.1).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss() -> CatalogFunction<f64> {
        CatalogFunction::gaussian(1.0, 0.0, 0.0).unwrap()
    }

    #[test]
    fn gaussian_convolution_closed_form() {
        let f = gauss();
        for a in [1.0, 0.3] {
            let k = Kernel::new(KernelFamily::GaussWeierstrass, a).unwrap();
            let b: f64 = 1.0 + 4.0 * a * a;
            for x in [0.0, 0.8, -2.0] {
                let v = convolution_value(&f, &k, x, 1e-12).unwrap();
                let want = (-x * x / b).exp() / b.sqrt();
                assert!((v.re - want).abs() < 1e-11, "{a} {x}: {} vs {want}", v.re);
            }
        }
    }

    #[test]
    fn spectral_matches_convolution() {
        let p = ExponentFunction::constant(2.0).unwrap();
        let fs = [gauss(), CatalogFunction::indicator(-1.0, 1.0).unwrap()];
        for f in &fs {
            for fam in KernelFamily::ALL {
                for a in [1.0, 0.1] {
                    let k = Kernel::new(fam, a).unwrap();
                    let step = inversion_step(f, &k, &[0.0, 0.5, 1.7], &p, 1e-8).unwrap();
                    assert!(step.max_gap <= 1e-5, "{fam} a={a}: gap {}", step.max_gap);
                }
            }
        }
    }

    #[test]
    fn poisson_at_continuity_point() {
        let f = CatalogFunction::indicator(-1.0, 1.0).unwrap();
        let mut last = 0.0;
        for a in [0.5f64, 0.1, 0.01, 0.001] {
            let k = Kernel::new(KernelFamily::AbelPoisson, a).unwrap();
            let v = convolution_value(&f, &k, 0.0, 1e-12).unwrap().re;
            // ∫_{-1}^{1} a / (π (a² + y²)) dy = (2/π) atan(1/a)
            let want = 2.0 / std::f64::consts::PI * (1.0 / a).atan();
            assert!((v - want).abs() < 1e-10);
            assert!(v > last);
            last = v;
        }
        assert!((1.0 - last) < 1e-3);
    }

    #[test]
    fn gaussian_difference_norm() {
        let f = gauss();
        let p = ExponentFunction::constant(2.0).unwrap();
        for a in [1.0, 0.25] {
            let k = Kernel::new(KernelFamily::GaussWeierstrass, a).unwrap();
            let (n, _) = difference_norm(&f, &k, &p, 1e-8).unwrap();
            let want = gauss_weierstrass_gaussian_norm(a);
            assert!((n - want).abs() < 1e-4, "a={a}: {n} vs {want}");
        }
    }

    #[test]
    fn zero_function_and_bad_sequences() {
        let p = ExponentFunction::constant(2.0).unwrap();
        let t = inversion_run(
            &CatalogFunction::zero(),
            KernelFamily::CesaroFejer,
            &[1.0, 0.5],
            &p,
            1e-6,
        )
        .unwrap();
        assert_eq!(t.norms, vec![0.0, 0.0]);
        assert!(inversion_run(&gauss(), KernelFamily::CesaroFejer, &[0.5, 1.0], &p, 1e-6).is_err());
        assert!(inversion_run(&gauss(), KernelFamily::CesaroFejer, &[], &p, 1e-6).is_err());
    }

    #[test]
    fn eventually_decreasing_suffix() {
        let t = InversionTrace {
            family: KernelFamily::CesaroFejer,
            a_sequence: vec![1.0, 0.5, 0.25, 0.125, 0.0625],
            norms: vec![0.3, 0.4, 0.35, 0.2, 0.1],
            f_norm: 1.0,
            levels: vec![1; 5],
        };
        assert!(t.is_eventually_decreasing());
        assert!(!t.is_strictly_decreasing());
        let mut u = t.clone();
        u.norms = vec![0.3, 0.2, 0.1, 0.2, 0.05];
        assert!(!u.is_eventually_decreasing());
    }
}
