//! `f̂ = Ψ_f'` through Schwartz pairings, the operator calculus of `Ψ` and the
//! derivative formula.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result, Trap};
use crate::exponent::{ExponentFunction, IntervalUnion};
use crate::funcspace::{CatalogFunction, LineFunction, SchwartzFunction, Shape};
use crate::modular::modular;
use crate::psi::{psi, psi_growth, u_kernel};
use crate::quadrature::{integrate_improper_with, integrate_with, Envelope, QuadOptions, QuadratureResult};
use crate::scalar::{lit, Real};

/// Classical transform `∫ e^{-ist} f(t) dt`; only for integrable `f`.
pub fn classical_ft<T: Real>(f: &CatalogFunction<T>, s: T, tol: T) -> Result<Complex<T>> {
    if !f.is_l1() {
        return Err(Error::NotIntegrable("classical transform needs f in L¹".into()));
    }
    Ok(f.fourier_transform(s, tol)?.value)
}

/// `⟨f̂, φ⟩` computed two ways.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairingReport<T> {
    /// `-∫ Ψ_f(s) φ'(s) ds`
    pub lhs: Complex<T>,
    /// `∫ f(t) φ̂(t) dt`
    pub rhs: Complex<T>,
    pub abs_gap: T,
}

/// Largest `|t|` carrying envelope mass, a proxy for how fast `Ψ_f` and
/// `f̂` oscillate.
fn spread<T: Real>(env: &Envelope<T>) -> T {
    let (lo, hi) = env.hull();
    lo.abs().max(hi.abs())
}

fn phi_centers<T: Real>(phi: &SchwartzFunction<T>) -> T {
    phi.as_catalog()
        .terms()
        .iter()
        .map(|t| match t.shape {
            Shape::Gaussian { center, .. } | Shape::PolyGaussian { center, .. } => center.abs(),
            _ => T::zero(),
        })
        .fold(T::zero(), T::max)
}

/// `⟨f̂, φ⟩ = -∫ Ψ_f φ'` against `∫ f φ̂`.
pub fn schwartz_pairing<T: Real>(
    f: &CatalogFunction<T>,
    phi: &SchwartzFunction<T>,
    tol: T,
) -> Result<PairingReport<T>> {
    if f.is_zero() {
        let z = Complex::new(T::zero(), T::zero());
        return Ok(PairingReport {
            lhs: z,
            rhs: z,
            abs_gap: T::zero(),
        });
    }
    let half = tol * lit(0.5);
    let dphi = phi.derivative(1);
    let dphi_env = dphi.as_catalog().envelope();

    // Left side: |Ψ_f(s)| <= a|s| + b <= max(a, b)(1 + |s|).
    let (a, b) = psi_growth(f);
    let env = dphi_env.times_growth(a.max(b), T::one());
    let inner = half / (lit::<T>(4.0) * dphi_env.times_growth(T::one(), T::one()).total_mass());
    let trap = Trap::new();
    let opts = QuadOptions::new(half)
        .breakpoints([T::zero()])
        .frequency(spread(&f.envelope()) + dphi.as_catalog().max_frequency());
    let lhs = integrate_improper_with(
        |s: T| {
            let v = trap.catch(psi(f, s, inner).map(|r| r.value), Complex::new(T::zero(), T::zero()));
            -v * dphi.eval(s)
        },
        &env,
        T::neg_infinity(),
        T::infinity(),
        &opts,
    );
    let lhs = trap.finish(lhs)?.value;

    // Right side: |f φ̂| <= min(env_f sup|φ̂|, sup|f| env_φ̂).
    let fenv = f.envelope();
    let phat_env = phi
        .as_catalog()
        .fourier_envelope()
        .expect("Gaussian terms have transform envelopes");
    let a_env = fenv.scaled(phat_env.sup());
    let b_env = phat_env.scaled(fenv.sup());
    let env = if a_env.total_mass().is_finite() && a_env.total_mass() <= b_env.total_mass() {
        a_env
    } else {
        b_env
    };
    let opts = QuadOptions::new(half)
        .breakpoints(f.breakpoints())
        .frequency(f.max_frequency() + phi_centers(phi));
    let rhs = integrate_improper_with(
        |t: T| f.eval(t) * phi.fourier(t),
        &env,
        T::neg_infinity(),
        T::infinity(),
        &opts,
    )?
    .value;
    Ok(PairingReport {
        lhs,
        rhs,
        abs_gap: (lhs - rhs).norm(),
    })
}

/// Pairings against a whole test set, in parallel.
pub fn pairings<T: Real>(
    f: &CatalogFunction<T>,
    tests: &[SchwartzFunction<T>],
    tol: T,
) -> Result<Vec<PairingReport<T>>> {
    tests.par_iter().map(|phi| schwartz_pairing(f, phi, tol)).collect()
}

/// Both sides of one operator identity for `Ψ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityCheck<T> {
    /// `Ψ` of the transformed function, computed directly.
    pub direct: Complex<T>,
    /// The closed-form combination the identity predicts.
    pub formula: Complex<T>,
    pub abs_gap: T,
}

impl<T: Real> IdentityCheck<T> {
    fn new(direct: Complex<T>, formula: Complex<T>) -> Self {
        IdentityCheck {
            direct,
            formula,
            abs_gap: (direct - formula).norm(),
        }
    }
}

/// `Ψ_{τ_a f}(s)` against `(f * ũ_s)(-a) = ∫ f(y) u_s(y + a) dy`, with
/// `τ_a f(x) = f(x - a)`.
pub fn psi_translation<T: Real>(f: &CatalogFunction<T>, a: T, s: T, tol: T) -> Result<IdentityCheck<T>> {
    if f.has_power_tail() {
        return Err(Error::Unsupported(
            "translation identity is checked for integrable catalog terms only".into(),
        ));
    }
    let direct = psi(&f.translate(a), s, tol)?.value;
    let formula = if s == T::zero() {
        Complex::new(T::zero(), T::zero())
    } else {
        let env = f.envelope().scaled(s.abs());
        let opts = QuadOptions::new(tol)
            .breakpoints(f.breakpoints())
            .breakpoints([-a])
            .frequency(s.abs() + f.max_frequency());
        integrate_improper_with(
            |y: T| f.eval(y) * u_kernel(s, y + a),
            &env,
            T::neg_infinity(),
            T::infinity(),
            &opts,
        )?
        .value
    };
    Ok(IdentityCheck::new(direct, formula))
}

/// `Ψ_F(s)` for `F(t) = e^{iat} f(t)` against `Ψ_f(s - a) - Ψ_f(-a)`.
pub fn psi_modulation<T: Real>(f: &CatalogFunction<T>, a: T, s: T, tol: T) -> Result<IdentityCheck<T>> {
    let direct = psi(&f.modulate(a), s, tol)?.value;
    let formula = psi(f, s - a, tol)?.value - psi(f, -a, tol)?.value;
    Ok(IdentityCheck::new(direct, formula))
}

/// `Ψ_{f̃}(s)` against `-Ψ_f(-s)`.
pub fn psi_reflection<T: Real>(f: &CatalogFunction<T>, s: T, tol: T) -> Result<IdentityCheck<T>> {
    let direct = psi(&f.reflect(), s, tol)?.value;
    let formula = -psi(f, -s, tol)?.value;
    Ok(IdentityCheck::new(direct, formula))
}

/// `Ψ_g(s)` for `g(x) = f(ax + b)` against `sgn(a) Ψ_{τ_{-b} f}(s / a)`.
pub fn psi_dilation<T: Real>(f: &CatalogFunction<T>, a: T, b: T, s: T, tol: T) -> Result<IdentityCheck<T>> {
    if a == T::zero() {
        return Err(invalid("dilation needs a != 0"));
    }
    let direct = psi(&f.dilate(a, b)?, s, tol)?.value;
    let formula = psi(&f.translate(-b), s / a, tol)?.value * a.signum();
    Ok(IdentityCheck::new(direct, formula))
}

/// Kernel `n! / (i t^{n+1}) [1 - e^{-ist} Σ_{k<=n} (ist)^k / k!]`.
///
/// The bracket equals `e^{-ix} Σ_{j>n} (ix)^j / j!` with `x = st`, so near
/// zero the kernel is `n! i^n s^{n+1} e^{-ix} Σ_j (ix)^j / (n+1+j)!`, which
/// avoids the cancellation.
pub fn derivative_kernel<T: Real>(n: usize, s: T, t: T) -> Complex<T> {
    let x = s * t;
    let fact = |m: usize| (1..=m).fold(T::one(), |acc, k| acc * T::from_usize(k).unwrap());
    let nf = fact(n);
    let i = Complex::new(T::zero(), T::one());
    let ix = i * x;
    if x.abs() < lit::<T>(1e-3).max(T::from_usize(2 * n).unwrap()) {
        let mut term = Complex::new(T::one() / fact(n + 1), T::zero());
        let mut acc = term;
        for j in 1..80 {
            term = term * ix / T::from_usize(n + 1 + j).unwrap();
            acc = acc + term;
            if term.norm() < T::epsilon() * acc.norm() {
                break;
            }
        }
        return i.powi(n as i32) * s.powi(n as i32 + 1) * (-ix).exp() * acc * nf;
    }
    let mut partial = Complex::new(T::zero(), T::zero());
    let mut term = Complex::new(T::one(), T::zero());
    for k in 0..=n {
        if k > 0 {
            term = term * ix / T::from_usize(k).unwrap();
        }
        partial = partial + term;
    }
    let bracket = Complex::new(T::one(), T::zero()) - (-ix).exp() * partial;
    bracket * nf / (i * t.powi(n as i32 + 1))
}

/// `Ψ_{F^{(n)}}(s)` from the derivative formula, integrating against `F`.
pub fn psi_of_derivative<T: Real>(big_f: &CatalogFunction<T>, n: usize, s: T, tol: T) -> Result<QuadratureResult<T>> {
    if n == 0 {
        return Err(invalid("derivative order must be positive"));
    }
    // Each derivative must exist in closed form.
    let mut d = big_f.clone();
    for _ in 0..n {
        d = d.derivative()?;
    }
    if s == T::zero() || big_f.is_zero() {
        return Ok(QuadratureResult::zero());
    }
    // |kernel| <= |s|^{n+1} / (n+1)
    let bound = s.abs().powi(n as i32 + 1) / T::from_usize(n + 1).unwrap();
    let env = big_f.envelope().scaled(bound);
    let opts = QuadOptions::new(tol)
        .breakpoints(big_f.breakpoints())
        .breakpoints([T::zero()])
        .frequency(s.abs() + big_f.max_frequency());
    integrate_improper_with(
        |t: T| derivative_kernel(n, s, t) * big_f.eval(t),
        &env,
        T::neg_infinity(),
        T::infinity(),
        &opts,
    )
}

/// `f̂` as a line function, for the modular.
struct Transform<'a, T: Real> {
    f: &'a CatalogFunction<T>,
    env: Envelope<T>,
    tol: T,
}

impl<T: Real> LineFunction<T> for Transform<'_, T> {
    fn eval(&self, s: T) -> Complex<T> {
        self.f
            .fourier_transform(s, self.tol)
            .map(|r| r.value)
            .unwrap_or(Complex::new(T::nan(), T::nan()))
    }
    fn breakpoints(&self) -> Vec<T> {
        self.f.fourier_breakpoints()
    }
    fn envelope(&self) -> Envelope<T> {
        self.env.clone()
    }
    fn max_frequency(&self) -> T {
        spread(&self.f.envelope())
    }
}

/// Outcome of [`fhat_membership`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Membership<T> {
    /// `ρ_r(f̂)`, `∞` when the probe finds divergence.
    pub modular: T,
    /// Largest partial integral actually computed.
    pub partial: T,
    pub member: bool,
    /// True when the value is backed by a certified tail bound rather than
    /// the growth probe.
    pub certified: bool,
}

/// Decides `f̂ ∈ L^{r(·)}` through the modular `ρ_r(f̂)`.
///
/// For `1 < r_-`, `r_+ < ∞` the tail of `|f̂|` is bounded term by term
/// (`|f̂(s)| <= V f / |s|` for jumps) and the modular is certified. When
/// `r_- = 1` no such bound is summable, so partial integrals over dyadic
/// shells are compared: shells that stop shrinking mean divergence.
pub fn fhat_membership<T: Real>(f: &CatalogFunction<T>, r: &ExponentFunction<T>, tol: T) -> Result<Membership<T>> {
    if !f.is_l1() {
        return Err(Error::Hypothesis("f must be integrable".into()));
    }
    if !r.p_plus().is_finite() {
        return Err(Error::Hypothesis("membership needs r_+ < ∞".into()));
    }
    let env = f
        .fourier_envelope()
        .ok_or_else(|| Error::Unsupported("no bound on the transform of this function".into()))?;
    let fhat = Transform {
        f,
        env,
        tol: tol * lit(1e-2),
    };
    if r.p_minus() > T::one() {
        let m = match modular(&fhat, r, &IntervalUnion::line(), T::one(), tol) {
            Ok(m) => m,
            Err(e) if e.is_numerical() => return windowed_membership(&fhat, r, tol).map_err(|_| e),
            Err(e) => return Err(e),
        };
        if m.total.is_nan() {
            return Err(Error::NonConvergence {
                estimate_re: f64::NAN,
                estimate_im: 0.0,
                error: f64::INFINITY,
            });
        }
        return Ok(Membership {
            modular: m.total,
            partial: m.total,
            member: m.total.is_finite(),
            certified: true,
        });
    }
    shell_probe(&fhat, r, tol)
}

/// Window `[-R, R]` integrated directly plus a tail bound from the
/// envelope, for slowly oscillating transforms where the adaptive modular
/// cannot reach `tol`. The reported modular is an upper estimate.
fn windowed_membership<T: Real>(fhat: &Transform<'_, T>, r: &ExponentFunction<T>, tol: T) -> Result<Membership<T>> {
    let radius = lit::<T>(1024.0);
    let (rmin, rmax) = r.bounds_on(-T::infinity(), T::infinity());
    let bound = fhat.env.powf(rmin).plus(&fhat.env.powf(rmax));
    let tail = bound.right_tail(radius) + bound.left_tail(-radius);
    if !tail.is_finite() {
        return Err(Error::TailUnbounded {
            required_radius: f64::INFINITY,
        });
    }
    let integrand = |s: T| Complex::new(fhat.eval(s).norm().powf(r.eval(s)), T::zero());
    let opts = QuadOptions::new(tol)
        .breakpoints(fhat.breakpoints())
        .breakpoints(r.breakpoints())
        .frequency(fhat.max_frequency())
        .max_panels(1 << 18);
    let partial = integrate_with(integrand, -radius, radius, &opts)?.value.re;
    Ok(Membership {
        modular: partial + tail,
        partial,
        member: true,
        certified: true,
    })
}

fn shell_probe<T: Real>(fhat: &Transform<'_, T>, r: &ExponentFunction<T>, tol: T) -> Result<Membership<T>> {
    let integrand = |s: T| Complex::new(fhat.eval(s).norm().powf(r.eval(s)), T::zero());
    let freq = fhat.max_frequency();
    let shell = |lo: T, hi: T| -> Result<T> {
        let opts = QuadOptions::new(tol)
            .breakpoints(fhat.breakpoints())
            .frequency(freq)
            .max_panels(1 << 18);
        let right = integrate_with(integrand, lo, hi, &opts)?.value.re;
        let left = integrate_with(integrand, -hi, -lo, &opts)?.value.re;
        Ok(right + left)
    };
    let r0 = lit::<T>(8.0);
    let mut total = shell(T::zero(), r0)?;
    let mut incs = Vec::new();
    let mut lo = r0;
    for _ in 0..10 {
        let inc = shell(lo, lo * lit(2.0))?;
        total = total + inc;
        incs.push(inc);
        lo = lo * lit(2.0);
    }
    let ratios: Vec<T> = incs
        .windows(2)
        .map(|w| if w[0] > T::zero() { w[1] / w[0] } else { T::zero() })
        .collect();
    let last = &ratios[ratios.len() - 3..];
    let diverges = last.iter().all(|&q| q >= lit(0.9));
    if diverges {
        return Ok(Membership {
            modular: T::infinity(),
            partial: total,
            member: false,
            certified: false,
        });
    }
    let q = last.iter().copied().fold(T::zero(), T::max);
    let tail = *incs.last().unwrap() * q / (T::one() - q);
    Ok(Membership {
        modular: total + tail,
        partial: total,
        member: true,
        certified: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type C = CatalogFunction<f64>;

    fn gauss() -> C {
        C::gaussian(1.0, 0.0, 0.0).unwrap()
    }

    #[test]
    fn classical_examples() {
        assert!((classical_ft(&gauss(), 0.0, 1e-12).unwrap().re - PI.sqrt()).abs() < 1e-14);
        let ind = C::indicator(-1.0, 1.0).unwrap();
        assert!(classical_ft(&ind, PI, 1e-12).unwrap().norm() < 1e-14);
        assert!(classical_ft(&C::power_tail(0.75, 1.0).unwrap(), 1.0, 1e-9).is_err());
        let f = gauss().translate(0.7);
        let s = 1.3;
        let shifted = classical_ft(&gauss(), s, 1e-12).unwrap() * Complex::new(0.0, -0.7 * s).exp();
        assert!((classical_ft(&f, s, 1e-12).unwrap() - shifted).norm() < 1e-14);
    }

    #[test]
    fn gaussian_pairing() {
        let phi = SchwartzFunction::gaussian(1.0, 0.0, 0.0).unwrap();
        let r = schwartz_pairing(&gauss(), &phi, 1e-9).unwrap();
        let exact = 2.0 * PI / 5f64.sqrt();
        assert!((r.rhs.re - exact).abs() < 1e-8, "{:?}", r);
        assert!((r.lhs.re - exact).abs() < 1e-6, "{:?}", r);
        assert!(r.abs_gap < 1e-6);
        let z = schwartz_pairing(&C::zero(), &phi, 1e-9).unwrap();
        assert_eq!(z.abs_gap, 0.0);
    }

    #[test]
    fn fundamental_theorem() {
        let f = C::indicator(0.0, 1.0).unwrap().add(&gauss().modulate(0.5));
        let s = 0.8;
        let ft = classical_ft(&f, s, 1e-12).unwrap();
        let mut errs = Vec::new();
        for h in [1e-2, 1e-3] {
            let d = (psi(&f, s + h, 1e-13).unwrap().value - psi(&f, s - h, 1e-13).unwrap().value) / (2.0 * h);
            errs.push((d - ft).norm());
        }
        assert!(errs[0] < 1e-3 && errs[1] < errs[0] / 50.0, "{errs:?}");
    }

    #[test]
    fn operator_identities() {
        let f = C::indicator(0.0, 1.0)
            .unwrap()
            .add(&gauss().translate(0.3).scale_real(0.5));
        let tol = 1e-11;
        for s in [-2.0, 0.7, 3.1] {
            assert!(psi_translation(&f, 0.4, s, tol).unwrap().abs_gap < 1e-9);
            assert!(psi_modulation(&f, -1.2, s, tol).unwrap().abs_gap < 1e-9);
            assert!(psi_reflection(&f, s, tol).unwrap().abs_gap < 1e-9);
            assert!(psi_dilation(&f, -1.7, 0.25, s, tol).unwrap().abs_gap < 1e-9);
        }
        let m = psi_modulation(&f, 0.0, 1.5, tol).unwrap();
        assert!((m.direct - psi(&f, 1.5, tol).unwrap().value).norm() < 1e-12);
        let r = psi_dilation(&f, -1.0, 0.0, 1.5, tol).unwrap();
        let refl = psi_reflection(&f, 1.5, tol).unwrap();
        assert!((r.formula - refl.formula).norm() < 1e-9);
        assert!(psi_dilation(&f, 0.0, 0.0, 1.0, tol).is_err());
    }

    #[test]
    fn derivative_formula() {
        let g = gauss();
        let v = psi_of_derivative(&g, 1, 2.0, 1e-11).unwrap().value;
        let w = psi(&g.derivative().unwrap(), 2.0, 1e-11).unwrap().value;
        assert!((v - w).norm() < 1e-9);
        assert_eq!(psi_of_derivative(&g, 1, 0.0, 1e-9).unwrap().value.norm(), 0.0);
        let hat = C::hat(-1.0, 1.0).unwrap();
        let v = psi_of_derivative(&hat, 1, 1.3, 1e-11).unwrap().value;
        let w = psi(&hat.derivative().unwrap(), 1.3, 1e-11).unwrap().value;
        assert!((v - w).norm() < 1e-9);
        assert!(psi_of_derivative(&hat, 2, 1.0, 1e-9).is_err());
        // Second derivative of a Gaussian.
        let v = psi_of_derivative(&g, 2, 1.1, 1e-11).unwrap().value;
        let w = psi(&g.derivative().unwrap().derivative().unwrap(), 1.1, 1e-11)
            .unwrap()
            .value;
        assert!((v - w).norm() < 1e-9);
    }

    #[test]
    fn derivative_kernel_is_continuous_at_switch() {
        for n in 1..4 {
            let cut = (2 * n) as f64;
            let a = derivative_kernel(n, 1.0, cut * (1.0 - 1e-13));
            let b = derivative_kernel(n, 1.0, cut * (1.0 + 1e-13));
            assert!((a - b).norm() < 1e-11 * a.norm().max(1e-3), "{n}: {a} {b}");
        }
    }

    #[test]
    fn membership_examples() {
        let two = ExponentFunction::constant(2.0).unwrap();
        let g = fhat_membership(&gauss(), &two, 1e-8).unwrap();
        assert!(g.member && (g.modular - PI * (2.0 * PI).sqrt()).abs() < 1e-6, "{g:?}");
        let ind = C::indicator(-1.0, 1.0).unwrap();
        let m = fhat_membership(&ind, &two, 1e-4).unwrap();
        assert!(m.member && (m.modular - 4.0 * PI).abs() < 1e-3, "{m:?}");
        let one = ExponentFunction::constant(1.0).unwrap();
        let m = fhat_membership(&ind, &one, 1e-6).unwrap();
        assert!(!m.member && m.modular.is_infinite(), "{m:?}");
        // The hat decays like s^-2, so r ≡ 1 is fine.
        let m = fhat_membership(&C::hat(-1.0, 1.0).unwrap(), &one, 1e-8).unwrap();
        assert!(m.member && (m.modular - 2.0 * PI).abs() < 1e-2, "{m:?}");
    }
}
