//! Integrals of `f̂` against weights of bounded variation, the exchange
//! formulas and inversion in norm.

mod inversion;
mod kernels;

pub use inversion::{
    convolution_value, difference_norm, gauss_weierstrass_gaussian_norm, inversion_run, inversion_step, spectral_value,
    InversionStep, InversionTrace,
};
pub use kernels::{Kernel, KernelFamily};

use num_complex::Complex;

use crate::error::{invalid, Error, Result, Trap};
use crate::exponent::ExponentFunction;
use crate::funcspace::{BvFunction, CatalogFunction};
use crate::modular::luxemburg_norm;
use crate::psi::{exchange_constants, growth_envelope, psi, ExchangeConstants, Regime};
use crate::quadrature::{
    integrate_improper_with, integrate_with, stieltjes_with, Envelope, QuadOptions, QuadratureResult, StieltjesWeight,
};
use crate::scalar::{lit, to_f64, Real};

fn zero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// Largest `|t|` where `f` carries envelope mass.
pub(crate) fn spread<T: Real>(env: &Envelope<T>) -> T {
    let (lo, hi) = env.hull();
    lo.abs().max(hi.abs())
}

/// `∫_a^b Ψ_f dg` with `Ψ_f` evaluated to `inner` at every node.
fn psi_stieltjes<T: Real>(
    f: &CatalogFunction<T>,
    g: &BvFunction<T>,
    a: T,
    b: T,
    inner: T,
    tol: T,
) -> Result<QuadratureResult<T>> {
    let trap = Trap::new();
    let opts = QuadOptions::new(tol).frequency(spread(&f.envelope()) + g.max_frequency());
    let r = stieltjes_with(
        |s: T| trap.catch(psi(f, s, inner).map(|r| r.value), zero()),
        g,
        a,
        b,
        &opts,
    );
    trap.finish(r)
}

/// Tolerance for each `Ψ_f` evaluation so that the summed error against a
/// weight of variation `v` stays below `tol`.
fn inner_tol<T: Real>(tol: T, v: T) -> T {
    let v = if v.is_finite() { v } else { lit(1e6) };
    (tol / (lit::<T>(4.0) * (v + T::one()))).max(lit(1e-15))
}

/// `∫_a^b f̂ g = Ψ_f(b) g(b) - Ψ_f(a) g(a) - ∫_a^b Ψ_f dg`.
pub fn integral_fhat_g_finite<T: Real>(
    f: &CatalogFunction<T>,
    g: &BvFunction<T>,
    a: T,
    b: T,
    tol: T,
) -> Result<QuadratureResult<T>> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(invalid("finite integral needs -∞ < a < b < ∞"));
    }
    if f.is_zero() {
        return Ok(QuadratureResult::zero());
    }
    let v = g.variation_moment_in(T::zero(), T::zero(), a.abs().max(b.abs()) + T::one(), tol)?;
    let inner = inner_tol(tol, v);
    let pb = psi(f, b, inner)?;
    let pa = psi(f, a, inner)?;
    let body = psi_stieltjes(f, g, a, b, inner, tol * lit(0.5))?;
    let value = pb.value * g.eval(b) - pa.value * g.eval(a) - body.value;
    Ok(QuadratureResult {
        value,
        error_estimate: body.error_estimate + (pb.error_estimate + pa.error_estimate) * g.sup_bound(),
        evaluations: body.evaluations + pa.evaluations + pb.evaluations,
    })
}

/// How the discarded tail of a two-sided integral was bounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailCertificate {
    /// `sup |g| · ∫_{|s|>T} |f̂|`, for integrable `f`.
    Spectral,
    /// The growth bound on `|Ψ_f|` against `|dg|` beyond `T`.
    Growth,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineIntegral<T> {
    pub value: Complex<T>,
    /// Quadrature error plus the certified tail.
    pub error_estimate: T,
    /// Truncation radius `T`.
    pub radius: T,
    pub certificate: TailCertificate,
}

/// Checks `|g(x)| |x|^{1/p_-} → 0`, returning a witness where the product is
/// largest on a logarithmic probe when it fails.
fn check_line_growth<T: Real>(g: &BvFunction<T>, p: &ExponentFunction<T>) -> Result<()> {
    let need = T::one() / p.p_minus();
    let beta = g.decay_exponent();
    if beta > need {
        return Ok(());
    }
    let mut worst = (T::one(), T::zero());
    for i in 0..=40 {
        let x = lit::<T>(10.0).powf(T::from_usize(i).unwrap() * lit(0.25));
        for side in [x, -x] {
            let v = g.eval(side).norm() * x.powf(need);
            if v > worst.1 {
                worst = (side, v);
            }
        }
    }
    Err(Error::Growth {
        witness: to_f64(worst.0),
        detail: format!(
            "g decays like |x|^-{} but |g(x)| |x|^(1/p_-) must vanish with 1/p_- = {}",
            beta, need
        ),
    })
}

/// `∫_{-∞}^∞ f̂ g = -∫ Ψ_f dg` for `g` with `|g(x)| |x|^{1/p_-} → 0`.
///
/// The integral is taken over `[-T, T]` and the rest is bounded either
/// spectrally or through the growth of `Ψ_f`; the smaller `T` wins.
pub fn integral_fhat_g_line<T: Real>(
    f: &CatalogFunction<T>,
    g: &BvFunction<T>,
    p: &ExponentFunction<T>,
    tol: T,
) -> Result<LineIntegral<T>> {
    check_line_growth(g, p)?;
    let (lim_l, lim_r) = g.limits();
    if lim_l.norm() > T::zero() || lim_r.norm() > T::zero() {
        return Err(Error::Hypothesis("g must vanish at ±∞".into()));
    }
    if f.is_zero() {
        return Ok(LineIntegral {
            value: zero(),
            error_estimate: T::zero(),
            radius: T::zero(),
            certificate: TailCertificate::Spectral,
        });
    }
    let quarter = tol * lit(0.25);
    let far_jump = g.jumps().iter().fold(T::zero(), |m, (x, _)| m.max(x.abs()));

    // Spectral tail: f integrable with a bound on f̂.
    let spectral = if f.is_l1() {
        f.fourier_envelope().and_then(|env| {
            let sup_g = g.sup_bound().max(lit(1e-300));
            env.truncate(quarter / sup_g, T::neg_infinity(), T::infinity())
                .ok()
                .map(|(lo, hi)| lo.abs().max(hi.abs()).max(T::one()))
        })
    } else {
        None
    };
    // Growth tail: |Ψ_f(s)| <= c (1 + |s|)^k against the density of g.
    let growth = match (g.density_envelope(), luxemburg_norm(f, p, T::default_norm_tol())) {
        (Some(denv), Ok(n)) if n.value.is_finite() => {
            let (c, k) = growth_envelope(p, n.value)?;
            denv.times_growth(c, k)
                .truncate(quarter, T::neg_infinity(), T::infinity())
                .ok()
                .map(|(lo, hi)| lo.abs().max(hi.abs()).max(far_jump + T::one()))
        }
        _ => None,
    };
    let (radius, certificate) = match (spectral, growth) {
        (Some(a), Some(b)) if b < a => (b, TailCertificate::Growth),
        (Some(a), _) => (a, TailCertificate::Spectral),
        (None, Some(b)) => (b, TailCertificate::Growth),
        (None, None) => {
            return Err(Error::Unsupported(
                "no certified tail bound: f̂ has no envelope and g has no derivative bound".into(),
            ))
        }
    };
    let v = g.variation_moment_in(T::zero(), T::zero(), radius, tol)?;
    let inner = inner_tol(tol, v);
    let body = psi_stieltjes(f, g, -radius, radius, inner, quarter)?;
    let (value, boundary_err) = match certificate {
        TailCertificate::Spectral => {
            let pr = psi(f, radius, inner)?;
            let pl = psi(f, -radius, inner)?;
            let v = pr.value * g.eval(radius) - pl.value * g.eval(-radius) - body.value;
            (v, (pr.error_estimate + pl.error_estimate) * g.sup_bound())
        }
        TailCertificate::Growth => (-body.value, T::zero()),
    };
    Ok(LineIntegral {
        value,
        error_estimate: body.error_estimate + boundary_err + quarter,
        radius,
        certificate,
    })
}

/// `∫_0^a f̂ g = Ψ_f(a) g(a) - ∫_0^a Ψ_f dg` for `g = o(x^{-1/p_+})` as
/// `x → 0⁺` (`o(x^{-1})` when `1/p` is log-Hölder at infinity with limit 1).
pub fn integral_fhat_g_halfline<T: Real>(
    f: &CatalogFunction<T>,
    g: &BvFunction<T>,
    a: T,
    p: &ExponentFunction<T>,
    tol: T,
) -> Result<QuadratureResult<T>> {
    if !(a > T::zero() && a.is_finite()) {
        return Err(invalid("half-line integral needs a finite a > 0"));
    }
    // Small-s growth of Ψ_f: |s| under lh1, |s|^{1/p_+} otherwise.
    let psi_power = if p.lh1_constant().is_some() {
        T::one()
    } else if p.p_plus().is_finite() {
        T::one() / p.p_plus()
    } else {
        return Err(Error::Hypothesis("need p_+ < ∞ or 1/p log-Hölder at infinity".into()));
    };
    let beta = g.small_x_exponent();
    if !(beta > -psi_power) {
        return Err(Error::Growth {
            witness: 0.0,
            detail: format!("g grows like x^{} at 0⁺; need o(x^-{})", beta, psi_power),
        });
    }
    if f.is_zero() {
        return Ok(QuadratureResult::zero());
    }
    // Integrand Ψ_f(s) g'(s) ~ s^γ near 0; s = a v^m with m = 1/(1 + γ)
    // leaves a bounded integrand in v.
    let gamma = (psi_power + beta - T::one()).min(T::zero());
    let m = T::one() / (T::one() + gamma);
    let v = g
        .variation_moment_in(T::zero(), T::zero(), a + T::one(), tol)
        .unwrap_or(T::infinity());
    let inner = inner_tol(tol, v);
    let trap = Trap::new();
    let bps: Vec<T> = StieltjesWeight::breakpoints(g)
        .into_iter()
        .chain(g.jumps().into_iter().map(|j| j.0))
        .filter(|&x| x > T::zero() && x < a)
        .map(|x| (x / a).powf(T::one() / m))
        .collect();
    let opts = QuadOptions::new(tol * lit(0.5))
        .breakpoints(bps)
        .frequency(spread(&f.envelope()) * a + g.max_frequency() * a);
    let smooth = integrate_with(
        |v: T| {
            let s = a * v.powf(m);
            let jac = a * m * v.powf(m - T::one());
            let ps = trap.catch(psi(f, s, inner).map(|r| r.value), zero());
            ps * g.density(s) * jac
        },
        T::zero(),
        T::one(),
        &opts,
    );
    let smooth = trap.finish(smooth)?;
    let mut jumps = zero();
    for (x, j) in g.jumps() {
        if x > T::zero() && x <= a {
            jumps = jumps + psi(f, x, inner)?.value * j;
        }
    }
    let pa = psi(f, a, inner)?;
    Ok(QuadratureResult {
        value: pa.value * g.eval(a) - smooth.value - jumps,
        error_estimate: smooth.error_estimate + pa.error_estimate * g.sup_bound(),
        evaluations: smooth.evaluations + pa.evaluations,
    })
}

/// Both sides of the exchange formula and the displayed inequality.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExchangeReport<T> {
    /// `∫ f̂ g`
    pub lhs: Complex<T>,
    /// `∫ f ĝ`
    pub rhs: Complex<T>,
    pub abs_gap: T,
    /// `‖f‖ (K1 ∫_{|s|<=M} |s|^{1/r} |dg| + K2 ∫_{|s|>M} |s|^{1/p_-} |dg|)`
    pub bound_rhs: T,
    /// `∫ |s|^{1/p_-} |dg|`
    pub moment: T,
    pub f_norm: T,
    pub constants: ExchangeConstants<T>,
    pub pass: bool,
}

/// Upper bound on `|ĝ|` usable for tail truncation: `‖g‖₁` when finite,
/// otherwise `V g`, which bounds `|ĝ(s)|` for `|s| >= 1`.
fn transform_sup<T: Real>(g: &BvFunction<T>, tol: T) -> Result<T> {
    let l1 = g.value_envelope().map(|e| e.total_mass()).unwrap_or(T::infinity());
    if l1.is_finite() {
        return Ok(l1);
    }
    g.total_variation(tol)
}

fn transform_breakpoints<T: Real>(g: &BvFunction<T>) -> Vec<T> {
    let mut b = vec![T::zero()];
    if let BvFunction::Catalog(c) = g {
        b.extend(c.fourier_breakpoints());
    }
    b
}

/// `∫ f(s) ĝ(s) ds`.
fn pairing_with_transform<T: Real>(f: &CatalogFunction<T>, g: &BvFunction<T>, tol: T) -> Result<Complex<T>> {
    let sup = transform_sup(g, tol)?;
    let env = f.envelope().scaled(sup);
    let trap = Trap::new();
    let inner = (tol / (lit::<T>(4.0) * f.envelope().total_mass().max(T::one()))).max(lit(1e-15));
    let opts = QuadOptions::new(tol)
        .breakpoints(f.breakpoints())
        .breakpoints(transform_breakpoints(g))
        .frequency(f.max_frequency() + T::one());
    let r = integrate_improper_with(
        |s: T| f.eval(s) * trap.catch(g.fourier_transform(s, inner).map(|r| r.value), zero()),
        &env,
        T::neg_infinity(),
        T::infinity(),
        &opts,
    );
    Ok(trap.finish(r)?.value)
}

/// `∫ f̂ g` against `∫ f ĝ`, plus the inequality
/// `|∫ f̂ g| <= ‖f‖ (K1 ∫_{|s|<=M} |s|^{1/r} |dg| + K2 ∫_{|s|>M} |s|^{1/p_-} |dg|)`.
pub fn exchange_check<T: Real>(
    f: &CatalogFunction<T>,
    g: &BvFunction<T>,
    p: &ExponentFunction<T>,
    tol: T,
) -> Result<ExchangeReport<T>> {
    let (l, r) = g.limits();
    if l.norm() > T::zero() || r.norm() > T::zero() {
        return Err(Error::Hypothesis("g must vanish at ±∞".into()));
    }
    let pm = p.p_minus();
    let moment = g.variation_moment(T::one() / pm, tol)?;
    if !moment.is_finite() {
        return Err(Error::Hypothesis("∫ |s|^{1/p_-} |dg(s)| diverges".into()));
    }
    let regime = Regime::select(p)?;
    let constants = exchange_constants(p, regime)?;
    let f_norm = luxemburg_norm(f, p, T::default_norm_tol())?.value;
    if !f_norm.is_finite() {
        return Err(Error::Hypothesis("f is not in L^p(·)".into()));
    }
    let near = g.variation_moment_in(T::one() / constants.r, T::zero(), constants.m, tol)?;
    let far = g.variation_moment_in(T::one() / pm, constants.m, T::infinity(), tol)?;
    let bound_rhs = f_norm * (constants.k1 * near + constants.k2 * far);

    let work = tol * lit(0.1);
    let lhs = integral_fhat_g_line(f, g, p, work)?.value;
    let rhs = if f.is_zero() {
        zero()
    } else {
        pairing_with_transform(f, g, work)?
    };
    let abs_gap = (lhs - rhs).norm();
    let pass = abs_gap <= tol && lhs.norm() <= bound_rhs * (T::one() + lit(1e-12)) + tol;
    Ok(ExchangeReport {
        lhs,
        rhs,
        abs_gap,
        bound_rhs,
        moment,
        f_norm,
        constants,
        pass,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DoubleExchangeReport<T> {
    /// `∫ f̂ (g1 * g2)`
    pub lhs: Complex<T>,
    /// `∫ f ĝ1 ĝ2`
    pub rhs: Complex<T>,
    pub abs_gap: T,
    pub pass: bool,
}

/// `∫ |s|^β |g(s)| ds`.
fn value_moment<T: Real>(g: &CatalogFunction<T>, beta: T, tol: T) -> Result<T> {
    let env = g.envelope().times_growth(T::one(), beta);
    let opts = QuadOptions::new(tol).breakpoints(g.breakpoints());
    match integrate_improper_with(
        |s: T| Complex::new(s.abs().powf(beta) * g.eval(s).norm(), T::zero()),
        &env,
        T::neg_infinity(),
        T::infinity(),
        &opts,
    ) {
        Ok(r) => Ok(r.value.re),
        Err(Error::TailUnbounded { .. }) => Ok(T::infinity()),
        Err(e) => Err(e),
    }
}

/// `∫ f̂ (g1 * g2)` against `∫ f ĝ1 ĝ2`.
pub fn double_exchange_check<T: Real>(
    f: &CatalogFunction<T>,
    g1: &BvFunction<T>,
    g2: &CatalogFunction<T>,
    p: &ExponentFunction<T>,
    tol: T,
) -> Result<DoubleExchangeReport<T>> {
    let beta = T::one() / p.p_minus();
    if !g1.is_integrable() {
        return Err(Error::Hypothesis("g1 must be integrable".into()));
    }
    if !g2.is_l1() {
        return Err(Error::Hypothesis("g2 must be integrable".into()));
    }
    if !g1.variation_moment(beta, tol)?.is_finite() {
        return Err(Error::Hypothesis("∫ |s|^{1/p_-} |dg1(s)| diverges".into()));
    }
    if !value_moment(g2, beta, tol)?.is_finite() {
        return Err(Error::Hypothesis("∫ |s|^{1/p_-} |g2(s)| ds diverges".into()));
    }
    let work = tol * lit(0.1);
    let conv = BvFunction::convolution(g1.clone(), g2.clone(), work * lit(1e-2))?;
    let lhs = integral_fhat_g_line(f, &conv, p, work)?.value;
    let rhs = if f.is_zero() {
        zero()
    } else {
        let sup = transform_sup(g1, work)? * g2.envelope().total_mass();
        let env = f.envelope().scaled(sup);
        let trap = Trap::new();
        let inner = (work / (lit::<T>(4.0) * f.envelope().total_mass().max(T::one()))).max(lit(1e-15));
        let opts = QuadOptions::new(work)
            .breakpoints(f.breakpoints())
            .breakpoints(transform_breakpoints(g1))
            .frequency(f.max_frequency() + T::one());
        let r = integrate_improper_with(
            |s: T| {
                let a = trap.catch(g1.fourier_transform(s, inner).map(|r| r.value), zero());
                let b = trap.catch(g2.fourier_transform(s, inner).map(|r| r.value), zero());
                f.eval(s) * a * b
            },
            &env,
            T::neg_infinity(),
            T::infinity(),
            &opts,
        );
        trap.finish(r)?.value
    };
    let abs_gap = (lhs - rhs).norm();
    Ok(DoubleExchangeReport {
        lhs,
        rhs,
        abs_gap,
        pass: abs_gap <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::{PieceForm, PiecewiseFunction, SmoothPiece};
    use std::f64::consts::PI;

    type C = CatalogFunction<f64>;

    fn gauss() -> C {
        C::gaussian(1.0, 0.0, 0.0).unwrap()
    }

    fn two() -> ExponentFunction<f64> {
        ExponentFunction::constant(2.0).unwrap()
    }

    #[test]
    fn finite_integral_with_constant_weight() {
        let f = C::indicator(0.0, 1.0).unwrap();
        let g = BvFunction::constant(1.0);
        let v = integral_fhat_g_finite(&f, &g, -0.5, 2.0, 1e-11).unwrap().value;
        let w = psi(&f, 2.0, 1e-12).unwrap().value - psi(&f, -0.5, 1e-12).unwrap().value;
        assert!((v - w).norm() < 1e-11);
        let z = integral_fhat_g_finite(&C::zero(), &g, 0.0, 1.0, 1e-9).unwrap();
        assert_eq!(z.value.norm(), 0.0);
    }

    #[test]
    fn finite_integral_against_linear_weight() {
        // ∫_0^1 f̂(s) s ds with f̂ = √π e^{-s²/4}
        let g = BvFunction::Piecewise(
            PiecewiseFunction::new(vec![SmoothPiece {
                lo: -5.0,
                hi: 5.0,
                form: PieceForm::Poly(vec![0.0, 1.0]),
            }])
            .unwrap(),
        );
        let v = integral_fhat_g_finite(&gauss(), &g, 0.0, 1.0, 1e-11).unwrap().value;
        let exact = 2.0 * PI.sqrt() * (1.0 - (-0.25f64).exp());
        assert!((v.re - exact).abs() < 1e-9 && v.im.abs() < 1e-10, "{v}");
    }

    #[test]
    fn line_integral_gaussian_weight() {
        let g = BvFunction::Catalog(gauss());
        let r = integral_fhat_g_line(&gauss(), &g, &two(), 1e-9).unwrap();
        assert!((r.value.re - 2.0 * PI / 5f64.sqrt()).abs() < 1e-8, "{:?}", r);
        assert!(integral_fhat_g_line(&gauss(), &BvFunction::constant(1.0), &two(), 1e-9).is_err());
    }

    #[test]
    fn line_growth_rejects_slow_weights() {
        // x^{-1/4} decays slower than x^{-1/2}.
        let g = BvFunction::Catalog(C::power_tail(0.25, 1.0).unwrap());
        match integral_fhat_g_line(&gauss(), &g, &two(), 1e-9) {
            Err(Error::Growth { witness, .. }) => assert!(witness.abs() >= 1.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn halfline_examples() {
        let f = gauss();
        let p = two();
        let g = BvFunction::constant(1.0);
        let v = integral_fhat_g_halfline(&f, &g, 1.5, &p, 1e-11).unwrap().value;
        assert!((v - psi(&f, 1.5, 1e-12).unwrap().value).norm() < 1e-11);
        // g = x^{-1/4} on (0, 1]: the integral equals ∫_0^1 √π e^{-s²/4} s^{-1/4} ds.
        let g = BvFunction::Piecewise(
            PiecewiseFunction::new(vec![SmoothPiece {
                lo: 0.0,
                hi: 1.0,
                form: PieceForm::Power {
                    scale: 1.0,
                    exponent: -0.25,
                },
            }])
            .unwrap(),
        );
        let v = integral_fhat_g_halfline(&f, &g, 1.0, &p, 1e-10).unwrap().value;
        let (direct, _) = crate::quadrature::integrate_real(
            |v: f64| {
                // s = v^{4/3}
                let s = v.powf(4.0 / 3.0);
                PI.sqrt() * (-s * s / 4.0).exp() * s.powf(-0.25) * (4.0 / 3.0) * v.powf(1.0 / 3.0)
            },
            0.0,
            1.0,
            1e-13,
        )
        .unwrap();
        assert!((v.re - direct).abs() < 1e-8 && v.im.abs() < 1e-9, "{v} vs {direct}");
        let bad = BvFunction::Piecewise(
            PiecewiseFunction::new(vec![SmoothPiece {
                lo: 0.0,
                hi: 1.0,
                form: PieceForm::Power {
                    scale: 1.0,
                    exponent: -0.75,
                },
            }])
            .unwrap(),
        );
        assert!(integral_fhat_g_halfline(&f, &bad, 1.0, &p, 1e-9).is_err());
    }

    #[test]
    fn exchange_gaussian_pair() {
        let r = exchange_check(&gauss(), &BvFunction::Catalog(gauss()), &two(), 1e-7).unwrap();
        let exact = 2.0 * PI / 5f64.sqrt();
        assert!(
            (r.lhs.re - exact).abs() < 1e-7 && (r.rhs.re - exact).abs() < 1e-7,
            "{r:?}"
        );
        assert!(r.pass, "{r:?}");
        let z = exchange_check(&C::zero(), &BvFunction::Catalog(gauss()), &two(), 1e-7).unwrap();
        assert_eq!(z.lhs.norm() + z.rhs.norm(), 0.0);
    }

    #[test]
    fn double_exchange_gaussian_triple() {
        let g = gauss();
        let r = double_exchange_check(&g, &BvFunction::Catalog(g.clone()), &g, &two(), 1e-6).unwrap();
        let exact = PI * (2.0 * PI / 3.0).sqrt();
        assert!((r.rhs.re - exact).abs() < 1e-7, "{r:?}");
        assert!((r.lhs.re - exact).abs() < 1e-6, "{r:?}");
        assert!(r.pass);
    }
}
