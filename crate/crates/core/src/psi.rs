//! `Ψ_f(s) = ∫ u_s(t) f(t) dt`, its growth bounds and the constants behind
//! them.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::exponent::{delta_indicator, ExponentForm, ExponentFunction};
use crate::funcspace::{CatalogFunction, Shape, Term};
use crate::modular::luxemburg_norm;
use crate::quadrature::{
    algebraic_half_line, fourier_half_line, integrate_improper_with, integrate_with, Envelope, QuadOptions,
    QuadratureResult,
};
use crate::scalar::{cis, lit, to_f64, Real};
use crate::special::{c_q, gamma, lambert_w};

/// `u_s(t) = (1 - e^{-ist}) / (it)`, with `u_s(0) = s`.
pub fn u_kernel<T: Real>(s: T, t: T) -> Complex<T> {
    let x = s * t;
    if x.abs() < lit(1e-4) {
        // s Σ_{k<4} (-ist)^k / (k+1)!
        let z = Complex::new(T::zero(), -x);
        let mut term = Complex::new(T::one(), T::zero());
        let mut acc = term;
        for k in 1..4 {
            term = term * z / T::from_usize(k + 1).unwrap();
            acc = acc + term;
        }
        return acc * s;
    }
    // 1 - e^{-ix} = 2 sin²(x/2) + i sin x, divided by it.
    let h = (x * lit(0.5)).sin();
    Complex::new(x.sin() / t, -lit::<T>(2.0) * h * h / t)
}

/// `Ψ_f(s)`; exactly zero at `s = 0`.
pub fn psi<T: Real>(f: &CatalogFunction<T>, s: T, tol: T) -> Result<QuadratureResult<T>> {
    if !(tol > T::zero()) {
        return Err(invalid("tolerance must be positive"));
    }
    if s == T::zero() || f.is_zero() {
        return Ok(QuadratureResult::zero());
    }
    let (tails, rest): (Vec<&Term<T>>, Vec<&Term<T>>) = f
        .terms()
        .iter()
        .partition(|t| matches!(t.shape, Shape::PowerTail { .. }));
    let pieces = tails.len() + usize::from(!rest.is_empty());
    let share = tol / T::from_usize(pieces).unwrap();
    let mut out = QuadratureResult::zero();
    if !rest.is_empty() {
        let g = CatalogFunction::from_terms(rest.into_iter().cloned().collect())?;
        // |u_s| <= |s|
        let env = g.envelope().scaled(s.abs());
        let opts = QuadOptions::new(share)
            .breakpoints(g.breakpoints())
            .breakpoints([T::zero()])
            .frequency(s.abs() + g.max_frequency());
        let r = integrate_improper_with(
            |t: T| u_kernel(s, t) * g.eval(t),
            &env,
            T::neg_infinity(),
            T::infinity(),
            &opts,
        )?;
        out = out.combine(r);
    }
    for t in tails {
        out = out.combine(psi_power_tail(t, s, share)?);
    }
    Ok(out)
}

/// Contribution of one power-tail term, in the variable `u` with
/// `t = shift + orient · u`, `u >= cutoff`.
fn psi_power_tail<T: Real>(term: &Term<T>, s: T, tol: T) -> Result<QuadratureResult<T>> {
    let Shape::PowerTail {
        alpha,
        cutoff,
        shift,
        orient,
    } = term.shape
    else {
        unreachable!("caller passes power tails only")
    };
    let c = term.coeff;
    let w = term.freq;
    let t_of = |u: T| shift + orient * u;
    let third = tol / lit(3.0);

    // Finite segment, where t may cross zero.
    let u1 = cutoff.max(lit::<T>(2.0) * shift.abs() + T::one());
    let mut out = QuadratureResult::zero();
    if u1 > cutoff {
        let opts = QuadOptions::new(third)
            .frequency(s.abs() + w.abs())
            .breakpoints([-orient * shift]);
        out = integrate_with(
            |u: T| {
                let t = t_of(u);
                u_kernel(s, t) * c * cis(w * t) * u.powf(-alpha)
            },
            cutoff,
            u1,
            &opts,
        )?;
    }

    // On [u1, ∞): u_s(t) f(t) = A(u) (1 - e^{-ist}) with
    // A(u) = c e^{iωt} u^{-α} / (it).
    let i = Complex::new(T::zero(), T::one());
    let bound = c.norm() * u1.powf(-alpha) / (u1 - shift.abs());
    // Part without e^{-ist}: phase e^{iωt} = e^{iω shift} e^{-iνu}, ν = -ω orient.
    let ph1 = c * cis(w * shift);
    let amp1 = |u: Complex<T>| ph1 * u.powf(-alpha) / (i * (u * orient + shift));
    let nu1 = -w * orient;
    let part1 = oscillatory_tail(nu1, u1, amp1, bound, alpha + T::one(), third)?;
    // Part with e^{-ist}: phase e^{i(ω - s)t}.
    let ph2 = c * cis((w - s) * shift);
    let amp2 = |u: Complex<T>| ph2 * u.powf(-alpha) / (i * (u * orient + shift));
    let nu2 = (s - w) * orient;
    let part2 = oscillatory_tail(nu2, u1, amp2, bound, alpha + T::one(), third)?;
    Ok(out
        .combine(part1)
        .combine(part2.scale(Complex::new(-T::one(), T::zero()))))
}

/// `∫_{u0}^∞ e^{-iνu} A(u) du` for `|A(u)| = O(u^{-decay})`.
fn oscillatory_tail<T: Real, A: Fn(Complex<T>) -> Complex<T>>(
    nu: T,
    u0: T,
    amp: A,
    bound: T,
    decay: T,
    tol: T,
) -> Result<QuadratureResult<T>> {
    if nu == T::zero() {
        algebraic_half_line(u0, |u: T| amp(Complex::new(u, T::zero())), decay, tol)
    } else {
        fourier_half_line(nu, u0, amp, bound, tol)
    }
}

/// `(a, b)` with `|Ψ_f(s)| <= a |s| + b` for every `s`, from
/// `|u_s(t)| <= min(|s|, 2/|t|)`.
pub fn psi_growth<T: Real>(f: &CatalogFunction<T>) -> (T, T) {
    let mut a = T::zero();
    let mut b = T::zero();
    for term in f.terms() {
        let c = term.coeff.norm();
        match term.shape {
            Shape::PowerTail {
                alpha, cutoff, shift, ..
            } => {
                let u1 = cutoff.max(lit::<T>(2.0) * shift.abs() + T::one());
                let near = if alpha == T::one() {
                    (u1 / cutoff).ln()
                } else {
                    (u1.powf(T::one() - alpha) - cutoff.powf(T::one() - alpha)) / (T::one() - alpha)
                };
                a = a + c * near;
                // |t| >= u / 2 beyond u1
                b = b + lit::<T>(4.0) * c * u1.powf(-alpha) / alpha;
            }
            _ => {
                let single = CatalogFunction::from_term(term.clone()).expect("term already validated");
                a = a + single.envelope().total_mass();
            }
        }
    }
    (a, b)
}

/// `Ψ_f` on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct PsiEvaluation<T> {
    pub s_grid: Vec<T>,
    pub values: Vec<Complex<T>>,
    pub errors: Vec<T>,
}

/// Evaluates `Ψ_f` at every grid point, in parallel.
pub fn psi_grid<T: Real>(f: &CatalogFunction<T>, s_grid: &[T], tol: T) -> Result<PsiEvaluation<T>> {
    let results: Vec<Result<QuadratureResult<T>>> = s_grid.par_iter().map(|&s| psi(f, s, tol)).collect();
    let mut values = Vec::with_capacity(s_grid.len());
    let mut errors = Vec::with_capacity(s_grid.len());
    for r in results {
        let r = r?;
        values.push(r.value);
        errors.push(r.error_estimate);
    }
    Ok(PsiEvaluation {
        s_grid: s_grid.to_vec(),
        values,
        errors,
    })
}

/// Which growth bound for `|Ψ_f|` to instantiate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Regime<T> {
    /// `p_+ < ∞`, three cases by `p_+ = 1`, `p_- = 1` and `p_- > 1`.
    FinitePPlus,
    /// `1 < p_- <= p_+ < ∞`.
    PMinusGtOne,
    /// `1/p(·)` log-Hölder at infinity with limit 1.
    Lh1,
    /// `p(x) <= 1 + |x|^{-k} / C0` almost everywhere.
    PowerDecayExample { c0: T, k: T },
}

impl<T: Real> Regime<T> {
    pub fn tag(&self) -> &'static str {
        match self {
            Regime::FinitePPlus => "finite-p_plus",
            Regime::PMinusGtOne => "p_minus-gt-1",
            Regime::Lh1 => "lh1",
            Regime::PowerDecayExample { .. } => "power-decay-example",
        }
    }

    /// The sharpest regime whose hypotheses `p` meets, preferring bounds
    /// valid for every `s`.
    pub fn select(p: &ExponentFunction<T>) -> Result<Self> {
        if p.p_minus() > T::one() && p.p_plus().is_finite() {
            Ok(Regime::PMinusGtOne)
        } else if p.p_plus().is_finite() {
            Ok(Regime::FinitePPlus)
        } else if p.lh1_constant().is_some() {
            Ok(Regime::Lh1)
        } else {
            Err(Error::Hypothesis(
                "no growth bound applies: need p_+ < ∞ or 1/p log-Hölder at infinity".into(),
            ))
        }
    }
}

impl<T: Real> fmt::Display for Regime<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl<T: Real> FromStr for Regime<T> {
    type Err = Error;

    /// Parses the tags; the power-decay form takes `power-decay-example:C0:k`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "finite-p_plus" => Ok(Regime::FinitePPlus),
            "p_minus-gt-1" => Ok(Regime::PMinusGtOne),
            "lh1" => Ok(Regime::Lh1),
            _ => {
                let mut it = s.split(':');
                if it.next() == Some("power-decay-example") {
                    let parse = |x: Option<&str>| -> Result<T> {
                        let v: f64 = x
                            .ok_or_else(|| invalid("power-decay-example needs :C0:k"))?
                            .parse()
                            .map_err(|_| invalid("bad number in regime"))?;
                        Ok(lit(v))
                    };
                    let c0 = parse(it.next())?;
                    let k = parse(it.next())?;
                    return Ok(Regime::PowerDecayExample { c0, k });
                }
                Err(invalid(format!("unknown regime '{}'", s)))
            }
        }
    }
}

fn conj<T: Real>(p: T) -> T {
    if p.is_infinite() {
        T::one()
    } else if p == T::one() {
        T::infinity()
    } else {
        p / (p - T::one())
    }
}

/// Checks `p(x) <= 1 + |x|^{-k} / C0` piece by piece. Power-decay pieces
/// with matching or dominated parameters pass symbolically; the rest are
/// checked on a dense logarithmic sample of each piece.
pub fn check_power_decay<T: Real>(p: &ExponentFunction<T>, c0: T, k: T) -> Result<()> {
    if !(c0 > T::zero() && k > T::zero()) {
        return Err(invalid("power-decay regime needs C0 > 0 and k > 0"));
    }
    let cap = |x: T| T::one() + x.abs().powf(-k) / c0;
    for piece in p.pieces() {
        if let (ExponentForm::PowerDecay { c0: c, k: kk }, false) = (piece.form, piece.conjugated) {
            if c == c0 && kk == k {
                continue;
            }
        }
        let iv = piece.interval;
        let lo = iv.lo.max(lit(-1e12));
        let hi = iv.hi.min(lit(1e12));
        let mut xs = Vec::new();
        for side in [-T::one(), T::one()] {
            for i in 0..=4000 {
                let e = lit::<T>(-12.0) + lit::<T>(24.0) * T::from_usize(i).unwrap() / lit(4000.0);
                xs.push(side * lit::<T>(10.0).powf(e));
            }
        }
        xs.push(lo);
        xs.push(hi);
        for x in xs {
            if x < lo || x > hi || !iv.contains(x) {
                continue;
            }
            let v = p.eval(x);
            if v > cap(x) * (T::one() + lit(1e-12)) {
                return Err(Error::Growth {
                    witness: to_f64(x),
                    detail: format!("p({}) = {} exceeds 1 + |x|^-k / C0 = {}", x, v, cap(x)),
                });
            }
        }
    }
    Ok(())
}

/// Constant `K` in the power-decay bound `|Ψ_f(s)| <= K ‖f‖ |s|`.
pub fn power_decay_constant<T: Real>(p: &ExponentFunction<T>, c0: T, k: T) -> Result<T> {
    let inner = lit::<T>(2.0) * gamma(T::one() / k)? / (k.powf(k + T::one()) * c0.powf(T::one() / k));
    let w = lambert_w(inner.powf(T::one() / k))?;
    let delta1 = T::from_u8(delta_indicator(&p.partition().omega_1)).unwrap();
    Ok(delta1 + (lit::<T>(2.0) - T::one() / p.p_plus()) * (k * w).exp())
}

/// Constant in the log-Hölder bound `|Ψ_f(s)| <= K ‖f‖ |s|`.
pub fn lh1_bound_constant<T: Real>(p: &ExponentFunction<T>) -> Result<T> {
    let c = p
        .lh1_constant()
        .ok_or_else(|| Error::Hypothesis("1/p is not log-Hölder at infinity with limit 1".into()))?;
    let delta1 = T::from_u8(delta_indicator(&p.partition().omega_1)).unwrap();
    let w2 = lambert_w(lit::<T>(2.0))?;
    Ok(delta1 + (lit::<T>(2.0) - T::one() / p.p_plus()) * (c * (w2 + T::one())).exp())
}

fn check_regime<T: Real>(p: &ExponentFunction<T>, regime: Regime<T>) -> Result<()> {
    match regime {
        Regime::FinitePPlus if !p.p_plus().is_finite() => Err(Error::Hypothesis("finite-p_plus needs p_+ < ∞".into())),
        Regime::PMinusGtOne if !(p.p_minus() > T::one()) => Err(Error::Hypothesis("p_minus-gt-1 needs p_- > 1".into())),
        Regime::PMinusGtOne if !p.p_plus().is_finite() => Err(Error::Hypothesis("p_minus-gt-1 needs p_+ < ∞".into())),
        Regime::Lh1 if p.lh1_constant().is_none() => Err(Error::Hypothesis(
            "lh1 needs 1/p log-Hölder at infinity with limit 1".into(),
        )),
        Regime::PowerDecayExample { c0, k } => check_power_decay(p, c0, k),
        _ => Ok(()),
    }
}

/// Right-hand side of the growth bound for `regime` at `s`.
pub fn bound_rhs<T: Real>(p: &ExponentFunction<T>, f_norm: T, s: T, regime: Regime<T>) -> Result<T> {
    check_regime(p, regime)?;
    let a = s.abs();
    if a == T::zero() {
        return Ok(T::zero());
    }
    let (pm, pp) = p.essential_bounds();
    match regime {
        Regime::FinitePPlus | Regime::PMinusGtOne => {
            if pp == T::one() {
                return Ok(f_norm * a);
            }
            let k = p.holder_constant();
            let qm = conj(pp);
            let qp = conj(pm);
            let cq = c_q(qm)?;
            let small = cq * a.powf(T::one() / pp);
            if pm == T::one() {
                Ok(k * f_norm * a.max(small))
            } else {
                let large = cq.powf(qm / qp) * a.powf(T::one() / pm);
                Ok(k * f_norm * large.max(small))
            }
        }
        Regime::Lh1 => Ok(f_norm * lh1_bound_constant(p)? * a),
        Regime::PowerDecayExample { c0, k } => Ok(f_norm * power_decay_constant(p, c0, k)? * a),
    }
}

/// One row of a bound certificate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundRow<T> {
    pub s: T,
    pub lhs: T,
    pub rhs: T,
    pub margin: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundCertificate<T> {
    pub regime: Regime<T>,
    pub f_norm: T,
    pub rows: Vec<BoundRow<T>>,
    pub pass: bool,
}

/// Margin below which a certificate row counts as violated.
pub const MARGIN_FLOOR: f64 = -1e-9;

/// `|Ψ_f(s)|` against the regime's bound on every grid point.
pub fn certify_bounds<T: Real>(
    f: &CatalogFunction<T>,
    p: &ExponentFunction<T>,
    s_grid: &[T],
    regime: Regime<T>,
    tol: T,
) -> Result<BoundCertificate<T>> {
    check_regime(p, regime)?;
    let f_norm = luxemburg_norm(f, p, T::default_norm_tol())?.value;
    if !f_norm.is_finite() {
        return Err(Error::Hypothesis("f is not in L^p(·)".into()));
    }
    let evals = psi_grid(f, s_grid, tol)?;
    let mut rows = Vec::with_capacity(s_grid.len());
    for (&s, v) in s_grid.iter().zip(&evals.values) {
        let lhs = v.norm();
        let rhs = bound_rhs(p, f_norm, s, regime)?;
        rows.push(BoundRow {
            s,
            lhs,
            rhs,
            margin: rhs - lhs,
        });
    }
    let pass = rows.iter().all(|r| r.margin >= lit(MARGIN_FLOOR));
    Ok(BoundCertificate {
        regime,
        f_norm,
        rows,
        pass,
    })
}

/// Least-squares slope of `log |Ψ_f(s0 + h) - Ψ_f(s0)|` against `log h`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HolderEstimate<T> {
    /// `None` when every difference is below the noise floor.
    pub slope: Option<T>,
}

pub fn holder_exponent_estimate<T: Real>(
    f: &CatalogFunction<T>,
    s0: T,
    h_grid: &[T],
    tol: T,
) -> Result<HolderEstimate<T>> {
    if h_grid.iter().any(|&h| !(h > T::zero() && h <= T::one())) {
        return Err(invalid("h grid must lie in (0, 1]"));
    }
    let base = psi(f, s0, tol)?.value;
    let floor = tol * lit(100.0);
    let mut pts = Vec::new();
    for &h in h_grid {
        let d = (psi(f, s0 + h, tol)?.value - base).norm();
        if d > floor {
            pts.push((h.ln(), d.ln()));
        }
    }
    Ok(HolderEstimate { slope: fit_slope(&pts) })
}

/// Ordinary least-squares slope of `(x, y)` pairs; `None` for fewer than
/// two distinct abscissae.
pub fn fit_slope<T: Real>(pts: &[(T, T)]) -> Option<T> {
    if pts.len() < 2 {
        return None;
    }
    let n = T::from_usize(pts.len()).unwrap();
    let mx = pts.iter().map(|p| p.0).sum::<T>() / n;
    let my = pts.iter().map(|p| p.1).sum::<T>() / n;
    let sxx: T = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: T = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > T::zero()).then(|| sxy / sxx)
}

/// Constants of the exchange inequality
/// `|∫ f̂ g| <= ‖f‖ (K1 ∫_{|s|<=M} |s|^{1/r} |dg| + K2 ∫_{|s|>M} |s|^{1/p_-} |dg|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExchangeConstants<T> {
    pub k1: T,
    pub k2: T,
    pub r: T,
    pub m: T,
    pub regime: Regime<T>,
}

/// Reads `K1`, `K2`, `r`, `M` off the growth bound of `regime`: below the
/// crossover `M` the small-`s` power dominates, above it the large-`s` one.
pub fn exchange_constants<T: Real>(p: &ExponentFunction<T>, regime: Regime<T>) -> Result<ExchangeConstants<T>> {
    check_regime(p, regime)?;
    let (pm, pp) = p.essential_bounds();
    let out = |k1, k2, r, m| ExchangeConstants { k1, k2, r, m, regime };
    match regime {
        Regime::FinitePPlus | Regime::PMinusGtOne => {
            if pp == T::one() {
                return Ok(out(T::one(), T::one(), T::one(), T::one()));
            }
            let k = p.holder_constant();
            let qm = conj(pp);
            let qp = conj(pm);
            let cq = c_q(qm)?;
            let m = cq.powf(qm);
            if pm == T::one() {
                Ok(out(k * cq, k, pp, m))
            } else {
                Ok(out(k * cq, k * cq.powf(qm / qp), pp, m))
            }
        }
        Regime::Lh1 => {
            let c = lh1_bound_constant(p)?;
            Ok(out(c, c, T::one(), T::one()))
        }
        Regime::PowerDecayExample { c0, k } => {
            let c = power_decay_constant(p, c0, k)?;
            Ok(out(c, c, T::one(), T::one()))
        }
    }
}

/// Envelope of `|Ψ_f|` along the line, `K ‖f‖ max(C1, C2) (1 + |s|)^{1/p_-}`
/// style: returns `(c, k)` with `|Ψ_f(s)| <= c (1 + |s|)^k`.
pub fn growth_envelope<T: Real>(p: &ExponentFunction<T>, f_norm: T) -> Result<(T, T)> {
    let regime = Regime::select(p)?;
    let e = exchange_constants(p, regime)?;
    // K1 |s|^{1/r} <= K1 M^{1/r} for |s| <= M, K2 |s|^{1/p_-} beyond.
    let pm = p.p_minus();
    let c = f_norm * (e.k1 * e.m.powf(T::one() / e.r)).max(e.k2).max(e.k1);
    Ok((c, T::one() / pm))
}

/// Bound on `|Ψ_f|` usable as a quadrature envelope factor.
pub fn psi_envelope<T: Real>(p: &ExponentFunction<T>, f_norm: T, weight: &Envelope<T>) -> Result<Envelope<T>> {
    let (c, k) = growth_envelope(p, f_norm)?;
    Ok(weight.times_growth(c, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type C = CatalogFunction<f64>;
    type E = ExponentFunction<f64>;

    #[test]
    fn kernel_examples_and_bounds() {
        assert_eq!(u_kernel(0.0, 3.0), Complex::new(0.0, 0.0));
        assert!((u_kernel(2.5, 1e-9) - Complex::new(2.5, 0.0)).norm() < 1e-8);
        assert!((u_kernel(PI, 1.0).norm() - 2.0).abs() < 1e-15);
        for i in -60..60 {
            for j in -60..60 {
                let s = i as f64 * 0.37;
                let t = j as f64 * 0.23 + 1e-7;
                let u = u_kernel(s, t).norm();
                assert!(u <= s.abs() * (1.0 + 1e-12) + 1e-300);
                assert!(u <= 2.0 / t.abs() * (1.0 + 1e-12));
            }
        }
        // Series and closed form agree across the switch.
        let a = u_kernel(1.0, 0.999_999e-4);
        let b = u_kernel(1.0, 1.000_001e-4);
        assert!((a - b).norm() < 1e-9);
    }

    #[test]
    fn gaussian_psi_is_pi_erf() {
        let g = C::gaussian(1.0, 0.0, 0.0).unwrap();
        // π erf(1)
        let v = psi(&g, 2.0, 1e-12).unwrap().value;
        assert!((v.re - 2.647_422_620_305_117_7).abs() < 1e-10 && v.im.abs() < 1e-12);
        assert_eq!(psi(&g, 0.0, 1e-9).unwrap().value, Complex::new(0.0, 0.0));
    }

    #[test]
    fn power_tail_psi_matches_split_quadrature() {
        // α = 2: direct truncated integral plus an analytic-ish tail.
        let f = C::power_tail(2.0, 1.0).unwrap().modulate(0.5).translate(-0.3);
        let s = 1.7;
        let v = psi(&f, s, 1e-11).unwrap().value;
        let x0 = 0.7;
        let direct = crate::quadrature::integrate_with(
            |t: f64| u_kernel(s, t) * f.eval(t),
            x0,
            20_000.0,
            &QuadOptions::new(1e-12).frequency(s + 0.5).max_panels(200_000),
        )
        .unwrap()
        .value;
        // Remaining tail is below 2 ∫_{2e4}^∞ t^{-3} = 2.5e-9.
        assert!((v - direct).norm() < 5e-9, "{v} vs {direct}");
    }

    #[test]
    fn bound_rhs_examples() {
        let two = E::constant(2.0).unwrap();
        let v = bound_rhs(&two, 1.0, 1.0, Regime::PMinusGtOne).unwrap();
        assert!((v - (2.0 * PI).sqrt()).abs() < 1e-12);
        assert_eq!(bound_rhs(&two, 1.0, 0.0, Regime::PMinusGtOne).unwrap(), 0.0);
        assert!(bound_rhs(&two, 1.0, 1.0, Regime::Lh1).is_err());
        // lh1 with C = 1 and p_+ = 2: 1.5 e^{W(2)+1}
        let p = E::uniform(ExponentForm::LogDecay { kappa: 1.0 }).unwrap();
        let k = lh1_bound_constant(&p).unwrap();
        let w2: f64 = 0.852_605_502_013_725_5;
        assert!((k - 1.5 * (w2 + 1.0).exp()).abs() < 1e-9, "{k}");
        assert!((k - 9.564_617_476_800_958).abs() < 1e-9);
    }

    #[test]
    fn regime_parsing() {
        assert_eq!("lh1".parse::<Regime<f64>>().unwrap(), Regime::Lh1);
        assert_eq!(
            "power-decay-example:2:1".parse::<Regime<f64>>().unwrap(),
            Regime::PowerDecayExample { c0: 2.0, k: 1.0 }
        );
        assert!("nope".parse::<Regime<f64>>().is_err());
    }

    #[test]
    fn power_decay_check() {
        let p = E::split(
            -1.0,
            ExponentForm::PowerDecay { c0: 1.0, k: 1.0 },
            ExponentForm::PowerDecay { c0: 1.0, k: 1.0 },
        )
        .unwrap();
        assert!(check_power_decay(&p, 1.0, 1.0).is_ok());
        assert!(check_power_decay(&E::constant(2.0).unwrap(), 1.0, 1.0).is_err());
    }

    #[test]
    fn exchange_constants_for_l2() {
        let e = exchange_constants(&E::constant(2.0).unwrap(), Regime::PMinusGtOne).unwrap();
        let c2 = (2.0 * PI).sqrt();
        assert!((e.k1 - c2).abs() < 1e-12 && (e.k2 - c2).abs() < 1e-12);
        assert!((e.m - 2.0 * PI).abs() < 1e-10);
        assert_eq!(e.r, 2.0);
    }

    #[test]
    fn slope_fit() {
        let pts: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 0.5 * i as f64 + 1.0)).collect();
        assert!((fit_slope(&pts).unwrap() - 0.5).abs() < 1e-15);
        assert!(fit_slope::<f64>(&[]).is_none());
        let z = C::zero();
        let est = holder_exponent_estimate(&z, 1.0, &[0.1, 0.01], 1e-10).unwrap();
        assert!(est.slope.is_none());
    }
}
