//! The modular `ρ_{p(·)}`, the Luxemburg norm and the generalized Hölder
//! inequality.

use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::exponent::{ExponentFunction, IntervalUnion};
use crate::funcspace::LineFunction;
use crate::quadrature::{
    algebraic_half_line, integrate_improper_with, integrate_with, Envelope, EnvelopeTerm, QuadOptions,
};
use crate::scalar::{lit, Real};

/// `ρ = lebesgue_part + esssup_part`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModularValue<T> {
    pub lebesgue_part: T,
    pub esssup_part: T,
    pub total: T,
}

/// Luxemburg norm with the bracket it was bisected in. `value` is the
/// upper end, so `ρ(f / value) <= 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormResult<T> {
    pub value: T,
    pub bracket: (T, T),
    pub modular_at_value: T,
}

/// Both sides of `∫|fg| <= K ‖f‖_p ‖g‖_q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HolderReport<T> {
    pub lhs: T,
    pub rhs: T,
    pub constant: T,
    pub norm_f: T,
    pub norm_g: T,
    pub pass: bool,
}

/// `ρ_{p(·), region}(f / λ)`. A divergent Lebesgue part is reported as `∞`.
pub fn modular<T, F>(
    f: &F,
    p: &ExponentFunction<T>,
    region: &IntervalUnion<T>,
    lambda: T,
    tol: T,
) -> Result<ModularValue<T>>
where
    T: Real,
    F: LineFunction<T> + ?Sized,
{
    if !(lambda > T::zero()) {
        return Err(invalid("modular needs lambda > 0"));
    }
    if !(tol > T::zero()) {
        return Err(invalid("tolerance must be positive"));
    }
    let parts = p.partition();
    let finite = region.difference(&parts.omega_inf);
    let infinite = region.intersect(&parts.omega_inf);

    let mut esssup = T::zero();
    for iv in infinite.parts() {
        esssup = esssup.max(f.sup_abs_on(iv.lo, iv.hi) / lambda);
    }

    let env = f.envelope().scaled(T::one() / lambda);
    let mut cuts = p.breakpoints();
    cuts.extend(f.breakpoints());
    let n = finite.parts().len().max(1);
    let share = tol / T::from_usize(n).unwrap();
    let mut lebesgue = T::zero();
    for iv in finite.parts() {
        match lebesgue_on(f, p, &env, iv.lo, iv.hi, lambda, &cuts, share) {
            Ok(v) => lebesgue = lebesgue + v,
            Err(Error::TailUnbounded { .. } | Error::NotIntegrable(_)) => {
                lebesgue = T::infinity();
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ModularValue {
        lebesgue_part: lebesgue,
        esssup_part: esssup,
        total: lebesgue + esssup,
    })
}

/// `|f/λ|^{p}` with `0^p = 0`.
fn power_integrand<T: Real, F: LineFunction<T> + ?Sized>(
    f: &F,
    p: &ExponentFunction<T>,
    lambda: T,
    x: T,
) -> Complex<T> {
    let v = f.eval(x).norm() / lambda;
    if v == T::zero() {
        return Complex::new(T::zero(), T::zero());
    }
    Complex::new(v.powf(p.eval(x)), T::zero())
}

/// Where the scaled envelope may exceed 1; outside it every `p`-power is
/// dominated by the power with the smallest exponent.
fn core_window<T: Real>(env: &Envelope<T>) -> (T, T) {
    let (h0, h1) = env.hull();
    let reach = |dir: T, start: T| {
        let mut d = T::one();
        while env.at(start + dir * d) > T::one() {
            d = d * lit(2.0);
            if d > lit(1e30) {
                break;
            }
        }
        start + dir * d
    };
    (reach(-T::one(), h0), reach(T::one(), h1))
}

#[allow(clippy::too_many_arguments)]
fn lebesgue_on<T, F>(
    f: &F,
    p: &ExponentFunction<T>,
    env: &Envelope<T>,
    lo: T,
    hi: T,
    lambda: T,
    cuts: &[T],
    tol: T,
) -> Result<T>
where
    T: Real,
    F: LineFunction<T> + ?Sized,
{
    if env.is_zero() || !(lo < hi) {
        return Ok(T::zero());
    }
    let h = |x: T| power_integrand(f, p, lambda, x);
    let inside: Vec<T> = cuts.iter().copied().filter(|&c| c > lo && c < hi).collect();
    if lo.is_finite() && hi.is_finite() {
        let opts = QuadOptions::new(tol)
            .breakpoints(inside)
            .breakpoints(env.scale_points(lo, hi));
        return Ok(integrate_with(h, lo, hi, &opts)?.value.re);
    }
    let (c0, c1) = core_window(env);
    let a = if lo.is_finite() { lo } else { c0.min(hi) };
    let b = if hi.is_finite() { hi } else { c1.max(lo) };
    let third = tol / lit(3.0);
    let mut total = T::zero();
    if a < b {
        let opts = QuadOptions::new(third)
            .breakpoints(inside.iter().copied())
            .breakpoints(env.scale_points(a, b));
        total = total + integrate_with(h, a, b, &opts)?.value.re;
    }
    for (from, to) in [(lo, a), (b, hi)] {
        if from.is_finite() && to.is_finite() {
            continue;
        }
        let (pmin, _) = p.bounds_on(from, to);
        let tail_env = env.powf(pmin);
        let opts = QuadOptions::new(third).breakpoints(inside.iter().copied());
        let part = match integrate_improper_with(h, &tail_env, from, to, &opts) {
            Ok(r) => r.value.re,
            Err(e @ Error::TailUnbounded { .. }) => match slowest_power(&tail_env) {
                Some(alpha) if alpha > T::one() => algebraic_tail(&h, from, to, alpha, third)?,
                _ => return Err(e),
            },
            Err(e) => return Err(e),
        };
        total = total + part;
    }
    Ok(total)
}

/// Smallest decay exponent among the power terms, if any.
fn slowest_power<T: Real>(env: &Envelope<T>) -> Option<T> {
    env.terms
        .iter()
        .filter_map(|t| match *t {
            EnvelopeTerm::Power { alpha, .. } => Some(alpha),
            _ => None,
        })
        .reduce(|a, b| a.min(b))
}

/// Half-line integral of a tail decaying like `|x|^-alpha`, `alpha > 1`,
/// without truncation. Exactly one of `from`, `to` is infinite.
fn algebraic_tail<T: Real>(h: &impl Fn(T) -> Complex<T>, from: T, to: T, alpha: T, tol: T) -> Result<T> {
    let half = tol / lit(2.0);
    let (start, sign) = if to.is_finite() {
        (to, -T::one())
    } else {
        (from, T::one())
    };
    // Reflect so the tail runs over [start', ∞) with start' = sign * start.
    let s0 = sign * start;
    let u0 = s0.max(T::one());
    let mut total = T::zero();
    if s0 < u0 {
        let near = |u: T| h(sign * u);
        total = total + integrate_with(near, s0, u0, &QuadOptions::new(half))?.value.re;
    }
    let amp = |u: T| h(sign * u);
    Ok(total + algebraic_half_line(u0, amp, alpha, half)?.value.re)
}

/// `‖f‖_{p(·)} = inf{λ > 0 : ρ(f/λ) <= 1}` by bracketing from `λ = 1` and
/// bisection to relative width `tol`. Returns `value = ∞` when no finite
/// `λ` works.
pub fn luxemburg_norm<T, F>(f: &F, p: &ExponentFunction<T>, tol: T) -> Result<NormResult<T>>
where
    T: Real,
    F: LineFunction<T> + ?Sized,
{
    if !(tol > T::zero()) {
        return Err(invalid("tolerance must be positive"));
    }
    if f.envelope().is_zero() {
        return Ok(NormResult {
            value: T::zero(),
            bracket: (T::zero(), T::zero()),
            modular_at_value: T::zero(),
        });
    }
    let line = IntervalUnion::line();
    let mtol = (tol * lit(1e-3)).max(T::epsilon() * lit(16.0));
    let rho = |lambda: T| -> Result<T> { Ok(modular(f, p, &line, lambda, mtol)?.total) };

    let one = rho(T::one())?;
    if one.is_infinite() {
        return Ok(NormResult {
            value: T::infinity(),
            bracket: (T::one(), T::infinity()),
            modular_at_value: T::infinity(),
        });
    }
    let two = lit::<T>(2.0);
    let (mut lo, mut hi, mut rho_hi);
    if one <= T::one() {
        hi = T::one();
        rho_hi = one;
        lo = T::one() / two;
        let mut steps = 0;
        loop {
            let r = rho(lo)?;
            if r > T::one() {
                break;
            }
            hi = lo;
            rho_hi = r;
            lo = lo / two;
            steps += 1;
            if steps > 2000 || lo == T::zero() {
                // Numerically zero function.
                return Ok(NormResult {
                    value: hi,
                    bracket: (T::zero(), hi),
                    modular_at_value: rho_hi,
                });
            }
        }
    } else {
        lo = T::one();
        hi = two;
        let mut steps = 0;
        loop {
            let r = rho(hi)?;
            if r <= T::one() {
                rho_hi = r;
                break;
            }
            lo = hi;
            hi = hi * two;
            steps += 1;
            if steps > 2000 || hi.is_infinite() {
                return Ok(NormResult {
                    value: T::infinity(),
                    bracket: (lo, T::infinity()),
                    modular_at_value: T::infinity(),
                });
            }
        }
    }
    while hi - lo > tol * hi {
        let mid = lo + (hi - lo) / two;
        if !(mid > lo && mid < hi) {
            break;
        }
        let r = rho(mid)?;
        if r <= T::one() {
            hi = mid;
            rho_hi = r;
        } else {
            lo = mid;
        }
    }
    Ok(NormResult {
        value: hi,
        bracket: (lo, hi),
        modular_at_value: rho_hi,
    })
}

/// `∫|fg|` against `K_{p(·)} ‖f‖_{p(·)} ‖g‖_{q(·)}`.
pub fn holder_check<T, F, G>(f: &F, g: &G, p: &ExponentFunction<T>, tol: T) -> Result<HolderReport<T>>
where
    T: Real,
    F: LineFunction<T> + ?Sized,
    G: LineFunction<T> + ?Sized,
{
    let q = p.conjugate();
    let norm_tol = T::default_norm_tol();
    let nf = luxemburg_norm(f, p, norm_tol)?.value;
    let ng = luxemburg_norm(g, &q, norm_tol)?.value;
    let constant = p.holder_constant();
    let ef = f.envelope();
    let eg = g.envelope();
    let a = ef.scaled(eg.sup());
    let b = eg.scaled(ef.sup());
    let env = if a.total_mass() <= b.total_mass() { a } else { b };
    let mut bps = f.breakpoints();
    bps.extend(g.breakpoints());
    let opts = QuadOptions::new(tol).breakpoints(bps);
    let lhs = integrate_improper_with(
        |x: T| Complex::new(f.eval(x).norm() * g.eval(x).norm(), T::zero()),
        &env,
        T::neg_infinity(),
        T::infinity(),
        &opts,
    )?;
    let rhs = constant * nf * ng;
    let slack = lit::<T>(4.0) * norm_tol * rhs + lhs.error_estimate + tol;
    Ok(HolderReport {
        lhs: lhs.value.re,
        rhs,
        constant,
        norm_f: nf,
        norm_g: ng,
        pass: lhs.value.re <= rhs + slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::{ExponentForm, Interval};
    use crate::funcspace::CatalogFunction;

    type E = ExponentFunction<f64>;
    type C = CatalogFunction<f64>;

    fn line() -> IntervalUnion<f64> {
        IntervalUnion::line()
    }

    #[test]
    fn modular_examples() {
        let ind = C::indicator(0.0, 1.0).unwrap();
        let two = E::constant(2.0).unwrap();
        assert!((modular(&ind, &two, &line(), 1.0, 1e-12).unwrap().total - 1.0).abs() < 1e-12);
        let ind2 = ind.scale_real(2.0);
        assert!((modular(&ind2, &two, &line(), 1.0, 1e-12).unwrap().total - 4.0).abs() < 1e-12);
        let inf = E::constant(f64::INFINITY).unwrap();
        let m = modular(&ind, &inf, &line(), 2.0, 1e-12).unwrap();
        assert_eq!(m.lebesgue_part, 0.0);
        assert!((m.esssup_part - 0.5).abs() < 1e-12);
    }

    #[test]
    fn norm_examples() {
        let two = E::constant(2.0).unwrap();
        let ind = C::indicator(0.0, 1.0).unwrap().scale_real(3.0);
        let n = luxemburg_norm(&ind, &two, 1e-10).unwrap();
        assert!((n.value - 3.0).abs() < 1e-8);
        let g = C::gaussian(1.0, 0.0, 0.0).unwrap();
        let n = luxemburg_norm(&g, &two, 1e-10).unwrap();
        assert!((n.value - (std::f64::consts::PI / 2.0).powf(0.25)).abs() < 1e-8);
        assert!(n.modular_at_value <= 1.0);
        let mixed = E::split(0.0, ExponentForm::Constant(2.0), ExponentForm::Constant(3.0)).unwrap();
        let n = luxemburg_norm(&C::indicator(-1.0, 1.0).unwrap(), &mixed, 1e-10).unwrap();
        assert!((n.value - 1.324_717_957_244_746).abs() < 1e-8);
    }

    #[test]
    fn slow_tail_gives_infinite_norm() {
        let f = C::power_tail(0.75, 1.0).unwrap();
        let n = luxemburg_norm(&f, &E::constant(1.2).unwrap(), 1e-8).unwrap();
        assert!(n.value.is_infinite());
        let n = luxemburg_norm(&f, &E::constant(2.0).unwrap(), 1e-8).unwrap();
        // ∫_1^∞ x^{-3/2} = 2
        assert!((n.value - 2f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn variable_tails_use_the_local_exponent() {
        // p = 1 + 1/log(e + |x|) on a Gaussian: finite, and the norm lies
        // between the L¹ and L² norms' extremes.
        let p = E::uniform(ExponentForm::LogDecay { kappa: 1.0 }).unwrap();
        let g = C::gaussian(1.0, 0.0, 0.0).unwrap();
        let n = luxemburg_norm(&g, &p, 1e-9).unwrap();
        assert!(n.value.is_finite() && n.value > 0.0);
        let m = modular(&g, &p, &line(), n.value, 1e-12).unwrap().total;
        assert!(m <= 1.0 && m > 1.0 - 1e-6);
    }

    #[test]
    fn holder_examples() {
        let two = E::constant(2.0).unwrap();
        let ind = C::indicator(0.0, 1.0).unwrap();
        let r = holder_check(&ind, &ind, &two, 1e-10).unwrap();
        assert!(r.pass && (r.lhs - 1.0).abs() < 1e-10 && (r.rhs - 1.0).abs() < 1e-7);
        let r = holder_check(&ind, &C::indicator(2.0, 3.0).unwrap(), &two, 1e-10).unwrap();
        assert!(r.pass && r.lhs == 0.0);
        let g = C::gaussian(1.0, 0.0, 0.0).unwrap();
        let r = holder_check(&g, &g, &two, 1e-10).unwrap();
        assert!(r.pass && (r.lhs - r.rhs).abs() < 1e-6);
    }

    #[test]
    fn region_restricts_the_integral() {
        let g = C::gaussian(1.0, 0.0, 0.0).unwrap();
        let two = E::constant(2.0).unwrap();
        let half = IntervalUnion::from_parts(vec![Interval::new(0.0, f64::INFINITY)]);
        let m = modular(&g, &two, &half, 1.0, 1e-12).unwrap().total;
        assert!((m - (std::f64::consts::PI / 2.0).sqrt() / 2.0).abs() < 1e-10);
    }
}
