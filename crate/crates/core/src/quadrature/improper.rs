use num_complex::Complex;

use super::{integrate_with, Envelope, QuadOptions, QuadratureResult};
use crate::error::{invalid, Result};
use crate::scalar::{lit, Real};

/// `∫_lo^hi h` where either limit may be infinite and `env` dominates `|h|`.
///
/// Infinite limits are truncated where the envelope tail drops below
/// `tol / 2`; the interior is integrated to `tol / 2`. The returned error
/// estimate includes the discarded tail bound.
pub fn integrate_improper<T, F>(h: F, env: &Envelope<T>, lo: T, hi: T, tol: T) -> Result<QuadratureResult<T>>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    integrate_improper_with(h, env, lo, hi, &QuadOptions::new(tol))
}

/// [`integrate_improper`] with breakpoints, frequency and budget options.
pub fn integrate_improper_with<T, F>(
    h: F,
    env: &Envelope<T>,
    lo: T,
    hi: T,
    opts: &QuadOptions<T>,
) -> Result<QuadratureResult<T>>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    if lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(invalid("improper integral needs lo <= hi"));
    }
    if lo == hi {
        return Ok(QuadratureResult::zero());
    }
    if lo.is_finite() && hi.is_finite() {
        let mut o = opts.clone();
        o.breakpoints.extend(env.scale_points(lo, hi));
        return integrate_with(h, lo, hi, &o);
    }
    let half = opts.tol * lit(0.5);
    let (a, b) = env.truncate(half, lo, hi)?;
    let mut tail = T::zero();
    if hi.is_infinite() {
        tail = tail + env.right_tail(b);
    }
    if lo.is_infinite() {
        tail = tail + env.left_tail(a);
    }
    let mut o = opts.clone();
    o.tol = half;
    o.breakpoints.extend(env.scale_points(a, b));
    let r = integrate_with(h, a, b, &o)?;
    Ok(QuadratureResult {
        error_estimate: r.error_estimate + tail,
        ..r
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::EnvelopeTerm;

    fn gauss_env() -> Envelope<f64> {
        Envelope::new(vec![EnvelopeTerm::Gaussian {
            scale: 1.0,
            rate: 1.0,
            center: 0.0,
        }])
    }

    #[test]
    fn gaussian_over_the_line() {
        let r = integrate_improper(
            |t: f64| Complex::new((-t * t).exp(), 0.0),
            &gauss_env(),
            f64::NEG_INFINITY,
            f64::INFINITY,
            1e-10,
        )
        .unwrap();
        assert!((r.value.re - std::f64::consts::PI.sqrt()).abs() < 1e-10);
        assert!(r.error_estimate <= 1e-10);
    }

    #[test]
    fn odd_integrand_vanishes() {
        let env = gauss_env().times_growth(1.0, 1.0);
        let r = integrate_improper(
            |t: f64| Complex::new(t * (-t * t).exp(), 0.0),
            &env,
            f64::NEG_INFINITY,
            f64::INFINITY,
            1e-10,
        )
        .unwrap();
        assert!(r.value.re.abs() < 1e-12);
    }

    #[test]
    fn inverse_square_outside_unit_interval() {
        let env = Envelope::new(vec![EnvelopeTerm::Power {
            scale: 1.0,
            alpha: 2.0,
            center: 0.0,
            from: 1.0,
            near: 0.0,
        }]);
        let h = |t: f64| Complex::new(if t.abs() > 1.0 { t.powi(-2) } else { 0.0 }, 0.0);
        let opts = QuadOptions::new(1e-8).breakpoints([-1.0, 1.0]);
        let r = integrate_improper_with(h, &env, f64::NEG_INFINITY, f64::INFINITY, &opts).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-8);
    }
}
