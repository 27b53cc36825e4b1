//! Half-line integrals with slowly decaying analytic amplitudes.

use num_complex::Complex;

use super::{integrate_improper, integrate_with, Envelope, EnvelopeTerm, QuadOptions, QuadratureResult};
use crate::error::{invalid, Result};
use crate::scalar::{cis, lit, Real};

/// `∫_{u0}^∞ e^{-iνu} A(u) du` for `ν ≠ 0`, where `A` is analytic and
/// bounded by `bound` on the quarter plane swept by rotating the ray
/// towards decay (`Re u ≥ u0`, `sgn(ν) Im u ≤ 0`).
///
/// The ray is rotated to `u = u0 - i sgn(ν) y`, turning the oscillation into
/// the decaying factor `e^{-|ν| y}`.
pub fn fourier_half_line<T, A>(nu: T, u0: T, amp: A, bound: T, tol: T) -> Result<QuadratureResult<T>>
where
    T: Real,
    A: Fn(Complex<T>) -> Complex<T>,
{
    if nu == T::zero() {
        return Err(invalid("fourier_half_line needs a nonzero frequency"));
    }
    let sigma = nu.signum();
    let rate = nu.abs();
    let env = Envelope::new(vec![EnvelopeTerm::Exponential {
        scale: bound,
        rate,
        center: T::zero(),
    }]);
    let r = integrate_improper(
        |y: T| {
            let u = Complex::new(u0, -sigma * y);
            amp(u) * (-rate * y).exp()
        },
        &env,
        T::zero(),
        T::infinity(),
        tol,
    )?;
    let phase = cis(-nu * u0) * Complex::new(T::zero(), -sigma);
    Ok(r.scale(phase))
}

/// `∫_{u0}^∞ A(u) du` for `u0 > 0` and `|A(u)| = O(u^{-alpha})`, `alpha > 1`.
///
/// Uses `u = u0 v^{-m}` with `m = 1/(alpha - 1)`, which maps the tail to a
/// bounded integrand on `(0, 1]`.
pub fn algebraic_half_line<T, A>(u0: T, amp: A, alpha: T, tol: T) -> Result<QuadratureResult<T>>
where
    T: Real,
    A: Fn(T) -> Complex<T>,
{
    if !(u0 > T::zero()) {
        return Err(invalid("algebraic_half_line needs u0 > 0"));
    }
    if !(alpha > T::one()) {
        return Err(invalid("algebraic decay exponent must exceed 1"));
    }
    let m = T::one() / (alpha - T::one());
    let ln_u0 = u0.ln();
    let cap = lit::<T>(0.9) * T::max_value().ln();
    let opts = QuadOptions::new(tol);
    integrate_with(
        |v: T| {
            let log_u = ln_u0 - m * v.ln();
            if log_u > cap {
                return Complex::new(T::zero(), T::zero());
            }
            let u = log_u.exp();
            let jac = m * u / v;
            amp(u) * jac
        },
        T::zero(),
        T::one(),
        &opts,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotated_exponential_integral_matches_closed_form() {
        // ∫_1^∞ e^{-iνu} u^{-2} du against a dense direct sum of the
        // absolutely convergent integrand.
        let nu = 3.0;
        let r = fourier_half_line(nu, 1.0, |u: Complex<f64>| u.powf(-2.0), 1.0, 1e-12).unwrap();
        let direct = crate::quadrature::integrate_with(
            |u: f64| Complex::new(0.0, -nu * u).exp() / (u * u),
            1.0,
            2000.0,
            &QuadOptions::new(1e-13).frequency(nu),
        )
        .unwrap();
        // Tail past 2000 is bounded by 2/(ν·2000²) after one integration by parts.
        assert!((r.value - direct.value).norm() < 2e-7);
    }

    #[test]
    fn conditionally_convergent_tail() {
        // ∫_1^∞ sin(u)/u du = π/2 − Si(1)
        let si1 = 0.946_083_070_367_183_f64;
        let r = fourier_half_line(-1.0, 1.0, |u: Complex<f64>| u.inv(), 1.0, 1e-12).unwrap();
        // e^{iu}/u, imaginary part is the sine integral.
        assert!((r.value.im - (std::f64::consts::FRAC_PI_2 - si1)).abs() < 1e-11);
    }

    #[test]
    fn algebraic_map() {
        // ∫_2^∞ u^{-1.5} du = 2/√2
        let r = algebraic_half_line(2.0, |u: f64| Complex::new(u.powf(-1.5), 0.0), 1.5, 1e-12).unwrap();
        assert!((r.value.re - 2f64.sqrt()).abs() < 1e-11);
    }
}
