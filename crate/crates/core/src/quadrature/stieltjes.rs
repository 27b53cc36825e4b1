use num_complex::Complex;

use super::{integrate_with, QuadOptions, QuadratureResult};
use crate::error::Result;
use crate::scalar::Real;

/// A right-continuous weight of bounded variation, described through its
/// measure `dg = g'(t) dt + Σ jump_j δ_{x_j}`.
pub trait StieltjesWeight<T: Real> {
    /// `g'` away from the jumps and breakpoints.
    fn density(&self, x: T) -> Complex<T>;
    /// `(x_j, g(x_j+) - g(x_j-))`.
    fn jumps(&self) -> Vec<(T, Complex<T>)>;
    /// Points where `g'` may be discontinuous.
    fn breakpoints(&self) -> Vec<T>;
}

/// `∫_a^b F dg` for continuous `F`: the absolutely continuous part plus
/// `F(x_j) · jump_j` for every jump in `(a, b]`.
pub fn stieltjes<T, F, W>(f: F, g: &W, a: T, b: T, tol: T) -> Result<QuadratureResult<T>>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
    W: StieltjesWeight<T> + ?Sized,
{
    stieltjes_with(f, g, a, b, &QuadOptions::new(tol))
}

pub(crate) fn stieltjes_with<T, F, W>(f: F, g: &W, a: T, b: T, opts: &QuadOptions<T>) -> Result<QuadratureResult<T>>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
    W: StieltjesWeight<T> + ?Sized,
{
    let mut o = opts.clone();
    let jumps = g.jumps();
    o.breakpoints.extend(g.breakpoints());
    o.breakpoints.extend(jumps.iter().map(|j| j.0));
    let smooth = integrate_with(|t| f(t) * g.density(t), a, b, &o)?;
    let mut point = Complex::new(T::zero(), T::zero());
    let mut evals = 0;
    for (x, h) in jumps {
        if x > a && x <= b {
            point = point + f(x) * h;
            evals += 1;
        }
    }
    Ok(QuadratureResult {
        value: smooth.value + point,
        error_estimate: smooth.error_estimate,
        evaluations: smooth.evaluations + evals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Poly2;
    impl StieltjesWeight<f64> for Poly2 {
        fn density(&self, x: f64) -> Complex<f64> {
            Complex::new(2.0 * x, 0.0)
        }
        fn jumps(&self) -> Vec<(f64, Complex<f64>)> {
            Vec::new()
        }
        fn breakpoints(&self) -> Vec<f64> {
            Vec::new()
        }
    }

    struct Step(f64);
    impl StieltjesWeight<f64> for Step {
        fn density(&self, _: f64) -> Complex<f64> {
            Complex::new(0.0, 0.0)
        }
        fn jumps(&self) -> Vec<(f64, Complex<f64>)> {
            vec![(self.0, Complex::new(1.0, 0.0))]
        }
        fn breakpoints(&self) -> Vec<f64> {
            Vec::new()
        }
    }

    #[test]
    fn smooth_weight() {
        let r = stieltjes(|t: f64| Complex::new(t, 0.0), &Poly2, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value.re - 2.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn point_mass_and_right_continuity() {
        let r = stieltjes(|t: f64| Complex::new(t, 0.0), &Step(0.5), 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value.re - 0.5).abs() < 1e-15);
        // A jump at the left end is already part of g(a).
        let r = stieltjes(|_| Complex::new(1.0, 0.0), &Step(0.0), 0.0, 1.0, 1e-12).unwrap();
        assert_eq!(r.value.re, 0.0);
        let r = stieltjes(|_| Complex::new(1.0, 0.0), &Step(1.0), 0.0, 1.0, 1e-12).unwrap();
        assert_eq!(r.value.re, 1.0);
    }

    #[test]
    fn integration_by_parts_on_smooth_weight() {
        // ∫ F dg + ∫ g dF = F(b)g(b) − F(a)g(a) with F = sin, g = t².
        let a = 0.2;
        let b = 1.7;
        let l = stieltjes(|t: f64| Complex::new(t.sin(), 0.0), &Poly2, a, b, 1e-12).unwrap();
        let r = crate::quadrature::integrate(|t: f64| Complex::new(t * t * t.cos(), 0.0), a, b, 1e-12).unwrap();
        let exact = b.sin() * b * b - a.sin() * a * a;
        assert!((l.value.re + r.value.re - exact).abs() < 1e-12);
    }
}
