//! Schwartz test functions: modulated polynomial-times-Gaussian sums.

use num_complex::Complex;

use super::{CatalogFunction, Shape};
use crate::error::{invalid, Result};
use crate::scalar::Real;

/// Test function `φ` with closed-form `φ'` and `φ̂`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchwartzFunction<T> {
    phi: CatalogFunction<T>,
}

impl<T: Real> SchwartzFunction<T> {
    /// Accepts catalog functions built only from Gaussian and
    /// polynomial-times-Gaussian terms.
    pub fn new(phi: CatalogFunction<T>) -> Result<Self> {
        let ok = phi
            .terms()
            .iter()
            .all(|t| matches!(t.shape, Shape::Gaussian { .. } | Shape::PolyGaussian { .. }));
        if !ok {
            return Err(invalid("Schwartz test functions must be (polynomial times) Gaussians"));
        }
        Ok(SchwartzFunction { phi })
    }

    pub fn gaussian(a: T, center: T, omega: T) -> Result<Self> {
        SchwartzFunction::new(CatalogFunction::gaussian(a, center, omega)?)
    }

    pub fn as_catalog(&self) -> &CatalogFunction<T> {
        &self.phi
    }

    pub fn eval(&self, x: T) -> Complex<T> {
        self.phi.eval(x)
    }

    /// `φ^{(n)}`.
    pub fn derivative(&self, n: usize) -> SchwartzFunction<T> {
        let mut d = self.phi.clone();
        for _ in 0..n {
            d = d.derivative().expect("Gaussian terms differentiate in closed form");
        }
        SchwartzFunction { phi: d }
    }

    /// `φ̂(s) = ∫ e^{-ist} φ(t) dt` in closed form.
    pub fn fourier(&self, s: T) -> Complex<T> {
        self.phi
            .fourier_transform(s, T::one())
            .expect("Gaussian terms have closed-form transforms")
            .value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rapid_decay_on_grid() {
        let phi = SchwartzFunction::new(
            CatalogFunction::poly_gaussian(vec![1.0, 2.0, -1.0], 0.5, 0.3)
                .unwrap()
                .modulate(1.5),
        )
        .unwrap();
        for k in 0..=4 {
            let m = (0..=2000)
                .map(|i| {
                    let x = -50.0 + 0.05 * i as f64;
                    x.abs().powi(k) * phi.eval(x).norm()
                })
                .fold(0.0, f64::max);
            assert!(m.is_finite() && m < 1e3, "k = {k}: {m}");
        }
    }

    #[test]
    fn derivative_and_transform() {
        let phi = SchwartzFunction::gaussian(1.0, 0.0, 0.0).unwrap();
        let d = phi.derivative(1);
        assert!((d.eval(1.0).re + 2.0 * (-1.0f64).exp()).abs() < 1e-15);
        assert!((phi.fourier(0.0).re - std::f64::consts::PI.sqrt()).abs() < 1e-15);
        assert!(SchwartzFunction::new(CatalogFunction::<f64>::indicator(0.0, 1.0).unwrap()).is_err());
    }
}
