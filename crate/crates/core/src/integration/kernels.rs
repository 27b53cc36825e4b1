//! Summability kernels `ψ_a(x) = ψ(x/a)/a` with `∫ψ = 1`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::funcspace::CatalogFunction;
use crate::quadrature::{
    algebraic_half_line, fourier_half_line, integrate_improper, integrate_with, Envelope, EnvelopeTerm, QuadOptions,
};
use crate::scalar::{lit, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelFamily {
    /// `ψ(x) = (2π)^{-1} (sin(x/2) / (x/2))²`, `ψ̂(s) = (1 - |s|)₊`.
    CesaroFejer,
    /// `ψ(x) = 1 / (π (1 + x²))`, `ψ̂(s) = e^{-|s|}`.
    AbelPoisson,
    /// `ψ(x) = e^{-x²/4} / (2√π)`, `ψ̂(s) = e^{-s²}`.
    GaussWeierstrass,
}

impl KernelFamily {
    pub const ALL: [KernelFamily; 3] = [
        KernelFamily::CesaroFejer,
        KernelFamily::AbelPoisson,
        KernelFamily::GaussWeierstrass,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KernelFamily::CesaroFejer => "cesaro-fejer",
            KernelFamily::AbelPoisson => "abel-poisson",
            KernelFamily::GaussWeierstrass => "gauss-weierstrass",
        }
    }
}

impl fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        KernelFamily::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| invalid(format!("unknown kernel '{}'", s)))
    }
}

/// One member `ψ_a` of a kernel family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Kernel<T> {
    pub family: KernelFamily,
    pub a: T,
}

impl<T: Real> Kernel<T> {
    pub fn new(family: KernelFamily, a: T) -> Result<Self> {
        if !(a > T::zero() && a.is_finite()) {
            return Err(invalid("kernel scale a must be positive"));
        }
        Ok(Kernel { family, a })
    }

    /// `ψ_a(x)`.
    pub fn psi(&self, x: T) -> T {
        let a = self.a;
        let u = x / a;
        let v = match self.family {
            KernelFamily::CesaroFejer => {
                let h = u * lit(0.5);
                let sinc = if h.abs() < lit(1e-8) {
                    T::one() - h * h / lit(6.0)
                } else {
                    h.sin() / h
                };
                sinc * sinc / T::TAU()
            }
            KernelFamily::AbelPoisson => T::one() / (T::PI() * (T::one() + u * u)),
            KernelFamily::GaussWeierstrass => (-u * u / lit(4.0)).exp() / (lit::<T>(2.0) * T::PI().sqrt()),
        };
        v / a
    }

    /// `ψ̂_a(s) = ψ̂(a s)`.
    pub fn psi_hat(&self, s: T) -> T {
        let t = self.a * s;
        match self.family {
            KernelFamily::CesaroFejer => (T::one() - t.abs()).max(T::zero()),
            KernelFamily::AbelPoisson => (-t.abs()).exp(),
            KernelFamily::GaussWeierstrass => (-t * t).exp(),
        }
    }

    /// Multiplier `K_a = (2π)^{-1} ψ̂_a`, so that
    /// `I_a[f](x) = ∫ e^{ixs} K_a(s) f̂(s) ds = (f * ψ_a)(x)`.
    pub fn multiplier(&self, s: T) -> T {
        self.psi_hat(s) / T::TAU()
    }

    /// `s ↦ e^{ixs} K_a(s)` as a catalog function.
    pub fn modulated_multiplier(&self, x: T) -> Result<CatalogFunction<T>> {
        let a = self.a;
        let base = match self.family {
            KernelFamily::CesaroFejer => CatalogFunction::hat(-T::one() / a, T::one() / a)?,
            KernelFamily::AbelPoisson => CatalogFunction::exponential(a, T::zero())?,
            KernelFamily::GaussWeierstrass => CatalogFunction::gaussian(a * a, T::zero(), T::zero())?,
        };
        Ok(base.scale_real(T::one() / T::TAU()).modulate(x))
    }

    /// Pointwise bound on `ψ_a`.
    pub fn envelope(&self) -> Envelope<T> {
        let a = self.a;
        let pi = T::PI();
        let term = match self.family {
            // (sin(u/2)/(u/2))² <= min(1, 4/u²)
            KernelFamily::CesaroFejer => EnvelopeTerm::Power {
                scale: lit::<T>(2.0) * a / pi,
                alpha: lit(2.0),
                center: T::zero(),
                from: lit::<T>(2.0) * a,
                near: T::one() / (T::TAU() * a),
            },
            KernelFamily::AbelPoisson => EnvelopeTerm::Power {
                scale: a / pi,
                alpha: lit(2.0),
                center: T::zero(),
                from: a,
                near: T::one() / (pi * a),
            },
            KernelFamily::GaussWeierstrass => EnvelopeTerm::Gaussian {
                scale: T::one() / (lit::<T>(2.0) * a * pi.sqrt()),
                rate: T::one() / (lit::<T>(4.0) * a * a),
                center: T::zero(),
            },
        };
        Envelope::new(vec![term])
    }

    /// Oscillation frequency of `ψ_a`.
    pub fn frequency(&self) -> T {
        match self.family {
            KernelFamily::CesaroFejer => T::one() / self.a,
            _ => T::zero(),
        }
    }

    /// `∫ ψ_a` by quadrature, with the slow tails integrated exactly enough
    /// to reach `tol`.
    pub fn mass(&self, tol: T) -> Result<T> {
        let a = self.a;
        let third = tol / lit(3.0);
        match self.family {
            KernelFamily::GaussWeierstrass => {
                let r = integrate_improper(
                    |x: T| Complex::new(self.psi(x), T::zero()),
                    &self.envelope(),
                    T::neg_infinity(),
                    T::infinity(),
                    tol,
                )?;
                Ok(r.value.re)
            }
            KernelFamily::AbelPoisson => {
                let r0 = lit::<T>(4.0) * a;
                let core = integrate_with(
                    |x: T| Complex::new(self.psi(x), T::zero()),
                    -r0,
                    r0,
                    &QuadOptions::new(third),
                )?;
                let tail = algebraic_half_line(r0, |x: T| Complex::new(self.psi(x), T::zero()), lit(2.0), third)?;
                Ok(core.value.re + lit::<T>(2.0) * tail.value.re)
            }
            KernelFamily::CesaroFejer => {
                // ψ_a(x) = (1 - cos(x/a)) a / (π x²); tail in u = x/a.
                let r0 = lit::<T>(20.0);
                let core = integrate_with(
                    |u: T| Complex::new(self.psi(a * u) * a, T::zero()),
                    -r0,
                    r0,
                    &QuadOptions::new(third).frequency(T::one()),
                )?;
                // ∫_{r0}^∞ (1 - cos u)/(π u²) du = 1/(π r0) - Re ∫ e^{-iu}/(π u²)
                let osc = fourier_half_line(T::one(), r0, |u: Complex<T>| (u * u).inv(), T::one() / (r0 * r0), third)?;
                let tail = (T::one() / r0 - osc.value.re) / T::PI();
                Ok(core.value.re + lit::<T>(2.0) * tail)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_mass() {
        for fam in KernelFamily::ALL {
            for a in [1.0f64, 0.1, 1.0 / 16.0] {
                let k = Kernel::new(fam, a).unwrap();
                let m = k.mass(1e-12).unwrap();
                assert!((m - 1.0).abs() < 1e-10, "{fam} {a}: {m}");
            }
        }
    }

    #[test]
    fn envelope_dominates() {
        for fam in KernelFamily::ALL {
            let k = Kernel::new(fam, 0.3).unwrap();
            let env = k.envelope();
            for i in -2000..2000 {
                let x = i as f64 * 0.0137;
                assert!(k.psi(x) <= env.at(x) * (1.0 + 1e-12) + 1e-300, "{fam} at {x}");
            }
        }
    }

    #[test]
    fn multiplier_is_transform_of_kernel() {
        for fam in KernelFamily::ALL {
            let k = Kernel::new(fam, 0.5f64).unwrap();
            let g = k.modulated_multiplier(0.0).unwrap();
            for s in [0.0f64, 0.7, 1.9, 3.0] {
                assert!((g.eval(s).re - k.multiplier(s)).abs() < 1e-15);
            }
        }
        assert_eq!(
            "abel-poisson".parse::<KernelFamily>().unwrap(),
            KernelFamily::AbelPoisson
        );
        assert!("x".parse::<KernelFamily>().is_err());
    }
}
