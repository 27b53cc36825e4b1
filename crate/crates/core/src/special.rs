//! Special functions: Lambert W, Γ, Hurwitz ζ and the sinc-power constant `C_q`.

use crate::error::{invalid, Error, Result};
use crate::quadrature::integrate_real;
use crate::scalar::{lit, to_f64, Real};

/// Principal branch of the Lambert W function on `x > 0`.
///
/// Halley iteration started from `log(1 + x)`.
pub fn lambert_w<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(invalid(format!("lambert_w needs a finite x > 0, got {}", x)));
    }
    let two = lit::<T>(2.0);
    let mut w = x.ln_1p();
    for _ in 0..100 {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + T::one();
        let denom = ew * wp1 - (w + two) * f / (two * wp1);
        let step = f / denom;
        w = w - step;
        if step.abs() <= lit::<T>(4.0) * T::epsilon() * w.abs().max(T::min_positive_value()) {
            return Ok(w);
        }
    }
    Ok(w)
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) by the Lanczos approximation (g = 7, nine terms) with reflection
/// for `x < 1/2`.
pub fn gamma<T: Real>(x: T) -> Result<T> {
    if x <= T::zero() && x == x.floor() {
        return Err(invalid(format!("gamma has a pole at {}", x)));
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked<T: Real>(x: T) -> T {
    let half = lit::<T>(0.5);
    if x < half {
        let pi = T::PI();
        return pi / ((pi * x).sin() * gamma_unchecked(T::one() - x));
    }
    let x = x - T::one();
    let mut acc = lit::<T>(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc = acc + lit::<T>(c) / (x + T::from_usize(i).unwrap());
    }
    let t = x + lit::<T>(LANCZOS_G) + half;
    (T::TAU()).sqrt() * t.powf(x + half) * (-t).exp() * acc
}

// B_{2j} / (2j)! for j = 1..=10.
const BERNOULLI_OVER_FACTORIAL: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3_617.0 / 10_670_622_842_880_000.0,
    43_867.0 / 5_109_094_217_170_944_000.0,
    -174_611.0 / 802_857_662_698_291_200_000.0,
];

/// Hurwitz zeta `ζ(s, a) = Σ_{n≥0} (n + a)^{-s}` for `s > 1`, `a > 0`,
/// by Euler–Maclaurin summation.
pub fn hurwitz_zeta<T: Real>(s: T, a: T) -> Result<T> {
    if !(s > T::one()) || !(a > T::zero()) {
        return Err(invalid("hurwitz_zeta needs s > 1 and a > 0"));
    }
    let n = 12usize;
    let mut sum = T::zero();
    for k in 0..n {
        sum = sum + (a + T::from_usize(k).unwrap()).powf(-s);
    }
    let x = a + T::from_usize(n).unwrap();
    sum = sum + x.powf(T::one() - s) / (s - T::one()) + x.powf(-s) * lit(0.5);
    // Rising factorial s (s+1) ... (s+2j-2) times x^{-s-2j+1}.
    let mut rising = s;
    let mut xpow = x.powf(-s - T::one());
    let inv_x2 = T::one() / (x * x);
    for (j, &b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = lit::<T>(b) * rising * xpow;
        sum = sum + term;
        if term.abs() <= T::epsilon() * sum.abs() {
            break;
        }
        let k = T::from_usize(2 * j + 1).unwrap();
        rising = rising * (s + k) * (s + k + T::one());
        xpow = xpow * inv_x2;
    }
    Ok(sum)
}

/// `C_q = 4^{1/q} (∫_0^∞ |sin y / y|^q dy)^{1/q}` for `q ∈ (1, ∞]`, with `C_∞ = 1`.
///
/// The integral is folded onto `[0, π]`: the first arch directly, and every
/// later arch through `Σ_{n≥1} (nπ + u)^{-q} = π^{-q} ζ(q, 1 + u/π)`.
pub fn c_q<T: Real>(q: T) -> Result<T> {
    if q.is_infinite() && q > T::zero() {
        return Ok(T::one());
    }
    if !(q > T::one()) {
        return Err(invalid(format!("C_q needs q > 1, got {}", q)));
    }
    let pi = T::PI();
    let tol = (T::epsilon() * lit(1e3)).max(lit(1e-14));
    let (first, _) = integrate_real(
        |y: T| {
            if y == T::zero() {
                T::one()
            } else {
                (y.sin() / y).abs().powf(q)
            }
        },
        T::zero(),
        pi,
        tol,
    )?;
    let (rest, _) = integrate_real(
        |u: T| {
            let s = u.sin();
            if s <= T::zero() {
                return T::zero();
            }
            // q > 1 and 1 + u/π >= 1, so the zeta call cannot fail.
            let z = hurwitz_zeta(q, T::one() + u / pi).unwrap_or_else(|_| T::nan());
            s.powf(q) * pi.powf(-q) * z
        },
        T::zero(),
        pi,
        tol,
    )?;
    let total = first + rest;
    let inv = T::one() / q;
    let c = lit::<T>(4.0).powf(inv) * total.powf(inv);
    if !c.is_finite() {
        return Err(Error::NonConvergence {
            estimate_re: to_f64(c),
            estimate_im: 0.0,
            error: f64::INFINITY,
        });
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn lambert_w_values() {
        assert!((lambert_w(std::f64::consts::E).unwrap() - 1.0).abs() < 1e-15);
        let w2 = lambert_w(2.0_f64).unwrap();
        assert!((w2 - 0.852_605_502_013_725_5).abs() < 1e-14);
        for x in [0.1, 1.0, 10.0, 100.0, 1e-8, 1e8] {
            let w: f64 = lambert_w(x).unwrap();
            assert!((w * w.exp() - x).abs() <= 1e-12 * x);
        }
        assert!(lambert_w(0.0).is_err());
        assert!(lambert_w(-1.0).is_err());
    }

    #[test]
    fn gamma_values() {
        assert!((gamma(0.5_f64).unwrap() - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(1.0_f64).unwrap() - 1.0).abs() < 1e-14);
        assert!((gamma(5.0_f64).unwrap() - 24.0).abs() < 1e-12);
        // Γ(1/3) = 2.678938534707747...
        assert!((gamma(1.0_f64 / 3.0).unwrap() / 2.678_938_534_707_747_6 - 1.0).abs() < 1e-13);
        assert!(gamma(0.0).is_err());
        assert!(gamma(-2.0).is_err());
    }

    #[test]
    fn hurwitz_reduces_to_riemann() {
        let z2 = hurwitz_zeta(2.0, 1.0).unwrap();
        assert!((z2 - PI * PI / 6.0).abs() < 1e-14);
        let z4 = hurwitz_zeta(4.0, 1.0).unwrap();
        assert!((z4 - PI.powi(4) / 90.0).abs() < 1e-14);
        // ζ(2, 1/2) = π²/2
        assert!((hurwitz_zeta(2.0, 0.5).unwrap() - PI * PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn c_q_known_values() {
        assert_eq!(c_q(f64::INFINITY).unwrap(), 1.0);
        assert!((c_q(2.0).unwrap() - (2.0 * PI).sqrt()).abs() < 1e-12);
        // ∫ sinc⁴ = π/3
        assert!((c_q(4.0).unwrap() - (4.0 * PI / 3.0).powf(0.25)).abs() < 1e-12);
        assert!(c_q(1.0).is_err());
        let seq: Vec<f64> = [1.5, 2.0, 4.0, 8.0].iter().map(|&q| c_q(q).unwrap()).collect();
        assert!(seq.windows(2).all(|w| w[0] > w[1]));
    }
}
