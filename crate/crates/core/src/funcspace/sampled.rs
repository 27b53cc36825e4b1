//! Sampled functions with linear interpolation.

use num_complex::Complex;

use super::{BvFunction, CatalogFunction, LineFunction};
use crate::error::{invalid, Error, Result};
use crate::quadrature::{integrate_improper_with, Envelope, EnvelopeTerm, QuadOptions, StieltjesWeight};
use crate::scalar::{lit, Real};

/// Values on a sorted grid, linearly interpolated and zero outside it.
///
/// A repeated abscissa marks a jump: the first value is the left limit and
/// the second the value from the right. The optional decay descriptor is
/// trusted metadata bounding `|f|` outside the grid when the samples stand
/// for a function with a tail.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction<T> {
    xs: Vec<T>,
    ys: Vec<Complex<T>>,
    tail: Envelope<T>,
}

impl<T: Real> SampledFunction<T> {
    pub fn new(xs: Vec<T>, ys: Vec<Complex<T>>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(invalid("sampled function needs at least two (x, y) pairs"));
        }
        if xs.iter().any(|x| !x.is_finite()) || ys.iter().any(|y| !(y.re.is_finite() && y.im.is_finite())) {
            return Err(invalid("sampled function values must be finite"));
        }
        for (i, w) in xs.windows(2).enumerate() {
            if w[1] < w[0] {
                return Err(invalid("sample abscissae must be non-decreasing"));
            }
            if w[1] == w[0] && i + 2 < xs.len() && xs[i + 2] == w[0] {
                return Err(invalid("an abscissa may appear at most twice"));
            }
        }
        Ok(SampledFunction {
            xs,
            ys,
            tail: Envelope::zero(),
        })
    }

    /// Attaches a user-declared bound on `|f|` for the region outside the
    /// grid.
    pub fn with_tail(mut self, tail: Envelope<T>) -> Self {
        self.tail = tail;
        self
    }

    pub fn xs(&self) -> &[T] {
        &self.xs
    }

    pub fn ys(&self) -> &[Complex<T>] {
        &self.ys
    }

    pub fn tail(&self) -> &Envelope<T> {
        &self.tail
    }

    pub fn range(&self) -> (T, T) {
        (self.xs[0], *self.xs.last().unwrap())
    }

    pub fn map_values(&self, f: impl Fn(T, Complex<T>) -> Complex<T>) -> Self {
        SampledFunction {
            xs: self.xs.clone(),
            ys: self.xs.iter().zip(&self.ys).map(|(&x, &y)| f(x, y)).collect(),
            tail: self.tail.clone(),
        }
    }
}

impl<T: Real> LineFunction<T> for SampledFunction<T> {
    fn eval(&self, x: T) -> Complex<T> {
        let (lo, hi) = self.range();
        if x < lo || x > hi {
            return Complex::new(T::zero(), T::zero());
        }
        // First index with xs[i] > x.
        let i = self.xs.partition_point(|&v| v <= x);
        if i == self.xs.len() {
            return *self.ys.last().unwrap();
        }
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let (y0, y1) = (self.ys[i - 1], self.ys[i]);
        if x1 == x0 {
            return y1;
        }
        let t = (x - x0) / (x1 - x0);
        y0 + (y1 - y0) * t
    }

    fn breakpoints(&self) -> Vec<T> {
        self.xs.clone()
    }

    fn envelope(&self) -> Envelope<T> {
        let (lo, hi) = self.range();
        let peak = self.ys.iter().fold(T::zero(), |m, y| m.max(y.norm()));
        let mut env = Envelope::compact(lo, hi, peak);
        if !self.tail.is_zero() {
            env = env.plus(&self.tail);
        }
        env
    }

    fn sup_abs_on(&self, lo: T, hi: T) -> T {
        // Piecewise linear: the maximum sits at a node or at a window end.
        let mut best = self
            .eval(lo.max(self.xs[0]))
            .norm()
            .max(self.eval(hi.min(self.range().1)).norm());
        for (x, y) in self.xs.iter().zip(&self.ys) {
            if *x >= lo && *x <= hi {
                best = best.max(y.norm());
            }
        }
        best
    }
}

/// `(g1 * g2)(x) = ∫ g1(t) g2(x - t) dt` at every grid point.
pub fn convolve<T: Real>(
    g1: &BvFunction<T>,
    g2: &CatalogFunction<T>,
    grid: &[T],
    tol: T,
) -> Result<SampledFunction<T>> {
    if !g2.is_l1() {
        return Err(Error::NotIntegrable(
            "second convolution factor is not integrable".into(),
        ));
    }
    if !g1.is_integrable() {
        return Err(Error::NotIntegrable(
            "first convolution factor is not integrable".into(),
        ));
    }
    let env1 = g1
        .value_envelope()
        .ok_or_else(|| Error::Unsupported("first convolution factor has no decay descriptor".into()))?;
    let env2 = g2.envelope();
    if grid.len() < 2 || grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(invalid("convolution grid needs at least two increasing points"));
    }
    let mut ys = Vec::with_capacity(grid.len());
    for &x in grid {
        // |g1(t) g2(x - t)| <= min(sup g1 · env2(x - t), sup g2 · env1(t))
        let e = env2.affine_preimage(-T::one(), x).scaled(env1.sup());
        let e = if e.total_mass() <= env1.total_mass() * env2.sup() {
            e
        } else {
            env1.scaled(env2.sup())
        };
        let mut bps = StieltjesWeight::breakpoints(g1);
        bps.extend(g2.breakpoints().into_iter().map(|b| x - b));
        let opts = QuadOptions::new(tol).breakpoints(bps).frequency(g2.max_frequency());
        let r = integrate_improper_with(
            |t: T| g1.eval(t) * g2.eval(x - t),
            &e,
            T::neg_infinity(),
            T::infinity(),
            &opts,
        )?;
        ys.push(r.value);
    }
    let tail = match env1.convolve(&env2) {
        Some(e) => e,
        None => Envelope::new(vec![EnvelopeTerm::Compact {
            lo: T::neg_infinity(),
            hi: T::infinity(),
            bound: env1.sup() * env2.total_mass().min(lit(1e300)),
        }]),
    };
    Ok(SampledFunction::new(grid.to_vec(), ys)?.with_tail(tail))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_and_jumps() {
        let f = SampledFunction::new(
            vec![0.0, 1.0, 1.0, 2.0],
            vec![
                Complex::new(0.0, 0.0),
                Complex::new(1.0, 0.0),
                Complex::new(3.0, 0.0),
                Complex::new(3.0, 1.0),
            ],
        )
        .unwrap();
        assert_eq!(f.eval(0.5).re, 0.5);
        assert_eq!(f.eval(1.0).re, 3.0);
        assert_eq!(f.eval(1.5), Complex::new(3.0, 0.5));
        assert_eq!(f.eval(-1.0).norm(), 0.0);
        assert_eq!(f.sup_abs_on(f64::NEG_INFINITY, f64::INFINITY), 10f64.sqrt());
        assert!(SampledFunction::new(vec![1.0, 0.0], vec![Complex::new(0.0, 0.0); 2]).is_err());
    }

    #[test]
    fn gaussian_self_convolution() {
        let g = CatalogFunction::<f64>::gaussian(1.0, 0.0, 0.0).unwrap();
        let c = convolve(&BvFunction::Catalog(g.clone()), &g, &[-1.0, 0.0, 0.5], 1e-12).unwrap();
        let half_pi = (std::f64::consts::PI / 2.0).sqrt();
        for (&x, y) in c.xs().iter().zip(c.ys()) {
            assert!((y.re - half_pi * (-x * x / 2.0).exp()).abs() < 1e-10);
        }
    }

    #[test]
    fn indicator_self_convolution_is_a_hat() {
        let g = CatalogFunction::<f64>::indicator(0.0, 1.0).unwrap();
        let grid = [0.25, 1.0, 1.5];
        let c = convolve(&BvFunction::Catalog(g.clone()), &g, &grid, 1e-12).unwrap();
        assert!((c.ys()[0].re - 0.25).abs() < 1e-10);
        assert!((c.ys()[1].re - 1.0).abs() < 1e-10);
        assert!((c.ys()[2].re - 0.5).abs() < 1e-10);
        let swapped = convolve(&BvFunction::Catalog(g.clone()), &g.reflect().reflect(), &grid, 1e-12).unwrap();
        for (a, b) in c.ys().iter().zip(swapped.ys()) {
            assert!((a - b).norm() < 2e-12);
        }
    }

    #[test]
    fn slow_tails_are_rejected() {
        let g = CatalogFunction::power_tail(0.75, 1.0).unwrap();
        let h = CatalogFunction::gaussian(1.0, 0.0, 0.0).unwrap();
        assert!(convolve(&BvFunction::Catalog(h), &g, &[0.0, 1.0], 1e-9).is_err());
    }
}
