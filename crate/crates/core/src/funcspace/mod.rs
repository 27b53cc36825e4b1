//! Inputs `f`, weights `g` of bounded variation, Schwartz test functions and
//! sampled data.

mod bv;
mod catalog;
mod sampled;
mod schwartz;

use num_complex::Complex;

use crate::quadrature::Envelope;
use crate::scalar::{lit, Real};

pub use bv::{BvFunction, Convolved, PieceForm, PiecewiseFunction, SmoothPiece};
pub use catalog::{CatalogFunction, Decay, Shape, Term};
pub use sampled::{convolve, SampledFunction};
pub use schwartz::SchwartzFunction;

/// A function on the real line that the modular and the norm can consume.
pub trait LineFunction<T: Real> {
    fn eval(&self, x: T) -> Complex<T>;

    /// Points where the function may be non-smooth.
    fn breakpoints(&self) -> Vec<T>;

    /// Pointwise bound on `|f|`.
    fn envelope(&self) -> Envelope<T>;

    /// Dominant oscillation frequency.
    fn max_frequency(&self) -> T {
        T::zero()
    }

    /// `sup |f|` on `[lo, hi]` (either end may be infinite).
    ///
    /// Dense sampling with breakpoints and golden-section polishing around
    /// the best sample.
    fn sup_abs_on(&self, lo: T, hi: T) -> T {
        dense_sup(self, lo, hi)
    }
}

impl<T: Real> LineFunction<T> for CatalogFunction<T> {
    fn eval(&self, x: T) -> Complex<T> {
        CatalogFunction::eval(self, x)
    }
    fn breakpoints(&self) -> Vec<T> {
        CatalogFunction::breakpoints(self)
    }
    fn envelope(&self) -> Envelope<T> {
        CatalogFunction::envelope(self)
    }
    fn max_frequency(&self) -> T {
        CatalogFunction::max_frequency(self)
    }
}

impl<T: Real, F: LineFunction<T> + ?Sized> LineFunction<T> for &F {
    fn eval(&self, x: T) -> Complex<T> {
        (**self).eval(x)
    }
    fn breakpoints(&self) -> Vec<T> {
        (**self).breakpoints()
    }
    fn envelope(&self) -> Envelope<T> {
        (**self).envelope()
    }
    fn max_frequency(&self) -> T {
        (**self).max_frequency()
    }
    fn sup_abs_on(&self, lo: T, hi: T) -> T {
        (**self).sup_abs_on(lo, hi)
    }
}

pub(crate) fn dense_sup<T: Real, F: LineFunction<T> + ?Sized>(f: &F, lo: T, hi: T) -> T {
    let env = f.envelope();
    if env.is_zero() || lo >= hi {
        return T::zero();
    }
    // Beyond this window the envelope is negligible against the peak.
    let peak = env.sup();
    let (mut a, mut b) = (lo, hi);
    if a.is_infinite() || b.is_infinite() {
        let (ta, tb) = match env.truncate(peak * lit(1e-9), a, b) {
            Ok(w) => w,
            Err(_) => {
                let (h0, h1) = env.hull();
                (h0 - lit(1e6), h1 + lit(1e6))
            }
        };
        a = ta;
        b = tb;
    }
    if !(a < b) {
        return f.eval(a).norm();
    }
    let n = 4096usize;
    let step = (b - a) / T::from_usize(n).unwrap();
    let mut best = T::zero();
    let mut best_x = a;
    let mut consider = |x: T| {
        if x >= lo && x <= hi {
            let v = f.eval(x).norm();
            if v > best {
                best = v;
                best_x = x;
            }
        }
    };
    for i in 0..=n {
        consider(a + step * T::from_usize(i).unwrap());
    }
    for p in f.breakpoints() {
        if p >= lo && p <= hi {
            consider(p);
            let eps = p.abs().max(T::one()) * lit(1e-12);
            consider(p - eps);
            consider(p + eps);
        }
    }
    // Golden-section polish inside the neighbouring cells.
    let phi = lit::<T>(0.618_033_988_749_895);
    let mut l = (best_x - step).max(a);
    let mut r = (best_x + step).min(b);
    for _ in 0..60 {
        let x1 = r - phi * (r - l);
        let x2 = l + phi * (r - l);
        if f.eval(x1).norm() >= f.eval(x2).norm() {
            r = x2;
        } else {
            l = x1;
        }
    }
    let polished = f.eval((l + r) * lit(0.5)).norm();
    best.max(polished)
}
