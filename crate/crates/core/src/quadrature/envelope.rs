//! Pointwise upper bounds used to certify truncation of improper integrals.

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

/// One summand of an [`Envelope`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EnvelopeTerm<T> {
    /// `|h| <= bound` on `[lo, hi]`, zero elsewhere.
    Compact { lo: T, hi: T, bound: T },
    /// `|h(x)| <= scale * exp(-rate (x - center)^2)`.
    Gaussian { scale: T, rate: T, center: T },
    /// `|h(x)| <= scale * exp(-rate |x - center|)`.
    Exponential { scale: T, rate: T, center: T },
    /// `|h(x)| <= scale |x - center|^-alpha` for `|x - center| >= from`,
    /// and `|h(x)| <= near` closer to the center.
    Power {
        scale: T,
        alpha: T,
        center: T,
        from: T,
        near: T,
    },
}

/// Sum of elementary bounds dominating `|h|` on the whole line.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Envelope<T> {
    pub terms: Vec<EnvelopeTerm<T>>,
}

impl<T: Real> EnvelopeTerm<T> {
    fn at(&self, x: T) -> T {
        match *self {
            EnvelopeTerm::Compact { lo, hi, bound } => {
                if x >= lo && x <= hi {
                    bound
                } else {
                    T::zero()
                }
            }
            EnvelopeTerm::Gaussian { scale, rate, center } => scale * (-rate * (x - center).powi(2)).exp(),
            EnvelopeTerm::Exponential { scale, rate, center } => scale * (-rate * (x - center).abs()).exp(),
            EnvelopeTerm::Power {
                scale,
                alpha,
                center,
                from,
                near,
            } => {
                let d = (x - center).abs();
                if d >= from {
                    scale * d.powf(-alpha)
                } else {
                    near
                }
            }
        }
    }

    fn sup(&self) -> T {
        match *self {
            EnvelopeTerm::Compact { bound, .. } => bound,
            EnvelopeTerm::Gaussian { scale, .. } | EnvelopeTerm::Exponential { scale, .. } => scale,
            EnvelopeTerm::Power {
                scale,
                alpha,
                from,
                near,
                ..
            } => near.max(scale * from.powf(-alpha)),
        }
    }

    /// Upper bound on `∫_x^∞`.
    fn right_tail(&self, x: T) -> T {
        let half = lit::<T>(0.5);
        match *self {
            EnvelopeTerm::Compact { lo, hi, bound } => bound * (hi - x.max(lo)).max(T::zero()),
            EnvelopeTerm::Gaussian { scale, rate, center } => {
                let full = (T::PI() / rate).sqrt();
                let d = x - center;
                if d > T::zero() {
                    let mills = (-rate * d * d).exp() / (lit::<T>(2.0) * rate * d);
                    scale * mills.min(full * half)
                } else {
                    scale * full
                }
            }
            EnvelopeTerm::Exponential { scale, rate, center } => {
                let d = x - center;
                if d > T::zero() {
                    scale * (-rate * d).exp() / rate
                } else {
                    scale * lit::<T>(2.0) / rate
                }
            }
            EnvelopeTerm::Power {
                scale,
                alpha,
                center,
                from,
                near,
            } => {
                if alpha <= T::one() {
                    return T::infinity();
                }
                let arm = scale * from.powf(T::one() - alpha) / (alpha - T::one());
                let d = x - center;
                if d >= from {
                    scale * d.powf(T::one() - alpha) / (alpha - T::one())
                } else {
                    let left_arm = if d < -from { arm } else { T::zero() };
                    let core = near * (from - d.max(-from));
                    left_arm + core + arm
                }
            }
        }
    }

    fn mirrored(&self) -> Self {
        match *self {
            EnvelopeTerm::Compact { lo, hi, bound } => EnvelopeTerm::Compact {
                lo: -hi,
                hi: -lo,
                bound,
            },
            EnvelopeTerm::Gaussian { scale, rate, center } => EnvelopeTerm::Gaussian {
                scale,
                rate,
                center: -center,
            },
            EnvelopeTerm::Exponential { scale, rate, center } => EnvelopeTerm::Exponential {
                scale,
                rate,
                center: -center,
            },
            EnvelopeTerm::Power {
                scale,
                alpha,
                center,
                from,
                near,
            } => EnvelopeTerm::Power {
                scale,
                alpha,
                center: -center,
                from,
                near,
            },
        }
    }

    fn anchor(&self) -> (T, T) {
        match *self {
            EnvelopeTerm::Compact { lo, hi, .. } => (lo, hi),
            EnvelopeTerm::Gaussian { center, .. } | EnvelopeTerm::Exponential { center, .. } => (center, center),
            EnvelopeTerm::Power { center, from, .. } => (center - from, center + from),
        }
    }

    fn powf(&self, p: T) -> Self {
        match *self {
            EnvelopeTerm::Compact { lo, hi, bound } => EnvelopeTerm::Compact {
                lo,
                hi,
                bound: bound.powf(p),
            },
            EnvelopeTerm::Gaussian { scale, rate, center } => EnvelopeTerm::Gaussian {
                scale: scale.powf(p),
                rate: rate * p,
                center,
            },
            EnvelopeTerm::Exponential { scale, rate, center } => EnvelopeTerm::Exponential {
                scale: scale.powf(p),
                rate: rate * p,
                center,
            },
            EnvelopeTerm::Power {
                scale,
                alpha,
                center,
                from,
                near,
            } => EnvelopeTerm::Power {
                scale: scale.powf(p),
                alpha: alpha * p,
                center,
                from,
                near: near.powf(p),
            },
        }
    }

    fn scaled(&self, k: T) -> Self {
        match *self {
            EnvelopeTerm::Compact { lo, hi, bound } => EnvelopeTerm::Compact {
                lo,
                hi,
                bound: bound * k,
            },
            EnvelopeTerm::Gaussian { scale, rate, center } => EnvelopeTerm::Gaussian {
                scale: scale * k,
                rate,
                center,
            },
            EnvelopeTerm::Exponential { scale, rate, center } => EnvelopeTerm::Exponential {
                scale: scale * k,
                rate,
                center,
            },
            EnvelopeTerm::Power {
                scale,
                alpha,
                center,
                from,
                near,
            } => EnvelopeTerm::Power {
                scale: scale * k,
                alpha,
                center,
                from,
                near: near * k,
            },
        }
    }

    /// Bound for the term multiplied by `(1 + |x|)^k`, `k >= 0`.
    fn times_growth(&self, k: T) -> Self {
        let two = lit::<T>(2.0);
        match *self {
            EnvelopeTerm::Compact { lo, hi, bound } => EnvelopeTerm::Compact {
                lo,
                hi,
                bound: bound * (T::one() + lo.abs().max(hi.abs())).powf(k),
            },
            EnvelopeTerm::Gaussian { scale, rate, center } => {
                let b = T::one() + center.abs();
                let r = rate / two;
                let u = (-b + (b * b + lit::<T>(4.0) * k / (two * r)).sqrt()) / two;
                let u = u.max(T::zero());
                let s = (b + u).powf(k) * (-r * u * u).exp();
                EnvelopeTerm::Gaussian {
                    scale: scale * s,
                    rate: r,
                    center,
                }
            }
            EnvelopeTerm::Exponential { scale, rate, center } => {
                let b = T::one() + center.abs();
                let r = rate / two;
                let u = (k / r - b).max(T::zero());
                let s = (b + u).powf(k) * (-r * u).exp();
                EnvelopeTerm::Exponential {
                    scale: scale * s,
                    rate: r,
                    center,
                }
            }
            EnvelopeTerm::Power {
                scale,
                alpha,
                center,
                from,
                near,
            } => {
                let b = T::one() + center.abs();
                let from2 = from.max(b);
                let inner = near.max(scale * from.powf(-alpha));
                EnvelopeTerm::Power {
                    scale: scale * two.powf(k),
                    alpha: alpha - k,
                    center,
                    from: from2,
                    near: inner * (b + from2).powf(k),
                }
            }
        }
    }

    fn affine_preimage(&self, a: T, b: T) -> Self {
        // Envelope of x -> h(a x + b).
        let map = |c: T| (c - b) / a;
        let aa = a.abs();
        match *self {
            EnvelopeTerm::Compact { lo, hi, bound } => {
                let (l, h) = (map(lo), map(hi));
                EnvelopeTerm::Compact {
                    lo: l.min(h),
                    hi: l.max(h),
                    bound,
                }
            }
            EnvelopeTerm::Gaussian { scale, rate, center } => EnvelopeTerm::Gaussian {
                scale,
                rate: rate * aa * aa,
                center: map(center),
            },
            EnvelopeTerm::Exponential { scale, rate, center } => EnvelopeTerm::Exponential {
                scale,
                rate: rate * aa,
                center: map(center),
            },
            EnvelopeTerm::Power {
                scale,
                alpha,
                center,
                from,
                near,
            } => EnvelopeTerm::Power {
                scale: scale * aa.powf(-alpha),
                alpha,
                center: map(center),
                from: from / aa,
                near,
            },
        }
    }
}

impl<T: Real> Envelope<T> {
    pub fn new(terms: Vec<EnvelopeTerm<T>>) -> Self {
        Envelope { terms }
    }

    pub fn zero() -> Self {
        Envelope { terms: Vec::new() }
    }

    pub fn compact(lo: T, hi: T, bound: T) -> Self {
        Envelope::new(vec![EnvelopeTerm::Compact { lo, hi, bound }])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn at(&self, x: T) -> T {
        self.terms.iter().map(|t| t.at(x)).sum()
    }

    /// Global bound on `|h|`.
    pub fn sup(&self) -> T {
        self.terms.iter().map(|t| t.sup()).sum()
    }

    /// Upper bound on `∫_x^∞ |h|`.
    pub fn right_tail(&self, x: T) -> T {
        self.terms.iter().map(|t| t.right_tail(x)).sum()
    }

    /// Upper bound on `∫_{-∞}^x |h|`.
    pub fn left_tail(&self, x: T) -> T {
        self.terms.iter().map(|t| t.mirrored().right_tail(-x)).sum()
    }

    /// Upper bound on `∫ |h|` over the whole line.
    pub fn total_mass(&self) -> T {
        let (lo, _) = self.hull();
        self.right_tail(lo - T::one())
    }

    /// Smallest interval containing all centers and compact supports.
    pub fn hull(&self) -> (T, T) {
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for t in &self.terms {
            let (a, b) = t.anchor();
            lo = lo.min(a);
            hi = hi.max(b);
        }
        if lo > hi {
            (T::zero(), T::zero())
        } else {
            (lo, hi)
        }
    }

    pub fn scaled(&self, k: T) -> Self {
        Envelope::new(self.terms.iter().map(|t| t.scaled(k)).collect())
    }

    pub fn plus(&self, other: &Envelope<T>) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Envelope::new(terms)
    }

    /// Envelope of `|h|^p` for `p >= 1`, using `(Σ e_i)^p <= n^{p-1} Σ e_i^p`.
    pub fn powf(&self, p: T) -> Self {
        let n = T::from_usize(self.terms.len().max(1)).unwrap();
        let factor = n.powf(p - T::one());
        Envelope::new(self.terms.iter().map(|t| t.powf(p).scaled(factor)).collect())
    }

    /// Envelope of `c (1 + |x|)^k |h(x)|`.
    pub fn times_growth(&self, c: T, k: T) -> Self {
        Envelope::new(self.terms.iter().map(|t| t.times_growth(k).scaled(c)).collect())
    }

    /// Envelope of `x -> h(a x + b)`.
    pub fn affine_preimage(&self, a: T, b: T) -> Self {
        Envelope::new(self.terms.iter().map(|t| t.affine_preimage(a, b)).collect())
    }

    /// Envelope of the convolution of `h` with a function of L¹ mass `mass`
    /// whose support (up to negligible mass) lies within `[-radius, radius]`.
    pub fn smeared(&self, mass: T, radius: T) -> Self {
        let two = lit::<T>(2.0);
        let terms = self
            .terms
            .iter()
            .map(|t| match *t {
                EnvelopeTerm::Compact { lo, hi, bound } => EnvelopeTerm::Compact {
                    lo: lo - radius,
                    hi: hi + radius,
                    bound: bound * mass,
                },
                EnvelopeTerm::Gaussian { scale, rate, center } => EnvelopeTerm::Gaussian {
                    scale: scale * mass * (rate * radius * radius).exp(),
                    rate: rate / two,
                    center,
                },
                EnvelopeTerm::Exponential { scale, rate, center } => EnvelopeTerm::Exponential {
                    scale: scale * mass * (rate * radius).exp(),
                    rate,
                    center,
                },
                EnvelopeTerm::Power {
                    scale,
                    alpha,
                    center,
                    from,
                    near,
                } => {
                    let from2 = from.max(two * radius) + radius;
                    EnvelopeTerm::Power {
                        scale: scale * mass * two.powf(alpha),
                        alpha,
                        center,
                        from: from2,
                        near: near.max(scale * from.powf(-alpha)) * mass,
                    }
                }
            })
            .collect();
        Envelope::new(terms)
    }

    /// Envelope of `|h| * |k|` where `other` dominates `|k|`, for the term
    /// pairs that have one: two Gaussians, or a compact term against a term
    /// that is radially decreasing about its center.
    pub fn convolve(&self, other: &Envelope<T>) -> Option<Self> {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                terms.extend(convolve_terms(a, b)?);
            }
        }
        Some(Envelope::new(terms))
    }

    /// Finds `[lo, hi]` inside `[dom_lo, dom_hi]` so that the envelope mass
    /// outside it is at most `target`. Finite domain ends are kept as they are.
    pub fn truncate(&self, target: T, dom_lo: T, dom_hi: T) -> Result<(T, T)> {
        let (h_lo, h_hi) = self.hull();
        let need_left = dom_lo.is_infinite();
        let need_right = dom_hi.is_infinite();
        let share = if need_left && need_right {
            target * lit(0.5)
        } else {
            target
        };
        let hi = if need_right {
            let start = if dom_lo.is_finite() { h_hi.max(dom_lo) } else { h_hi };
            search_radius(|x| self.right_tail(x), start, share, true)?
        } else {
            dom_hi
        };
        let lo = if need_left {
            let start = if dom_hi.is_finite() { h_lo.min(dom_hi) } else { h_lo };
            search_radius(|x| self.left_tail(x), start, share, false)?
        } else {
            dom_lo
        };
        Ok((lo, hi))
    }

    /// Geometrically spaced breakpoints within `[lo, hi]` around slowly
    /// decaying terms, so adaptive refinement sees every scale.
    pub fn scale_points(&self, lo: T, hi: T) -> Vec<T> {
        let mut pts = Vec::new();
        let two = lit::<T>(2.0);
        for t in &self.terms {
            let (center, unit) = match *t {
                EnvelopeTerm::Power { center, from, .. } => (center, from.max(lit(1e-3))),
                EnvelopeTerm::Exponential { center, rate, .. } => (center, T::one() / rate),
                _ => continue,
            };
            let mut d = unit;
            for _ in 0..200 {
                let r = center + d;
                let l = center - d;
                if r > lo && r < hi {
                    pts.push(r);
                }
                if l > lo && l < hi {
                    pts.push(l);
                }
                if l <= lo && r >= hi {
                    break;
                }
                d = d * two;
            }
        }
        pts
    }
}

fn convolve_terms<T: Real>(a: &EnvelopeTerm<T>, b: &EnvelopeTerm<T>) -> Option<Vec<EnvelopeTerm<T>>> {
    use EnvelopeTerm::*;
    match (*a, *b) {
        (
            Gaussian {
                scale: s1,
                rate: r1,
                center: c1,
            },
            Gaussian {
                scale: s2,
                rate: r2,
                center: c2,
            },
        ) => Some(vec![Gaussian {
            scale: s1 * s2 * (T::PI() / (r1 + r2)).sqrt(),
            rate: r1 * r2 / (r1 + r2),
            center: c1 + c2,
        }]),
        (
            Compact {
                lo: l1,
                hi: h1,
                bound: b1,
            },
            Compact {
                lo: l2,
                hi: h2,
                bound: b2,
            },
        ) => Some(vec![Compact {
            lo: l1 + l2,
            hi: h1 + h2,
            bound: b1 * b2 * (h1 - l1).min(h2 - l2),
        }]),
        (Compact { lo, hi, bound }, t) | (t, Compact { lo, hi, bound }) => {
            // ∫_lo^hi t(x - y) dy <= w · t(nearest point), and the nearest
            // point is covered by the plateau or one of the two shifted copies.
            let w = (hi - lo) * bound;
            let (c, _) = t.anchor();
            let (near_lo, near_hi) = match t {
                Power { from, .. } => (c + lo - from, c + hi + from),
                _ => (c + lo, c + hi),
            };
            Some(vec![
                Compact {
                    lo: near_lo,
                    hi: near_hi,
                    bound: w * t.sup(),
                },
                t.affine_preimage(T::one(), -lo).scaled(w),
                t.affine_preimage(T::one(), -hi).scaled(w),
            ])
        }
        _ => None,
    }
}

fn search_radius<T: Real, F: Fn(T) -> T>(tail: F, start: T, target: T, rightwards: bool) -> Result<T> {
    let dir = if rightwards { T::one() } else { -T::one() };
    let mut d = T::one();
    let limit = lit::<T>(1e30).min(T::max_value() / lit(4.0));
    loop {
        let x = start + dir * d;
        if tail(x) <= target {
            break;
        }
        d = d * lit(2.0);
        if d > limit {
            return Err(Error::TailUnbounded {
                required_radius: f64::INFINITY.min(to_f64(d)),
            });
        }
    }
    // Tighten between d/2 and d.
    let mut lo = d * lit(0.5);
    let mut hi = d;
    for _ in 0..30 {
        let mid = (lo + hi) * lit(0.5);
        if tail(start + dir * mid) <= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(start + dir * hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_tail_bound_dominates_true_tail() {
        let env: Envelope<f64> = Envelope::new(vec![EnvelopeTerm::Gaussian {
            scale: 1.0,
            rate: 1.0,
            center: 0.0,
        }]);
        // ∫_2^∞ e^{-t²} dt = (√π/2) erfc(2) ≈ 0.0041021
        let tail = env.right_tail(2.0);
        assert!(tail >= 0.004_102_1);
        assert!(tail < 0.0047);
        assert!((env.total_mass() - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn power_tail_matches_antiderivative() {
        let env: Envelope<f64> = Envelope::new(vec![EnvelopeTerm::Power {
            scale: 1.0,
            alpha: 2.0,
            center: 0.0,
            from: 1.0,
            near: 0.0,
        }]);
        assert!((env.right_tail(4.0) - 0.25).abs() < 1e-15);
        assert!((env.left_tail(-1.0) - 1.0).abs() < 1e-15);
        let (lo, hi) = env.truncate(1e-3, f64::NEG_INFINITY, f64::INFINITY).unwrap();
        assert!(env.right_tail(hi) <= 5e-4 * (1.0 + 1e-12));
        assert!(env.left_tail(lo) <= 5e-4 * (1.0 + 1e-12));
    }

    #[test]
    fn slow_power_tail_cannot_be_truncated() {
        let env: Envelope<f64> = Envelope::new(vec![EnvelopeTerm::Power {
            scale: 1.0,
            alpha: 1.0,
            center: 0.0,
            from: 1.0,
            near: 1.0,
        }]);
        assert!(matches!(
            env.truncate(1e-6, 0.0, f64::INFINITY),
            Err(Error::TailUnbounded { .. })
        ));
    }

    #[test]
    fn convolved_envelopes_dominate() {
        let g: Envelope<f64> = Envelope::new(vec![EnvelopeTerm::Gaussian {
            scale: 2.0,
            rate: 1.0,
            center: 0.5,
        }]);
        let c: Envelope<f64> = Envelope::compact(-1.0, 0.5, 1.5);
        let e: Envelope<f64> = Envelope::new(vec![EnvelopeTerm::Exponential {
            scale: 1.0,
            rate: 2.0,
            center: -0.3,
        }]);
        for (x, y) in [(&g, &g), (&c, &g), (&e, &c), (&c, &c)] {
            let conv = x.convolve(y).unwrap();
            for i in -120..120 {
                let t = i as f64 * 0.05;
                let truth: f64 = (-4000..4000)
                    .map(|j| {
                        let u = (j as f64 + 0.5) * 0.0025;
                        x.at(u) * y.at(t - u) * 0.0025
                    })
                    .sum();
                assert!(conv.at(t) >= truth * (1.0 - 1e-3), "t={t}");
            }
        }
        assert!(g.convolve(&e).is_none());
    }

    #[test]
    fn growth_factor_keeps_a_valid_bound() {
        let env: Envelope<f64> = Envelope::new(vec![EnvelopeTerm::Gaussian {
            scale: 1.0,
            rate: 1.0,
            center: 0.5,
        }]);
        let grown = env.times_growth(1.0, 3.0);
        for i in -400..400 {
            let x = i as f64 * 0.05;
            let truth = (1.0 + x.abs()).powi(3) * env.at(x);
            assert!(grown.at(x) >= truth * (1.0 - 1e-12), "x={x}");
        }
    }
}
