//! Piecewise-analytic exponent functions `p(·): ℝ → [1, ∞]`.

use crate::error::{invalid, Result};
use crate::scalar::{lit, Real};

/// Half-open interval `[lo, hi)`; either end may be infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> Interval<T> {
    pub fn new(lo: T, hi: T) -> Self {
        Interval { lo, hi }
    }

    pub fn line() -> Self {
        Interval::new(T::neg_infinity(), T::infinity())
    }

    pub fn length(&self) -> T {
        (self.hi - self.lo).max(T::zero())
    }

    pub fn is_empty(&self) -> bool {
        !(self.hi > self.lo)
    }

    pub fn contains(&self, x: T) -> bool {
        x >= self.lo && x < self.hi
    }

    pub fn intersect(&self, other: &Interval<T>) -> Interval<T> {
        Interval::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }
}

/// Finite union of half-open intervals, kept sorted and merged.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct IntervalUnion<T> {
    parts: Vec<Interval<T>>,
}

impl<T: Real> IntervalUnion<T> {
    pub fn empty() -> Self {
        IntervalUnion { parts: Vec::new() }
    }

    pub fn line() -> Self {
        IntervalUnion::from_parts(vec![Interval::line()])
    }

    pub fn single(lo: T, hi: T) -> Self {
        IntervalUnion::from_parts(vec![Interval::new(lo, hi)])
    }

    /// Builds a union; empty parts are dropped and overlapping or touching
    /// parts merged.
    pub fn from_parts(mut parts: Vec<Interval<T>>) -> Self {
        parts.retain(|p| !p.is_empty());
        parts.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap());
        let mut merged: Vec<Interval<T>> = Vec::with_capacity(parts.len());
        for p in parts {
            match merged.last_mut() {
                Some(last) if p.lo <= last.hi => last.hi = last.hi.max(p.hi),
                _ => merged.push(p),
            }
        }
        IntervalUnion { parts: merged }
    }

    pub fn parts(&self) -> &[Interval<T>] {
        &self.parts
    }

    pub fn measure(&self) -> T {
        self.parts.iter().map(|p| p.length()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: T) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    pub fn intersect(&self, other: &IntervalUnion<T>) -> IntervalUnion<T> {
        let mut out = Vec::new();
        for a in &self.parts {
            for b in &other.parts {
                out.push(a.intersect(b));
            }
        }
        IntervalUnion::from_parts(out)
    }

    pub fn union(&self, other: &IntervalUnion<T>) -> IntervalUnion<T> {
        let mut all = self.parts.clone();
        all.extend(other.parts.iter().copied());
        IntervalUnion::from_parts(all)
    }

    /// `ℝ ∖ self`.
    pub fn complement(&self) -> IntervalUnion<T> {
        let mut out = Vec::new();
        let mut cursor = T::neg_infinity();
        for p in &self.parts {
            out.push(Interval::new(cursor, p.lo));
            cursor = p.hi;
        }
        out.push(Interval::new(cursor, T::infinity()));
        IntervalUnion::from_parts(out)
    }

    pub fn difference(&self, other: &IntervalUnion<T>) -> IntervalUnion<T> {
        self.intersect(&other.complement())
    }
}

/// `δ(E)`: 0 for null sets, 1 otherwise.
pub fn delta_indicator<T: Real>(e: &IntervalUnion<T>) -> u8 {
    if e.measure() > T::zero() {
        1
    } else {
        0
    }
}

/// Closed-form expression of `p` on one piece.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExponentForm<T> {
    /// `p ≡ c`, `c ∈ [1, ∞]`.
    Constant(T),
    /// `p(x) = 1 + 1 / (κ log(e + |x|))`.
    LogDecay { kappa: T },
    /// `p(x) = 1 + |x|^{-k} / C0`.
    PowerDecay { c0: T, k: T },
    /// `p(x) = slope·x + intercept`, clamped to `[1, ∞]`.
    Affine { slope: T, intercept: T },
}

/// One piece of an exponent. When `conjugated` is set the piece stands for
/// the Hölder conjugate of `form`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Piece<T> {
    pub interval: Interval<T>,
    pub form: ExponentForm<T>,
    pub conjugated: bool,
}

/// Which of the partition sets a piece (or part of one) belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    One,
    Star,
    Inf,
}

/// The sets where `p = 1`, `1 < p < ∞` and `p = ∞`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionSets<T> {
    pub omega_1: IntervalUnion<T>,
    pub omega_star: IntervalUnion<T>,
    pub omega_inf: IntervalUnion<T>,
}

/// Witnesses `(κ, M)` with `1/(p(x) - 1) >= κ log|x|` for `|x| > M`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lh1Witness<T> {
    pub kappa: T,
    pub m: T,
}

/// Exponent function on ℝ given by finitely many analytic pieces.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentFunction<T> {
    pieces: Vec<Piece<T>>,
    p_minus: T,
    p_plus: T,
}

fn conj<T: Real>(p: T) -> T {
    if p.is_infinite() {
        T::one()
    } else if p == T::one() {
        T::infinity()
    } else {
        p / (p - T::one())
    }
}

impl<T: Real> ExponentForm<T> {
    fn validate(&self) -> Result<()> {
        match *self {
            ExponentForm::Constant(c) if !(c >= T::one()) => Err(invalid(format!("constant exponent {} < 1", c))),
            ExponentForm::LogDecay { kappa } if !(kappa > T::zero() && kappa.is_finite()) => {
                Err(invalid("logdecay needs a finite kappa > 0"))
            }
            ExponentForm::PowerDecay { c0, k }
                if !(c0 > T::zero() && c0.is_finite() && k > T::zero() && k.is_finite()) =>
            {
                Err(invalid("powerdecay needs finite c0 > 0 and k > 0"))
            }
            ExponentForm::Affine { slope, intercept } if !(slope.is_finite() && intercept.is_finite()) => {
                Err(invalid("affine exponent needs finite slope and intercept"))
            }
            _ => Ok(()),
        }
    }

    fn eval(&self, x: T) -> T {
        match *self {
            ExponentForm::Constant(c) => c,
            ExponentForm::LogDecay { kappa } => T::one() + T::one() / (kappa * (T::E() + x.abs()).ln()),
            ExponentForm::PowerDecay { c0, k } => {
                if x == T::zero() {
                    T::infinity()
                } else {
                    T::one() + x.abs().powf(-k) / c0
                }
            }
            ExponentForm::Affine { slope, intercept } => (slope * x + intercept).max(T::one()),
        }
    }

    /// Infimum and supremum over the closure of `iv` (limits at infinite ends).
    fn range(&self, iv: &Interval<T>) -> (T, T) {
        let (near, far) = abs_range(iv);
        match *self {
            ExponentForm::Constant(c) => (c, c),
            ExponentForm::LogDecay { .. } | ExponentForm::PowerDecay { .. } => {
                let lo = if far.is_infinite() { T::one() } else { self.eval(far) };
                (lo, self.eval(near))
            }
            ExponentForm::Affine { slope, intercept } => {
                let at = |x: T| {
                    if x.is_infinite() {
                        if slope == T::zero() {
                            intercept.max(T::one())
                        } else if slope * x > T::zero() {
                            T::infinity()
                        } else {
                            T::one()
                        }
                    } else {
                        (slope * x + intercept).max(T::one())
                    }
                };
                let (a, b) = (at(iv.lo), at(iv.hi));
                (a.min(b), a.max(b))
            }
        }
    }
}

/// `(min |x|, max |x|)` over the closure of `iv`.
fn abs_range<T: Real>(iv: &Interval<T>) -> (T, T) {
    let near = if iv.lo <= T::zero() && iv.hi >= T::zero() {
        T::zero()
    } else {
        iv.lo.abs().min(iv.hi.abs())
    };
    (near, iv.lo.abs().max(iv.hi.abs()))
}

impl<T: Real> Piece<T> {
    pub fn eval(&self, x: T) -> T {
        let p = self.form.eval(x);
        if self.conjugated {
            conj(p)
        } else {
            p
        }
    }

    fn range_on(&self, iv: &Interval<T>) -> (T, T) {
        let (lo, hi) = self.form.range(iv);
        if self.conjugated {
            (conj(hi), conj(lo))
        } else {
            (lo, hi)
        }
    }

    /// Exact split of the piece into partition classes.
    fn classes(&self) -> Vec<(Interval<T>, Class)> {
        let iv = self.interval;
        let flip = |c: Class| match (c, self.conjugated) {
            (Class::One, true) => Class::Inf,
            (Class::Inf, true) => Class::One,
            (c, _) => c,
        };
        match self.form {
            ExponentForm::Constant(c) => {
                let class = if c == T::one() {
                    Class::One
                } else if c.is_infinite() {
                    Class::Inf
                } else {
                    Class::Star
                };
                vec![(iv, flip(class))]
            }
            // Both decay forms stay strictly between 1 and ∞ off a null set.
            ExponentForm::LogDecay { .. } | ExponentForm::PowerDecay { .. } => vec![(iv, Class::Star)],
            ExponentForm::Affine { slope, intercept } => {
                if slope == T::zero() {
                    let class = if intercept <= T::one() { Class::One } else { Class::Star };
                    return vec![(iv, flip(class))];
                }
                // slope·x + intercept <= 1 on one side of x*.
                let xs = (T::one() - intercept) / slope;
                let (one_side, star_side) = if slope > T::zero() {
                    (Interval::new(T::neg_infinity(), xs), Interval::new(xs, T::infinity()))
                } else {
                    (Interval::new(xs, T::infinity()), Interval::new(T::neg_infinity(), xs))
                };
                vec![
                    (iv.intersect(&one_side), flip(Class::One)),
                    (iv.intersect(&star_side), Class::Star),
                ]
            }
        }
    }
}

impl<T: Real> ExponentFunction<T> {
    /// Validates that the pieces tile ℝ in order and that every form is
    /// admissible.
    pub fn new(pieces: Vec<Piece<T>>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(invalid("exponent needs at least one piece"));
        }
        if pieces[0].interval.lo != T::neg_infinity() || pieces[pieces.len() - 1].interval.hi != T::infinity() {
            return Err(invalid("exponent pieces must cover the whole line"));
        }
        for w in pieces.windows(2) {
            if w[0].interval.hi != w[1].interval.lo {
                return Err(invalid(format!(
                    "exponent pieces must be contiguous: gap or overlap at {}",
                    w[0].interval.hi
                )));
            }
        }
        for p in &pieces {
            if p.interval.is_empty() {
                return Err(invalid("exponent piece with empty interval"));
            }
            p.form.validate()?;
        }
        let mut p_minus = T::infinity();
        let mut p_plus = T::one();
        for p in &pieces {
            let (lo, hi) = p.range_on(&p.interval);
            p_minus = p_minus.min(lo);
            p_plus = p_plus.max(hi);
        }
        Ok(ExponentFunction {
            pieces,
            p_minus,
            p_plus,
        })
    }

    /// Builds an exponent from `(interval, form)` pairs.
    pub fn from_forms(pieces: Vec<(Interval<T>, ExponentForm<T>)>) -> Result<Self> {
        ExponentFunction::new(
            pieces
                .into_iter()
                .map(|(interval, form)| Piece {
                    interval,
                    form,
                    conjugated: false,
                })
                .collect(),
        )
    }

    /// `p ≡ c` on ℝ.
    pub fn constant(c: T) -> Result<Self> {
        ExponentFunction::from_forms(vec![(Interval::line(), ExponentForm::Constant(c))])
    }

    /// `left` on `x < at`, `right` on `x >= at`.
    pub fn split(at: T, left: ExponentForm<T>, right: ExponentForm<T>) -> Result<Self> {
        ExponentFunction::from_forms(vec![
            (Interval::new(T::neg_infinity(), at), left),
            (Interval::new(at, T::infinity()), right),
        ])
    }

    /// A single form on the whole line.
    pub fn uniform(form: ExponentForm<T>) -> Result<Self> {
        ExponentFunction::from_forms(vec![(Interval::line(), form)])
    }

    pub fn pieces(&self) -> &[Piece<T>] {
        &self.pieces
    }

    pub fn piece_at(&self, x: T) -> &Piece<T> {
        self.pieces
            .iter()
            .find(|p| p.interval.contains(x))
            .unwrap_or(&self.pieces[self.pieces.len() - 1])
    }

    /// `p(x)`; may be `∞`.
    pub fn eval(&self, x: T) -> T {
        self.piece_at(x).eval(x)
    }

    /// `1/p(x)` with `1/∞ = 0`.
    pub fn inv(&self, x: T) -> T {
        let p = self.eval(x);
        if p.is_infinite() {
            T::zero()
        } else {
            T::one() / p
        }
    }

    pub fn p_minus(&self) -> T {
        self.p_minus
    }

    pub fn p_plus(&self) -> T {
        self.p_plus
    }

    /// `(p_-, p_+)`.
    pub fn essential_bounds(&self) -> (T, T) {
        (self.p_minus, self.p_plus)
    }

    /// Essential infimum and supremum of `p` over `[lo, hi)`.
    pub fn bounds_on(&self, lo: T, hi: T) -> (T, T) {
        let window = Interval::new(lo, hi);
        let mut inf = T::infinity();
        let mut sup = T::one();
        for p in &self.pieces {
            let iv = p.interval.intersect(&window);
            if iv.is_empty() {
                continue;
            }
            let (a, b) = p.range_on(&iv);
            inf = inf.min(a);
            sup = sup.max(b);
        }
        (inf, sup)
    }

    /// Hölder conjugate `q` with `1/p + 1/q = 1`.
    pub fn conjugate(&self) -> Self {
        let pieces = self
            .pieces
            .iter()
            .map(|p| Piece {
                conjugated: !p.conjugated,
                ..*p
            })
            .collect();
        ExponentFunction {
            pieces,
            p_minus: conj(self.p_plus),
            p_plus: conj(self.p_minus),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.p_minus == self.p_plus
    }

    /// The partition sets `Ω_1`, `Ω_*`, `Ω_∞`.
    pub fn partition(&self) -> PartitionSets<T> {
        let mut one = Vec::new();
        let mut star = Vec::new();
        let mut inf = Vec::new();
        for p in &self.pieces {
            for (iv, class) in p.classes() {
                match class {
                    Class::One => one.push(iv),
                    Class::Star => star.push(iv),
                    Class::Inf => inf.push(iv),
                }
            }
        }
        PartitionSets {
            omega_1: IntervalUnion::from_parts(one),
            omega_star: IntervalUnion::from_parts(star),
            omega_inf: IntervalUnion::from_parts(inf),
        }
    }

    /// `K_{p(·)} = (1/p_- - 1/p_+ + 1) δ(Ω_*) + δ(Ω_∞) + δ(Ω_1)`.
    pub fn holder_constant(&self) -> T {
        let parts = self.partition();
        let inv = |p: T| if p.is_infinite() { T::zero() } else { T::one() / p };
        let d = |e: &IntervalUnion<T>| T::from_u8(delta_indicator(e)).unwrap();
        (inv(self.p_minus) - inv(self.p_plus) + T::one()) * d(&parts.omega_star)
            + d(&parts.omega_inf)
            + d(&parts.omega_1)
    }

    /// Witnesses that `1/p(·)` is log-Hölder at infinity with limit 1, or
    /// `None` when the tail pieces cannot satisfy it.
    pub fn check_lh1(&self) -> Option<Lh1Witness<T>> {
        let e = T::E();
        let mut m = e;
        for p in &self.pieces {
            for x in [p.interval.lo, p.interval.hi] {
                if x.is_finite() {
                    m = m.max(x.abs());
                }
            }
        }
        let mut kappa = T::infinity();
        let tails = [self.pieces[0], self.pieces[self.pieces.len() - 1]];
        for (i, p) in tails.iter().enumerate() {
            let dir = if i == 0 { -T::one() } else { T::one() };
            let (k, mm) = tail_witness(p, dir)?;
            kappa = kappa.min(k);
            m = m.max(mm);
        }
        if kappa.is_infinite() {
            kappa = T::one();
        }
        Some(Lh1Witness { kappa, m })
    }

    /// `sup_x (1 - 1/p(x)) log(e + |x|)`: the smallest `C` with
    /// `|1/p(x) - 1| <= C / log(e + |x|)` everywhere. Infinite when no such
    /// constant exists.
    pub fn lh1_sup(&self) -> T {
        let mut sup = T::zero();
        for p in &self.pieces {
            sup = sup.max(piece_lh1_sup(p));
        }
        sup
    }

    /// Constant `C` used by the log-Hölder growth bound: `1/κ` from
    /// [`check_lh1`](Self::check_lh1) when it dominates the exact supremum,
    /// otherwise the supremum itself.
    pub fn lh1_constant(&self) -> Option<T> {
        let w = self.check_lh1()?;
        let sup = self.lh1_sup();
        if !sup.is_finite() {
            return None;
        }
        let c = T::one() / w.kappa;
        Some(if sup <= c { c } else { sup })
    }

    /// Finite interior points where `p` changes form.
    pub fn breakpoints(&self) -> Vec<T> {
        self.pieces.iter().skip(1).map(|p| p.interval.lo).collect()
    }
}

/// `(κ, M)` for one unbounded tail piece extending in direction `dir`.
fn tail_witness<T: Real>(p: &Piece<T>, dir: T) -> Option<(T, T)> {
    let e = T::E();
    let inf = T::infinity();
    match (p.form, p.conjugated) {
        (ExponentForm::Constant(c), false) if c == T::one() => Some((inf, e)),
        (ExponentForm::Constant(c), true) if c.is_infinite() => Some((inf, e)),
        (ExponentForm::Constant(_), _) => None,
        (ExponentForm::LogDecay { kappa }, false) => Some((kappa, e)),
        (ExponentForm::PowerDecay { c0, k }, false) => Some((T::one().min(c0 * e * k), e)),
        (ExponentForm::LogDecay { .. } | ExponentForm::PowerDecay { .. }, true) => None,
        (ExponentForm::Affine { slope, intercept }, conjugated) => {
            let toward = slope * dir;
            if toward == T::zero() {
                let c = intercept.max(T::one());
                let ok = if conjugated { c.is_infinite() } else { c == T::one() };
                return if ok { Some((inf, e)) } else { None };
            }
            if !conjugated {
                // Clamped to 1 once slope·x + intercept <= 1.
                if toward > T::zero() {
                    return None;
                }
                let xs = ((T::one() - intercept) / slope).abs();
                Some((inf, e.max(xs)))
            } else {
                // q - 1 = 1/(p - 1), so 1/(q - 1) = p - 1 = |slope||x| + ... grows linearly.
                if toward < T::zero() {
                    return None;
                }
                // Along x = dir·t: p - 1 = toward·t + intercept - 1 >= log t.
                let g = |t: T| toward * t + intercept - T::one() - t.ln();
                let mut m = e;
                // g is convex; once increasing and positive it stays positive.
                let turn = T::one() / toward;
                if m < turn {
                    m = turn;
                }
                let mut guard = 0;
                while g(m) < T::zero() && guard < 200 {
                    m = m * lit(2.0);
                    guard += 1;
                }
                if g(m) < T::zero() {
                    return None;
                }
                Some((T::one(), m))
            }
        }
    }
}

/// `sup (1 - 1/p(x)) log(e + |x|)` over one piece.
fn piece_lh1_sup<T: Real>(p: &Piece<T>) -> T {
    let iv = p.interval;
    let (near, far) = abs_range(&iv);
    let e = T::E();
    match (p.form, p.conjugated) {
        (ExponentForm::Constant(c), conj_flag) => {
            let q = if conj_flag { conj(c) } else { c };
            if q == T::one() {
                T::zero()
            } else if far.is_infinite() {
                T::infinity()
            } else {
                let inv = if q.is_infinite() { T::zero() } else { T::one() / q };
                (T::one() - inv) * (e + far).ln()
            }
        }
        (ExponentForm::LogDecay { kappa }, false) => {
            if far.is_infinite() {
                T::one() / kappa
            } else {
                let l = (e + far).ln();
                l / (kappa * l + T::one())
            }
        }
        _ => {
            if far.is_infinite() && p.range_on(&iv).0 > T::one() {
                // p stays away from 1 in the tail: no finite constant.
                return T::infinity();
            }
            sampled_lh1_sup(p, near, far)
        }
    }
}

/// Dense log-spaced sampling of `(1 - 1/p) log(e + |x|)` on one piece,
/// padded by a small safety factor.
fn sampled_lh1_sup<T: Real>(p: &Piece<T>, near: T, far: T) -> T {
    let e = T::E();
    let iv = p.interval;
    let mut sup = T::zero();
    let lo_mag = near.max(lit(1e-9));
    let hi_mag = far.min(lit(1e12)).max(lo_mag);
    let n = 20_000usize;
    let ratio = (hi_mag / lo_mag).ln();
    let mut probe = |x: T| {
        if iv.contains(x) || x == iv.hi {
            let pv = p.eval(x);
            let inv = if pv.is_infinite() { T::zero() } else { T::one() / pv };
            let v = (T::one() - inv) * (e + x.abs()).ln();
            if v > sup {
                sup = v;
            }
        }
    };
    for i in 0..=n {
        let t = T::from_usize(i).unwrap() / T::from_usize(n).unwrap();
        let mag = lo_mag * (ratio * t).exp();
        probe(mag);
        probe(-mag);
    }
    for x in [iv.lo, iv.hi, T::zero()] {
        if x.is_finite() {
            probe(x);
        }
    }
    sup * (T::one() + lit(1e-6))
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = ExponentFunction<f64>;

    fn three_part() -> E {
        E::from_forms(vec![
            (
                Interval::new(f64::NEG_INFINITY, -1.0),
                ExponentForm::Constant(f64::INFINITY),
            ),
            (Interval::new(-1.0, 0.0), ExponentForm::Constant(1.0)),
            (Interval::new(0.0, 1.0), ExponentForm::Constant(2.0)),
            (Interval::new(1.0, f64::INFINITY), ExponentForm::Constant(f64::INFINITY)),
        ])
        .unwrap()
    }

    #[test]
    fn conjugate_of_constants() {
        let q = E::constant(2.0).unwrap().conjugate();
        assert_eq!(q.eval(0.3), 2.0);
        let q = E::constant(1.0).unwrap().conjugate();
        assert!(q.eval(5.0).is_infinite());
        let q = E::constant(3.0).unwrap().conjugate();
        assert!((q.eval(0.0) - 1.5).abs() < 1e-15);
        assert!((q.p_minus() - 1.5).abs() < 1e-15);
        let back = q.conjugate();
        assert_eq!(back, E::constant(3.0).unwrap());
    }

    #[test]
    fn partition_examples() {
        let p = E::constant(2.0).unwrap().partition();
        assert_eq!(p.omega_star, IntervalUnion::line());
        assert!(p.omega_1.is_empty() && p.omega_inf.is_empty());

        let p = three_part().partition();
        assert_eq!(p.omega_1, IntervalUnion::single(-1.0, 0.0));
        assert_eq!(p.omega_star, IntervalUnion::single(0.0, 1.0));
        assert_eq!(p.omega_inf, IntervalUnion::single(-1.0, 1.0).complement());

        let p = E::uniform(ExponentForm::PowerDecay { c0: 1.0, k: 1.0 })
            .unwrap()
            .partition();
        assert_eq!(p.omega_star, IntervalUnion::line());
        assert_eq!(p.omega_1.measure(), 0.0);
        assert_eq!(p.omega_inf.measure(), 0.0);
    }

    #[test]
    fn holder_constant_examples() {
        assert_eq!(E::constant(2.0).unwrap().holder_constant(), 1.0);
        assert_eq!(E::constant(1.0).unwrap().holder_constant(), 1.0);
        assert_eq!(three_part().holder_constant(), 4.0);
    }

    #[test]
    fn delta_of_sets() {
        assert_eq!(delta_indicator(&IntervalUnion::<f64>::empty()), 0);
        assert_eq!(delta_indicator(&IntervalUnion::single(0.0, 1.0)), 1);
        assert_eq!(delta_indicator(&IntervalUnion::single(0.5, 0.5)), 0);
    }

    #[test]
    fn lh1_witnesses() {
        let w = E::uniform(ExponentForm::LogDecay { kappa: 1.0 })
            .unwrap()
            .check_lh1()
            .unwrap();
        assert_eq!((w.kappa, w.m), (1.0, std::f64::consts::E));
        assert!(E::constant(2.0).unwrap().check_lh1().is_none());
        let w = E::uniform(ExponentForm::PowerDecay { c0: 1.0, k: 1.0 })
            .unwrap()
            .check_lh1()
            .unwrap();
        assert_eq!((w.kappa, w.m), (1.0, std::f64::consts::E));
    }

    #[test]
    fn essential_bounds_examples() {
        assert_eq!(E::constant(3.0).unwrap().essential_bounds(), (3.0, 3.0));
        let p = E::split(0.0, ExponentForm::Constant(2.0), ExponentForm::Constant(3.0)).unwrap();
        assert_eq!(p.essential_bounds(), (2.0, 3.0));
        let p = E::uniform(ExponentForm::LogDecay { kappa: 1.0 }).unwrap();
        let (lo, hi) = p.essential_bounds();
        assert_eq!(lo, 1.0);
        assert!((hi - 2.0).abs() < 1e-15);
    }

    #[test]
    fn affine_clamp_populates_omega_one() {
        let p = E::uniform(ExponentForm::Affine {
            slope: 1.0,
            intercept: 2.0,
        })
        .unwrap();
        let parts = p.partition();
        assert_eq!(parts.omega_1, IntervalUnion::single(f64::NEG_INFINITY, -1.0));
        assert_eq!(p.essential_bounds(), (1.0, f64::INFINITY));
        // Toward -∞ it is clamped at 1; toward +∞ it blows up.
        assert!(p.check_lh1().is_none());
        let q = p.conjugate();
        assert_eq!(q.partition().omega_inf, IntervalUnion::single(f64::NEG_INFINITY, -1.0));
    }

    #[test]
    fn lh1_constant_for_log_decay_is_inverse_kappa() {
        let p = E::uniform(ExponentForm::LogDecay { kappa: 2.0 }).unwrap();
        assert_eq!(p.lh1_constant(), Some(0.5));
    }
}
