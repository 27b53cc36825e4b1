//! Weights of bounded variation: catalog functions, piecewise closed forms
//! and convolutions of the two.

use num_complex::Complex;

use super::{CatalogFunction, Shape};
use crate::error::{invalid, Error, Result};
use crate::quadrature::{
    algebraic_half_line, fourier_half_line, integrate_improper_with, integrate_with, Envelope, EnvelopeTerm,
    QuadOptions, QuadratureResult, StieltjesWeight,
};
use crate::scalar::{cis, lit, Real};

/// Closed-form body of one piece.
#[derive(Clone, Debug, PartialEq)]
pub enum PieceForm<T> {
    /// `Σ_k c[k] x^k`.
    Poly(Vec<T>),
    /// `scale · x^exponent`, only on `x > 0`.
    Power { scale: T, exponent: T },
}

/// `form` on `[lo, hi)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothPiece<T> {
    pub lo: T,
    pub hi: T,
    pub form: PieceForm<T>,
}

/// Right-continuous function given by disjoint pieces, zero elsewhere.
/// Jumps sit wherever neighbouring values disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseFunction<T> {
    pieces: Vec<SmoothPiece<T>>,
}

/// A right-continuous weight `g` with finite total variation on bounded
/// intervals.
#[derive(Clone, Debug, PartialEq)]
pub enum BvFunction<T> {
    Catalog(CatalogFunction<T>),
    Piecewise(PiecewiseFunction<T>),
    Convolution(Box<Convolved<T>>),
}

/// `g1 * g2` with `g1` of bounded variation and `g2` an integrable catalog
/// function. Inner integrals run at `tol`.
#[derive(Clone, Debug, PartialEq)]
pub struct Convolved<T> {
    g1: BvFunction<T>,
    g2: CatalogFunction<T>,
    tol: T,
    density_env: Envelope<T>,
    g2_env: Envelope<T>,
}

impl<T: Real> PieceForm<T> {
    fn eval(&self, x: T) -> T {
        match self {
            PieceForm::Poly(c) => c.iter().rev().fold(T::zero(), |acc, &k| acc * x + k),
            PieceForm::Power { scale, exponent } => *scale * x.powf(*exponent),
        }
    }

    fn slope(&self, x: T) -> T {
        match self {
            PieceForm::Poly(c) => {
                let mut p = T::zero();
                let mut dp = T::zero();
                for &k in c.iter().rev() {
                    dp = dp * x + p;
                    p = p * x + k;
                }
                dp
            }
            PieceForm::Power { scale, exponent } => *scale * *exponent * x.powf(*exponent - T::one()),
        }
    }

    fn is_constant(&self) -> bool {
        match self {
            PieceForm::Poly(c) => c.iter().skip(1).all(|&k| k == T::zero()),
            PieceForm::Power { scale, exponent } => *scale == T::zero() || *exponent == T::zero(),
        }
    }
}

impl<T: Real> SmoothPiece<T> {
    /// `sup |form|` on the piece.
    fn sup(&self) -> T {
        match &self.form {
            PieceForm::Poly(c) => {
                if c.iter().all(|&k| k == T::zero()) {
                    return T::zero();
                }
                if self.lo.is_infinite() || self.hi.is_infinite() {
                    return if self.form.is_constant() {
                        c[0].abs()
                    } else {
                        T::infinity()
                    };
                }
                let m = self.lo.abs().max(self.hi.abs());
                c.iter().rev().fold(T::zero(), |acc, &k| acc * m + k.abs())
            }
            PieceForm::Power { scale, exponent } => {
                let a = self.lo.powf(*exponent);
                let b = self.hi.powf(*exponent);
                scale.abs() * a.max(b)
            }
        }
    }

    /// `sup |form'|` on the piece.
    fn slope_sup(&self) -> T {
        match &self.form {
            PieceForm::Poly(c) => {
                if self.form.is_constant() {
                    return T::zero();
                }
                let m = self.lo.abs().max(self.hi.abs());
                c.iter()
                    .enumerate()
                    .skip(1)
                    .rev()
                    .fold(T::zero(), |acc, (k, &v)| acc * m + T::from_usize(k).unwrap() * v.abs())
            }
            PieceForm::Power { scale, exponent } => {
                let e = *exponent - T::one();
                let k = (*scale * *exponent).abs();
                k * self.lo.powf(e).max(self.hi.powf(e))
            }
        }
    }
}

impl<T: Real> PiecewiseFunction<T> {
    /// Pieces must be disjoint. Unbounded pieces must be constant, or a
    /// power with non-positive exponent extending to `+∞`; power pieces
    /// need `lo >= 0`.
    pub fn new(mut pieces: Vec<SmoothPiece<T>>) -> Result<Self> {
        pieces.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap_or(std::cmp::Ordering::Equal));
        for p in &pieces {
            if !(p.lo < p.hi) || p.lo.is_nan() || p.hi.is_nan() {
                return Err(invalid("piece needs lo < hi"));
            }
            match &p.form {
                PieceForm::Poly(c) => {
                    if c.iter().any(|k| !k.is_finite()) {
                        return Err(invalid("polynomial coefficients must be finite"));
                    }
                    if (p.lo.is_infinite() || p.hi.is_infinite()) && !p.form.is_constant() {
                        return Err(invalid("unbounded pieces must be constant"));
                    }
                }
                PieceForm::Power { scale, exponent } => {
                    if !(p.lo >= T::zero()) || !scale.is_finite() || !exponent.is_finite() {
                        return Err(invalid("power pieces need lo >= 0 and finite parameters"));
                    }
                    if p.hi.is_infinite() && *exponent > T::zero() {
                        return Err(invalid("an unbounded power piece must not grow"));
                    }
                }
            }
        }
        for w in pieces.windows(2) {
            if w[1].lo < w[0].hi {
                return Err(invalid("pieces overlap"));
            }
        }
        Ok(PiecewiseFunction { pieces })
    }

    /// `c` on the whole line.
    pub fn constant(c: T) -> Self {
        PiecewiseFunction {
            pieces: vec![SmoothPiece {
                lo: T::neg_infinity(),
                hi: T::infinity(),
                form: PieceForm::Poly(vec![c]),
            }],
        }
    }

    pub fn pieces(&self) -> &[SmoothPiece<T>] {
        &self.pieces
    }

    fn eval(&self, x: T) -> T {
        for p in &self.pieces {
            if x >= p.lo && x < p.hi {
                return p.form.eval(x);
            }
        }
        T::zero()
    }

    fn left_limit(&self, x: T) -> T {
        for p in &self.pieces {
            if x > p.lo && x <= p.hi {
                return p.form.eval(x);
            }
        }
        T::zero()
    }

    fn density(&self, x: T) -> T {
        for p in &self.pieces {
            if x >= p.lo && x < p.hi {
                return p.form.slope(x);
            }
        }
        T::zero()
    }

    fn boundary_points(&self) -> Vec<T> {
        let mut pts: Vec<T> = self
            .pieces
            .iter()
            .flat_map(|p| [p.lo, p.hi])
            .filter(|x| x.is_finite())
            .collect();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup();
        pts
    }

    fn jumps(&self) -> Vec<(T, T)> {
        self.boundary_points()
            .into_iter()
            .filter_map(|x| {
                let j = self.eval(x) - self.left_limit(x);
                (j != T::zero() && j.is_finite()).then_some((x, j))
            })
            .collect()
    }
}

impl<T: Real> BvFunction<T> {
    /// `g1 * g2`; `g1` needs a bounded derivative and `g2` must be
    /// integrable.
    pub fn convolution(g1: BvFunction<T>, g2: CatalogFunction<T>, tol: T) -> Result<Self> {
        if !g2.is_l1() {
            return Err(Error::NotIntegrable(
                "second convolution factor is not integrable".into(),
            ));
        }
        let d1 = g1
            .density_envelope()
            .ok_or_else(|| Error::Unsupported("first convolution factor has no bounded derivative".into()))?;
        let g2_env = g2.envelope();
        let mut density_env = d1
            .convolve(&g2_env)
            .ok_or_else(|| Error::Unsupported("no decay bound for the derivative of this convolution".into()))?;
        for (x, j) in g1.jumps() {
            density_env = density_env.plus(&g2_env.affine_preimage(T::one(), -x).scaled(j.norm()));
        }
        Ok(BvFunction::Convolution(Box::new(Convolved {
            g1,
            g2,
            tol,
            density_env,
            g2_env,
        })))
    }

    pub fn constant(c: T) -> Self {
        BvFunction::Piecewise(PiecewiseFunction::constant(c))
    }

    pub fn eval(&self, x: T) -> Complex<T> {
        match self {
            BvFunction::Catalog(f) => f.eval(x),
            BvFunction::Piecewise(p) => Complex::new(p.eval(x), T::zero()),
            BvFunction::Convolution(c) => c.eval(x).map(|r| r.value).unwrap_or(Complex::new(T::nan(), T::nan())),
        }
    }

    /// Largest modulation frequency among the catalog parts.
    pub fn max_frequency(&self) -> T {
        match self {
            BvFunction::Catalog(f) => f.max_frequency(),
            BvFunction::Piecewise(_) => T::zero(),
            BvFunction::Convolution(c) => c.g1.max_frequency().max(c.g2.max_frequency()),
        }
    }

    /// `(g(-∞), g(+∞))`.
    pub fn limits(&self) -> (Complex<T>, Complex<T>) {
        let zero = Complex::new(T::zero(), T::zero());
        match self {
            BvFunction::Catalog(_) => (zero, zero),
            BvFunction::Piecewise(p) => {
                let mut left = zero;
                let mut right = zero;
                for piece in &p.pieces {
                    if piece.lo.is_infinite() {
                        left = Complex::new(piece.form.eval(T::zero()), T::zero());
                    }
                    if piece.hi.is_infinite() && piece.form.is_constant() {
                        right = Complex::new(piece.form.eval(T::one()), T::zero());
                    }
                }
                (left, right)
            }
            BvFunction::Convolution(c) => {
                let (l, r) = c.g1.limits();
                let mass =
                    c.g2.fourier_transform(T::zero(), c.tol)
                        .map(|m| m.value)
                        .unwrap_or(zero);
                (l * mass, r * mass)
            }
        }
    }

    /// Pointwise bound on `|g'|` away from the jumps.
    pub fn density_envelope(&self) -> Option<Envelope<T>> {
        match self {
            BvFunction::Catalog(f) => {
                let mut terms = Vec::new();
                for t in f.terms() {
                    let c = t.coeff.norm();
                    if t.freq != T::zero() {
                        terms.push(t.shape.envelope_term(c * t.freq.abs()));
                    }
                    if let Some(e) = t.shape.slope_envelope_term(c) {
                        terms.push(e);
                    }
                }
                Some(Envelope::new(terms))
            }
            BvFunction::Piecewise(p) => {
                let mut terms = Vec::new();
                for piece in &p.pieces {
                    if piece.form.is_constant() {
                        continue;
                    }
                    if piece.hi.is_infinite() {
                        let PieceForm::Power { scale, exponent } = piece.form else {
                            return None;
                        };
                        if !(piece.lo > T::zero()) {
                            return None;
                        }
                        terms.push(EnvelopeTerm::Power {
                            scale: (scale * exponent).abs(),
                            alpha: T::one() - exponent,
                            center: T::zero(),
                            from: piece.lo,
                            near: T::zero(),
                        });
                        continue;
                    }
                    let bound = piece.slope_sup();
                    if !bound.is_finite() {
                        return None;
                    }
                    terms.push(EnvelopeTerm::Compact {
                        lo: piece.lo,
                        hi: piece.hi,
                        bound,
                    });
                }
                Some(Envelope::new(terms))
            }
            BvFunction::Convolution(c) => Some(c.density_env.clone()),
        }
    }

    /// Pointwise bound on `|g|`, when `g` decays at both ends.
    pub fn value_envelope(&self) -> Option<Envelope<T>> {
        match self {
            BvFunction::Catalog(f) => Some(f.envelope()),
            BvFunction::Piecewise(p) => {
                let mut terms = Vec::new();
                for piece in &p.pieces {
                    if piece.lo.is_infinite() && piece.sup() > T::zero() {
                        return None;
                    }
                    if piece.hi.is_infinite() {
                        match piece.form {
                            PieceForm::Power { scale, exponent } if exponent < T::zero() && piece.lo > T::zero() => {
                                terms.push(EnvelopeTerm::Power {
                                    scale: scale.abs(),
                                    alpha: -exponent,
                                    center: T::zero(),
                                    from: piece.lo,
                                    near: T::zero(),
                                });
                                continue;
                            }
                            _ if piece.sup() == T::zero() => continue,
                            _ => return None,
                        }
                    }
                    let bound = piece.sup();
                    if !bound.is_finite() {
                        return None;
                    }
                    terms.push(EnvelopeTerm::Compact {
                        lo: piece.lo,
                        hi: piece.hi,
                        bound,
                    });
                }
                Some(Envelope::new(terms))
            }
            BvFunction::Convolution(c) => c.g1.value_envelope()?.convolve(&c.g2_env),
        }
    }

    /// Upper bound on `sup |g|`.
    pub fn sup_bound(&self) -> T {
        match self {
            BvFunction::Catalog(f) => f.envelope().sup(),
            BvFunction::Piecewise(p) => p.pieces.iter().fold(T::zero(), |m, piece| m.max(piece.sup())),
            BvFunction::Convolution(c) => c.g1.sup_bound() * c.g2_env.total_mass(),
        }
    }

    pub fn is_integrable(&self) -> bool {
        match self {
            BvFunction::Catalog(f) => f.is_l1(),
            BvFunction::Piecewise(p) => p.pieces.iter().all(|piece| {
                if piece.sup() == T::zero() {
                    return true;
                }
                match piece.form {
                    PieceForm::Poly(_) => piece.lo.is_finite() && piece.hi.is_finite(),
                    PieceForm::Power { exponent, .. } => {
                        (piece.lo > T::zero() || exponent > -T::one()) && (piece.hi.is_finite() || exponent < -T::one())
                    }
                }
            }),
            BvFunction::Convolution(c) => c.g1.is_integrable(),
        }
    }

    /// `β` with `|g(x)| = O(|x|^{-β})` as `|x| → ∞`; infinite for
    /// exponential or compact decay, zero when `g` tends to a nonzero
    /// constant.
    pub fn decay_exponent(&self) -> T {
        match self {
            BvFunction::Catalog(f) => f
                .terms()
                .iter()
                .filter_map(|t| match t.shape {
                    Shape::PowerTail { alpha, .. } => Some(alpha),
                    _ => None,
                })
                .fold(T::infinity(), |m, a| m.min(a)),
            BvFunction::Piecewise(p) => {
                let mut beta = T::infinity();
                for piece in &p.pieces {
                    if !(piece.lo.is_infinite() || piece.hi.is_infinite()) {
                        continue;
                    }
                    match piece.form {
                        PieceForm::Power { scale, exponent } if scale != T::zero() => beta = beta.min(-exponent),
                        _ if piece.sup() > T::zero() => beta = T::zero(),
                        _ => {}
                    }
                }
                beta
            }
            BvFunction::Convolution(c) => {
                let b2 = BvFunction::Catalog(c.g2.clone()).decay_exponent();
                c.g1.decay_exponent().min(b2)
            }
        }
    }

    /// `β` with `|g(x)| = O(x^β)` as `x → 0⁺` (0 when `g` is bounded there).
    pub fn small_x_exponent(&self) -> T {
        match self {
            BvFunction::Piecewise(p) => {
                for piece in &p.pieces {
                    if piece.lo == T::zero() {
                        if let PieceForm::Power { scale, exponent } = piece.form {
                            if scale != T::zero() && exponent < T::zero() {
                                return exponent;
                            }
                        }
                    }
                }
                T::zero()
            }
            _ => T::zero(),
        }
    }

    /// `V g = ∫ |g'| + Σ |jumps|`.
    pub fn total_variation(&self, tol: T) -> Result<T> {
        self.variation_moment(T::zero(), tol)
    }

    /// `∫ |x|^β |dg(x)|`.
    pub fn variation_moment(&self, beta: T, tol: T) -> Result<T> {
        self.variation_moment_in(beta, T::zero(), T::infinity(), tol)
    }

    /// `∫_{lo <= |x| < hi} |x|^β |dg(x)|` for `β >= 0`; infinite when the
    /// integral diverges.
    ///
    /// Catalog weights with power tails are handled term by term, which is
    /// exact for a single term and an upper bound otherwise.
    pub fn variation_moment_in(&self, beta: T, lo: T, hi: T, tol: T) -> Result<T> {
        if !(beta >= T::zero()) || !(lo >= T::zero()) || !(hi > lo) {
            return Err(invalid("moment needs beta >= 0 and 0 <= lo < hi"));
        }
        let weight = |x: T| {
            if beta == T::zero() {
                T::one()
            } else {
                x.abs().powf(beta)
            }
        };
        let inside = |x: T| x.abs() >= lo && x.abs() < hi;
        let jumps: T = self
            .jumps()
            .into_iter()
            .filter(|(x, _)| inside(*x))
            .map(|(x, j)| weight(x) * j.norm())
            .sum();
        let regions = [(lo, hi), (-hi, -lo)];
        let smooth = match self {
            BvFunction::Piecewise(p) => {
                let mut total = T::zero();
                for piece in &p.pieces {
                    if piece.form.is_constant() {
                        continue;
                    }
                    for &(a, b) in &regions {
                        let clipped = SmoothPiece {
                            lo: piece.lo.max(a),
                            hi: piece.hi.min(b),
                            form: piece.form.clone(),
                        };
                        if clipped.lo < clipped.hi {
                            total = total + piece_moment(&clipped, beta, tol)?;
                        }
                    }
                }
                total
            }
            BvFunction::Catalog(f) if f.has_power_tail() => {
                let (tails, rest): (Vec<_>, Vec<_>) = f
                    .terms()
                    .iter()
                    .partition(|t| matches!(t.shape, Shape::PowerTail { .. }));
                let mut total = T::zero();
                if !rest.is_empty() {
                    let g = BvFunction::Catalog(CatalogFunction::from_terms(rest.into_iter().cloned().collect())?);
                    total = g.variation_moment_in(beta, lo, hi, tol)?;
                }
                for t in tails {
                    for &(a, b) in &regions {
                        total = total + power_tail_moment(t, beta, a, b, tol)?;
                    }
                }
                total
            }
            _ => {
                let env = self
                    .density_envelope()
                    .ok_or_else(|| Error::Unsupported("no bound on the derivative".into()))?
                    .times_growth(T::one(), beta);
                let opts = QuadOptions::new(tol).breakpoints(StieltjesWeight::breakpoints(self));
                let mut total = T::zero();
                for &(a, b) in &regions {
                    let h = |x: T| Complex::new(weight(x) * self.density(x).norm(), T::zero());
                    let r = if a.is_finite() && b.is_finite() {
                        integrate_with(h, a, b, &opts)
                    } else {
                        integrate_improper_with(h, &env, a, b, &opts)
                    };
                    total = total
                        + match r {
                            Ok(r) => r.value.re,
                            Err(Error::TailUnbounded { .. }) => T::infinity(),
                            Err(e) => return Err(e),
                        };
                }
                total
            }
        };
        Ok(smooth + jumps)
    }

    /// `ĝ(s) = ∫ e^{-isx} g(x) dx`.
    pub fn fourier_transform(&self, s: T, tol: T) -> Result<QuadratureResult<T>> {
        match self {
            BvFunction::Catalog(f) => f.fourier_transform(s, tol),
            BvFunction::Piecewise(p) => {
                let mut out = QuadratureResult::zero();
                let share = tol / T::from_usize(p.pieces.len().max(1)).unwrap();
                for piece in &p.pieces {
                    out = out.combine(piece_fourier(piece, s, share)?);
                }
                Ok(out)
            }
            BvFunction::Convolution(c) => {
                let a = c.g1.fourier_transform(s, tol * lit(0.5))?;
                let b = c.g2.fourier_transform(s, tol * lit(0.5))?;
                Ok(QuadratureResult {
                    value: a.value * b.value,
                    error_estimate: a.error_estimate * b.value.norm() + b.error_estimate * a.value.norm(),
                    evaluations: a.evaluations + b.evaluations,
                })
            }
        }
    }

    pub fn translate(&self, a: T) -> Result<Self> {
        match self {
            BvFunction::Catalog(f) => Ok(BvFunction::Catalog(f.translate(a))),
            BvFunction::Piecewise(p) => {
                if p.pieces
                    .iter()
                    .any(|q| matches!(q.form, PieceForm::Power { .. } if !q.form.is_constant()))
                {
                    return Err(Error::Unsupported("power pieces are anchored at the origin".into()));
                }
                let pieces = p
                    .pieces
                    .iter()
                    .map(|q| SmoothPiece {
                        lo: q.lo + a,
                        hi: q.hi + a,
                        form: match &q.form {
                            PieceForm::Poly(c) => PieceForm::Poly(shift_poly(c, a)),
                            f => f.clone(),
                        },
                    })
                    .collect();
                Ok(BvFunction::Piecewise(PiecewiseFunction::new(pieces)?))
            }
            BvFunction::Convolution(c) => BvFunction::convolution(c.g1.translate(a)?, c.g2.clone(), c.tol),
        }
    }
}

/// Coefficients of `p(x - a)`.
fn shift_poly<T: Real>(c: &[T], a: T) -> Vec<T> {
    let n = c.len();
    let mut out = vec![T::zero(); n];
    // Horner in the shifted variable: p(x - a) = (...(c_n (x-a) + c_{n-1})(x-a) ...)
    for &k in c.iter().rev() {
        let mut next = vec![T::zero(); n];
        for j in 0..n {
            if j + 1 < n {
                next[j + 1] = next[j + 1] + out[j];
            }
            next[j] = next[j] - a * out[j];
        }
        next[0] = next[0] + k;
        out = next;
    }
    out
}

fn piece_moment<T: Real>(piece: &SmoothPiece<T>, beta: T, tol: T) -> Result<T> {
    if let PieceForm::Power { scale, exponent } = piece.form {
        // ∫ x^β |scale·e| x^{e-1} dx in closed form.
        let k = (scale * exponent).abs();
        let e = beta + exponent;
        let prim = |x: T| {
            if e == T::zero() {
                x.ln()
            } else {
                x.powf(e) / e
            }
        };
        if piece.hi.is_infinite() && e >= T::zero() {
            return Ok(T::infinity());
        }
        if piece.lo == T::zero() && e <= T::zero() {
            return Ok(T::infinity());
        }
        let hi = if piece.hi.is_infinite() {
            T::zero()
        } else {
            prim(piece.hi)
        };
        let lo = if piece.lo == T::zero() {
            T::zero()
        } else {
            prim(piece.lo)
        };
        return Ok(k * (hi - lo).abs());
    }
    let (r, _) = crate::quadrature::integrate_real(
        |x: T| {
            let w = if beta == T::zero() {
                T::one()
            } else {
                x.abs().powf(beta)
            };
            w * piece.form.slope(x).abs()
        },
        piece.lo,
        piece.hi,
        tol,
    )?;
    Ok(r)
}

/// Smooth part of `∫_{[a, b)} |x|^β |dg|` for one power-tail term.
fn power_tail_moment<T: Real>(term: &super::Term<T>, beta: T, a: T, b: T, tol: T) -> Result<T> {
    let Shape::PowerTail {
        alpha,
        cutoff,
        shift,
        orient,
    } = term.shape
    else {
        unreachable!("caller passes power tails only")
    };
    let c = term.coeff.norm();
    let w = term.freq;
    let x0 = shift + orient * cutoff;
    let (s_lo, s_hi) = if orient > T::zero() {
        (x0, T::infinity())
    } else {
        (T::neg_infinity(), x0)
    };
    let lo = a.max(s_lo);
    let hi = b.min(s_hi);
    if !(lo < hi) {
        return Ok(T::zero());
    }
    let shape = term.shape.clone();
    let h = move |x: T| {
        let wgt = if beta == T::zero() {
            T::one()
        } else {
            x.abs().powf(beta)
        };
        wgt * c * Complex::new(shape.slope(x), w * shape.eval(x)).norm()
    };
    // u = orient (x - shift)
    let (u_lo, u_hi) = {
        let ua = orient * (lo - shift);
        let ub = orient * (hi - shift);
        (ua.min(ub), ua.max(ub))
    };
    if u_hi.is_finite() {
        let (r, _) = crate::quadrature::integrate_real(|u: T| h(shift + orient * u), u_lo, u_hi, tol)?;
        return Ok(r);
    }
    let decay = if w == T::zero() {
        alpha + T::one() - beta
    } else {
        alpha - beta
    };
    if !(decay > T::one()) {
        return Ok(T::infinity());
    }
    let split = u_lo.max(lit::<T>(2.0) * shift.abs() + T::one());
    let (near, _) = if split > u_lo {
        crate::quadrature::integrate_real(|u: T| h(shift + orient * u), u_lo, split, tol * lit(0.5))?
    } else {
        (T::zero(), T::zero())
    };
    let far = algebraic_half_line(
        split,
        |u: T| Complex::new(h(shift + orient * u), T::zero()),
        decay,
        tol * lit(0.5),
    )?;
    Ok(near + far.value.re)
}

fn piece_fourier<T: Real>(piece: &SmoothPiece<T>, s: T, tol: T) -> Result<QuadratureResult<T>> {
    if piece.sup() == T::zero() {
        return Ok(QuadratureResult::zero());
    }
    let kernel = |x: T| cis(-s * x) * piece.form.eval(x);
    if piece.lo.is_finite() && piece.hi.is_finite() {
        let opts = QuadOptions::new(tol).frequency(s);
        return integrate_with(kernel, piece.lo, piece.hi, &opts);
    }
    let PieceForm::Power { scale, exponent } = piece.form else {
        return Err(Error::NotIntegrable(
            "a nonzero constant has no classical transform".into(),
        ));
    };
    let u0 = piece.lo;
    if !(u0 > T::zero()) {
        return Err(Error::NotIntegrable("power piece on the whole half-line".into()));
    }
    if s == T::zero() {
        if !(exponent < -T::one()) {
            return Err(Error::NotIntegrable("slow power tail has no transform at zero".into()));
        }
        return algebraic_half_line(
            u0,
            |x: T| Complex::new(scale * x.powf(exponent), T::zero()),
            -exponent,
            tol,
        );
    }
    let bound = scale.abs() * u0.powf(exponent);
    fourier_half_line(s, u0, |u: Complex<T>| u.powf(exponent) * scale, bound, tol)
}

impl<T: Real> Convolved<T> {
    fn eval(&self, x: T) -> Result<QuadratureResult<T>> {
        let shifted = self.g2_env.affine_preimage(-T::one(), x);
        let env = match self.g1.value_envelope().and_then(|e| {
            let alt = e.scaled(self.g2_env.sup());
            (alt.total_mass() < shifted.total_mass() * self.g1.sup_bound()).then_some(alt)
        }) {
            Some(e) => e,
            None => shifted.scaled(self.g1.sup_bound()),
        };
        let mut bps = StieltjesWeight::breakpoints(&self.g1);
        bps.extend(self.g2.breakpoints().into_iter().map(|b| x - b));
        let opts = QuadOptions::new(self.tol)
            .breakpoints(bps)
            .frequency(self.g2.max_frequency());
        integrate_improper_with(
            |t: T| self.g1.eval(t) * self.g2.eval(x - t),
            &env,
            T::neg_infinity(),
            T::infinity(),
            &opts,
        )
    }

    fn density(&self, x: T) -> Result<Complex<T>> {
        // ∫ g2(x - t) dg1(t): smooth part plus the jumps of g1.
        let d1 = self.g1.density_envelope().unwrap_or_default();
        let shifted = self.g2_env.affine_preimage(-T::one(), x);
        let a = shifted.scaled(d1.sup());
        let b = d1.scaled(self.g2_env.sup());
        let env = if a.total_mass() <= b.total_mass() { a } else { b };
        let mut bps = StieltjesWeight::breakpoints(&self.g1);
        bps.extend(self.g2.breakpoints().into_iter().map(|p| x - p));
        let opts = QuadOptions::new(self.tol)
            .breakpoints(bps)
            .frequency(self.g2.max_frequency());
        let smooth = integrate_improper_with(
            |t: T| self.g1.density(t) * self.g2.eval(x - t),
            &env,
            T::neg_infinity(),
            T::infinity(),
            &opts,
        )?;
        let jumps = self
            .g1
            .jumps()
            .into_iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, (xj, j)| {
                acc + j * self.g2.eval(x - xj)
            });
        Ok(smooth.value + jumps)
    }
}

impl<T: Real> StieltjesWeight<T> for BvFunction<T> {
    fn density(&self, x: T) -> Complex<T> {
        match self {
            BvFunction::Catalog(f) => f.terms().iter().fold(Complex::new(T::zero(), T::zero()), |acc, t| {
                let s = t.shape.eval(x);
                let ds = t.shape.slope(x);
                if s == T::zero() && ds == T::zero() {
                    return acc;
                }
                let local = Complex::new(ds, t.freq * s);
                acc + t.coeff * cis(t.freq * x) * local
            }),
            BvFunction::Piecewise(p) => Complex::new(p.density(x), T::zero()),
            BvFunction::Convolution(c) => c.density(x).unwrap_or(Complex::new(T::nan(), T::nan())),
        }
    }

    fn jumps(&self) -> Vec<(T, Complex<T>)> {
        match self {
            BvFunction::Catalog(f) => f
                .terms()
                .iter()
                .flat_map(|t| {
                    t.shape
                        .jumps()
                        .into_iter()
                        .map(move |(x, j)| (x, t.coeff * cis(t.freq * x) * j))
                })
                .collect(),
            BvFunction::Piecewise(p) => p
                .jumps()
                .into_iter()
                .map(|(x, j)| (x, Complex::new(j, T::zero())))
                .collect(),
            BvFunction::Convolution(_) => Vec::new(),
        }
    }

    fn breakpoints(&self) -> Vec<T> {
        match self {
            BvFunction::Catalog(f) => f.breakpoints(),
            BvFunction::Piecewise(p) => p.boundary_points(),
            BvFunction::Convolution(_) => Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::stieltjes;

    fn bv(f: CatalogFunction<f64>) -> BvFunction<f64> {
        BvFunction::Catalog(f)
    }

    #[test]
    fn power_tail_moments() {
        // jump 1 at x = 1 plus α ∫_1^∞ s^{β-α-1} = α / (α - β)
        let g = bv(CatalogFunction::power_tail(0.75, 1.0).unwrap());
        let m = g.variation_moment(0.5, 1e-10).unwrap();
        assert!((m - 4.0).abs() < 1e-7, "{m}");
        let inner = g.variation_moment_in(0.5, 0.0, 16.0, 1e-10).unwrap();
        let outer = g.variation_moment_in(0.5, 16.0, f64::INFINITY, 1e-10).unwrap();
        assert!((outer - 3.0 * 16f64.powf(-0.25)).abs() < 1e-7, "{outer}");
        assert!((inner + outer - 4.0).abs() < 1e-7);
        assert!(g.variation_moment(0.8, 1e-10).unwrap().is_infinite());
        let ind = bv(CatalogFunction::indicator(-1.0, 2.0).unwrap());
        assert_eq!(ind.variation_moment_in(1.0, 0.0, 1.5, 1e-10).unwrap(), 1.0);
    }

    #[test]
    fn total_variation_examples() {
        let ind = bv(CatalogFunction::indicator(0.0, 1.0).unwrap());
        assert!((ind.total_variation(1e-10).unwrap() - 2.0).abs() < 1e-12);
        let g = bv(CatalogFunction::gaussian(1.0, 0.0, 0.0).unwrap());
        assert!((g.total_variation(1e-10).unwrap() - 2.0).abs() < 1e-8);
        let hat = bv(CatalogFunction::hat(0.0, 2.0).unwrap());
        assert!((hat.total_variation(1e-10).unwrap() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn variation_is_translation_and_reflection_invariant() {
        let f = CatalogFunction::poly_gaussian(vec![1.0, 0.5], 1.0, 0.2)
            .unwrap()
            .add(&CatalogFunction::indicator(-1.0, 0.5).unwrap());
        let v = bv(f.clone()).total_variation(1e-10).unwrap();
        let vt = bv(f.translate(3.3)).total_variation(1e-10).unwrap();
        let vr = bv(f.reflect()).total_variation(1e-10).unwrap();
        assert!((v - vt).abs() < 1e-8 && (v - vr).abs() < 1e-8);
    }

    #[test]
    fn measure_reproduces_increments() {
        let fs = [
            bv(CatalogFunction::indicator(-0.5, 0.7).unwrap().modulate(2.0)),
            bv(CatalogFunction::power_tail(1.5, 1.0).unwrap().reflect()),
            bv(CatalogFunction::exponential(2.0, 0.1).unwrap()),
            bv(CatalogFunction::hat(-1.0, 1.0).unwrap().modulate(-1.0)),
            BvFunction::Piecewise(
                PiecewiseFunction::new(vec![
                    SmoothPiece {
                        lo: -2.0,
                        hi: 0.0,
                        form: PieceForm::Poly(vec![1.0, 0.5, 0.25]),
                    },
                    SmoothPiece {
                        lo: 0.5,
                        hi: 3.0,
                        form: PieceForm::Power {
                            scale: 2.0,
                            exponent: -0.5,
                        },
                    },
                ])
                .unwrap(),
            ),
        ];
        for g in &fs {
            for (a, b) in [(-3.0, 2.0), (-1.2, -0.4), (-0.6, 1.3)] {
                let r = stieltjes(|_| Complex::new(1.0, 0.0), g, a, b, 1e-12).unwrap();
                let inc = g.eval(b) - g.eval(a);
                assert!(
                    (r.value - inc).norm() < 1e-9,
                    "{g:?} on [{a}, {b}]: {} vs {}",
                    r.value,
                    inc
                );
            }
        }
    }

    #[test]
    fn density_envelope_dominates() {
        let g = bv(CatalogFunction::gaussian(0.8, 0.3, 1.7)
            .unwrap()
            .add(&CatalogFunction::power_tail(0.75, 1.0).unwrap())
            .add(&CatalogFunction::exponential(1.0, -1.0).unwrap()));
        let env = g.density_envelope().unwrap();
        for i in -500..500 {
            let x = i as f64 * 0.031 + 0.0007;
            assert!(g.density(x).norm() <= env.at(x) * (1.0 + 1e-12), "x={x}");
        }
    }

    #[test]
    fn convolution_matches_closed_form() {
        let g = CatalogFunction::<f64>::gaussian(1.0, 0.0, 0.0).unwrap();
        let c = BvFunction::convolution(bv(g.clone()), g.clone(), 1e-13).unwrap();
        let k = (std::f64::consts::PI / 2.0).sqrt();
        for x in [-1.5, 0.0, 0.4, 2.0] {
            let want = k * (-x * x / 2.0f64).exp();
            assert!((c.eval(x).re - want).abs() < 1e-11);
            let dwant = -x * want;
            assert!((c.density(x).re - dwant).abs() < 1e-11);
            assert!(c.density_envelope().unwrap().at(x) >= dwant.abs());
        }
        let ft = c.fourier_transform(1.0, 1e-12).unwrap().value.re;
        assert!((ft - std::f64::consts::PI * (-0.5f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn piecewise_rules() {
        assert!(PiecewiseFunction::new(vec![SmoothPiece {
            lo: 0.0,
            hi: f64::INFINITY,
            form: PieceForm::Poly(vec![0.0, 1.0]),
        }])
        .is_err());
        let one = BvFunction::constant(1.0);
        assert_eq!(one.limits().1.re, 1.0);
        assert_eq!(one.decay_exponent(), 0.0);
        let p = BvFunction::Piecewise(
            PiecewiseFunction::new(vec![SmoothPiece {
                lo: 0.0,
                hi: 1.0,
                form: PieceForm::Power {
                    scale: 1.0,
                    exponent: -0.25,
                },
            }])
            .unwrap(),
        );
        assert_eq!(p.small_x_exponent(), -0.25);
        assert_eq!(p.jumps(), vec![(1.0, Complex::new(-1.0, 0.0))]);
        let shifted = BvFunction::<f64>::Piecewise(
            PiecewiseFunction::new(vec![SmoothPiece {
                lo: 0.0,
                hi: 1.0,
                form: PieceForm::Poly(vec![1.0, 2.0, 3.0]),
            }])
            .unwrap(),
        )
        .translate(0.5)
        .unwrap();
        // p(x - 0.5) at x = 1: 1 + 2·0.5 + 3·0.25
        assert!((shifted.eval(1.0).re - 2.75).abs() < 1e-15);
    }
}
