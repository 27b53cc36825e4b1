//! Closed-form catalog of test inputs, closed under translation, modulation,
//! reflection and affine dilation.

use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::quadrature::{algebraic_half_line, fourier_half_line, Envelope, EnvelopeTerm, QuadratureResult};
use crate::scalar::{cis, lit, Real};

/// Profile of one catalog term, before modulation and scaling.
#[derive(Clone, Debug, PartialEq)]
pub enum Shape<T> {
    /// `e^{-a (x - center)^2}`.
    Gaussian { a: T, center: T },
    /// `Σ_k coeffs[k] (x - center)^k e^{-a (x - center)^2}`.
    PolyGaussian { coeffs: Vec<T>, a: T, center: T },
    /// `1` on `[lo, hi)`.
    Indicator { lo: T, hi: T },
    /// Triangle of height 1 on `[lo, hi]`, peak at the midpoint.
    Hat { lo: T, hi: T },
    /// `u^{-alpha}` where `u = orient (x - shift) >= cutoff`, else 0.
    /// With `orient = -1` the support is open at its right end so the
    /// function stays right-continuous.
    PowerTail { alpha: T, cutoff: T, shift: T, orient: T },
    /// `e^{-rate |x - center|}`.
    Exponential { rate: T, center: T },
}

/// `coeff · e^{i freq x} · shape(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term<T> {
    pub coeff: Complex<T>,
    pub freq: T,
    pub shape: Shape<T>,
}

/// Finite complex linear combination of catalog terms.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CatalogFunction<T> {
    terms: Vec<Term<T>>,
}

/// Tail class of a catalog function, the weakest over its terms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Decay<T> {
    CompactSupport { lo: T, hi: T },
    Exponential { rate: T },
    Power { alpha: T },
}

/// Physicists' Hermite polynomial `H_n(x)`.
pub(crate) fn hermite<T: Real>(n: usize, x: T) -> T {
    let two = lit::<T>(2.0);
    let mut h0 = T::one();
    if n == 0 {
        return h0;
    }
    let mut h1 = two * x;
    for k in 1..n {
        let h2 = two * x * h1 - two * T::from_usize(k).unwrap() * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}

/// Coefficients of `H_n` in increasing powers.
fn hermite_coeffs<T: Real>(n: usize) -> Vec<T> {
    let two = lit::<T>(2.0);
    let mut h0 = vec![T::one()];
    if n == 0 {
        return h0;
    }
    let mut h1 = vec![T::zero(), two];
    for k in 1..n {
        let mut h2 = vec![T::zero(); k + 2];
        for (j, &c) in h1.iter().enumerate() {
            h2[j + 1] = h2[j + 1] + two * c;
        }
        for (j, &c) in h0.iter().enumerate() {
            h2[j] = h2[j] - two * T::from_usize(k).unwrap() * c;
        }
        h0 = h1;
        h1 = h2;
    }
    h1
}

/// `sup_u |u|^k e^{-b u^2} = (k / (2b))^{k/2} e^{-k/2}`.
fn moment_peak<T: Real>(k: usize, b: T) -> T {
    if k == 0 {
        return T::one();
    }
    let kf = T::from_usize(k).unwrap();
    let half = lit::<T>(0.5);
    (kf / (lit::<T>(2.0) * b)).powf(kf * half) * (-kf * half).exp()
}

fn sinc<T: Real>(x: T) -> T {
    if x.abs() < lit(1e-4) {
        let x2 = x * x;
        T::one() - x2 / lit(6.0) + x2 * x2 / lit(120.0)
    } else {
        x.sin() / x
    }
}

impl<T: Real> Shape<T> {
    fn validate(&self) -> Result<()> {
        let ok = match self {
            Shape::Gaussian { a, center } => *a > T::zero() && a.is_finite() && center.is_finite(),
            Shape::PolyGaussian { coeffs, a, center } => {
                *a > T::zero() && a.is_finite() && center.is_finite() && coeffs.iter().all(|c| c.is_finite())
            }
            Shape::Indicator { lo, hi } | Shape::Hat { lo, hi } => lo.is_finite() && hi.is_finite() && lo < hi,
            Shape::PowerTail {
                alpha,
                cutoff,
                shift,
                orient,
            } => {
                *alpha > T::zero()
                    && alpha.is_finite()
                    && *cutoff > T::zero()
                    && cutoff.is_finite()
                    && shift.is_finite()
                    && (*orient == T::one() || *orient == -T::one())
            }
            Shape::Exponential { rate, center } => *rate > T::zero() && rate.is_finite() && center.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(invalid(format!("invalid catalog shape parameters: {:?}", self)))
        }
    }

    pub fn eval(&self, x: T) -> T {
        match self {
            Shape::Gaussian { a, center } => (-*a * (x - *center).powi(2)).exp(),
            Shape::PolyGaussian { coeffs, a, center } => {
                let u = x - *center;
                let mut poly = T::zero();
                for &c in coeffs.iter().rev() {
                    poly = poly * u + c;
                }
                poly * (-*a * u * u).exp()
            }
            Shape::Indicator { lo, hi } => {
                if x >= *lo && x < *hi {
                    T::one()
                } else {
                    T::zero()
                }
            }
            Shape::Hat { lo, hi } => {
                let h = (*hi - *lo) * lit(0.5);
                let m = *lo + h;
                (T::one() - (x - m).abs() / h).max(T::zero())
            }
            Shape::PowerTail {
                alpha,
                cutoff,
                shift,
                orient,
            } => {
                let u = *orient * (x - *shift);
                let inside = if *orient > T::zero() { u >= *cutoff } else { u > *cutoff };
                if inside {
                    u.powf(-*alpha)
                } else {
                    T::zero()
                }
            }
            Shape::Exponential { rate, center } => (-*rate * (x - *center).abs()).exp(),
        }
    }

    /// Start of the support of a power tail: `shift + orient · cutoff`.
    pub fn tail_start(&self) -> Option<T> {
        match self {
            Shape::PowerTail {
                cutoff, shift, orient, ..
            } => Some(*shift + *orient * *cutoff),
            _ => None,
        }
    }

    /// Classical derivative away from jumps.
    pub fn slope(&self, x: T) -> T {
        let two = lit::<T>(2.0);
        match self {
            Shape::Gaussian { a, center } => {
                let u = x - *center;
                -two * *a * u * (-*a * u * u).exp()
            }
            Shape::PolyGaussian { coeffs, a, center } => {
                let u = x - *center;
                let mut p = T::zero();
                let mut dp = T::zero();
                for &c in coeffs.iter().rev() {
                    dp = dp * u + p;
                    p = p * u + c;
                }
                (dp - two * *a * u * p) * (-*a * u * u).exp()
            }
            Shape::Indicator { .. } => T::zero(),
            Shape::Hat { lo, hi } => {
                let m = (*lo + *hi) * lit(0.5);
                let k = two / (*hi - *lo);
                if x >= *lo && x < m {
                    k
                } else if x >= m && x < *hi {
                    -k
                } else {
                    T::zero()
                }
            }
            Shape::PowerTail { alpha, .. } => {
                let v = self.eval(x);
                if v == T::zero() {
                    return T::zero();
                }
                let Shape::PowerTail { shift, orient, .. } = *self else {
                    unreachable!()
                };
                let u = orient * (x - shift);
                -orient * *alpha * v / u
            }
            Shape::Exponential { rate, center } => {
                let d = x - *center;
                -*rate * d.signum() * (-*rate * d.abs()).exp()
            }
        }
    }

    /// `(x_j, shape(x_j+) - shape(x_j-))`.
    pub fn jumps(&self) -> Vec<(T, T)> {
        match self {
            Shape::Indicator { lo, hi } => vec![(*lo, T::one()), (*hi, -T::one())],
            Shape::PowerTail {
                alpha, cutoff, orient, ..
            } => vec![(self.tail_start().unwrap(), *orient * cutoff.powf(-*alpha))],
            _ => Vec::new(),
        }
    }

    /// Bound on `|shape'|` scaled by `scale`.
    pub(crate) fn slope_envelope_term(&self, scale: T) -> Option<EnvelopeTerm<T>> {
        match self {
            Shape::Gaussian { .. } | Shape::PolyGaussian { .. } | Shape::Hat { .. } => {
                let d = self.derivative()?;
                let terms: Vec<EnvelopeTerm<T>> = d
                    .iter()
                    .map(|t| t.shape.envelope_term(scale * t.coeff.norm()))
                    .collect();
                // Both pieces of a hat share one bound.
                Some(terms.into_iter().reduce(|a, b| match (a, b) {
                    (EnvelopeTerm::Compact { lo, bound, .. }, EnvelopeTerm::Compact { hi, bound: b2, .. }) => {
                        EnvelopeTerm::Compact {
                            lo,
                            hi,
                            bound: bound.max(b2),
                        }
                    }
                    (a, _) => a,
                })?)
            }
            Shape::Indicator { .. } => None,
            Shape::PowerTail {
                alpha, cutoff, shift, ..
            } => Some(EnvelopeTerm::Power {
                scale: scale * *alpha,
                alpha: *alpha + T::one(),
                center: *shift,
                from: *cutoff,
                near: T::zero(),
            }),
            Shape::Exponential { rate, center } => Some(EnvelopeTerm::Exponential {
                scale: scale * *rate,
                rate: *rate,
                center: *center,
            }),
        }
    }

    fn breakpoints(&self) -> Vec<T> {
        match self {
            Shape::Gaussian { .. } | Shape::PolyGaussian { .. } => Vec::new(),
            Shape::Indicator { lo, hi } => vec![*lo, *hi],
            Shape::Hat { lo, hi } => vec![*lo, (*lo + *hi) * lit(0.5), *hi],
            Shape::PowerTail { .. } => vec![self.tail_start().unwrap()],
            Shape::Exponential { center, .. } => vec![*center],
        }
    }

    pub(crate) fn envelope_term(&self, scale: T) -> EnvelopeTerm<T> {
        match self {
            Shape::Gaussian { a, center } => EnvelopeTerm::Gaussian {
                scale,
                rate: *a,
                center: *center,
            },
            Shape::PolyGaussian { coeffs, a, center } => {
                let half = *a * lit(0.5);
                let s: T = coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c.abs() * moment_peak(k, half))
                    .sum();
                EnvelopeTerm::Gaussian {
                    scale: scale * s,
                    rate: half,
                    center: *center,
                }
            }
            Shape::Indicator { lo, hi } | Shape::Hat { lo, hi } => EnvelopeTerm::Compact {
                lo: *lo,
                hi: *hi,
                bound: scale,
            },
            Shape::PowerTail {
                alpha, cutoff, shift, ..
            } => EnvelopeTerm::Power {
                scale,
                alpha: *alpha,
                center: *shift,
                from: *cutoff,
                near: T::zero(),
            },
            Shape::Exponential { rate, center } => EnvelopeTerm::Exponential {
                scale,
                rate: *rate,
                center: *center,
            },
        }
    }

    /// `∫ e^{-iσt} shape(t) dt` in closed form; `None` for power tails.
    fn fourier(&self, sigma: T) -> Option<Complex<T>> {
        let half = lit::<T>(0.5);
        match self {
            Shape::Gaussian { a, center } => {
                let amp = (T::PI() / *a).sqrt() * (-sigma * sigma / (lit::<T>(4.0) * *a)).exp();
                Some(cis(-sigma * *center) * amp)
            }
            Shape::PolyGaussian { coeffs, a, center } => {
                // FT(u^k e^{-a u^2}) = √(π/a) (-i / (2√a))^k H_k(σ/(2√a)) e^{-σ²/(4a)}
                let ra = a.sqrt();
                let x = sigma / (lit::<T>(2.0) * ra);
                let base = (T::PI() / *a).sqrt() * (-x * x).exp();
                let step = Complex::new(T::zero(), -T::one() / (lit::<T>(2.0) * ra));
                let mut factor = Complex::new(T::one(), T::zero());
                let mut acc = Complex::new(T::zero(), T::zero());
                for (k, &c) in coeffs.iter().enumerate() {
                    acc = acc + factor * (c * hermite(k, x));
                    factor = factor * step;
                }
                Some(acc * base * cis(-sigma * *center))
            }
            Shape::Indicator { lo, hi } => {
                let w = *hi - *lo;
                let m = (*lo + *hi) * half;
                Some(cis(-sigma * m) * (w * sinc(sigma * w * half)))
            }
            Shape::Hat { lo, hi } => {
                let h = (*hi - *lo) * half;
                let m = *lo + h;
                let s = sinc(sigma * h * half);
                Some(cis(-sigma * m) * (h * s * s))
            }
            Shape::PowerTail { .. } => None,
            Shape::Exponential { rate, center } => {
                let two = lit::<T>(2.0);
                Some(cis(-sigma * *center) * (two * *rate / (*rate * *rate + sigma * sigma)))
            }
        }
    }

    /// Bound on `|FT(shape)(σ)|` as an envelope in σ centered at 0.
    fn fourier_envelope_term(&self, scale: T) -> Option<EnvelopeTerm<T>> {
        let two = lit::<T>(2.0);
        let four = lit::<T>(4.0);
        match self {
            Shape::Gaussian { a, .. } => Some(EnvelopeTerm::Gaussian {
                scale: scale * (T::PI() / *a).sqrt(),
                rate: T::one() / (four * *a),
                center: T::zero(),
            }),
            Shape::PolyGaussian { coeffs, a, .. } => {
                // |H_k(x)| e^{-x²} <= Σ_j |h_kj| |x|^j e^{-x²/2} · e^{-x²/2}
                let ra = a.sqrt();
                let mut total = T::zero();
                for (k, c) in coeffs.iter().enumerate() {
                    let hk: Vec<T> = hermite_coeffs(k);
                    let peak: T = hk
                        .iter()
                        .enumerate()
                        .map(|(j, h)| h.abs() * moment_peak(j, lit(0.5)))
                        .sum();
                    total = total + c.abs() * (two * ra).powi(-(k as i32)) * peak;
                }
                Some(EnvelopeTerm::Gaussian {
                    scale: scale * (T::PI() / *a).sqrt() * total,
                    rate: T::one() / (lit::<T>(8.0) * *a),
                    center: T::zero(),
                })
            }
            Shape::Indicator { lo, hi } => {
                let w = *hi - *lo;
                Some(EnvelopeTerm::Power {
                    scale: scale * two,
                    alpha: T::one(),
                    center: T::zero(),
                    from: two / w,
                    near: scale * w,
                })
            }
            Shape::Hat { lo, hi } => {
                let h = (*hi - *lo) * lit(0.5);
                Some(EnvelopeTerm::Power {
                    scale: scale * four / h,
                    alpha: two,
                    center: T::zero(),
                    from: two / h,
                    near: scale * h,
                })
            }
            Shape::Exponential { rate, .. } => Some(EnvelopeTerm::Power {
                scale: scale * two * *rate,
                alpha: two,
                center: T::zero(),
                from: *rate,
                near: scale * two / *rate,
            }),
            Shape::PowerTail { .. } => None,
        }
    }

    fn translated(&self, a: T) -> Shape<T> {
        match self.clone() {
            Shape::Gaussian { a: r, center } => Shape::Gaussian {
                a: r,
                center: center + a,
            },
            Shape::PolyGaussian { coeffs, a: r, center } => Shape::PolyGaussian {
                coeffs,
                a: r,
                center: center + a,
            },
            Shape::Indicator { lo, hi } => Shape::Indicator { lo: lo + a, hi: hi + a },
            Shape::Hat { lo, hi } => Shape::Hat { lo: lo + a, hi: hi + a },
            Shape::PowerTail {
                alpha,
                cutoff,
                shift,
                orient,
            } => Shape::PowerTail {
                alpha,
                cutoff,
                shift: shift + a,
                orient,
            },
            Shape::Exponential { rate, center } => Shape::Exponential {
                rate,
                center: center + a,
            },
        }
    }

    /// Shape of `x ↦ shape(a x + b)` and the scalar factor it picks up.
    fn dilated(&self, a: T, b: T) -> (Shape<T>, T) {
        let map = |c: T| (c - b) / a;
        let aa = a.abs();
        match self.clone() {
            Shape::Gaussian { a: r, center } => (
                Shape::Gaussian {
                    a: r * a * a,
                    center: map(center),
                },
                T::one(),
            ),
            Shape::PolyGaussian { coeffs, a: r, center } => {
                let mut pow = T::one();
                let coeffs = coeffs
                    .into_iter()
                    .map(|c| {
                        let v = c * pow;
                        pow = pow * a;
                        v
                    })
                    .collect();
                (
                    Shape::PolyGaussian {
                        coeffs,
                        a: r * a * a,
                        center: map(center),
                    },
                    T::one(),
                )
            }
            Shape::Indicator { lo, hi } => {
                let (l, h) = (map(lo), map(hi));
                (
                    Shape::Indicator {
                        lo: l.min(h),
                        hi: l.max(h),
                    },
                    T::one(),
                )
            }
            Shape::Hat { lo, hi } => {
                let (l, h) = (map(lo), map(hi));
                (
                    Shape::Hat {
                        lo: l.min(h),
                        hi: l.max(h),
                    },
                    T::one(),
                )
            }
            Shape::PowerTail {
                alpha,
                cutoff,
                shift,
                orient,
            } => (
                Shape::PowerTail {
                    alpha,
                    cutoff: cutoff / aa,
                    shift: map(shift),
                    orient: orient * a.signum(),
                },
                aa.powf(-alpha),
            ),
            Shape::Exponential { rate, center } => (
                Shape::Exponential {
                    rate: rate * aa,
                    center: map(center),
                },
                T::one(),
            ),
        }
    }

    /// Derivative as catalog terms (with unit coefficient and no
    /// modulation), when it stays inside the catalog.
    fn derivative(&self) -> Option<Vec<Term<T>>> {
        let one = Complex::new(T::one(), T::zero());
        match self {
            Shape::Gaussian { a, center } => Some(vec![Term {
                coeff: one,
                freq: T::zero(),
                shape: Shape::PolyGaussian {
                    coeffs: vec![T::zero(), -lit::<T>(2.0) * *a],
                    a: *a,
                    center: *center,
                },
            }]),
            Shape::PolyGaussian { coeffs, a, center } => {
                let n = coeffs.len();
                let mut d = vec![T::zero(); n + 1];
                for (k, &c) in coeffs.iter().enumerate() {
                    if k > 0 {
                        d[k - 1] = d[k - 1] + T::from_usize(k).unwrap() * c;
                    }
                    d[k + 1] = d[k + 1] - lit::<T>(2.0) * *a * c;
                }
                Some(vec![Term {
                    coeff: one,
                    freq: T::zero(),
                    shape: Shape::PolyGaussian {
                        coeffs: d,
                        a: *a,
                        center: *center,
                    },
                }])
            }
            Shape::Hat { lo, hi } => {
                let m = (*lo + *hi) * lit(0.5);
                let slope = lit::<T>(2.0) / (*hi - *lo);
                Some(vec![
                    Term {
                        coeff: one * slope,
                        freq: T::zero(),
                        shape: Shape::Indicator { lo: *lo, hi: m },
                    },
                    Term {
                        coeff: -one * slope,
                        freq: T::zero(),
                        shape: Shape::Indicator { lo: m, hi: *hi },
                    },
                ])
            }
            _ => None,
        }
    }

    fn is_l1(&self) -> bool {
        match self {
            Shape::PowerTail { alpha, .. } => *alpha > T::one(),
            _ => true,
        }
    }

    fn decay(&self) -> Decay<T> {
        match self {
            Shape::Gaussian { a, .. } | Shape::PolyGaussian { a, .. } => Decay::Exponential { rate: *a },
            Shape::Indicator { lo, hi } | Shape::Hat { lo, hi } => Decay::CompactSupport { lo: *lo, hi: *hi },
            Shape::PowerTail { alpha, .. } => Decay::Power { alpha: *alpha },
            Shape::Exponential { rate, .. } => Decay::Exponential { rate: *rate },
        }
    }
}

impl<T: Real> Term<T> {
    pub fn eval(&self, x: T) -> Complex<T> {
        let s = self.shape.eval(x);
        if s == T::zero() {
            return Complex::new(T::zero(), T::zero());
        }
        let phase = if self.freq == T::zero() {
            Complex::new(T::one(), T::zero())
        } else {
            cis(self.freq * x)
        };
        self.coeff * phase * s
    }
}

impl<T: Real> CatalogFunction<T> {
    pub fn zero() -> Self {
        CatalogFunction { terms: Vec::new() }
    }

    /// Single term with validation.
    pub fn from_term(term: Term<T>) -> Result<Self> {
        term.shape.validate()?;
        if !(term.freq.is_finite() && term.coeff.re.is_finite() && term.coeff.im.is_finite()) {
            return Err(invalid("catalog term needs finite coefficient and frequency"));
        }
        Ok(CatalogFunction { terms: vec![term] })
    }

    pub fn from_terms(terms: Vec<Term<T>>) -> Result<Self> {
        let mut out = CatalogFunction::zero();
        for t in terms {
            out = out.add(&CatalogFunction::from_term(t)?);
        }
        Ok(out)
    }

    fn single(shape: Shape<T>) -> Result<Self> {
        CatalogFunction::from_term(Term {
            coeff: Complex::new(T::one(), T::zero()),
            freq: T::zero(),
            shape,
        })
    }

    /// `e^{-a (x - center)^2} e^{i ω x}`.
    pub fn gaussian(a: T, center: T, omega: T) -> Result<Self> {
        Ok(CatalogFunction::single(Shape::Gaussian { a, center })?.modulate(omega))
    }

    /// `1` on `[lo, hi)`.
    pub fn indicator(lo: T, hi: T) -> Result<Self> {
        CatalogFunction::single(Shape::Indicator { lo, hi })
    }

    /// Unit-height triangle on `[lo, hi]`.
    pub fn hat(lo: T, hi: T) -> Result<Self> {
        CatalogFunction::single(Shape::Hat { lo, hi })
    }

    /// `x^{-α}` for `x >= M`, else 0.
    pub fn power_tail(alpha: T, cutoff: T) -> Result<Self> {
        if !(cutoff >= T::one()) {
            return Err(invalid("power tail cutoff must be at least 1"));
        }
        CatalogFunction::single(Shape::PowerTail {
            alpha,
            cutoff,
            shift: T::zero(),
            orient: T::one(),
        })
    }

    /// `p(x - center) e^{-a (x - center)^2}` with `p` given by its coefficients.
    pub fn poly_gaussian(coeffs: Vec<T>, a: T, center: T) -> Result<Self> {
        CatalogFunction::single(Shape::PolyGaussian { coeffs, a, center })
    }

    /// `e^{-rate |x - center|}`.
    pub fn exponential(rate: T, center: T) -> Result<Self> {
        CatalogFunction::single(Shape::Exponential { rate, center })
    }

    pub fn terms(&self) -> &[Term<T>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: T) -> Complex<T> {
        self.terms
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, t| acc + t.eval(x))
    }

    pub fn add(&self, other: &CatalogFunction<T>) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        CatalogFunction { terms }
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        if c == Complex::new(T::zero(), T::zero()) {
            return CatalogFunction::zero();
        }
        CatalogFunction {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff * c,
                    ..t.clone()
                })
                .collect(),
        }
    }

    pub fn scale_real(&self, c: T) -> Self {
        self.scale(Complex::new(c, T::zero()))
    }

    /// `x ↦ f(x - a)`.
    pub fn translate(&self, a: T) -> Self {
        CatalogFunction {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff * cis(-t.freq * a),
                    freq: t.freq,
                    shape: t.shape.translated(a),
                })
                .collect(),
        }
    }

    /// `x ↦ e^{iax} f(x)`.
    pub fn modulate(&self, a: T) -> Self {
        CatalogFunction {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    freq: t.freq + a,
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// `x ↦ f(-x)`.
    pub fn reflect(&self) -> Self {
        self.dilate(-T::one(), T::zero())
            .expect("reflection is a valid dilation")
    }

    /// `x ↦ f(a x + b)`, `a ≠ 0`.
    pub fn dilate(&self, a: T, b: T) -> Result<Self> {
        if a == T::zero() || !a.is_finite() || !b.is_finite() {
            return Err(invalid("dilation needs a finite nonzero factor"));
        }
        Ok(CatalogFunction {
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let (shape, factor) = t.shape.dilated(a, b);
                    Term {
                        coeff: t.coeff * cis(t.freq * b) * factor,
                        freq: t.freq * a,
                        shape,
                    }
                })
                .collect(),
        })
    }

    /// Pointwise derivative, when every term stays in the catalog.
    pub fn derivative(&self) -> Result<Self> {
        let mut out = Vec::new();
        for t in &self.terms {
            let d = t
                .shape
                .derivative()
                .ok_or_else(|| Error::Unsupported(format!("derivative of {:?} leaves the catalog", t.shape)))?;
            // (e^{iωx} s)' = e^{iωx} (iω s + s')
            if t.freq != T::zero() {
                out.push(Term {
                    coeff: t.coeff * Complex::new(T::zero(), t.freq),
                    freq: t.freq,
                    shape: t.shape.clone(),
                });
            }
            for dt in d {
                out.push(Term {
                    coeff: t.coeff * dt.coeff,
                    freq: t.freq,
                    shape: dt.shape,
                });
            }
        }
        Ok(CatalogFunction { terms: out })
    }

    /// Whether every term has a classical derivative in the catalog.
    pub fn is_differentiable(&self) -> bool {
        self.terms.iter().all(|t| t.shape.derivative().is_some())
    }

    pub fn breakpoints(&self) -> Vec<T> {
        let mut pts: Vec<T> = self.terms.iter().flat_map(|t| t.shape.breakpoints()).collect();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup();
        pts
    }

    /// Pointwise bound on `|f|`.
    pub fn envelope(&self) -> Envelope<T> {
        Envelope::new(
            self.terms
                .iter()
                .map(|t| t.shape.envelope_term(t.coeff.norm()))
                .collect(),
        )
    }

    /// Largest modulation frequency in absolute value.
    pub fn max_frequency(&self) -> T {
        self.terms.iter().fold(T::zero(), |m, t| m.max(t.freq.abs()))
    }

    pub fn frequencies(&self) -> Vec<T> {
        self.terms.iter().map(|t| t.freq).collect()
    }

    pub fn is_l1(&self) -> bool {
        self.terms.iter().all(|t| t.shape.is_l1())
    }

    pub fn has_power_tail(&self) -> bool {
        self.terms.iter().any(|t| matches!(t.shape, Shape::PowerTail { .. }))
    }

    /// Weakest tail class among the terms.
    pub fn decay(&self) -> Option<Decay<T>> {
        let mut out: Option<Decay<T>> = None;
        for t in &self.terms {
            let d = t.shape.decay();
            out = Some(match (out, d) {
                (None, d) => d,
                (Some(Decay::Power { alpha: a }), Decay::Power { alpha: b }) => Decay::Power { alpha: a.min(b) },
                (Some(p @ Decay::Power { .. }), _) | (_, p @ Decay::Power { .. }) => p,
                (Some(Decay::Exponential { rate: a }), Decay::Exponential { rate: b }) => {
                    Decay::Exponential { rate: a.min(b) }
                }
                (Some(e @ Decay::Exponential { .. }), _) | (_, e @ Decay::Exponential { .. }) => e,
                (Some(Decay::CompactSupport { lo: a, hi: b }), Decay::CompactSupport { lo: c, hi: d }) => {
                    Decay::CompactSupport {
                        lo: a.min(c),
                        hi: b.max(d),
                    }
                }
            });
        }
        out
    }

    /// `f̂(s) = ∫ e^{-ist} f(t) dt`.
    ///
    /// Closed form for every shape except power tails, which use a rotated
    /// contour and therefore also cover the conditionally convergent case
    /// `α <= 1` away from the term's own frequency.
    pub fn fourier_transform(&self, s: T, tol: T) -> Result<QuadratureResult<T>> {
        let mut out = QuadratureResult::zero();
        let n = self.terms.len().max(1);
        let share = tol / T::from_usize(n).unwrap();
        for t in &self.terms {
            let sigma = s - t.freq;
            let r = match t.shape.fourier(sigma) {
                Some(v) => QuadratureResult {
                    value: v,
                    error_estimate: T::zero(),
                    evaluations: 1,
                },
                None => power_tail_fourier(&t.shape, sigma, share)?,
            };
            out = out.combine(r.scale(t.coeff));
        }
        Ok(out)
    }

    /// Pointwise bound on `|f̂|`, when every term admits one.
    pub fn fourier_envelope(&self) -> Option<Envelope<T>> {
        let mut terms = Vec::new();
        for t in &self.terms {
            let e = t.shape.fourier_envelope_term(t.coeff.norm())?;
            terms.push(
                Envelope::new(vec![e])
                    .affine_preimage(T::one(), -t.freq)
                    .terms
                    .remove(0),
            );
        }
        Some(Envelope::new(terms))
    }

    /// Points where `f̂` may be singular (power-tail terms at their own
    /// frequency).
    pub fn fourier_breakpoints(&self) -> Vec<T> {
        self.terms
            .iter()
            .filter(|t| matches!(t.shape, Shape::PowerTail { .. }))
            .map(|t| t.freq)
            .collect()
    }
}

/// `∫ e^{-iσt} u(t)^{-α} dt` over the support of a power-tail shape.
fn power_tail_fourier<T: Real>(shape: &Shape<T>, sigma: T, tol: T) -> Result<QuadratureResult<T>> {
    let Shape::PowerTail {
        alpha,
        cutoff,
        shift,
        orient,
    } = *shape
    else {
        unreachable!("only power tails lack a closed-form transform")
    };
    // Substitute t = shift + orient·u, u ∈ [cutoff, ∞):
    // ∫ e^{-iσ(shift + orient u)} u^{-α} du
    let phase = cis(-sigma * shift);
    let nu = sigma * orient;
    if nu == T::zero() {
        if alpha <= T::one() {
            return Err(Error::NotIntegrable(format!(
                "power tail with alpha = {} has no transform at its own frequency",
                alpha
            )));
        }
        let r = algebraic_half_line(cutoff, |u: T| Complex::new(u.powf(-alpha), T::zero()), alpha, tol)?;
        return Ok(r.scale(phase));
    }
    let bound = cutoff.powf(-alpha);
    let r = fourier_half_line(nu, cutoff, |u: Complex<T>| u.powf(-alpha), bound, tol)?;
    Ok(r.scale(phase))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_improper_with, QuadOptions};

    type C = CatalogFunction<f64>;

    fn close(a: Complex<f64>, b: Complex<f64>, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn samples() -> Vec<C> {
        vec![
            C::gaussian(1.0, 0.0, 0.0).unwrap(),
            C::gaussian(0.7, 0.4, 1.3).unwrap(),
            C::indicator(-0.5, 1.25).unwrap(),
            C::hat(-1.0, 2.0).unwrap().modulate(-0.8),
            C::poly_gaussian(vec![1.0, -0.5, 0.25], 1.2, -0.3).unwrap(),
            C::exponential(1.5, 0.2).unwrap(),
            C::power_tail(2.0, 1.0).unwrap(),
        ]
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(C::gaussian(1.0, 0.0, 0.0).unwrap().eval(0.0).re, 1.0);
        assert_eq!(C::indicator(0.0, 1.0).unwrap().eval(2.0).norm(), 0.0);
        assert_eq!(C::power_tail(2.0, 1.0).unwrap().eval(2.0).re, 0.25);
    }

    #[test]
    fn transform_examples() {
        assert_eq!(
            C::indicator(0.0, 1.0).unwrap().translate(1.0),
            C::indicator(1.0, 2.0).unwrap()
        );
        let r = C::indicator(0.0, 1.0).unwrap().reflect();
        assert_eq!(r.terms()[0].shape, Shape::Indicator { lo: -1.0, hi: 0.0 });
        let d = C::gaussian(1.0, 0.0, 0.0).unwrap().dilate(2.0, 0.0).unwrap();
        assert_eq!(d.terms()[0].shape, Shape::Gaussian { a: 4.0, center: 0.0 });
        assert!(C::gaussian(1.0, 0.0, 0.0).unwrap().dilate(0.0, 1.0).is_err());
    }

    #[test]
    fn transforms_act_pointwise() {
        let xs: Vec<f64> = (-40..=40).map(|i| i as f64 * 0.137 + 0.011).collect();
        for f in samples() {
            let t = f.translate(0.7);
            let m = f.modulate(2.5);
            let r = f.reflect();
            let d = f.dilate(-1.7, 0.4).unwrap();
            for &x in &xs {
                assert!(close(t.eval(x), f.eval(x - 0.7), 1e-12), "{f:?} translate at {x}");
                assert!(close(m.eval(x), cis(2.5 * x) * f.eval(x), 1e-12));
                assert!(close(r.eval(x), f.eval(-x), 1e-12));
                assert!(close(d.eval(x), f.eval(-1.7 * x + 0.4), 1e-12), "{f:?} dilate at {x}");
            }
        }
    }

    #[test]
    fn envelope_dominates() {
        for f in samples() {
            let env = f.envelope();
            for i in -400..=400 {
                let x = i as f64 * 0.05 + 0.003;
                assert!(f.eval(x).norm() <= env.at(x) * (1.0 + 1e-12) + 1e-300, "{f:?} at {x}");
            }
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let fs = [
            C::gaussian(1.0, 0.3, 0.7).unwrap(),
            C::poly_gaussian(vec![0.5, 1.0, -2.0], 0.8, 0.1).unwrap(),
            C::hat(-1.0, 1.0).unwrap(),
        ];
        for f in fs {
            let d = f.derivative().unwrap();
            for i in -20..=20 {
                let x = i as f64 * 0.173 + 0.05;
                let h = 1e-6;
                let fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
                assert!(close(d.eval(x), fd, 1e-6), "{f:?} at {x}");
            }
        }
        assert!(C::indicator(0.0, 1.0).unwrap().derivative().is_err());
    }

    #[test]
    fn closed_form_transforms_match_quadrature() {
        for f in samples().into_iter().filter(|f| !f.has_power_tail()) {
            for s in [-3.0, -0.4, 0.0, 0.9, 5.0] {
                let env = f.envelope();
                let opts = QuadOptions::new(1e-11)
                    .breakpoints(f.breakpoints())
                    .frequency(s + f.max_frequency());
                let q = integrate_improper_with(
                    |t: f64| cis(-s * t) * f.eval(t),
                    &env,
                    f64::NEG_INFINITY,
                    f64::INFINITY,
                    &opts,
                )
                .unwrap();
                let closed = f.fourier_transform(s, 1e-12).unwrap().value;
                assert!(close(q.value, closed, 1e-9), "{f:?} at {s}: {} vs {}", q.value, closed);
                if let Some(fe) = f.fourier_envelope() {
                    assert!(closed.norm() <= fe.at(s) * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn power_tail_transform() {
        // ∫_1^∞ e^{-ist} t^{-2} dt at s = 2 against direct integration with
        // a long truncation.
        let f = C::power_tail(2.0, 1.0).unwrap();
        let s = 2.0;
        let v = f.fourier_transform(s, 1e-12).unwrap().value;
        let q = crate::quadrature::integrate_with(
            |t: f64| cis(-s * t) / (t * t),
            1.0,
            4000.0,
            &QuadOptions::new(1e-13).frequency(s),
        )
        .unwrap();
        assert!(close(v, q.value, 1e-7));
        // At s = 0 the transform is ∫ t^{-2} = 1.
        assert!((f.fourier_transform(0.0, 1e-12).unwrap().value.re - 1.0).abs() < 1e-10);
        assert!(C::power_tail(0.75, 1.0).unwrap().fourier_transform(0.0, 1e-9).is_err());
    }

    #[test]
    fn hermite_values() {
        assert_eq!(hermite(3, 0.5), 8.0 * 0.125 - 12.0 * 0.5);
        let c: Vec<f64> = hermite_coeffs(4);
        assert_eq!(c, vec![12.0, 0.0, -48.0, 0.0, 16.0]);
    }
}
