//! JSON descriptions of functions, exponents, weights and experiments.
//!
//! Every object is tagged by `kind` and rejects unknown keys. Reals may be
//! written as numbers or as the strings `"inf"` / `"-inf"`.

use std::fmt;
use std::path::PathBuf;

use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Result};
use crate::exponent::{ExponentForm, ExponentFunction, Interval};
use crate::funcspace::{
    BvFunction, CatalogFunction, PieceForm, PiecewiseFunction, SampledFunction, SchwartzFunction, SmoothPiece,
};
use crate::integration::KernelFamily;
use crate::psi::Regime;
use crate::scalar::{lit, Real};

/// A real that also accepts `"inf"`, `"+inf"`, `"-inf"` and `"infinity"`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Num(pub f64);

impl Num {
    pub fn get<T: Real>(self) -> T {
        lit(self.0)
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(f64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(x) => Ok(Num(x)),
            Raw::S(s) => match s.to_ascii_lowercase().as_str() {
                "inf" | "+inf" | "infinity" | "+infinity" => Ok(Num(f64::INFINITY)),
                "-inf" | "-infinity" => Ok(Num(f64::NEG_INFINITY)),
                _ => Err(serde::de::Error::custom(format!(
                    "expected a number or \"inf\", got \"{}\"",
                    s
                ))),
            },
        }
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.0)
        } else if self.0.is_nan() {
            s.serialize_str("nan")
        } else if self.0 > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }
}

/// Catalog functions and the operations the catalog is closed under.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionSpec {
    Zero,
    Gaussian {
        a: Num,
        #[serde(default)]
        center: Option<Num>,
        #[serde(default)]
        omega: Option<Num>,
    },
    Indicator {
        lo: Num,
        hi: Num,
    },
    Hat {
        lo: Num,
        hi: Num,
    },
    PowerTail {
        alpha: Num,
        cutoff: Num,
    },
    PolyGaussian {
        coeffs: Vec<Num>,
        a: Num,
        #[serde(default)]
        center: Option<Num>,
    },
    Exponential {
        rate: Num,
        #[serde(default)]
        center: Option<Num>,
    },
    Sum {
        terms: Vec<FunctionSpec>,
    },
    Scale {
        re: Num,
        #[serde(default)]
        im: Option<Num>,
        of: Box<FunctionSpec>,
    },
    Translate {
        by: Num,
        of: Box<FunctionSpec>,
    },
    Modulate {
        by: Num,
        of: Box<FunctionSpec>,
    },
    Reflect {
        of: Box<FunctionSpec>,
    },
    /// `x ↦ f(a x + b)`.
    Dilate {
        a: Num,
        #[serde(default)]
        b: Option<Num>,
        of: Box<FunctionSpec>,
    },
    /// Linear interpolation; usable where only values are needed.
    Sampled {
        xs: Vec<Num>,
        ys: Vec<Num>,
    },
}

fn or_zero<T: Real>(x: Option<Num>) -> T {
    x.map(|v| v.get()).unwrap_or_else(T::zero)
}

impl FunctionSpec {
    pub fn to_catalog<T: Real>(&self) -> Result<CatalogFunction<T>> {
        Ok(match self {
            FunctionSpec::Zero => CatalogFunction::zero(),
            FunctionSpec::Gaussian { a, center, omega } => {
                CatalogFunction::gaussian(a.get(), or_zero(*center), or_zero(*omega))?
            }
            FunctionSpec::Indicator { lo, hi } => CatalogFunction::indicator(lo.get(), hi.get())?,
            FunctionSpec::Hat { lo, hi } => CatalogFunction::hat(lo.get(), hi.get())?,
            FunctionSpec::PowerTail { alpha, cutoff } => CatalogFunction::power_tail(alpha.get(), cutoff.get())?,
            FunctionSpec::PolyGaussian { coeffs, a, center } => {
                CatalogFunction::poly_gaussian(coeffs.iter().map(|c| c.get()).collect(), a.get(), or_zero(*center))?
            }
            FunctionSpec::Exponential { rate, center } => CatalogFunction::exponential(rate.get(), or_zero(*center))?,
            FunctionSpec::Sum { terms } => {
                let mut acc = CatalogFunction::zero();
                for t in terms {
                    acc = acc.add(&t.to_catalog()?);
                }
                acc
            }
            FunctionSpec::Scale { re, im, of } => of.to_catalog()?.scale(Complex::new(re.get(), or_zero(*im))),
            FunctionSpec::Translate { by, of } => of.to_catalog()?.translate(by.get()),
            FunctionSpec::Modulate { by, of } => of.to_catalog()?.modulate(by.get()),
            FunctionSpec::Reflect { of } => of.to_catalog()?.reflect(),
            FunctionSpec::Dilate { a, b, of } => of.to_catalog()?.dilate(a.get(), or_zero(*b))?,
            FunctionSpec::Sampled { .. } => {
                return Err(invalid(
                    "a sampled function has no closed form; this operation needs a catalog function",
                ))
            }
        })
    }

    /// `Some` only for the `sampled` kind.
    pub fn to_sampled<T: Real>(&self) -> Result<Option<SampledFunction<T>>> {
        match self {
            FunctionSpec::Sampled { xs, ys } => Ok(Some(SampledFunction::new(
                xs.iter().map(|x| x.get()).collect(),
                ys.iter().map(|y| Complex::new(y.get(), T::zero())).collect(),
            )?)),
            _ => Ok(None),
        }
    }

    pub fn to_schwartz<T: Real>(&self) -> Result<SchwartzFunction<T>> {
        SchwartzFunction::new(self.to_catalog()?)
    }
}

/// Closed forms for one piece of an exponent.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FormSpec {
    Constant { value: Num },
    LogDecay { kappa: Num },
    PowerDecay { c0: Num, k: Num },
    Affine { slope: Num, intercept: Num },
}

impl FormSpec {
    pub fn to_form<T: Real>(self) -> ExponentForm<T> {
        match self {
            FormSpec::Constant { value } => ExponentForm::Constant(value.get()),
            FormSpec::LogDecay { kappa } => ExponentForm::LogDecay { kappa: kappa.get() },
            FormSpec::PowerDecay { c0, k } => ExponentForm::PowerDecay {
                c0: c0.get(),
                k: k.get(),
            },
            FormSpec::Affine { slope, intercept } => ExponentForm::Affine {
                slope: slope.get(),
                intercept: intercept.get(),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentPieceSpec {
    pub lo: Num,
    pub hi: Num,
    pub form: FormSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ExponentSpec {
    Constant {
        value: Num,
    },
    LogDecay {
        kappa: Num,
    },
    PowerDecay {
        c0: Num,
        k: Num,
    },
    Affine {
        slope: Num,
        intercept: Num,
    },
    /// `left` on `x < at`, `right` on `x >= at`.
    Split {
        at: Num,
        left: FormSpec,
        right: FormSpec,
    },
    Pieces {
        pieces: Vec<ExponentPieceSpec>,
    },
}

impl ExponentSpec {
    pub fn to_exponent<T: Real>(&self) -> Result<ExponentFunction<T>> {
        let single = |f: FormSpec| ExponentFunction::uniform(f.to_form());
        match self {
            ExponentSpec::Constant { value } => single(FormSpec::Constant { value: *value }),
            ExponentSpec::LogDecay { kappa } => single(FormSpec::LogDecay { kappa: *kappa }),
            ExponentSpec::PowerDecay { c0, k } => single(FormSpec::PowerDecay { c0: *c0, k: *k }),
            ExponentSpec::Affine { slope, intercept } => single(FormSpec::Affine {
                slope: *slope,
                intercept: *intercept,
            }),
            ExponentSpec::Split { at, left, right } => {
                ExponentFunction::split(at.get(), left.to_form(), right.to_form())
            }
            ExponentSpec::Pieces { pieces } => ExponentFunction::from_forms(
                pieces
                    .iter()
                    .map(|p| (Interval::new(p.lo.get(), p.hi.get()), p.form.to_form()))
                    .collect(),
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PieceFormSpec {
    /// `Σ c[k] x^k`.
    Poly { coeffs: Vec<Num> },
    /// `scale · x^exponent` on `x > 0`.
    Power { scale: Num, exponent: Num },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightPieceSpec {
    pub lo: Num,
    pub hi: Num,
    pub form: PieceFormSpec,
}

/// Weights of bounded variation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightSpec {
    Catalog {
        function: FunctionSpec,
    },
    Constant {
        value: Num,
    },
    Piecewise {
        pieces: Vec<WeightPieceSpec>,
    },
    /// `g1 * g2` with `g2` an integrable catalog function.
    Convolution {
        g1: Box<WeightSpec>,
        g2: FunctionSpec,
        #[serde(default)]
        tol: Option<Num>,
    },
}

impl WeightSpec {
    pub fn to_bv<T: Real>(&self) -> Result<BvFunction<T>> {
        Ok(match self {
            WeightSpec::Catalog { function } => BvFunction::Catalog(function.to_catalog()?),
            WeightSpec::Constant { value } => BvFunction::constant(value.get()),
            WeightSpec::Piecewise { pieces } => {
                let pieces = pieces
                    .iter()
                    .map(|p| SmoothPiece {
                        lo: p.lo.get(),
                        hi: p.hi.get(),
                        form: match &p.form {
                            PieceFormSpec::Poly { coeffs } => PieceForm::Poly(coeffs.iter().map(|c| c.get()).collect()),
                            PieceFormSpec::Power { scale, exponent } => PieceForm::Power {
                                scale: scale.get(),
                                exponent: exponent.get(),
                            },
                        },
                    })
                    .collect();
                BvFunction::Piecewise(PiecewiseFunction::new(pieces)?)
            }
            WeightSpec::Convolution { g1, g2, tol } => BvFunction::convolution(
                g1.to_bv()?,
                g2.to_catalog()?,
                tol.map(|t| t.get()).unwrap_or_else(|| lit(1e-10)),
            )?,
        })
    }
}

/// Evaluation points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GridSpec {
    Points {
        values: Vec<Num>,
    },
    Linear {
        lo: Num,
        hi: Num,
        n: usize,
    },
    /// `n` points spaced evenly in `log |s|` between `lo > 0` and `hi`.
    Log {
        lo: Num,
        hi: Num,
        n: usize,
    },
}

impl GridSpec {
    pub fn points<T: Real>(&self) -> Result<Vec<T>> {
        match self {
            GridSpec::Points { values } => Ok(values.iter().map(|v| v.get()).collect()),
            GridSpec::Linear { lo, hi, n } => {
                if *n < 2 || !(lo.0 < hi.0) || !lo.0.is_finite() || !hi.0.is_finite() {
                    return Err(invalid("linear grid needs finite lo < hi and n >= 2"));
                }
                let (lo, hi): (T, T) = (lo.get(), hi.get());
                let step = (hi - lo) / T::from_usize(n - 1).unwrap();
                Ok((0..*n).map(|i| lo + step * T::from_usize(i).unwrap()).collect())
            }
            GridSpec::Log { lo, hi, n } => log_grid(lo.get(), hi.get(), *n),
        }
    }
}

/// `n` log-spaced points from `lo` to `hi`.
pub fn log_grid<T: Real>(lo: T, hi: T, n: usize) -> Result<Vec<T>> {
    if n < 2 || !(lo > T::zero() && lo < hi && hi.is_finite()) {
        return Err(invalid("log grid needs 0 < lo < hi < ∞ and n >= 2"));
    }
    let (a, b) = (lo.ln(), hi.ln());
    let step = (b - a) / T::from_usize(n - 1).unwrap();
    Ok((0..n).map(|i| (a + step * T::from_usize(i).unwrap()).exp()).collect())
}

/// One experiment: the operation with its inputs plus shared settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub operation: Operation,
    #[serde(default)]
    pub tol: Option<Num>,
    #[serde(default)]
    pub output: Option<OutputSpec>,
}

#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub json: Option<PathBuf>,
    #[serde(default)]
    pub csv: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Operation {
    Norm {
        function: FunctionSpec,
        exponent: ExponentSpec,
    },
    Modular {
        function: FunctionSpec,
        exponent: ExponentSpec,
        #[serde(default)]
        lambda: Option<Num>,
        /// `[lo, hi]`; the whole line when absent.
        #[serde(default)]
        region: Option<(Num, Num)>,
    },
    Psi {
        function: FunctionSpec,
        grid: GridSpec,
    },
    Bounds {
        function: FunctionSpec,
        exponent: ExponentSpec,
        /// Regime tag; chosen from the exponent when absent.
        #[serde(default)]
        regime: Option<String>,
        #[serde(default)]
        grid: Option<GridSpec>,
    },
    FtCheck {
        function: FunctionSpec,
        phi: FunctionSpec,
    },
    Exchange {
        function: FunctionSpec,
        weight: WeightSpec,
        exponent: ExponentSpec,
    },
    Invert {
        function: FunctionSpec,
        exponent: ExponentSpec,
        kernel: String,
        a_seq: Vec<Num>,
    },
    DoubleExchange {
        function: FunctionSpec,
        g1: WeightSpec,
        g2: FunctionSpec,
        exponent: ExponentSpec,
    },
    Suite,
}

impl Operation {
    pub fn name(&self) -> &'static str {
        match self {
            Operation::Norm { .. } => "norm",
            Operation::Modular { .. } => "modular",
            Operation::Psi { .. } => "psi",
            Operation::Bounds { .. } => "bounds",
            Operation::FtCheck { .. } => "ft-check",
            Operation::Exchange { .. } => "exchange",
            Operation::Invert { .. } => "invert",
            Operation::DoubleExchange { .. } => "double-exchange",
            Operation::Suite => "suite",
        }
    }
}

pub fn parse_kernel(name: &str) -> Result<KernelFamily> {
    name.parse()
}

pub fn parse_regime<T: Real>(tag: &str) -> Result<Regime<T>> {
    tag.parse()
}

/// Parses JSON into `V`, reporting schema problems as invalid input.
pub fn from_json<V: for<'de> Deserialize<'de>>(text: &str) -> Result<V> {
    serde_json::from_str(text).map_err(|e| invalid(format!("schema error: {}", e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_strings() {
        let e: ExponentSpec = from_json(r#"{"kind":"constant","value":"inf"}"#).unwrap();
        let p = e.to_exponent::<f64>().unwrap();
        assert!(p.p_plus().is_infinite());
        assert!(from_json::<Num>(r#""huge""#).is_err());
        assert_eq!(serde_json::to_string(&Num(f64::NEG_INFINITY)).unwrap(), r#""-inf""#);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(from_json::<FunctionSpec>(r#"{"kind":"gaussian","a":1,"colour":2}"#).is_err());
        assert!(from_json::<ExperimentConfig>(r#"{"operation":{"op":"suite"},"extra":1}"#).is_err());
        assert!(from_json::<ExperimentConfig>(
            r#"{"operation":{"op":"norm","function":{"kind":"zero"},"exponent":{"kind":"constant","value":2},"x":0}}"#
        )
        .is_err());
    }

    #[test]
    fn composite_function() {
        let spec: FunctionSpec = from_json(
            r#"{"kind":"sum","terms":[
                {"kind":"translate","by":1,"of":{"kind":"gaussian","a":1}},
                {"kind":"scale","re":2,"of":{"kind":"indicator","lo":0,"hi":1}}]}"#,
        )
        .unwrap();
        let f = spec.to_catalog::<f64>().unwrap();
        assert!((f.eval(1.0).re - ((0.0f64).exp() + 0.0)).abs() < 1e-15);
        assert!((f.eval(0.5).re - ((-0.25f64).exp() + 2.0)).abs() < 1e-15);
    }

    #[test]
    fn weights_and_grids() {
        let w: WeightSpec =
            from_json(r#"{"kind":"piecewise","pieces":[{"lo":0,"hi":1,"form":{"kind":"poly","coeffs":[0,1]}}]}"#)
                .unwrap();
        let g = w.to_bv::<f64>().unwrap();
        assert!((g.eval(0.5).re - 0.5).abs() < 1e-15);
        let grid = GridSpec::Log {
            lo: Num(1e-3),
            hi: Num(1e3),
            n: 7,
        };
        let pts = grid.points::<f64>().unwrap();
        assert_eq!(pts.len(), 7);
        assert!((pts[3] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn config_round_trip() {
        let text = r#"{"operation":{"op":"invert","function":{"kind":"gaussian","a":1},
            "exponent":{"kind":"constant","value":2},"kernel":"gauss-weierstrass","a_seq":[1,0.5]},
            "tol":1e-6,"output":{"json":"out.json"}}"#;
        let c: ExperimentConfig = from_json(text).unwrap();
        assert_eq!(c.operation.name(), "invert");
        let again: ExperimentConfig = from_json(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(c, again);
    }
}
