//! JSON and CSV renderings of results.
//!
//! JSON numbers use the shortest representation that round-trips; CSV cells
//! carry 17 significant digits. Non-finite values become `"inf"`, `"-inf"`
//! or `"nan"`.

use num_complex::Complex;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fourier::{IdentityCheck, Membership, PairingReport};
use crate::integration::{DoubleExchangeReport, ExchangeReport, InversionStep, InversionTrace};
use crate::modular::{HolderReport, ModularValue, NormResult};
use crate::psi::{BoundCertificate, PsiEvaluation};
use crate::scalar::{to_f64, Real};

/// Exit status for a successful run.
pub const EXIT_PASS: i32 = 0;
/// A certificate or check came out negative.
pub const EXIT_CERTIFICATE: i32 = 1;
/// Malformed input or unmet hypotheses.
pub const EXIT_INPUT: i32 = 2;
/// The numerics could not reach the tolerance.
pub const EXIT_NUMERICAL: i32 = 3;

pub fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_INPUT
    }
}

pub fn num<T: Real>(x: T) -> Value {
    let v = to_f64(x);
    if v.is_finite() {
        json!(v)
    } else if v.is_nan() {
        json!("nan")
    } else if v > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

pub fn cplx<T: Real>(z: Complex<T>) -> Value {
    json!({ "re": num(z.re), "im": num(z.im) })
}

fn nums<T: Real>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

pub fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::InvalidInput(_) => "invalid-input",
        Error::NonConvergence { .. } => "non-convergence",
        Error::TailUnbounded { .. } => "tail-unbounded",
        Error::NotIntegrable(_) => "not-integrable",
        Error::Hypothesis(_) => "hypothesis",
        Error::Growth { .. } => "growth",
        Error::Unsupported(_) => "unsupported",
    };
    let mut v = json!({ "error": kind, "message": e.to_string(), "exit_code": exit_code(e) });
    if let Error::Growth { witness, .. } = e {
        v["witness"] = num(*witness);
    }
    v
}

pub fn norm_json<T: Real>(r: &NormResult<T>) -> Value {
    json!({
        "value": num(r.value),
        "bracket": [num(r.bracket.0), num(r.bracket.1)],
        "modular_at_value": num(r.modular_at_value),
    })
}

pub fn modular_json<T: Real>(m: &ModularValue<T>, lambda: T) -> Value {
    json!({
        "lambda": num(lambda),
        "lebesgue_part": num(m.lebesgue_part),
        "esssup_part": num(m.esssup_part),
        "total": num(m.total),
    })
}

pub fn holder_json<T: Real>(h: &HolderReport<T>) -> Value {
    json!({
        "lhs": num(h.lhs),
        "rhs": num(h.rhs),
        "constant": num(h.constant),
        "norm_f": num(h.norm_f),
        "norm_g": num(h.norm_g),
        "pass": h.pass,
    })
}

pub fn psi_json<T: Real>(e: &PsiEvaluation<T>) -> Value {
    json!({
        "s": nums(&e.s_grid),
        "values": Value::Array(e.values.iter().map(|&z| cplx(z)).collect()),
        "errors": nums(&e.errors),
    })
}

pub fn psi_csv<T: Real>(e: &PsiEvaluation<T>) -> Result<String> {
    let rows = e
        .s_grid
        .iter()
        .zip(&e.values)
        .zip(&e.errors)
        .map(|((&s, z), &err)| vec![to_f64(s), to_f64(z.re), to_f64(z.im), to_f64(err)])
        .collect::<Vec<_>>();
    csv_table(&["s", "re", "im", "error"], &rows)
}

pub fn bounds_json<T: Real>(c: &BoundCertificate<T>) -> Value {
    let min_margin = c.rows.iter().map(|r| to_f64(r.margin)).fold(f64::INFINITY, f64::min);
    json!({
        "regime": c.regime.to_string(),
        "f_norm": num(c.f_norm),
        "min_margin": num(min_margin),
        "pass": c.pass,
        "rows": Value::Array(c.rows.iter().map(|r| json!({
            "s": num(r.s), "lhs": num(r.lhs), "rhs": num(r.rhs), "margin": num(r.margin),
        })).collect()),
    })
}

/// `s, lhs, rhs, margin`, sorted by `s`.
pub fn bounds_csv<T: Real>(c: &BoundCertificate<T>) -> Result<String> {
    let mut rows: Vec<Vec<f64>> = c
        .rows
        .iter()
        .map(|r| vec![to_f64(r.s), to_f64(r.lhs), to_f64(r.rhs), to_f64(r.margin)])
        .collect();
    rows.sort_by(|a, b| a[0].total_cmp(&b[0]));
    csv_table(&["s", "lhs", "rhs", "margin"], &rows)
}

pub fn pairing_json<T: Real>(r: &PairingReport<T>, tol: T) -> Value {
    json!({
        "lhs": cplx(r.lhs),
        "rhs": cplx(r.rhs),
        "abs_gap": num(r.abs_gap),
        "pass": r.abs_gap <= tol,
    })
}

pub fn identity_json<T: Real>(c: &IdentityCheck<T>) -> Value {
    json!({ "direct": cplx(c.direct), "formula": cplx(c.formula), "abs_gap": num(c.abs_gap) })
}

pub fn membership_json<T: Real>(m: &Membership<T>) -> Value {
    json!({
        "modular": num(m.modular),
        "partial": num(m.partial),
        "member": m.member,
        "certified": m.certified,
    })
}

pub fn exchange_json<T: Real>(r: &ExchangeReport<T>) -> Value {
    let c = &r.constants;
    json!({
        "lhs": cplx(r.lhs),
        "rhs": cplx(r.rhs),
        "abs_gap": num(r.abs_gap),
        "bound_rhs": num(r.bound_rhs),
        "moment": num(r.moment),
        "f_norm": num(r.f_norm),
        "constants": {
            "regime": c.regime.to_string(),
            "k1": num(c.k1), "k2": num(c.k2), "r": num(c.r), "m": num(c.m),
        },
        "pass": r.pass,
    })
}

pub fn double_exchange_json<T: Real>(r: &DoubleExchangeReport<T>) -> Value {
    json!({ "lhs": cplx(r.lhs), "rhs": cplx(r.rhs), "abs_gap": num(r.abs_gap), "pass": r.pass })
}

pub fn inversion_step_json<T: Real>(s: &InversionStep<T>) -> Value {
    json!({
        "kernel": s.family.name(),
        "a": num(s.a),
        "x": nums(&s.x_grid),
        "convolution": Value::Array(s.convolution.iter().map(|&z| cplx(z)).collect()),
        "spectral": Value::Array(s.spectral.iter().map(|&z| cplx(z)).collect()),
        "max_gap": num(s.max_gap),
    })
}

/// `threshold` is the pass gate on `final_norm / ‖f‖`.
pub fn inversion_json<T: Real>(t: &InversionTrace<T>, threshold: T) -> Value {
    json!({
        "kernel": t.family.name(),
        "a_sequence": nums(&t.a_sequence),
        "norms": nums(&t.norms),
        "f_norm": num(t.f_norm),
        "levels": t.levels,
        "final_ratio": num(t.final_ratio()),
        "eventually_decreasing": t.is_eventually_decreasing(),
        "threshold": num(threshold),
        "pass": t.is_eventually_decreasing() && t.final_ratio() <= threshold,
    })
}

/// Two columns `a, norm`.
pub fn inversion_csv<T: Real>(t: &InversionTrace<T>) -> Result<String> {
    let rows: Vec<Vec<f64>> = t
        .a_sequence
        .iter()
        .zip(&t.norms)
        .map(|(&a, &n)| vec![to_f64(a), to_f64(n)])
        .collect();
    csv_table(&["a", "norm"], &rows)
}

/// Header plus rows, each cell with 17 significant digits.
pub fn csv_table(header: &[&str], rows: &[Vec<f64>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io_err = |e: csv::Error| Error::InvalidInput(format!("csv: {}", e));
    w.write_record(header).map_err(io_err)?;
    for row in rows {
        w.write_record(row.iter().map(|&x| csv_cell(x))).map_err(io_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidInput(format!("csv: {}", e)))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidInput(format!("csv: {}", e)))
}

fn csv_cell(x: f64) -> String {
    if x.is_finite() {
        format!("{:.16e}", x)
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integration::KernelFamily;

    #[test]
    fn empty_table_is_header_only() {
        assert_eq!(csv_table(&["a", "norm"], &[]).unwrap(), "a,norm\n");
    }

    #[test]
    fn seventeen_digits_round_trip() {
        let x = 0.1f64 + 0.2;
        let s = csv_table(&["x"], &[vec![x]]).unwrap();
        let cell = s.lines().nth(1).unwrap();
        assert_eq!(cell.parse::<f64>().unwrap(), x);
        assert_eq!(cell.split('e').next().unwrap().replace('.', "").len(), 17);
    }

    #[test]
    fn inversion_table() {
        let t = InversionTrace {
            family: KernelFamily::GaussWeierstrass,
            a_sequence: vec![1.0, 0.5],
            norms: vec![0.5, f64::INFINITY],
            f_norm: 1.0,
            levels: vec![2, 2],
        };
        let s = inversion_csv(&t).unwrap();
        assert_eq!(s.lines().count(), 3);
        assert!(s.ends_with("inf\n"));
        assert_eq!(inversion_json(&t, 0.1)["norms"][1], json!("inf"));
    }

    #[test]
    fn bounds_sorted_by_s() {
        use crate::psi::{BoundRow, Regime};
        let row = |s: f64| BoundRow {
            s,
            lhs: 0.0,
            rhs: 1.0,
            margin: 1.0,
        };
        let c = BoundCertificate {
            regime: Regime::Lh1,
            f_norm: 1.0,
            rows: vec![row(2.0), row(-1.0), row(0.5)],
            pass: true,
        };
        let s = bounds_csv(&c).unwrap();
        let firsts: Vec<f64> = s
            .lines()
            .skip(1)
            .map(|l| l.split(',').next().unwrap().parse().unwrap())
            .collect();
        assert_eq!(firsts, vec![-1.0, 0.5, 2.0]);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::InvalidInput("x".into())), EXIT_INPUT);
        assert_eq!(
            exit_code(&Error::TailUnbounded { required_radius: 1.0 }),
            EXIT_NUMERICAL
        );
        assert_eq!(
            error_json(&Error::Growth {
                witness: 3.0,
                detail: "d".into()
            })["witness"],
            json!(3.0)
        );
    }
}
