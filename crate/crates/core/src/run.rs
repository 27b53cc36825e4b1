//! Executes an [`Operation`] and renders its result.

use serde_json::{json, Value};

use crate::error::{invalid, Result};
use crate::exponent::IntervalUnion;
use crate::fourier::schwartz_pairing;
use crate::integration::{double_exchange_check, exchange_check, inversion_run};
use crate::io::{log_grid, parse_kernel, parse_regime, GridSpec, Operation};
use crate::modular::{luxemburg_norm, modular};
use crate::psi::{certify_bounds, psi_grid, Regime};
use crate::report;
use crate::suite::{self, INVERSION_THRESHOLD};

/// Rendered result of one operation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub json: Value,
    /// Tabular form, for the operations that have one.
    pub csv: Option<String>,
    /// False when a certificate or check came out negative.
    pub pass: bool,
}

impl RunOutput {
    fn plain(json: Value) -> Self {
        RunOutput {
            json,
            csv: None,
            pass: true,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            report::EXIT_PASS
        } else {
            report::EXIT_CERTIFICATE
        }
    }
}

/// Grid used by `bounds` when none is given: 20 log-spaced points on each
/// side of the origin, `1e-2 <= |s| <= 1e3`.
pub fn default_bounds_grid() -> Vec<f64> {
    let pos = log_grid(1e-2, 1e3, 20).expect("valid grid");
    let mut grid: Vec<f64> = pos.iter().rev().map(|&s| -s).collect();
    grid.extend(pos);
    grid
}

pub fn execute(op: &Operation, tol: f64) -> Result<RunOutput> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(invalid("tolerance must be positive and finite"));
    }
    let out = match op {
        Operation::Norm { function, exponent } => {
            let f = function.to_catalog::<f64>()?;
            let p = exponent.to_exponent()?;
            let r = luxemburg_norm(&f, &p, tol)?;
            RunOutput::plain(report::norm_json(&r))
        }
        Operation::Modular {
            function,
            exponent,
            lambda,
            region,
        } => {
            let f = function.to_catalog::<f64>()?;
            let p = exponent.to_exponent()?;
            let lambda = lambda.map_or(1.0, |l| l.0);
            let region = match region {
                Some((lo, hi)) if lo.0 < hi.0 => IntervalUnion::single(lo.0, hi.0),
                Some(_) => return Err(invalid("region needs lo < hi")),
                None => IntervalUnion::line(),
            };
            let m = modular(&f, &p, &region, lambda, tol)?;
            RunOutput::plain(report::modular_json(&m, lambda))
        }
        Operation::Psi { function, grid } => {
            let f = function.to_catalog::<f64>()?;
            let e = psi_grid(&f, &grid.points()?, tol)?;
            RunOutput {
                json: report::psi_json(&e),
                csv: Some(report::psi_csv(&e)?),
                pass: true,
            }
        }
        Operation::Bounds {
            function,
            exponent,
            regime,
            grid,
        } => {
            let f = function.to_catalog::<f64>()?;
            let p = exponent.to_exponent()?;
            let regime = match regime {
                Some(tag) => parse_regime(tag)?,
                None => Regime::select(&p)?,
            };
            let grid = grid
                .as_ref()
                .map(GridSpec::points)
                .transpose()?
                .unwrap_or_else(default_bounds_grid);
            let c = certify_bounds(&f, &p, &grid, regime, tol)?;
            RunOutput {
                json: report::bounds_json(&c),
                csv: Some(report::bounds_csv(&c)?),
                pass: c.pass,
            }
        }
        Operation::FtCheck { function, phi } => {
            let f = function.to_catalog::<f64>()?;
            let phi = phi.to_schwartz()?;
            let r = schwartz_pairing(&f, &phi, tol)?;
            let json = report::pairing_json(&r, tol);
            let pass = json["pass"] == json!(true);
            RunOutput { json, csv: None, pass }
        }
        Operation::Exchange {
            function,
            weight,
            exponent,
        } => {
            let f = function.to_catalog::<f64>()?;
            let g = weight.to_bv()?;
            let p = exponent.to_exponent()?;
            let r = exchange_check(&f, &g, &p, tol)?;
            RunOutput {
                json: report::exchange_json(&r),
                csv: None,
                pass: r.pass,
            }
        }
        Operation::Invert {
            function,
            exponent,
            kernel,
            a_seq,
        } => {
            let f = function.to_catalog::<f64>()?;
            let p = exponent.to_exponent()?;
            let family = parse_kernel(kernel)?;
            let a: Vec<f64> = a_seq.iter().map(|x| x.0).collect();
            let t = inversion_run(&f, family, &a, &p, tol)?;
            let json = report::inversion_json(&t, INVERSION_THRESHOLD);
            let pass = json["pass"] == json!(true);
            RunOutput {
                json,
                csv: Some(report::inversion_csv(&t)?),
                pass,
            }
        }
        Operation::DoubleExchange {
            function,
            g1,
            g2,
            exponent,
        } => {
            let f = function.to_catalog::<f64>()?;
            let g1 = g1.to_bv()?;
            let g2 = g2.to_catalog()?;
            let p = exponent.to_exponent()?;
            let r = double_exchange_check(&f, &g1, &g2, &p, tol)?;
            RunOutput {
                json: report::double_exchange_json(&r),
                csv: None,
                pass: r.pass,
            }
        }
        Operation::Suite => {
            let outcomes = suite::run_all();
            let pass = outcomes.iter().all(|o| o.pass);
            let rows = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "id": o.id, "title": o.title, "pass": o.pass,
                        "detail": o.detail, "seconds": o.seconds,
                    })
                })
                .collect();
            RunOutput {
                json: json!({ "criteria": Value::Array(rows), "pass": pass }),
                csv: None,
                pass,
            }
        }
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::from_json;

    fn run(text: &str) -> Result<RunOutput> {
        execute(&from_json(text)?, 1e-8)
    }

    #[test]
    fn gaussian_l2_norm() {
        // ‖e^{-x²}‖_2 = (π/2)^{1/4}.
        let out = run(r#"{"op":"norm","function":{"kind":"gaussian","a":1},
            "exponent":{"kind":"constant","value":2}}"#)
        .unwrap();
        let v = out.json["value"].as_f64().unwrap();
        assert!((v - (std::f64::consts::FRAC_PI_2).powf(0.25)).abs() < 1e-7);
        assert_eq!(out.exit_code(), 0);
    }

    #[test]
    fn psi_has_table() {
        let out = run(r#"{"op":"psi","function":{"kind":"indicator","lo":0,"hi":1},
            "grid":{"kind":"points","values":[1,2]}}"#)
        .unwrap();
        assert_eq!(out.csv.unwrap().lines().count(), 3);
    }

    #[test]
    fn default_grid_is_symmetric() {
        let g = default_bounds_grid();
        assert_eq!(g.len(), 40);
        assert_eq!(g[0], -g[39]);
    }

    #[test]
    fn bad_region() {
        assert!(run(r#"{"op":"modular","function":{"kind":"zero"},
            "exponent":{"kind":"constant","value":2},"region":[1,0]}"#)
        .is_err());
    }
}
