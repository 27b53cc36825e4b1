//! The twelve acceptance criteria, each checked against an independent
//! oracle at its stated tolerance.

pub mod oracle;

use std::f64::consts::PI;
use std::fmt;
use std::time::Instant;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::exponent::{ExponentForm, ExponentFunction, Interval};
use crate::fourier::{
    fhat_membership, psi_dilation, psi_modulation, psi_of_derivative, psi_reflection, psi_translation, schwartz_pairing,
};
use crate::funcspace::{BvFunction, CatalogFunction, SchwartzFunction};
use crate::integration::{
    double_exchange_check, exchange_check, gauss_weierstrass_gaussian_norm, inversion_run, InversionTrace, KernelFamily,
};
use crate::io::log_grid;
use crate::modular::{holder_check, luxemburg_norm};
use crate::psi::{certify_bounds, fit_slope, psi, Regime, MARGIN_FLOOR};
use crate::special::{c_q, gamma, lambert_w};

/// Seed for the randomized sweeps; reported in the outcome details.
pub const SEED: u64 = 0x5EED_2026;

/// Gate on `‖f - I_a[f]‖ / ‖f‖` at the smallest scale.
pub const INVERSION_THRESHOLD: f64 = 0.1;

type C = CatalogFunction<f64>;
type E = ExponentFunction<f64>;

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {} ({:.1} s): {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.seconds,
            self.detail
        )
    }
}

pub const TITLES: [&str; 12] = [
    "constant-exponent reduction",
    "mixed-exponent norm",
    "generalized Hölder",
    "Ψ oracle agreement",
    "growth-bound certificates",
    "asymptotic exponents",
    "distributional agreement",
    "operator calculus",
    "exchange formula",
    "inversion in norm",
    "double exchange",
    "membership checks",
];

/// Runs criterion `id` (1 to 12).
pub fn run_criterion(id: u8) -> CriterionOutcome {
    let start = Instant::now();
    let r = match id {
        1 => constant_exponent(),
        2 => mixed_exponent(),
        3 => generalized_holder(),
        4 => psi_oracles(),
        5 => bound_certificates(),
        6 => asymptotic_exponents(),
        7 => distributional(),
        8 => operator_calculus(),
        9 => exchange(),
        10 => inversion(),
        11 => double_exchange(),
        12 => membership(),
        _ => Ok((false, format!("no criterion {}", id))),
    };
    let (pass, detail) = r.unwrap_or_else(|e| (false, format!("error: {}", e)));
    CriterionOutcome {
        id,
        title: (id as usize)
            .checked_sub(1)
            .and_then(|i| TITLES.get(i))
            .copied()
            .unwrap_or("unknown"),
        pass,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Wall-clock budget for the whole suite, enforced as part of criterion 10.
pub const SUITE_BUDGET_SECONDS: f64 = 300.0;

pub fn run_all() -> Vec<CriterionOutcome> {
    let mut out: Vec<CriterionOutcome> = (1..=12).map(run_criterion).collect();
    let total: f64 = out.iter().map(|o| o.seconds).sum();
    if total > SUITE_BUDGET_SECONDS {
        let inv = &mut out[9];
        inv.pass = false;
        inv.detail = format!(
            "{}; suite took {:.0} s, over the {:.0} s budget",
            inv.detail, total, SUITE_BUDGET_SECONDS
        );
    }
    out
}

type Outcome = Result<(bool, String)>;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Functions with `∫|f|^c` in closed form or by a fixed rule.
fn lebesgue_cases() -> Result<Vec<(&'static str, C, Box<dyn Fn(f64) -> f64 + Sync>)>> {
    Ok(vec![
        (
            "gaussian",
            C::gaussian(1.0, 0.0, 0.0)?,
            Box::new(|c: f64| (PI / c).sqrt()),
        ),
        (
            "modulated gaussian",
            C::gaussian(2.0, 1.0, 3.0)?,
            Box::new(|c: f64| (PI / (2.0 * c)).sqrt()),
        ),
        ("indicator", C::indicator(-1.0, 1.0)?, Box::new(|_| 2.0)),
        (
            "dilated indicator",
            C::indicator(-1.0, 1.0)?.dilate(2.0, 0.0)?,
            Box::new(|_| 1.0),
        ),
        ("hat", C::hat(-1.0, 1.0)?, Box::new(|c: f64| 2.0 / (c + 1.0))),
        ("exponential", C::exponential(1.0, 0.0)?, Box::new(|c: f64| 2.0 / c)),
        (
            "shifted exponential",
            C::exponential(2.0, 1.0)?,
            Box::new(|c: f64| 1.0 / c),
        ),
        (
            "poly-gaussian",
            C::poly_gaussian(vec![1.0, 0.0, 1.0], 1.0, 0.0)?,
            Box::new(|c: f64| oracle::integrate(|x| ((1.0 + x * x) * (-x * x).exp()).powf(c), -12.0, 12.0, 240)),
        ),
        (
            "power tail",
            C::power_tail(0.75, 1.0)?,
            Box::new(|c: f64| 1.0 / (0.75 * c - 1.0)),
        ),
        (
            "step sum",
            C::indicator(-1.0, 0.0)?.add(&C::indicator(0.0, 1.0)?.scale_real(2.0)),
            Box::new(|c: f64| 1.0 + 2f64.powf(c)),
        ),
    ])
}

fn constant_exponent() -> Outcome {
    let cases = lebesgue_cases()?;
    let mut worst: (f64, String) = (0.0, String::new());
    for c in [1.5, 2.0, 3.0] {
        let p = E::constant(c)?;
        let rows: Vec<(String, f64)> = cases
            .par_iter()
            .map(|(name, f, int)| {
                let n = luxemburg_norm(f, &p, 1e-10)?.value;
                let want = int(c).powf(1.0 / c);
                Ok((format!("{} p={}", name, c), rel(n, want)))
            })
            .collect::<Result<_>>()?;
        for (name, e) in rows {
            if e > worst.0 {
                worst = (e, name);
            }
        }
    }
    Ok((
        worst.0 <= 1e-6,
        format!("30 norms, worst relative error {:.2e} ({})", worst.0, worst.1),
    ))
}

fn split_23() -> Result<E> {
    E::split(0.0, ExponentForm::Constant(2.0), ExponentForm::Constant(3.0))
}

fn mixed_exponent() -> Outcome {
    let f = C::indicator(-1.0, 1.0)?;
    let n = luxemburg_norm(&f, &split_23()?, 1e-10)?.value;
    let root = oracle::bisect(|l| l * l * l - l - 1.0, 1.0, 2.0);
    let err = (n - root).abs();
    Ok((
        err <= 1e-6,
        format!("norm {:.10}, root {:.10}, error {:.2e}", n, root, err),
    ))
}

fn random_function(rng: &mut ChaCha8Rng) -> Result<C> {
    let c = rng.gen_range(-2.0..2.0);
    Ok(match rng.gen_range(0..5) {
        0 => C::gaussian(rng.gen_range(0.3..3.0), c, rng.gen_range(-3.0..3.0))?,
        1 => C::indicator(c, c + rng.gen_range(0.2..3.0))?,
        2 => C::hat(c, c + rng.gen_range(0.2..3.0))?,
        3 => C::exponential(rng.gen_range(0.5..3.0), c)?,
        _ => C::poly_gaussian(
            vec![
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ],
            rng.gen_range(0.5..2.0),
            c,
        )?,
    })
}

fn holder_exponents() -> Result<Vec<(&'static str, E)>> {
    Ok(vec![
        ("p=1.5", E::constant(1.5)?),
        ("p=3", E::constant(3.0)?),
        ("p=2|3", split_23()?),
        ("log-decay", E::uniform(ExponentForm::LogDecay { kappa: 1.0 })?),
        (
            "1|4|inf",
            E::from_forms(vec![
                (Interval::new(f64::NEG_INFINITY, -1.0), ExponentForm::Constant(1.0)),
                (Interval::new(-1.0, 1.0), ExponentForm::Constant(4.0)),
                (Interval::new(1.0, f64::INFINITY), ExponentForm::Constant(f64::INFINITY)),
            ])?,
        ),
    ])
}

fn generalized_holder() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let exps = holder_exponents()?;
    let mut jobs = Vec::new();
    for (name, p) in &exps {
        for _ in 0..10 {
            jobs.push((*name, p.clone(), random_function(&mut rng)?, random_function(&mut rng)?));
        }
    }
    let slacks: Vec<(f64, &str)> = jobs
        .par_iter()
        .map(|(name, p, f, g)| {
            let r = holder_check(f, g, p, 1e-8)?;
            Ok((r.rhs - r.lhs, *name))
        })
        .collect::<Result<_>>()?;
    let violations = slacks.iter().filter(|s| s.0 < -1e-9).count();
    let tightest = slacks.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let g = C::gaussian(1.0, 0.0, 0.0)?;
    let eq = holder_check(&g, &g, &E::constant(2.0)?, 1e-10)?;
    let eq_gap = (eq.lhs - eq.rhs).abs();
    Ok((
        violations == 0 && eq_gap <= 1e-6,
        format!(
            "50 pairs (seed {:#x}): {} violations, smallest slack {:.3e}; Gaussian pair gap {:.2e}",
            SEED, violations, tightest, eq_gap
        ),
    ))
}

/// 20 points, 10 magnitudes from 1e-2 to 1e3 on each side.
fn symmetric_log_points() -> Result<Vec<f64>> {
    let mags = log_grid(1e-2, 1e3, 10)?;
    Ok(mags.iter().flat_map(|&m| [m, -m]).collect())
}

fn psi_oracles() -> Outcome {
    let pts = symmetric_log_points()?;
    let ind = C::indicator(0.0, 1.0)?;
    let gauss = C::gaussian(1.0, 0.0, 0.0)?;
    let gaps: Vec<(f64, f64)> = pts
        .par_iter()
        .map(|&s| {
            let a = psi(&ind, s, 1e-12)?.value;
            let want_a = Complex::new(oracle::si(s), -oracle::cin(s));
            let b = psi(&gauss, s, 1e-12)?.value;
            let want_b = Complex::new(PI * oracle::erf(s / 2.0), 0.0);
            Ok(((a - want_a).norm(), (b - want_b).norm()))
        })
        .collect::<Result<_>>()?;
    let ind_gap = gaps.iter().map(|g| g.0).fold(0.0, f64::max);
    let gauss_gap = gaps.iter().map(|g| g.1).fold(0.0, f64::max);
    Ok((
        ind_gap <= 1e-7 && gauss_gap <= 1e-8,
        format!(
            "20 points in [-1e3, 1e3]: indicator vs Si/Cin {:.2e}, Gaussian vs π erf(s/2) {:.2e}",
            ind_gap, gauss_gap
        ),
    ))
}

fn regime_cases() -> Result<Vec<(C, E, Regime<f64>)>> {
    Ok(vec![
        (
            C::gaussian(1.0, 0.0, 0.0)?,
            E::split(0.0, ExponentForm::Constant(1.0), ExponentForm::Constant(2.0))?,
            Regime::FinitePPlus,
        ),
        (C::indicator(-1.0, 1.0)?, split_23()?, Regime::PMinusGtOne),
        (
            C::exponential(1.0, 0.0)?,
            E::uniform(ExponentForm::LogDecay { kappa: 1.0 })?,
            Regime::Lh1,
        ),
        (
            C::gaussian(1.0, 0.0, 0.0)?,
            E::uniform(ExponentForm::PowerDecay { c0: 1.0, k: 1.0 })?,
            Regime::PowerDecayExample { c0: 1.0, k: 1.0 },
        ),
    ])
}

fn bound_certificates() -> Outcome {
    let grid = log_grid(1e-3, 1e3, 50)?;
    let mut pass = true;
    let mut parts = Vec::new();
    for (f, p, regime) in regime_cases()? {
        let cert = certify_bounds(&f, &p, &grid, regime, 1e-10)?;
        let min = cert.rows.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
        pass &= cert.pass && min >= MARGIN_FLOOR;
        parts.push(format!("{} min margin {:.3e}", regime, min));
    }
    let c2 = (c_q(2.0)? - (2.0 * PI).sqrt()).abs();
    let w: f64 = lambert_w(2.0)?;
    let w_res = (w * w.exp() - 2.0).abs();
    let g = (gamma(0.5)? - PI.sqrt()).abs();
    pass &= c2 <= 1e-8 && w_res <= 1e-12 && g <= 1e-10;
    parts.push(format!(
        "|C_2 - √(2π)| {:.1e}, W(2) residual {:.1e}, |Γ(1/2) - √π| {:.1e}",
        c2, w_res, g
    ));
    Ok((pass, parts.join("; ")))
}

/// `(label, f, p, lh1 case)`.
fn slope_cases() -> Result<Vec<(&'static str, C, E, bool)>> {
    let lh1_with_infinity = E::from_forms(vec![
        (
            Interval::new(f64::NEG_INFINITY, -1.0),
            ExponentForm::LogDecay { kappa: 1.0 },
        ),
        (Interval::new(-1.0, 1.0), ExponentForm::Constant(f64::INFINITY)),
        (Interval::new(1.0, f64::INFINITY), ExponentForm::LogDecay { kappa: 1.0 }),
    ])?;
    Ok(vec![
        ("gaussian p=2", C::gaussian(1.0, 0.0, 0.0)?, E::constant(2.0)?, false),
        ("indicator p=2|3", C::indicator(0.0, 1.0)?, split_23()?, false),
        ("power tail p=2", C::power_tail(0.75, 1.0)?, E::constant(2.0)?, false),
        ("exponential lh1", C::exponential(1.0, 0.0)?, lh1_with_infinity, true),
    ])
}

fn log_slope(f: &C, grid: &[f64]) -> Result<f64> {
    let pts = grid
        .par_iter()
        .map(|&s| Ok((s.ln(), psi(f, s, 1e-13)?.value.norm().ln())))
        .collect::<Result<Vec<_>>>()?;
    Ok(fit_slope(&pts).unwrap_or(f64::NAN))
}

fn asymptotic_exponents() -> Outcome {
    let big = log_grid(1e2, 1e4, 9)?;
    let small = log_grid(1e-4, 1e-2, 9)?;
    let mut pass = true;
    let mut parts = Vec::new();
    for (label, f, p, lh1) in slope_cases()? {
        let hi = log_slope(&f, &big)?;
        let lo = log_slope(&f, &small)?;
        let hi_cap = 1.0 / p.p_minus() + 0.05;
        let lo_floor = if lh1 { 0.95 } else { 1.0 / p.p_plus() - 0.05 };
        pass &= hi <= hi_cap && lo >= lo_floor;
        parts.push(format!(
            "{}: large {:.3} <= {:.3}, small {:.3} >= {:.3}",
            label, hi, hi_cap, lo, lo_floor
        ));
    }
    Ok((pass, parts.join("; ")))
}

fn pairing_cases() -> Result<Vec<(C, SchwartzFunction<f64>)>> {
    let s = SchwartzFunction::gaussian;
    Ok(vec![
        (C::gaussian(1.0, 0.0, 0.0)?, s(1.0, 0.0, 0.0)?),
        (C::indicator(-1.0, 1.0)?, s(1.0, 0.0, 0.0)?),
        (C::indicator(0.0, 2.0)?, s(0.5, 1.0, 0.0)?),
        (C::hat(-1.0, 2.0)?, s(2.0, -0.5, 1.0)?),
        (C::exponential(1.0, 0.0)?, s(1.0, 0.0, 0.0)?),
        (C::exponential(2.0, 1.0)?.modulate(1.5), s(0.7, 0.3, 0.0)?),
        (C::power_tail(0.75, 1.0)?, s(1.0, 0.0, 0.0)?),
        (C::power_tail(1.5, 2.0)?.reflect(), s(0.5, -1.0, 0.5)?),
        (C::poly_gaussian(vec![0.0, 1.0], 1.0, 0.0)?, s(1.0, 0.5, 0.0)?),
        (
            C::gaussian(1.0, 0.0, 0.0)?,
            SchwartzFunction::new(C::poly_gaussian(vec![1.0, 0.0, 1.0], 0.5, 0.0)?)?,
        ),
    ])
}

fn distributional() -> Outcome {
    let cases = pairing_cases()?;
    let reports = cases
        .par_iter()
        .map(|(f, phi)| schwartz_pairing(f, phi, 1e-9))
        .collect::<Result<Vec<_>>>()?;
    let worst = reports.iter().map(|r| r.abs_gap).fold(0.0, f64::max);
    let exact = 2.0 * PI / 5f64.sqrt();
    let first = &reports[0];
    let closed = (first.lhs.re - exact).abs().max((first.rhs.re - exact).abs());
    Ok((
        worst <= 1e-6 && closed <= 1e-6,
        format!(
            "10 pairs, worst gap {:.2e}; Gaussian pair vs 2π/√5 {:.2e}",
            worst, closed
        ),
    ))
}

fn operator_calculus() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let mut draws = Vec::new();
    for _ in 0..20 {
        let f = random_function(&mut rng)?;
        let a = rng.gen_range(-2.0..2.0);
        let s = rng.gen_range(-5.0..5.0);
        let scale = rng.gen_range(0.5..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let b = rng.gen_range(-1.0..1.0);
        let big_f = match rng.gen_range(0..3) {
            0 => C::gaussian(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0), 0.0)?,
            1 => C::poly_gaussian(vec![rng.gen_range(-1.0..1.0), 1.0], 1.0, rng.gen_range(-1.0..1.0))?,
            _ => C::hat(-1.0, rng.gen_range(0.0..2.0))?,
        };
        draws.push((f, a, s, scale, b, big_f));
    }
    let tol = 1e-10;
    let gaps: Vec<[f64; 5]> = draws
        .par_iter()
        .map(|(f, a, s, scale, b, big_f)| {
            let d = psi_of_derivative(big_f, 1, *s, tol)?.value;
            let direct = psi(&big_f.derivative()?, *s, tol)?.value;
            Ok([
                psi_translation(f, *a, *s, tol)?.abs_gap,
                psi_modulation(f, *a, *s, tol)?.abs_gap,
                psi_reflection(f, *s, tol)?.abs_gap,
                psi_dilation(f, *scale, *b, *s, tol)?.abs_gap,
                (d - direct).norm(),
            ])
        })
        .collect::<Result<_>>()?;
    let names = ["translation", "modulation", "reflection", "dilation", "derivative n=1"];
    let worst: Vec<f64> = (0..5).map(|k| gaps.iter().map(|g| g[k]).fold(0.0, f64::max)).collect();
    let detail = names
        .iter()
        .zip(&worst)
        .map(|(n, w)| format!("{} {:.2e}", n, w))
        .collect::<Vec<_>>()
        .join(", ");
    Ok((
        worst.iter().all(|&w| w <= 1e-6),
        format!("20 draws each (seed {:#x}): {}", SEED ^ 8, detail),
    ))
}

fn exchange() -> Outcome {
    let p2 = E::constant(2.0)?;
    let gauss = C::gaussian(1.0, 0.0, 0.0)?;
    let exact = 2.0 * PI / 5f64.sqrt();
    let gg = exchange_check(&gauss, &BvFunction::Catalog(gauss.clone()), &p2, 1e-9)?;
    let gg_err = (gg.lhs.re - exact).abs().max((gg.rhs.re - exact).abs());
    let pt = exchange_check(&gauss, &BvFunction::Catalog(C::power_tail(0.75, 1.0)?), &p2, 1e-7)?;
    let extra = [
        (
            C::indicator(-1.0, 1.0)?,
            BvFunction::Catalog(gauss.clone()),
            split_23()?,
        ),
        (
            gauss.clone(),
            BvFunction::Catalog(C::hat(-1.0, 1.0)?),
            E::constant(3.0)?,
        ),
        (
            C::exponential(1.0, 0.0)?,
            BvFunction::Catalog(C::gaussian(0.5, 0.5, 0.0)?),
            E::uniform(ExponentForm::LogDecay { kappa: 1.0 })?,
        ),
    ];
    let others = extra
        .par_iter()
        .map(|(f, g, p)| exchange_check(f, g, p, 1e-8))
        .collect::<Result<Vec<_>>>()?;
    let within_bound = std::iter::once(&gg)
        .chain(std::iter::once(&pt))
        .chain(others.iter())
        .all(|r| r.lhs.norm() <= r.bound_rhs);
    Ok((
        gg_err <= 1e-6 && pt.pass && pt.abs_gap <= 1e-5 && within_bound,
        format!(
            "Gaussian pair vs 2π/√5 {:.2e}; power tail gap {:.2e} (moment {:.4}); inequality held in all {} cases: {}",
            gg_err,
            pt.abs_gap,
            pt.moment,
            2 + others.len(),
            within_bound
        ),
    ))
}

/// The three `(f, p)` pairs of the inversion criterion.
pub fn inversion_pairs() -> Result<Vec<(&'static str, C, E)>> {
    Ok(vec![
        ("gaussian p=2", C::gaussian(1.0, 0.0, 0.0)?, E::constant(2.0)?),
        ("indicator p=2|3", C::indicator(-1.0, 1.0)?, split_23()?),
        (
            "exponential log-decay",
            C::exponential(1.0, 0.0)?,
            E::uniform(ExponentForm::LogDecay { kappa: 1.0 })?,
        ),
    ])
}

pub const INVERSION_SCALES: [f64; 5] = [1.0, 0.5, 0.25, 0.125, 0.0625];

fn inversion() -> Outcome {
    let mut jobs = Vec::new();
    for (label, f, p) in inversion_pairs()? {
        for fam in KernelFamily::ALL {
            jobs.push((label, f.clone(), p.clone(), fam));
        }
    }
    let traces: Vec<InversionTrace<f64>> = jobs
        .par_iter()
        .map(|(_, f, p, fam)| inversion_run(f, *fam, &INVERSION_SCALES, p, 1e-7))
        .collect::<Result<_>>()?;
    let mut pass = true;
    let mut parts = Vec::new();
    for ((label, _, _, fam), t) in jobs.iter().zip(&traces) {
        let ok = t.is_eventually_decreasing() && t.final_ratio() <= INVERSION_THRESHOLD;
        pass &= ok;
        parts.push(format!(
            "{} {}: ratio {:.3}{}",
            label,
            fam,
            t.final_ratio(),
            if ok { "" } else { " FAIL" }
        ));
    }
    let gw = &traces[2];
    let closed = gw
        .a_sequence
        .iter()
        .zip(&gw.norms)
        .map(|(&a, &n)| (n - gauss_weierstrass_gaussian_norm(a)).abs())
        .fold(0.0, f64::max);
    pass &= closed <= 1e-4 && gw.is_strictly_decreasing();
    parts.push(format!("Gauss-Weierstrass closed form gap {:.2e}", closed));
    Ok((pass, parts.join("; ")))
}

fn double_exchange() -> Outcome {
    let gauss = C::gaussian(1.0, 0.0, 0.0)?;
    let r = double_exchange_check(
        &gauss,
        &BvFunction::Catalog(gauss.clone()),
        &gauss,
        &E::constant(2.0)?,
        1e-8,
    )?;
    let exact = PI * (2.0 * PI / 3.0).sqrt();
    let err = (r.lhs.re - exact).abs().max((r.rhs.re - exact).abs());
    Ok((
        r.pass && err <= 1e-5,
        format!(
            "lhs {:.9}, rhs {:.9}, π√(2π/3) {:.9}, error {:.2e}",
            r.lhs.re, r.rhs.re, exact, err
        ),
    ))
}

fn membership() -> Outcome {
    let r2 = E::constant(2.0)?;
    let r_var = E::split(0.0, ExponentForm::Constant(1.5), ExponentForm::Constant(3.0))?;
    let r1 = E::constant(1.0)?;
    // (label, f, r, expected membership)
    let cases = vec![
        ("gaussian r=2", C::gaussian(1.0, 0.0, 0.0)?, r2.clone(), true),
        ("hat r=2", C::hat(-1.0, 1.0)?, r2.clone(), true),
        ("exponential r=1.5|3", C::exponential(1.0, 0.0)?, r_var.clone(), true),
        ("indicator r=2", C::indicator(-1.0, 1.0)?, r2, true),
        ("indicator r=1.5|3", C::indicator(-1.0, 1.0)?, r_var, true),
        ("indicator r=1", C::indicator(-1.0, 1.0)?, r1, false),
    ];
    let got = cases
        .par_iter()
        .map(|(_, f, r, _)| fhat_membership(f, r, 1e-8))
        .collect::<Result<Vec<_>>>()?;
    let mut pass = true;
    let mut parts = Vec::new();
    for ((label, _, _, want), m) in cases.iter().zip(&got) {
        pass &= m.member == *want;
        parts.push(format!(
            "{}: {} (ρ {:.4})",
            label,
            if m.member { "member" } else { "non-member" },
            m.modular
        ));
    }
    Ok((pass, parts.join("; ")))
}
