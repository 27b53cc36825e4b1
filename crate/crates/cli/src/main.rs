//! `vexlp`: command-line access to norms, Ψ evaluations, bound certificates,
//! exchange checks and kernel inversion.
//!
//! JSON arguments take either an inline document (starting with `{`) or a
//! path to a file. Results go to stdout as JSON; failures print an error
//! object and exit with 2 (bad input or unmet hypotheses) or 3 (numerics).
//! A negative certificate exits with 1.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::Value;
use vexlp::io::{from_json, ExperimentConfig, ExponentSpec, FunctionSpec, GridSpec, Num, Operation, WeightSpec};
use vexlp::report::{error_json, exit_code};
use vexlp::run::{execute, RunOutput};
use vexlp::{Error, Real, Result};

#[derive(Parser, Debug)]
#[command(
    name = "vexlp",
    version,
    about = "Fourier analysis on variable-exponent Lebesgue spaces"
)]
struct Cli {
    /// Absolute tolerance; overrides VEXLP_TOL and the config file.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Also write the JSON result to this file.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    /// Write the table (psi, bounds, invert) to this CSV file.
    #[arg(long, global = true)]
    csv_out: Option<PathBuf>,
    /// Print the CSV table to stdout instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FnExp {
    /// Function as inline JSON or a file path.
    #[arg(long)]
    function: String,
    /// Exponent as inline JSON or a file path.
    #[arg(long)]
    exponent: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Luxemburg norm.
    Norm(FnExp),
    /// Modular ρ(f/λ), optionally restricted to [lo, hi].
    Modular {
        #[command(flatten)]
        io: FnExp,
        #[arg(long)]
        lambda: Option<f64>,
        /// `lo,hi`
        #[arg(long)]
        region: Option<String>,
    },
    /// Ψ_f on a grid.
    Psi {
        #[arg(long)]
        function: String,
        /// Grid as inline JSON or a file path.
        #[arg(long, conflicts_with = "s")]
        grid: Option<String>,
        /// Comma-separated s values.
        #[arg(long)]
        s: Option<String>,
    },
    /// Certify |Ψ_f(s)| against the growth bound of a regime.
    Bounds {
        #[command(flatten)]
        io: FnExp,
        /// `finite-p-plus`, `p-minus-gt-one`, `lh1` or `power-decay-example:C0:k`.
        #[arg(long)]
        regime: Option<String>,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Pairing of Ψ_f with a Schwartz test function against the classical transform.
    FtCheck {
        #[arg(long)]
        function: String,
        #[arg(long)]
        phi: String,
    },
    /// Exchange formula ∫ f̂ g = ∫ Ψ_f dg.
    Exchange {
        #[command(flatten)]
        io: FnExp,
        #[arg(long)]
        weight: String,
    },
    /// ‖f - I_a[f]‖ along a decreasing scale sequence.
    Invert {
        #[command(flatten)]
        io: FnExp,
        /// `cesaro-fejer`, `abel-poisson` or `gauss-weierstrass`.
        #[arg(long)]
        kernel: String,
        /// Comma-separated, strictly decreasing.
        #[arg(long)]
        a_seq: String,
    },
    /// Exchange with a convolution weight g1 * g2.
    DoubleExchange {
        #[command(flatten)]
        io: FnExp,
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: String,
    },
    /// The acceptance criteria.
    Suite,
    /// Run an experiment config file.
    Run { config: PathBuf },
}

fn parse_list(s: &str) -> Result<Vec<Num>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map(Num)
                .map_err(|e| Error::InvalidInput(format!("{}: {}", t, e)))
        })
        .collect()
}

fn parse_pair(s: &str) -> Result<(Num, Num)> {
    match parse_list(s)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(Error::InvalidInput(format!("expected lo,hi: {}", s))),
    }
}

fn load<V: DeserializeOwned>(arg: &str) -> Result<V> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        read(Path::new(arg))?
    };
    from_json(&text)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {}", path.display(), e)))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::InvalidInput(format!("{}: {}", path.display(), e)))
}

struct Plan {
    op: Operation,
    tol: Option<f64>,
    json_out: Option<PathBuf>,
    csv_out: Option<PathBuf>,
}

fn plan(cli: &Cli) -> Result<Plan> {
    let fe = |io: &FnExp| -> Result<(FunctionSpec, ExponentSpec)> { Ok((load(&io.function)?, load(&io.exponent)?)) };
    let mut tol = None;
    let (mut json_out, mut csv_out) = (None, None);
    let op = match &cli.command {
        Command::Norm(io) => {
            let (function, exponent) = fe(io)?;
            Operation::Norm { function, exponent }
        }
        Command::Modular { io, lambda, region } => {
            let (function, exponent) = fe(io)?;
            Operation::Modular {
                function,
                exponent,
                lambda: lambda.map(Num),
                region: region.as_deref().map(parse_pair).transpose()?,
            }
        }
        Command::Psi { function, grid, s } => {
            let grid = match (grid, s) {
                (Some(g), _) => load(g)?,
                (None, Some(s)) => GridSpec::Points { values: parse_list(s)? },
                (None, None) => return Err(Error::InvalidInput("psi needs --grid or --s".into())),
            };
            Operation::Psi {
                function: load(function)?,
                grid,
            }
        }
        Command::Bounds { io, regime, grid } => {
            let (function, exponent) = fe(io)?;
            Operation::Bounds {
                function,
                exponent,
                regime: regime.clone(),
                grid: grid.as_deref().map(load).transpose()?,
            }
        }
        Command::FtCheck { function, phi } => Operation::FtCheck {
            function: load(function)?,
            phi: load(phi)?,
        },
        Command::Exchange { io, weight } => {
            let (function, exponent) = fe(io)?;
            let weight: WeightSpec = load(weight)?;
            Operation::Exchange {
                function,
                weight,
                exponent,
            }
        }
        Command::Invert { io, kernel, a_seq } => {
            let (function, exponent) = fe(io)?;
            Operation::Invert {
                function,
                exponent,
                kernel: kernel.clone(),
                a_seq: parse_list(a_seq)?,
            }
        }
        Command::DoubleExchange { io, g1, g2 } => {
            let (function, exponent) = fe(io)?;
            Operation::DoubleExchange {
                function,
                g1: load(g1)?,
                g2: load(g2)?,
                exponent,
            }
        }
        Command::Suite => Operation::Suite,
        Command::Run { config } => {
            let cfg: ExperimentConfig = from_json(&read(config)?)?;
            tol = cfg.tol.map(|t| t.0);
            if let Some(o) = cfg.output {
                json_out = o.json;
                csv_out = o.csv;
            }
            cfg.operation
        }
    };
    Ok(Plan {
        op,
        tol,
        json_out: cli.json_out.clone().or(json_out),
        csv_out: cli.csv_out.clone().or(csv_out),
    })
}

/// Precedence: `--tol`, then `VEXLP_TOL`, then the config file, then the
/// library default.
fn tolerance(cli: Option<f64>, config: Option<f64>) -> Result<f64> {
    if let Some(t) = cli {
        return Ok(t);
    }
    if let Ok(s) = std::env::var("VEXLP_TOL") {
        return s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("VEXLP_TOL is not a number: {}", s)));
    }
    Ok(config.unwrap_or_else(f64::default_tol))
}

fn run(cli: &Cli) -> Result<RunOutput> {
    let p = plan(cli)?;
    let tol = tolerance(cli.tol, p.tol)?;
    let out = execute(&p.op, tol)?;
    if let Some(path) = &p.json_out {
        write(path, &pretty(&out.json))?;
    }
    if let Some(path) = &p.csv_out {
        match &out.csv {
            Some(table) => write(path, table)?,
            None => return Err(Error::InvalidInput(format!("{} has no table output", p.op.name()))),
        }
    }
    Ok(out)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable value") + "\n"
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match (&out.csv, cli.csv) {
                (Some(table), true) => print!("{}", table),
                _ => print!("{}", pretty(&out.json)),
            }
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            print!("{}", pretty(&error_json(&e)));
            eprintln!("vexlp: {}", e);
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
