//! `ptoric`: build and check the objects of the TNN Peterson / toric / cube
//! correspondence from the command line.

mod plot;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use peterson_toric::fan::enumerate_fan;
use peterson_toric::json::{rationals_from_json, rationals_to_json};
use peterson_toric::par::Exec;
use peterson_toric::peterson::{exact_certificate, minor_map_inverse, psi, stratum_of, PetersonPoint, SolverOptions};
use peterson_toric::polytope::h_representation;
use peterson_toric::scalar::{parse_rational, Scalar};
use peterson_toric::toric::{canonicalize_nonneg, lattice_points, AnyToricPoint};
use peterson_toric::verify::{
    run_all, verify_rietsch_param, Suite, VerificationReport, VerifyConfig, EXIT_FAIL, EXIT_IO, EXIT_PASS, EXIT_SOLVER, EXIT_USAGE,
    ZERO_TOL,
};
use peterson_toric::{Error, Rational};

#[derive(Parser, Debug)]
#[command(name = "ptoric", version, about = "Exact checks of the TNN Peterson variety, its toric model and the cube map")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand; each can also be set through a
/// `PTORIC_*` environment variable.
#[derive(Args, Debug, Clone)]
struct Common {
    /// Size of the matrices (the polytope has dimension n - 1).
    #[arg(long, global = true, env = "PTORIC_N")]
    n: Option<usize>,
    /// Base seed (default 0).
    #[arg(long, global = true, env = "PTORIC_SEED")]
    seed: Option<u64>,
    /// Samples per stratum (verify) or per block size (rietsch).
    #[arg(long, global = true, env = "PTORIC_SAMPLES")]
    samples: Option<usize>,
    /// Numerical tolerance; defaults depend on the subcommand.
    #[arg(long, global = true, env = "PTORIC_TOL")]
    tol: Option<f64>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true, env = "PTORIC_OUT")]
    out: Option<PathBuf>,
    /// Directory for CSV plot data.
    #[arg(long = "emit-plot", global = true, env = "PTORIC_EMIT_PLOT")]
    emit_plot: Option<PathBuf>,
    /// Run batch work on the calling thread only.
    #[arg(long, global = true, env = "PTORIC_SEQUENTIAL")]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The fan Σ as JSON.
    Fan,
    /// The polytope P_{n-1} as JSON.
    Polytope,
    /// The piecewise-linear map from P_{n-1} to the cube at an exact point.
    CubeMap {
        /// JSON file, JSON array, or comma-separated rationals.
        #[arg(long, env = "PTORIC_POINT")]
        point: String,
    },
    /// Moment map image and carrier face of a toric point.
    Moment {
        /// ToricPoint JSON file or inline JSON.
        #[arg(long, env = "PTORIC_POINT")]
        point: String,
    },
    /// Ψ of a Peterson point, with both stratum labels.
    Psi {
        /// PetersonPoint JSON file or inline JSON.
        #[arg(long, env = "PTORIC_POINT")]
        point: String,
    },
    /// Invert the Toeplitz minor map, or sweep it when no targets are given.
    Rietsch {
        /// Comma-separated nonnegative minor targets.
        #[arg(long, env = "PTORIC_TARGETS", value_delimiter = ',')]
        targets: Option<Vec<String>>,
    },
    /// Run the verification suites and write a JSON-lines report.
    Verify {
        /// Smallest n (the largest is --n).
        #[arg(long, env = "PTORIC_N_MIN")]
        n_min: Option<usize>,
        /// Comma-separated subset of: fan, polytope, q_pattern, whitney, rietsch, psi, homeomorphism.
        #[arg(long, env = "PTORIC_SUITES", value_delimiter = ',')]
        suites: Option<Vec<String>>,
        /// JSON file with verify settings; flags override it.
        #[arg(long, env = "PTORIC_CONFIG")]
        config: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Lib(Error::Solve(_)) => EXIT_SOLVER,
            CliError::Lib(
                Error::Parse(_)
                | Error::Domain(_)
                | Error::Size(_)
                | Error::Index(_)
                | Error::Label(_)
                | Error::Outside(_)
                | Error::NotNonnegative
                | Error::ExceptionalPoint(_)
                | Error::AmbiguousSupport(_),
            ) => EXIT_USAGE,
            CliError::Lib(_) => EXIT_FAIL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("ptoric: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> CliResult<i32> {
    let c = &cli.common;
    if let Some(tol) = c.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
        }
    }
    let exec = if c.sequential { Exec::Sequential } else { Exec::default() };
    match &cli.command {
        Command::Fan => {
            let n = require_n(c)?;
            emit(c, &serde_json::to_value(enumerate_fan(n)?).expect("serializable"))?;
            Ok(EXIT_PASS)
        }
        Command::Polytope => {
            let n = require_n(c)?;
            let model = h_representation(n)?;
            if let Some(dir) = &c.emit_plot {
                plot::write_polytope(dir, n)?;
            }
            emit(c, &serde_json::to_value(&model).expect("serializable"))?;
            Ok(EXIT_PASS)
        }
        Command::CubeMap { point } => {
            let n = require_n(c)?;
            let p = parse_vector(point)?;
            if p.len() + 1 != n {
                return Err(CliError::Usage(format!("point has {} coordinates, expected n - 1 = {}", p.len(), n - 1)));
            }
            let model = h_representation(n)?;
            let flag = model.barycentric_flag(&p)?;
            let image = model.cube_homeo(&p)?;
            emit(
                c,
                &json!({
                    "n": n,
                    "point": rationals_to_json(&p),
                    "carrier": flag.faces[0],
                    "flag": flag,
                    "cube": rationals_to_json(&image),
                }),
            )?;
            Ok(EXIT_PASS)
        }
        Command::Moment { point } => {
            let tol = c.tol.unwrap_or(ZERO_TOL);
            let q = AnyToricPoint::from_json(&read_json(point)?)?;
            let qf = q.to_f64();
            let n = qf.n();
            if let Some(expected) = c.n {
                if expected != n {
                    return Err(CliError::Usage(format!("point has n = {n}, but --n {expected}")));
                }
            }
            let stratum = q.stratum(tol)?;
            let mu = lattice_points(n)?.moment_map(&canonicalize_nonneg(&qf, tol)?)?;
            let model = h_representation(n)?;
            let carrier = model.carrier_face(&model.snap(&mu, 1e-7)?)?;
            emit(c, &json!({"n": n, "mu": mu, "carrier": carrier, "stratum": stratum}))?;
            Ok(EXIT_PASS)
        }
        Command::Psi { point } => {
            let tol = c.tol.unwrap_or(ZERO_TOL);
            let v = read_json(point)?;
            let p = PetersonPoint::<Rational>::from_json(&v)?;
            let y = stratum_of(&p, tol)?;
            let image = psi(&p)?;
            let toric = peterson_toric::toric::stratum_of(&image, tol)?;
            emit(c, &json!({"point": p.to_json(), "toric": image.to_json(), "y_stratum": y, "toric_stratum": toric}))?;
            Ok(EXIT_PASS)
        }
        Command::Rietsch { targets: Some(raw) } => {
            let exact: Vec<Rational> = raw.iter().map(|s| parse_rational(s.trim())).collect::<Result<_, _>>()?;
            let targets: Vec<f64> = exact.iter().map(Scalar::to_f64).collect();
            let mut opts = SolverOptions::default();
            if let Some(tol) = c.tol {
                opts.tol = tol;
            }
            let report = minor_map_inverse(&targets, &opts)?;
            let certificate = exact_certificate(&exact, &report.params);
            emit(
                c,
                &json!({
                    "k": targets.len() + 1,
                    "targets": rationals_to_json(&exact),
                    "params": report.params,
                    "residual": report.residual,
                    "iterations": report.iterations,
                    "restarts": report.restarts_used,
                    "exact_params": certificate.as_deref().map(rationals_to_json),
                }),
            )?;
            Ok(EXIT_PASS)
        }
        Command::Rietsch { targets: None } => {
            let k_max = c.n.unwrap_or(5);
            let config = VerifyConfig {
                n_min: 2,
                n_max: k_max,
                seed: c.seed.unwrap_or(0),
                rietsch_samples: c.samples.unwrap_or(1000),
                tol: c.tol.unwrap_or(1e-8),
                suites: vec![Suite::Rietsch],
                exec,
                ..VerifyConfig::default()
            };
            config.validate()?;
            let results = verify_rietsch_param(k_max, config.rietsch_samples, config.seed, config.tol, exec);
            let report = VerificationReport::new(config, results);
            write_text(c, &report.to_jsonl())?;
            Ok(report.exit_code())
        }
        Command::Verify { n_min, suites, config } => {
            let mut cfg = match config {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    serde_json::from_str::<VerifyConfig>(&text)
                        .map_err(|e| CliError::Usage(format!("malformed config {}: {e}", path.display())))?
                }
                None => VerifyConfig::default(),
            };
            if let Some(n) = c.n {
                cfg.n_max = n;
            }
            if let Some(n) = n_min {
                cfg.n_min = *n;
            }
            if let Some(seed) = c.seed {
                cfg.seed = seed;
            }
            if let Some(s) = c.samples {
                cfg.samples = s;
            }
            if let Some(t) = c.tol {
                cfg.tol = t;
            }
            if let Some(list) = suites {
                cfg.suites = list.iter().map(|s| parse_suite(s)).collect::<CliResult<_>>()?;
            }
            cfg.exec = exec;
            cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
            let report = run_all(&cfg)?;
            write_text(c, &report.to_jsonl())?;
            if let Some(dir) = &c.emit_plot {
                plot::write_all(dir, cfg.samples.min(plot::MAX_PLOT_SAMPLES), cfg.seed, exec)?;
            }
            let s = &report.summary;
            eprintln!("ptoric: {} checks, {} passed, {} failed, {} skipped", s.total, s.pass, s.fail, s.skipped);
            Ok(report.exit_code())
        }
    }
}

fn require_n(c: &Common) -> CliResult<usize> {
    match c.n {
        Some(n) if n >= 2 => Ok(n),
        Some(n) => Err(CliError::Usage(format!("--n must be at least 2, got {n}"))),
        None => Err(CliError::Usage("--n is required".into())),
    }
}

fn parse_suite(s: &str) -> CliResult<Suite> {
    serde_json::from_value(Value::String(s.trim().replace('-', "_"))).map_err(|_| CliError::Usage(format!("unknown suite '{s}'")))
}

/// A file path, inline JSON, or (for vectors) a comma-separated list.
fn read_json(arg: &str) -> CliResult<Value> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("could not parse '{arg}' as JSON: {e}")))
}

fn parse_vector(arg: &str) -> CliResult<Vec<Rational>> {
    let trimmed = arg.trim_start();
    if Path::new(arg).is_file() || trimmed.starts_with('[') {
        return Ok(rationals_from_json(&read_json(arg)?)?);
    }
    Ok(arg.split(',').map(|s| parse_rational(s.trim())).collect::<Result<_, _>>()?)
}

fn emit(c: &Common, v: &Value) -> CliResult<()> {
    write_text(c, &format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")))
}

fn write_text(c: &Common, text: &str) -> CliResult<()> {
    match &c.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
