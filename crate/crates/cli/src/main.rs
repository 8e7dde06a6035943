//! `schatten-geom`: property batteries, unitarization runs and rigidity demos
//! over the Schatten-p geometry of positive-definite matrices.
//!
//! Exit codes: 0 every check passed, 1 a property check failed, 2 bad input
//! or configuration, 3 the orbit looks unbounded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use schatten_geom::report::Report;
use schatten_geom::{Error, Exponent};

#[derive(Parser, Debug)]
#[command(name = "schatten-geom", version, about)]
struct Cli {
    /// Schatten exponent, strictly greater than 1. Group files carry their
    /// own exponent, which this flag overrides.
    #[arg(long = "p", global = true)]
    p: Option<f64>,
    /// Matrix dimension for generated scenarios.
    #[arg(long, global = true, default_value_t = 4)]
    n: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Pass/fail tolerance of the scenario's main check.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Iteration budget of the circumcenter solver.
    #[arg(long, global = true, default_value_t = 5000)]
    max_iter: usize,
    /// Longest word enumerated in orbit expansions.
    #[arg(long, global = true, default_value_t = 8)]
    max_word_len: usize,
    /// Samples per battery.
    #[arg(long, global = true, default_value_t = 1000)]
    samples: usize,
    /// Write the JSON-lines report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also print a human-readable table to stderr.
    #[arg(long, global = true)]
    summary: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Busemann, exponential-metric-increasing, triangle, isometry and
    /// geodesic batteries on random points.
    Busemann {
        /// Sample commuting points only (equality cases at p = 2).
        #[arg(long)]
        commuting: bool,
    },
    /// Positive unitarizer of the group in a JSON file.
    Unitarize { group: PathBuf },
    /// Cyclic shifts and permutations on ℂⁿ: commutants, invariant lines and
    /// non-identity fixed points.
    ShiftDemo,
    /// Memberships, polar duality, convexity and intersection checks for a
    /// norm spec.
    NormsCheck { spec: PathBuf },
    /// Normalize, unitarize the isometries and classify the norm.
    Rigidity {
        spec: PathBuf,
        group: PathBuf,
        certificate: PathBuf,
    },
    /// Geodesic point γ(t) and distance between two positive matrices.
    Geodesic {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        t: f64,
    },
}

/// Validated settings shared by every command.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub p: Option<Exponent>,
    pub n: usize,
    pub seed: u64,
    pub tol: Option<f64>,
    pub max_iter: usize,
    pub max_word_len: usize,
    pub samples: usize,
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> Result<Self, Error> {
        let p = cli.p.map(Exponent::new).transpose()?;
        if cli.n == 0 {
            return Err(Error::Parameter("--n must be at least 1".into()));
        }
        if let Some(t) = cli.tol {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::Parameter(format!("--tol must be positive, got {t}")));
            }
        }
        if cli.max_iter == 0 || cli.max_word_len == 0 || cli.samples == 0 {
            return Err(Error::Parameter("budgets must be positive".into()));
        }
        Ok(Self {
            p,
            n: cli.n,
            seed: cli.seed,
            tol: cli.tol,
            max_iter: cli.max_iter,
            max_word_len: cli.max_word_len,
            samples: cli.samples,
        })
    }

    /// Exponent from `--p`, else `default`.
    pub fn p_or(&self, default: Exponent) -> Exponent {
        self.p.unwrap_or(default)
    }

    pub fn p_or_two(&self) -> Exponent {
        self.p_or(Exponent::new(2.0).expect("2 is admissible"))
    }

    pub fn echo(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.p.map(Exponent::get),
            "n": self.n,
            "seed": self.seed,
            "tol": self.tol,
            "max_iter": self.max_iter,
            "max_word_len": self.max_word_len,
            "samples": self.samples,
        })
    }
}

/// Outcome of a command: the report and whether to signal an unbounded orbit.
pub struct Outcome {
    pub report: Report,
    pub unbounded: bool,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::OrbitUnbounded { .. } | Error::Budget { .. } => 3,
        Error::NotConverged { .. } | Error::CircumcenterNotConverged(_) => 1,
        _ => 2,
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<(), String> {
    let text = report.to_json_lines();
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    if cli.summary {
        eprint!("{}", report.summary_table());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = schatten_geom::par::configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let cfg = match RunConfig::from_cli(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let start = std::time::Instant::now();
    let result = match &cli.command {
        Command::Busemann { commuting } => commands::busemann(&cfg, *commuting),
        Command::Unitarize { group } => commands::unitarize_cmd(&cfg, group),
        Command::ShiftDemo => commands::shift_demo(&cfg),
        Command::NormsCheck { spec } => commands::norms_check(&cfg, spec),
        Command::Rigidity {
            spec,
            group,
            certificate,
        } => commands::rigidity(&cfg, spec, group, certificate),
        Command::Geodesic { a, b, t } => commands::geodesic_cmd(&cfg, a, b, *t),
    };
    match result {
        Ok(mut outcome) => {
            outcome.report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            if let Err(e) = emit(&cli, &outcome.report) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.unbounded {
                ExitCode::from(3)
            } else if outcome.report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
