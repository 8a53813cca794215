use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ddvv_core::matcore::MatrixClass;
use serde::Deserialize;

use ddvv_cli::commands::{self, Budget, CommandError};
use ddvv_cli::manifest::Report;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClassArg {
    Symmetric,
    SkewSymmetric,
    Hermitian,
    SkewHermitian,
    /// Arbitrary complex matrices.
    Complex,
    /// Arbitrary real matrices.
    Real,
}

impl From<ClassArg> for MatrixClass {
    fn from(value: ClassArg) -> Self {
        match value {
            ClassArg::Symmetric => MatrixClass::Symmetric,
            ClassArg::SkewSymmetric => MatrixClass::SkewSymmetric,
            ClassArg::Hermitian => MatrixClass::Hermitian,
            ClassArg::SkewHermitian => MatrixClass::SkewHermitian,
            ClassArg::Complex => MatrixClass::GeneralComplex,
            ClassArg::Real => MatrixClass::GeneralReal,
        }
    }
}

/// Verification and best-constant search for DDVV-type commutator
/// inequalities over structured matrix classes.
#[derive(Parser)]
#[command(name = "ddvv", version, about)]
struct Cli {
    /// TOML file preloading defaults (seed, restarts, iters, tol, threads);
    /// command-line flags override file values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Random seed; falls back to the config file, then $DDVV_SEED, then 1.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Also write the JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustively check the closed-form commutator identities plus the
    /// exterior-square and transform-chain properties.
    VerifyIdentities {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
    },
    /// Run randomized falsification trials of the four supporting bounds.
    CheckLemmas {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
    },
    /// Estimate the best constant for a class by multi-start ascent and
    /// compare it against the registry.
    Estimate {
        #[arg(long)]
        class: ClassArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        iters: Option<usize>,
        /// Gradient-norm stopping tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Write per-restart ratio-vs-iteration traces as CSV.
        #[arg(long, value_name = "PATH")]
        trace_csv: Option<PathBuf>,
    },
    /// Construct an equality tuple and report its residual and diagnostics.
    Extremal {
        #[arg(long)]
        class: ClassArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
    },
    /// Probe the 4/3 conjecture on arbitrary complex (or real) matrices.
    Explore {
        #[arg(long, default_value = "complex")]
        class: ClassArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        iters: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        /// Write per-restart ratio-vs-iteration traces as CSV.
        #[arg(long, value_name = "PATH")]
        trace_csv: Option<PathBuf>,
    },
}

/// Defaults preloaded from a TOML config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileDefaults {
    seed: Option<u64>,
    restarts: Option<usize>,
    iters: Option<usize>,
    tol: Option<f64>,
    threads: Option<usize>,
}

fn load_defaults(path: Option<&PathBuf>) -> Result<FileDefaults, CommandError> {
    let Some(path) = path else {
        return Ok(FileDefaults::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CommandError::Io(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| CommandError::Usage(format!("bad config {}: {e}", path.display())))
}

fn resolve_seed(flag: Option<u64>, file: &FileDefaults) -> Result<u64, CommandError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    if let Some(seed) = file.seed {
        return Ok(seed);
    }
    match std::env::var("DDVV_SEED") {
        Ok(text) => text
            .parse()
            .map_err(|_| CommandError::Usage(format!("DDVV_SEED is not an integer: {text}"))),
        Err(_) => Ok(1),
    }
}

fn resolve_budget(
    restarts: Option<usize>,
    iters: Option<usize>,
    tol: Option<f64>,
    file: &FileDefaults,
) -> Budget {
    let default = Budget::default();
    Budget {
        restarts: restarts.or(file.restarts).unwrap_or(default.restarts),
        iters: iters.or(file.iters).unwrap_or(default.iters),
        tol: tol.or(file.tol).unwrap_or(default.tol),
    }
}

fn run(cli: Cli) -> Result<Report, CommandError> {
    let file = load_defaults(cli.config.as_ref())?;
    let seed = resolve_seed(cli.seed, &file)?;
    if let Some(threads) = cli.threads.or(file.threads) {
        // results are thread-count independent; this only caps parallelism
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .ok();
    }
    let mut report = match cli.command {
        Command::VerifyIdentities { n_min, n_max } => {
            commands::verify_identities(n_min, n_max, seed, None)?
        }
        Command::CheckLemmas {
            n_min,
            n_max,
            trials,
        } => commands::check_lemmas(n_min, n_max, trials, seed)?,
        Command::Estimate {
            class,
            m,
            n,
            restarts,
            iters,
            tol,
            trace_csv,
        } => commands::estimate(
            class.into(),
            m,
            n,
            resolve_budget(restarts, iters, tol, &file),
            seed,
            trace_csv.as_ref(),
        )?,
        Command::Extremal {
            class,
            m,
            n,
            lambda,
            theta,
        } => commands::extremal(class.into(), m, n, lambda, theta, seed)?,
        Command::Explore {
            class,
            m,
            n,
            restarts,
            iters,
            tol,
            trace_csv,
        } => commands::explore(
            class.into(),
            m,
            n,
            resolve_budget(restarts, iters, tol, &file),
            seed,
            trace_csv.as_ref(),
        )?,
    };
    report.manifest.threads = cli.threads.or(file.threads);
    if let Some(path) = &cli.output {
        commands::write_output(path, &report.to_json())?;
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            println!("{}", report.to_json());
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(2)
        }
    }
}
