//! Command-line interface for exact many-body interference on hypercube
//! graphs.
//!
//! Exit codes: 0 success (including a passing verification), 1 usage or
//! input errors, 2 a failed verification, 3 a resource bound (permanent
//! particle cap, enumeration limit, matrix envelope).

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use hyperwalk::unitary::{random_unitary, HypercubeSpec};
use output::OutFormat;

#[derive(Parser)]
#[command(
    name = "hyperwalk",
    version,
    about = "Exact many-body quantum interference on hypercube graphs",
    arg_required_else_help = true
)]
struct Cli {
    /// Worker threads for per-final-state work; output is identical
    /// regardless of the pool size.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a transfer unitary and write it as JSON.
    Unitary(UnitaryArgs),
    /// Classify all final states under the suppression law of the initial
    /// state's symmetries.
    Predict(PredictArgs),
    /// Check the law's predictions against brute-force probabilities.
    Verify(VerifyArgs),
    /// Reproduce the frozen eight-boson scenario on the three-dimensional
    /// hypercube (per-state probabilities, set membership, summary).
    Figure4(Figure4Args),
    /// Evaluate predicted suppression ratios, or exact ones by
    /// enumeration.
    Ratio(RatioArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// Hypercube dimension; the graph has 2^d * m modes.
    #[arg(long)]
    d: usize,

    /// Modes per vertex subgraph (1 = bare hypercube).
    #[arg(long, default_value_t = 1)]
    m: usize,

    /// JSON file with the m x m subunitary: {"m": .., "re": [[..]], "im": [[..]]}.
    #[arg(long, value_name = "PATH", conflicts_with = "random_sub")]
    sub: Option<PathBuf>,

    /// Draw a Haar-random subunitary (seeded with --seed) instead of
    /// loading one.
    #[arg(long)]
    random_sub: bool,

    /// Seed for --random-sub.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GraphArgs {
    fn assemble(
        d: Option<usize>,
        m: usize,
        sub: Option<PathBuf>,
        random_sub: bool,
        seed: u64,
    ) -> Result<Self, CliError> {
        Ok(Self {
            d: d.ok_or_else(|| CliError::Usage("exact ratios need --d".into()))?,
            m,
            sub,
            random_sub,
            seed,
        })
    }
}

impl GraphArgs {
    fn spec(&self) -> Result<HypercubeSpec, CliError> {
        if self.d < 1 {
            return Err(CliError::Usage("--d must be at least 1".into()));
        }
        if self.m < 1 {
            return Err(CliError::Usage("--m must be at least 1".into()));
        }
        let subunitary = match (self.m, &self.sub, self.random_sub) {
            (1, None, false) => None,
            (1, _, _) => {
                return Err(CliError::Usage(
                    "--sub/--random-sub require --m greater than 1".into(),
                ))
            }
            (_, Some(path), _) => Some(commands::load_subunitary(path, self.m)?),
            (_, None, true) => Some(random_unitary(self.m, self.seed)),
            (_, None, false) => {
                return Err(CliError::Usage(
                    "--m greater than 1 needs --sub <PATH> or --random-sub".into(),
                ))
            }
        };
        Ok(HypercubeSpec::new(self.d, self.m, subunitary)?)
    }
}

#[derive(Args)]
struct UnitaryArgs {
    #[command(flatten)]
    graph: GraphArgs,

    /// Construction route for the bare hypercube: tensor, closed-form or
    /// spectral.
    #[arg(long)]
    method: Option<String>,

    /// Output file (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PredictArgs {
    #[command(flatten)]
    graph: GraphArgs,

    /// Initial occupation, e.g. "3,0,1,0,0,3,0,1".
    #[arg(long)]
    initial: String,

    /// Particle statistics: boson or fermion (the law does not cover
    /// distinguishable particles).
    #[arg(long)]
    stats: String,

    /// Restrict the analysis to one symmetry set, e.g. "2,8"; it must
    /// leave the initial state invariant.
    #[arg(long)]
    sym: Option<String>,

    /// Also compute the probability of every final state.
    #[arg(long)]
    probs: bool,

    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,

    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    graph: GraphArgs,

    /// Initial occupation, e.g. "0,0,2,2,0,0,2,2".
    #[arg(long)]
    initial: String,

    /// Particle statistics: boson or fermion.
    #[arg(long)]
    stats: String,

    /// Suppression threshold on probabilities, in (0, 1e-4].
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,

    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Figure4Args {
    /// Directory receiving the five CSV files.
    #[arg(long, value_name = "DIR", default_value = ".")]
    out_dir: PathBuf,

    /// Threshold for the observed-suppression column.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Args)]
struct RatioArgs {
    /// Preset grid; "fig3" evaluates bosons at 1..6 independent
    /// symmetries and fermions with 4, 16 and 64 particles in the
    /// large-lattice limit.
    #[arg(long)]
    preset: Option<String>,

    /// Statistics for the explicit grid: boson or fermion.
    #[arg(long)]
    stats: Option<String>,

    /// Comma-separated independent-symmetry counts, e.g. "1,2,3".
    #[arg(long)]
    eta: Option<String>,

    /// Particle number (required for fermions).
    #[arg(long)]
    particles: Option<u32>,

    /// Mode count; selects the exact binomial form for fermions.
    #[arg(long)]
    modes: Option<usize>,

    /// Initial occupation for an exact ratio by enumeration (needs the
    /// graph flags).
    #[arg(long)]
    initial: Option<String>,

    /// Hypercube dimension for --initial.
    #[arg(long)]
    d: Option<usize>,

    /// Modes per vertex subgraph for --initial.
    #[arg(long, default_value_t = 1)]
    m: usize,

    /// JSON file with the m x m subunitary for --initial.
    #[arg(long, value_name = "PATH", conflicts_with = "random_sub")]
    sub: Option<PathBuf>,

    /// Haar-random subunitary for --initial, seeded with --seed.
    #[arg(long)]
    random_sub: bool,

    /// Seed for --random-sub.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,

    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Lib(#[from] hyperwalk::Error),

    #[error("{context}: {source}")]
    Io {
        context: String,
        source: std::io::Error,
    },

    #[error("{context}: {source}")]
    Json {
        context: String,
        source: serde_json::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(
                hyperwalk::Error::PermanentBound { .. }
                | hyperwalk::Error::OracleBound { .. }
                | hyperwalk::Error::EnumerationBound { .. }
                | hyperwalk::Error::CountOverflow
                | hyperwalk::Error::DimensionBound { .. },
            ) => 3,
            _ => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let failed = err.use_stderr();
            let _ = err.print();
            return if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(workers) = cli.workers {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    let outcome = match &cli.command {
        Command::Unitary(args) => commands::unitary(args),
        Command::Predict(args) => commands::predict(args),
        Command::Verify(args) => commands::verify_cmd(args),
        Command::Figure4(args) => commands::figure4(args),
        Command::Ratio(args) => commands::ratio(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err);
            ExitCode::from(err.exit_code())
        }
    }
}
