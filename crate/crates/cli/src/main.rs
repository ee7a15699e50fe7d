//! `untwist`: inspect two-way transducers and check one-way and sweeping
//! definability on bounded inputs.
//!
//! Exit codes: 0 pass, 1 refuted, 2 absent, 64 usage, 65 malformed
//! transducer or word, 66 unreadable file, 69 resource cap or bound exceeded,
//! 70 internal error, 73 unwritable output.

mod commands;

use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use untwist::{Caps, PassBound, PeriodBound};

#[derive(Parser, Debug)]
#[command(
    name = "untwist",
    version,
    about = "Run analysis and bounded definability checks for two-way transducers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Add wall-clock timings to the output.
    #[arg(long, global = true)]
    pub stats: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct Source {
    /// Transducer file.
    pub file: PathBuf,
    /// Maximum number of runs per input.
    #[arg(long)]
    pub cap_runs: Option<NonZeroUsize>,
    /// Maximum number of steps per run.
    #[arg(long)]
    pub cap_steps: Option<NonZeroUsize>,
}

impl Source {
    pub fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            max_runs: self.cap_runs.map_or(d.max_runs, NonZeroUsize::get),
            max_steps: self.cap_steps.map(NonZeroUsize::get),
        }
    }
}

#[derive(Args, Debug)]
pub struct OnInput {
    #[command(flatten)]
    pub source: Source,
    /// Input word, letters separated by spaces when they are longer than one character.
    #[arg(long)]
    pub input: String,
    /// Largest admissible period, or `symbolic` for the master bound.
    #[arg(long, default_value = "symbolic")]
    pub period_bound: PeriodBound,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate a transducer, printing its canonical form.
    Parse {
        #[command(flatten)]
        source: Source,
    },
    /// Print the bounds derived from the state count.
    Constants {
        #[command(flatten)]
        source: Source,
        /// Expand B when it has at most this many bits.
        #[arg(long)]
        materialize: Option<u64>,
    },
    /// Enumerate the normalized successful runs on an input.
    Run {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        input: String,
        /// Write every run dump to this file.
        #[arg(long)]
        dump_runs: Option<PathBuf>,
    },
    /// Report loops, components and inversions of every run.
    Analyze(OnInput),
    /// Pump a loop of a run and compare with the predicted output.
    Pump {
        #[command(flatten)]
        on: OnInput,
        /// Loop borders `x1,x2`.
        #[arg(long = "loop")]
        interval: String,
        /// Number of copies of the loop in the pumped input.
        #[arg(long, default_value = "2")]
        times: NonZeroUsize,
        #[arg(long, default_value_t = 0)]
        run: usize,
    },
    /// Split every run into diagonals and blocks.
    Decompose(OnInput),
    /// Replay the output left to right from a decomposition.
    SimulateOneway(OnInput),
    /// Bounded definability checks.
    Decide {
        #[command(subcommand)]
        mode: DecideMode,
    },
    /// Replay a refutation certificate.
    VerifyCert {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        cert: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct DecideArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub max_len: NonZeroUsize,
    #[arg(long, default_value = "symbolic")]
    pub period_bound: PeriodBound,
    /// Write the certificate of a refutation to this file.
    #[arg(long)]
    pub cert: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum DecideMode {
    /// Search for an unsafe inversion.
    Oneway(DecideArgs),
    /// Search for an unsafe k-inversion.
    Sweeping {
        #[command(flatten)]
        args: DecideArgs,
        /// Number of passes, or `symbolic` for the bound sufficient for all sweeping transducers.
        #[arg(long)]
        passes: PassBound,
        /// Passes searched in place of a symbolic count.
        #[arg(long, default_value = "4")]
        pass_cap: NonZeroUsize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (stdout, stderr, code) = commands::run(&cli);
    print!("{stdout}");
    eprint!("{stderr}");
    ExitCode::from(code)
}
