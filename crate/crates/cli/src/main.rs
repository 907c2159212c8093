mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use occamlab_core::ErrorCategory;

#[derive(Parser, Debug)]
#[command(name = "occamlab", version, about = "Occam's razor sample-complexity bounds, witness codes and PAC experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write JSON instead of CSV.
    #[arg(long, global = true)]
    json: bool,
    /// Master seed [default: 0]; for `verify`, overrides the config's seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for trial parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample-complexity bounds for one (ε, δ) instance.
    Bounds(BoundsArgs),
    /// Run a learner on a labeled sample.
    Learn(LearnArgs),
    /// Build a witness code and compare its length to the formula bound.
    Encode(EncodeArgs),
    /// Turn a PAC learner into an Occam algorithm on a sample.
    Reduce(ReduceArgs),
    /// Run a PAC experiment described by a JSON config.
    Verify(VerifyArgs),
    /// Brute-force VC dimension over the full cube.
    Vcdim(VcdimArgs),
    /// Genome-from-reads comparison of length-based and KC-based bounds.
    App1(App1Args),
    /// Monomial comparison of length-based and KC-based bounds, with a PAC run.
    App2(App2Args),
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long)]
    pub delta: f64,
    /// Example length.
    #[arg(long, default_value_t = 1)]
    pub n: u64,
    /// Target length in bits; enables the length-based bound.
    #[arg(long)]
    pub s: Option<u64>,
    /// VC dimension; enables the VC bounds.
    #[arg(long)]
    pub d: Option<u64>,
    /// Hypothesis class size; enables the finite-class bound.
    #[arg(long)]
    pub class_size: Option<u128>,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// `p(n, s, gamma)` for the compression `m^(1-alpha)/p`; enables the KC bound.
    /// Example: `2*math::log2(s) + math::log2(n)`.
    #[arg(long)]
    pub p_expr: Option<String>,
    /// Use `1/δ` and `δ` in the KC bound (deterministic Occam algorithm).
    #[arg(long)]
    pub deterministic: bool,
    /// Print an aligned table instead of CSV.
    #[arg(long)]
    pub table: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algo {
    Standard,
    Haussler,
    GreedySss,
    Bruteforce,
}

#[derive(Args, Debug)]
pub struct LearnArgs {
    #[arg(long)]
    pub algo: Algo,
    /// Labeled sample, one `<label><TAB><example>` per line.
    #[arg(long)]
    pub sample: PathBuf,
    /// Example length [default: taken from the sample].
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Codec {
    Monomial,
    Superstring,
    Transcript,
}

#[derive(Args, Debug)]
pub struct EncodeArgs {
    #[arg(long)]
    pub codec: Codec,
    /// Monomial text form, or FASTA / bare sequence for superstrings.
    #[arg(long)]
    pub hypothesis: Option<PathBuf>,
    /// Same formats as `--hypothesis`.
    #[arg(long)]
    pub target: Option<PathBuf>,
    /// Sample file: the reads for superstrings, the encoded examples for transcripts.
    #[arg(long)]
    pub sample: Option<PathBuf>,
    /// Example length [default: longest example in the sample].
    #[arg(long)]
    pub n: Option<usize>,
    /// Transcript: encode the example set instead of the sequence.
    #[arg(long)]
    pub set: bool,
    /// Write the code as packed bytes (8-byte little-endian bit count, then MSB-first bits).
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum System {
    Monomial,
    Threshold,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReduceLearner {
    Standard,
    Haussler,
    Bruteforce,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    /// 2: exception handling; 3: majority of three.
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
    pub theorem: u8,
    #[arg(long)]
    pub system: System,
    #[arg(long)]
    pub sample: PathBuf,
    #[arg(long, default_value_t = 0.1)]
    pub gamma: f64,
    /// Example length [default: taken from the sample].
    #[arg(long)]
    pub n: Option<usize>,
    /// Monomial learner for theorem 2 (threshold always uses brute force).
    #[arg(long, default_value = "standard")]
    pub learner: ReduceLearner,
    /// Target size parameter handed to the learner's sample-size function.
    #[arg(long, default_value_t = 0)]
    pub s: u64,
    /// Theorem 3: extra attempts per failed stage.
    #[arg(long, default_value_t = 5)]
    pub max_retries: usize,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub config: PathBuf,
}

#[derive(Args, Debug)]
pub struct VcdimArgs {
    #[arg(long)]
    pub system: System,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct App1Args {
    /// Target length in bases.
    #[arg(long)]
    pub s: u64,
    /// Read length.
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    /// Reads to sample in desk mode [default: ⌈2s/n⌉ + 1].
    #[arg(long)]
    pub num_samples: Option<usize>,
    /// Formula arithmetic only; required for s above 100000.
    #[arg(long)]
    pub bound_only: bool,
}

#[derive(Args, Debug)]
pub struct App2Args {
    #[arg(long)]
    pub n: usize,
    /// Literal count of the targets [default: n − ⌈√n⌉].
    #[arg(long)]
    pub target_size: Option<usize>,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    /// Points in each trial's distribution support.
    #[arg(long, default_value_t = 4096)]
    pub support: usize,
}

/// Why a command did not exit cleanly.
#[derive(Debug)]
pub enum Failure {
    Core(occamlab_core::Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
    /// The command ran, but an asserted criterion did not hold.
    Unmet(String),
    Output(String),
}

impl From<occamlab_core::Error> for Failure {
    fn from(e: occamlab_core::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Output(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Output(e.to_string())
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(e) => match e.category() {
                ErrorCategory::Input => 3,
                ErrorCategory::Infeasible => 4,
                ErrorCategory::StageFailure => 5,
                ErrorCategory::Other => 1,
            },
            Failure::Io(..) => 3,
            Failure::Usage(_) => 2,
            Failure::Unmet(_) | Failure::Output(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Io(path, e) => format!("{}: {e}", path.display()),
            Failure::Usage(m) | Failure::Unmet(m) | Failure::Output(m) => m.clone(),
        }
    }
}

pub struct Globals {
    pub json: bool,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let globals = Globals { json: cli.json, seed: cli.seed, threads: cli.threads };
    if globals.threads == Some(0) {
        eprintln!("occamlab: --threads must be at least 1");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Bounds(a) => commands::bounds(&a, &globals),
        Command::Learn(a) => commands::learn(&a, &globals),
        Command::Encode(a) => commands::encode(&a, &globals),
        Command::Reduce(a) => commands::reduce(&a, &globals),
        Command::Verify(a) => commands::verify(&a, &globals),
        Command::Vcdim(a) => commands::vcdim(&a, &globals),
        Command::App1(a) => commands::app1(&a, &globals),
        Command::App2(a) => commands::app2(&a, &globals),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("occamlab: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
