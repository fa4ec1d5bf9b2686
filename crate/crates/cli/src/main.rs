//! `hdc`: command-line front end.
//!
//! Exit codes: 0 feasible or optimal, 1 infeasible (or a failed check),
//! 2 input or usage error, 3 undecided within numeric tolerance.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "hdc", version, about = "p-norm Hamming centroid solvers")]
struct Cli {
    /// Worker threads for parallel solvers (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance file and print the result as JSON.
    Solve(SolveArgs),
    /// Build the instance reduced from a graph 3-coloring problem.
    Reduce(ReduceArgs),
    /// Run a verification suite and print one line per property.
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
    /// Generate a seeded random instance.
    Gen(GenArgs),
    /// Print the column-type profile of an instance as JSON.
    Types(InputArgs),
    /// Export the integer-program model of an instance as JSON.
    ExportCnip(ExportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Auto,
    Bruteforce,
    Dp,
    Searchtree,
    TypedBb,
    Approx2,
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Instance file (text format, or JSON); `-` reads stdin.
    pub input: PathBuf,
    /// Exponent `a/b`; must agree with the file's `p` line if it has one.
    #[arg(long)]
    pub p: Option<String>,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "auto")]
    pub algo: Algo,
    /// Budget on the norm, overriding the file.
    #[arg(long, conflicts_with = "kp")]
    pub k: Option<String>,
    /// Budget on the p-th-power cost, overriding the file.
    #[arg(long)]
    pub kp: Option<String>,
    /// Committee mode: the centroid must have exactly this many ones.
    #[arg(long)]
    pub t: Option<usize>,
    /// Search tree stops at the first feasible string instead of the lexicographically smallest optimum.
    #[arg(long)]
    pub first_hit: bool,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    /// Graph file: `n <vertices> m <edges>` then `e <i> <j>` lines.
    pub graph: PathBuf,
    #[arg(long)]
    pub p: String,
    /// Append columns so that all strings are pairwise distinct.
    #[arg(long)]
    pub distinct: bool,
    /// Instance output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Role map output path; defaults to `<out>.roles.json` when `--out` is given.
    #[arg(long)]
    pub roles: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum VerifySuite {
    /// Exhaustive check of the cardinality gadget.
    Gadget {
        #[arg(long)]
        nhat: usize,
        #[arg(long)]
        p: String,
    },
    /// Cross-check every exact solver against brute force on random instances.
    Oracle(TrialArgs),
    /// Check the factor-2 guarantee of the best-input-string heuristic.
    Approx(TrialArgs),
    /// Check the reduction on a graph: exact budget for a coloring, or no cheap structured centroid.
    Reduction {
        graph: PathBuf,
        #[arg(long, default_value = "2/1")]
        p: String,
        #[arg(long)]
        distinct: bool,
    },
}

#[derive(Args, Debug)]
pub struct TrialArgs {
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 12)]
    pub nmax: usize,
    #[arg(long, default_value_t = 6)]
    pub mmax: usize,
    #[arg(long)]
    pub seed: u64,
    /// Exponents to cycle through.
    #[arg(long, value_delimiter = ',', default_value = "2/1,3/1,3/2")]
    pub p: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Uniform,
    Planted,
    Reduction,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// String length, or vertex count in reduction mode.
    #[arg(long)]
    pub n: usize,
    /// String count, or edge count in reduction mode.
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "uniform")]
    pub mode: Mode,
    /// Bit-flip probability in planted mode.
    #[arg(long, default_value_t = 0.1)]
    pub rho: f64,
    #[arg(long, default_value = "2/1")]
    pub p: String,
    #[arg(long)]
    pub distinct: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match cli.command {
        Command::Solve(args) => commands::solve(&args),
        Command::Reduce(args) => commands::reduce(&args),
        Command::Verify { suite } => commands::verify(&suite),
        Command::Gen(args) => commands::generate(&args),
        Command::Types(args) => commands::types(&args),
        Command::ExportCnip(args) => commands::export_cnip(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
