use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "nilsuper",
    version,
    about = "Nilpotent Leibniz superalgebras from structure constants"
)]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Trial count for probes and oracle runs.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub trials: usize,
    /// Tolerance for the complex field.
    #[arg(long, global = true, default_value_t = nilsuper::DEFAULT_TOL)]
    pub tol: f64,
    /// Random candidates for the characteristic sequence.
    #[arg(long, global = true, default_value_t = 50)]
    pub samples: usize,
    /// Write output here instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Grading and Leibniz superidentity check.
    Check { file: PathBuf },
    /// Graded antisymmetry and Jacobi superidentity check.
    LieCheck { file: PathBuf },
    /// Nilindex, series, characteristic sequence, annihilator and center.
    Invariants { file: PathBuf },
    /// Descending central series dimensions.
    Series { file: PathBuf },
    /// Characteristic sequence.
    Cseq { file: PathBuf },
    /// Build a catalog algebra.
    Catalog {
        #[command(subcommand)]
        family: Family,
    },
    /// Complete a skeleton file via the superidentity.
    Complete { file: PathBuf },
    /// Closed-form [y_i, y_j] from beta rows.
    Formula {
        #[arg(long)]
        n: usize,
        /// Length of the first odd chain.
        #[arg(long)]
        m1: usize,
        /// JSON rows `[[..]]`, m1 rows of n-1 entries.
        #[arg(long)]
        beta: String,
        #[arg(long, requires = "j")]
        i: Option<usize>,
        #[arg(long, requires = "i")]
        j: Option<usize>,
    },
    /// Compare completion with the closed formula on random parameters.
    VerifyFormula {
        #[arg(long)]
        n: usize,
        /// Odd chain lengths, comma-separated.
        #[arg(long, value_delimiter = ',')]
        parts: Vec<usize>,
    },
    /// Normalize the odd-m family and compare with the normal form.
    VerifyThm32 {
        #[arg(long)]
        m: usize,
        /// JSON list of (m+1)/2 scalars.
        #[arg(long)]
        gamma: String,
        #[arg(long, default_value = "1")]
        b1: String,
    },
    /// Zero-filiform nonexistence probe.
    ProbeZf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = nilsuper::verification::DEFAULT_ZERO_PROB)]
        zero_prob: f64,
    },
    /// Split odd-chain nonexistence probe.
    ProbeCsq {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
        #[arg(long, default_value_t = nilsuper::verification::DEFAULT_ZERO_PROB)]
        zero_prob: f64,
    },
    /// Check that a graded map carries A onto B.
    IsoVerify {
        a: PathBuf,
        b: PathBuf,
        map: PathBuf,
    },
    /// Parities of the generators of a two-generated algebra.
    Generators { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum Family {
    MaxLeibniz {
        #[arg(long)]
        n: usize,
    },
    MaxSuper {
        #[arg(long)]
        n: usize,
        /// Odd dimension, n or n+1 (default n+1).
        #[arg(long)]
        m: Option<usize>,
    },
    Zf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// JSON rows, n rows of m-1 entries (default zero).
        #[arg(long)]
        alpha: Option<String>,
        /// JSON rows, m rows of n-1 entries (default zero).
        #[arg(long)]
        beta: Option<String>,
        /// Emit the skeleton instead of the completed table.
        #[arg(long)]
        skeleton: bool,
    },
    Thm32Family {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        gamma: String,
    },
    Thm32Normal {
        #[arg(long)]
        m: usize,
    },
    CsqModel {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        skeleton: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
