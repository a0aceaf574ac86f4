mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use swlab::Caps;

/// Even symmetries: verification, Poincaré series, Schur functors, Casimir spectra.
#[derive(Parser, Debug)]
#[command(name = "swlab", version)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Largest tensor degree for exact computations.
    #[arg(long, global = true, env = "SWLAB_EXACT_M", value_parser = clap::value_parser!(u64).range(1..))]
    pub exact_m: Option<u64>,
    /// Largest tensor degree for floating-point computations.
    #[arg(long, global = true, env = "SWLAB_FLOAT_M", value_parser = clap::value_parser!(u64).range(1..))]
    pub float_m: Option<u64>,
    /// Tolerance for floating-point checks, in (0, 1e-4].
    #[arg(long, global = true, env = "SWLAB_TOL")]
    pub tol: Option<f64>,
    /// Run in floating point instead of exact arithmetic.
    #[arg(long, global = true)]
    pub float: bool,
    /// Radicand that overrides the fixture's declared field.
    #[arg(long, global = true)]
    pub field: Option<u64>,
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(m) = self.exact_m {
            caps.exact_m = m as usize;
            caps.schur_exact_m = m as usize;
        }
        if let Some(m) = self.float_m {
            caps.float_m = m as usize;
        }
        caps
    }
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Fixture JSON file.
    #[arg(short, long)]
    pub input: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check involutivity, the braid relation and flip conjugation.
    Verify(Input),
    /// Both Poincaré series, their classification and the roots α.
    Poincare {
        #[command(flatten)]
        input: Input,
        /// Highest degree computed.
        #[arg(long)]
        max_k: Option<usize>,
    },
    /// Determinant, codeterminant, the M and N matrices and centrality.
    Det(Input),
    /// Column inverse, B, C, the crossings with V* and the Lie algebra checks.
    Dual(Input),
    /// Rank of the Schur projector against s_λ(α).
    SchurDim {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        lambda: String,
    },
    /// Littlewood–Richardson product in rank p with the dimension identity.
    Fusion {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Casimir scalar on V_λ with its closed forms.
    Casimir {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        lambda: String,
    },
    /// Casimir spectrum on the hyperboloid (--n) or on the orbit of a fixture (-i), as CSV.
    Spectrum {
        #[arg(long, conflicts_with = "input")]
        n: Option<i64>,
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short = 'L', long = "levels")]
        levels: usize,
        /// Print N(λ) for this λ as JSON instead of the table.
        #[arg(long)]
        count: Option<f64>,
    },
    /// Asymptotics of the counting function on the hyperboloid.
    Weyl {
        #[arg(long)]
        n: i64,
        #[arg(short = 'L', long = "levels")]
        levels: usize,
        /// Also write the spectrum table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Emit a named fixture as JSON.
    MakeFixture {
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("swlab: {e}");
            ExitCode::from(e.code())
        }
    }
}
