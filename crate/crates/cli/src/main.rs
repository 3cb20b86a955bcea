//! `qgl`: command line access to quiver Grassmannian computations.
//!
//! Exit codes: 0 on success, 1 when a verification assertion fails, 2 on
//! malformed input or usage.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "qgl",
    version,
    about = "Quiver Grassmannians of rigid representations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Inputs {
    /// Input files, read in order as one bundle of documents.
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Euler form <a,b> on the quiver of the first representation.
    Euler {
        #[command(flatten)]
        inputs: Inputs,
        /// Left vector (defaults to the dimension vector of the first rep).
        #[arg(long)]
        a: Option<String>,
        /// Right vector (defaults to the left one).
        #[arg(long)]
        b: Option<String>,
    },
    /// dim Hom and dim Ext^1 between the first two representations (or the
    /// first one with itself).
    Homext {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Rigidity report of the first representation.
    Rigid {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Krull-Schmidt decomposition.
    Decompose {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Reflection at a sink or source vertex.
    Reflect {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        at: String,
        #[arg(long)]
        e: Option<String>,
    },
    /// Quiver Grassmannian computations.
    Grass {
        #[command(subcommand)]
        action: GrassCmd,
    },
    /// Covers, lifts and graded Hom/Ext.
    Cover {
        #[command(subcommand)]
        action: CoverCmd,
    },
    /// Rational charts of tree representations.
    Chart {
        #[command(subcommand)]
        action: ChartCmd,
    },
    /// End-to-end verification.
    Verify {
        #[command(subcommand)]
        action: VerifyCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum GrassCmd {
    /// Number of F_q-points.
    Count {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        e: String,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Counting polynomial by interpolation.
    Poly {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        e: String,
        /// Comma-separated primes; the last one is held out.
        #[arg(long)]
        primes: Option<String>,
    },
    /// Torus fixed components and their Euler identity.
    Fixed {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        e: String,
        #[arg(long)]
        primes: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Bialynicki-Birula partition of the F_q-points.
    Limit {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        e: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CoverCmd {
    /// Lift along the coefficient quiver.
    Lift {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Re-lift until the support is a forest.
    Iterate {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Compare Hom/Ext with the sums over shifts of graded Hom/Ext.
    Check {
        #[command(flatten)]
        inputs: Inputs,
    },
}

#[derive(Subcommand, Debug)]
pub enum ChartCmd {
    Build {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        e: String,
    },
    Eval {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        e: String,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        coords: String,
    },
    Verify {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        e: String,
        #[arg(long, default_value = "5,7,11")]
        qs: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Runs the whole pipeline.
    All {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        e: String,
        #[arg(long, default_value = "2,3,5")]
        qs: String,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
