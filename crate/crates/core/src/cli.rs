//! Command-line front end: `compute`, `verify`, and `geometry`.
//!
//! Exit codes: 0 success, 1 failing check, 2 invalid signature or usage,
//! 3 signature too large, 4 internal invariant failure.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::report::{Format, HomologyReport};
use crate::schubert::ComplexError;
use crate::verify::{geometry_trials, run_checks, CheckSet};
use crate::weyl::FlagSignature;

pub const EXIT_FAILED_CHECK: u8 = 1;
pub const EXIT_INVALID_SIGNATURE: u8 = 2;
pub const EXIT_TOO_LARGE: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "flagtopo", version, about = "Integral homology of real flag manifolds and line-triple checks")]
pub struct Cli {
    /// Also write standard output to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Homology of the flag manifold with the given signature.
    Compute {
        /// Flag dimensions d1 < ... < dk, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        signature: Vec<usize>,
        /// Dimension n of the ambient vector space R^n.
        #[arg(long)]
        ambient: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run a set of verification checks.
    Verify {
        #[arg(long = "set", value_enum, default_value_t = CheckSet::All)]
        set: CheckSet,
    },
    /// Seeded round trips between line triples in RP^n and partial flags.
    Geometry {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
}

/// Result of one invocation: text for standard output and standard error,
/// and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 0 }
    }

    fn fail(code: u8, stderr: String) -> Self {
        Outcome { stdout: String::new(), stderr, code }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Compute { signature, ambient, format } => compute(signature, *ambient, *format),
        Command::Verify { set } => verify(*set),
        Command::Geometry { n, trials, seed, tolerance } => geometry(*n, *trials, *seed, *tolerance),
    }
}

fn compute(dims: &[usize], ambient: usize, format: Format) -> Outcome {
    let sig = match FlagSignature::new(ambient, dims.to_vec()) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(EXIT_INVALID_SIGNATURE, format!("error: {e}\n")),
    };
    let start = Instant::now();
    match HomologyReport::compute(&sig) {
        Ok(report) => {
            let mut out = Outcome::ok(report.render(format));
            out.stderr = format!("computed in {:.3} s\n", start.elapsed().as_secs_f64());
            out
        }
        Err(e @ ComplexError::TooLarge { .. }) => Outcome::fail(EXIT_TOO_LARGE, format!("error: {e}\n")),
        Err(e) => Outcome::fail(EXIT_INTERNAL, format!("error: {e}\n")),
    }
}

fn verify(set: CheckSet) -> Outcome {
    let checks = run_checks(set);
    let mut stdout = String::new();
    for c in &checks {
        stdout.push_str(&c.to_string());
        stdout.push('\n');
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    stdout.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
    Outcome { stdout, stderr: String::new(), code: if failed == 0 { 0 } else { EXIT_FAILED_CHECK } }
}

fn geometry(n: usize, trials: usize, seed: u64, tolerance: f64) -> Outcome {
    if n < 2 || trials == 0 {
        return Outcome::fail(EXIT_INVALID_SIGNATURE, "error: need n >= 2 and trials >= 1\n".into());
    }
    let stats = geometry_trials(n, trials, seed, tolerance);
    let stdout = format!("{stats}\n");
    Outcome { stdout, stderr: String::new(), code: if stats.all_passed() { 0 } else { EXIT_FAILED_CHECK } }
}
