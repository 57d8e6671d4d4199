//! Command-line front end: argument parsing, the subcommands and their
//! text and JSON output.

mod commands;
pub mod document;
mod render;

pub use render::render_svg;

use crate::budget::Budget;
use crate::error::Error;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "gkm", version, about = "Fibrations of 3-valent GKM graphs over 2-valent ones")]
pub struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the GKM conditions, and the fibration conditions if a stanza is present.
    Validate { file: PathBuf },
    /// Print the classifying K-vector of a fibration.
    Classify { file: PathBuf },
    /// Build the fibration over a base for a given K-vector.
    Build(BuildArgs),
    /// Enumerate the signed structures of a total graph and tag their cases.
    SignedStructures { file: PathBuf },
    /// Run the obstructions to invariant Kähler structures.
    KaehlerCheck { file: PathBuf },
    /// Chern classes of the bundle and the cohomology ring of its projectivization.
    Cohomology {
        file: PathBuf,
        /// Coefficients a_1,…,a_n (default all zero).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Option<Vec<i64>>,
    },
    /// Discriminant invariant for fibrations over a triangle.
    Delta { file: PathBuf },
    /// Group diagrams, gluing coefficients and stabilizer data of the realization.
    Realize {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Option<Vec<i64>>,
        /// Also lift the base polygon to a Delzant 3-polytope (product type only).
        #[arg(long)]
        delzant_lift: bool,
    },
    /// Draw a graph whose vertices carry positions as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sweep all K-vectors up to a bound and tabulate invariants per isomorphism class.
    Enumerate {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        max_k: u32,
    },
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long)]
    pub base: PathBuf,
    /// k_1,…,k_n.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub k: Vec<i64>,
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub eta: u8,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the front end on explicit arguments (the first is the program name).
pub fn run<I, T>(args: I, budget: &Budget) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 4, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match commands::execute(&cli.command, budget) {
        Ok(reply) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&reply.json).expect("JSON values serialize");
                s.push('\n');
                s
            } else {
                reply.text
            };
            Outcome { code: reply.code, stdout, stderr: String::new() }
        }
        Err(e) => error_outcome(&e, cli.json),
    }
}

fn error_outcome(e: &Error, json: bool) -> Outcome {
    let stdout = if json {
        let v = serde_json::json!({ "error": e.to_string(), "exit_code": e.exit_code() });
        let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
        s.push('\n');
        s
    } else {
        String::new()
    };
    Outcome { code: e.exit_code(), stdout, stderr: format!("error: {e}\n") }
}

/// Entry point of the `gkm` binary.
pub fn run_from_env() -> ExitCode {
    let out = run(std::env::args_os(), &Budget::from_env());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code)
}
