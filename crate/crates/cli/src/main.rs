//! `eaf`: command-line front end over EAF v1 files.
//!
//! Exit codes: 0 on success, 1 when a checked property fails (axioms, laws,
//! state existence), 2 on usage or parse errors.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use effect_algebra::{FixtureName, LawId};

#[derive(Debug, Parser)]
#[command(name = "eaf", version, about = "Analyze finite effect algebras")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the effect algebra axioms.
    Verify { file: PathBuf },
    /// Print order flags, atoms, sharp and meager elements and isotropic indices.
    Analyze { file: PathBuf },
    /// Decompose an element into a sharp part and atom multiples.
    Decompose { file: PathBuf, element: String },
    /// Search for a state, or certify that none exists.
    States {
        file: PathBuf,
        /// Print a state if one exists (the default).
        #[arg(long, conflicts_with = "certify_none")]
        find: bool,
        /// Succeed only with a checked certificate that no state exists.
        #[arg(long)]
        certify_none: bool,
    },
    /// Extend a state on the sharp elements to the whole algebra.
    Smear {
        file: PathBuf,
        /// STATE v1 file over S(E).
        #[arg(long)]
        state: PathBuf,
    },
    /// Generate an algebra and print it as canonical EAF.
    Gen {
        #[command(subcommand)]
        what: Generator,
        /// Write to a file instead of stdout.
        #[arg(short = 'o', long, global = true)]
        out: Option<PathBuf>,
    },
    /// Run the law suite.
    Props {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Evaluate lattice-law conclusions on every input.
        #[arg(long)]
        counterexample_mode: bool,
        /// Comma-separated law ids; all laws when omitted.
        #[arg(long, value_delimiter = ',')]
        laws: Vec<LawId>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Generator {
    /// Łukasiewicz chain with n+1 elements.
    MvChain {
        n: u32,
        #[arg(long, default_value = "a")]
        generator: String,
    },
    /// Boolean algebra with k atoms.
    Boolean { k: u32 },
    /// Horizontal sum of the given algebras.
    Hsum {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Direct product of two algebras.
    Product { left: PathBuf, right: PathBuf },
    /// One of the shipped example tables.
    Fixture { name: FixtureName },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { file } => commands::verify(&file),
        Command::Analyze { file } => commands::analyze(&file),
        Command::Decompose { file, element } => commands::decompose(&file, &element),
        Command::States {
            file, certify_none, ..
        } => commands::states(&file, certify_none),
        Command::Smear { file, state } => commands::smear(&file, &state),
        Command::Gen { what, out } => commands::generate(&what, out.as_deref()),
        Command::Props {
            files,
            counterexample_mode,
            laws,
        } => commands::props(&files, counterexample_mode, &laws),
    };
    match result {
        Ok(outcome) => {
            outcome.print(cli.json);
            ExitCode::from(outcome.code)
        }
        Err(err) => {
            eprintln!("eaf: {err}");
            ExitCode::from(err.code)
        }
    }
}
