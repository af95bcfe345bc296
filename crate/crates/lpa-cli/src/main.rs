use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lpa_cli::commands;
use lpa_cli::{effective_degree, Outcome};

/// Leavitt path algebra toolkit: analyze graphs, classify centroids with
/// certificates, evaluate algebra expressions, and run verification corpora.
#[derive(Parser)]
#[command(name = "lpa", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural report: vertex kinds, cycles and exits, downward
    /// directedness, hereditary saturated lattice, comet and simplicity
    /// flags.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Classify the centroid and optionally verify the certificate.
    Centroid {
        file: PathBuf,
        /// Re-verify witnesses and cross-check seed-space dimensions.
        #[arg(long)]
        certify: bool,
        /// Degree bound for the seed-space cross-check (default 6, env
        /// LPA_DEGREE overrides the default).
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Multiply two elements and print the normal form, grading and length
    /// measure.
    Eval {
        file: PathBuf,
        lhs: String,
        rhs: String,
        #[arg(long)]
        json: bool,
    },
    /// Map an element of a comet algebra to its Laurent matrix picture.
    CometIso {
        file: PathBuf,
        #[arg(long)]
        element: String,
        #[arg(long)]
        json: bool,
    },
    /// Classify and certify every .lpa file in a directory.
    Corpus {
        dir: PathBuf,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Run the full invariant battery over a corpus directory.
    Verify {
        dir: PathBuf,
        #[arg(long)]
        degree: Option<u32>,
        /// Seed for the randomized checks (recorded in the report).
        #[arg(long, default_value_t = 0xC0FFEE)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { file, json } => commands::cmd_analyze(&file, json),
        Command::Centroid {
            file,
            certify,
            degree,
            json,
        } => commands::cmd_centroid(&file, certify, effective_degree(degree, 3), json),
        Command::Eval {
            file,
            lhs,
            rhs,
            json,
        } => commands::cmd_eval(&file, &lhs, &rhs, json),
        Command::CometIso {
            file,
            element,
            json,
        } => commands::cmd_comet_iso(&file, &element, json),
        Command::Corpus { dir, degree, json } => {
            commands::cmd_corpus(&dir, effective_degree(degree, 3), json)
        }
        Command::Verify {
            dir,
            degree,
            seed,
            json,
        } => commands::cmd_verify(&dir, effective_degree(degree, 3), seed, json),
    };
    match result {
        Ok(output) => {
            print!("{}", output.text);
            if !output.text.ends_with('\n') && !output.text.is_empty() {
                println!();
            }
            ExitCode::from(output.outcome.code() as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(Outcome::UsageOrParse.code() as u8)
        }
    }
}
