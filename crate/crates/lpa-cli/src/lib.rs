//! Batch front end for the Leavitt path algebra toolkit: graph analysis,
//! centroid classification with certificates, element evaluation, the comet
//! matrix isomorphism, corpus runs and the full verification battery.
//!
//! JSON is the output contract; the text reports are derived from the same
//! data. All randomized checks take an explicit seed that is recorded in the
//! report, and identical inputs produce byte-identical JSON.

pub mod battery;
pub mod commands;
pub mod report;

use std::path::Path;

use lpa_core::graph::{DslError, Graph};

/// Exit codes: 0 ok, 1 verification failure, 2 usage or parse error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    VerificationFailed,
    UsageOrParse,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::VerificationFailed => 1,
            Outcome::UsageOrParse => 2,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: DslError },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn outcome(&self) -> Outcome {
        Outcome::UsageOrParse
    }
}

pub fn load_graph(path: &Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Graph::parse(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

/// Degree resolution: an explicit flag wins, then the `LPA_DEGREE`
/// environment variable, then the given default. Certification paths default
/// to 3 (the degree whose dimension formulas the certificates pin down);
/// corner bases grow combinatorially with the degree, so large values are
/// clamped.
pub fn effective_degree(flag: Option<u32>, default: u32) -> u32 {
    let d = flag
        .or_else(|| {
            std::env::var("LPA_DEGREE")
                .ok()
                .and_then(|v| v.parse::<u32>().ok())
        })
        .unwrap_or(default);
    d.clamp(1, 8)
}

/// Sorted list of `.lpa` files in a directory.
pub fn corpus_files(dir: &Path) -> Result<Vec<std::path::PathBuf>, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    })?;
    let mut files: Vec<std::path::PathBuf> = entries
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().map(|x| x == "lpa").unwrap_or(false))
        .collect();
    files.sort();
    Ok(files)
}
