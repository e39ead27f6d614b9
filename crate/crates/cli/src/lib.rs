//! Batch front end: reads a JSON problem, runs one engine mode, and emits a
//! deterministic JSON result document.
//!
//! Exit codes: 0 certified, 1 input error, 2 uncertified result (the document
//! is still written), 3 hypothesis failure.

pub mod config;
pub mod problem;
pub mod report;
pub mod selfcheck;

use std::path::Path;

use matgrowth::backends::BackendError;
use matgrowth::GrowthError;
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use config::{Mode, Overrides, ProblemConfig};
pub use report::{ResultDocument, Status};

pub const TOOL: &str = "matgrowth";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("hypothesis failure: {0}")]
    Hypothesis(String),
    #[error("internal consistency check failed: {0}")]
    Invariant(String),
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Input(_) | CliError::Io { .. } => Status::InputError,
            CliError::Hypothesis(_) => Status::HypothesisFailed,
            CliError::Invariant(_) => Status::VerificationFailed,
        }
    }
}

impl From<GrowthError> for CliError {
    fn from(e: GrowthError) -> Self {
        match e {
            GrowthError::Hypothesis(s) | GrowthError::Precondition(s) => CliError::Hypothesis(s),
            GrowthError::Invariant(s) => CliError::Invariant(s),
            GrowthError::Input(s) => CliError::Input(s),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<BackendError> for CliError {
    fn from(e: BackendError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Result of one run: the exit code, the document when the config parsed, and
/// the message to print on standard error.
#[derive(Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub document: Option<ResultDocument>,
    pub message: Option<String>,
    /// Where the document goes; `None` means standard output.
    pub output: Option<String>,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Runs an already parsed problem.
pub fn run_config(cfg: &ProblemConfig) -> RunOutcome {
    let mut doc = ResultDocument {
        tool: TOOL.into(),
        version: VERSION.into(),
        input_digest: digest(&cfg.canonical_bytes()),
        mode: cfg.mode.name().into(),
        status: Status::Certified,
        exit_code: 0,
        polynomials: Vec::new(),
        ranks: Default::default(),
        check: None,
        error: None,
    };
    let message = match problem::solve(cfg) {
        Ok(out) => {
            doc.status = out.status();
            doc.polynomials = out.polynomials;
            doc.ranks = out.ranks;
            doc.check = out.check;
            match doc.status {
                Status::Certified => None,
                s => Some(format!("result is {}", status_name(s))),
            }
        }
        Err(e) => {
            doc.status = e.status();
            doc.error = Some(e.to_string());
            Some(e.to_string())
        }
    };
    doc.exit_code = doc.status.exit_code();
    RunOutcome {
        exit_code: doc.exit_code,
        document: Some(doc),
        message,
        output: cfg.output.clone(),
    }
}

/// Parses the text, applies the overrides and runs it.
pub fn run_text(text: &str, overrides: &Overrides) -> RunOutcome {
    match ProblemConfig::parse(text) {
        Ok(mut cfg) => {
            cfg.apply(overrides);
            run_config(&cfg)
        }
        Err(e) => RunOutcome {
            exit_code: e.status().exit_code(),
            document: None,
            message: Some(e.to_string()),
            output: None,
        },
    }
}

pub fn run_file(path: &Path, overrides: &Overrides) -> RunOutcome {
    match std::fs::read_to_string(path) {
        Ok(text) => run_text(&text, overrides),
        Err(source) => {
            let e = CliError::Io {
                path: path.display().to_string(),
                source,
            };
            RunOutcome {
                exit_code: e.status().exit_code(),
                document: None,
                message: Some(e.to_string()),
                output: None,
            }
        }
    }
}

pub fn status_name(s: Status) -> &'static str {
    match s {
        Status::Certified => "certified",
        Status::BoxTruncated => "box-truncated",
        Status::VerificationFailed => "verification-failed",
        Status::Inconclusive => "inconclusive",
        Status::InputError => "input-error",
        Status::HypothesisFailed => "hypothesis-failed",
    }
}
