//! Errors of the IO and command layer, with their process exit codes.

use std::path::PathBuf;

use seclend_core::auction::AuctionError;
use seclend_core::sim::SimError;
use seclend_core::valuation::ValuationError;
use thiserror::Error;

use crate::csv_io::CsvError;

/// Exit code for invalid input: bad config, schema violations, parameters
/// outside their domain, missing input files.
pub const EXIT_VALIDATION: u8 = 2;
/// Exit code for failures while running a valid request.
pub const EXIT_RUNTIME: u8 = 1;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("config {}: {source}", path.display())]
    Config { path: PathBuf, source: serde_json::Error },
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("{}: {source}", path.display())]
    Csv { path: PathBuf, source: CsvError },
    #[error("artifact {}: {reason}", path.display())]
    Artifact { path: PathBuf, reason: String },
    #[error("missing inputs: {}", .0.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(", "))]
    MissingInputs(Vec<PathBuf>),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error(transparent)]
    Auction(#[from] AuctionError),
    #[error("cannot serialize report: {0}")]
    Serialize(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Process exit code: [`EXIT_VALIDATION`] or [`EXIT_RUNTIME`].
    pub fn exit_code(&self) -> u8 {
        let validation = match self {
            Error::Io { .. } | Error::Serialize(_) => false,
            Error::Config { .. }
            | Error::InvalidConfig(_)
            | Error::Artifact { .. }
            | Error::MissingInputs(_)
            | Error::Usage(_)
            | Error::Sim(_)
            | Error::Valuation(_) => true,
            Error::Csv { source, .. } => !matches!(source, CsvError::Io(_)),
            Error::Auction(e) => !matches!(
                e,
                AuctionError::NumericFailure(_) | AuctionError::Numerics(_) | AuctionError::NoReserveSolution { .. }
            ),
        };
        if validation {
            EXIT_VALIDATION
        } else {
            EXIT_RUNTIME
        }
    }
}
