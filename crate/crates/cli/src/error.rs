//! Application errors and their mapping to process exit codes.
//!
//! - 1: the invocation itself is wrong (bad flags, inverted year ranges);
//! - 2: an input file could not be read or parsed;
//! - 3: the request was well-formed but has no answer in the data (unknown
//!   researcher, window too short to evaluate, undefined indicator value).

use std::path::PathBuf;

use thiserror::Error;

use iv_core::{AnalysisError, IndicatorError, ParseError, UndefinedReason, Year};

#[derive(Debug, Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
    #[error("researcher '{researcher_id}' not found in {}", path.display())]
    UnknownResearcher {
        researcher_id: String,
        path: PathBuf,
    },
    #[error("window must span at least two years, got {got}")]
    WindowTooShort { got: usize },
    #[error("indicator undefined for researcher '{researcher_id}' at year {year}: {reason}")]
    UndefinedValue {
        researcher_id: String,
        year: Year,
        reason: UndefinedReason,
    },
    #[error("no researcher in {} has a known selection label", path.display())]
    NoLabeledResearchers { path: PathBuf },
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) => 1,
            AppError::Parse { .. } => 2,
            AppError::UnknownResearcher { .. }
            | AppError::WindowTooShort { .. }
            | AppError::UndefinedValue { .. }
            | AppError::NoLabeledResearchers { .. } => 3,
        }
    }
}

impl From<AnalysisError> for AppError {
    fn from(err: AnalysisError) -> Self {
        match err {
            AnalysisError::Indicator(IndicatorError::WindowTooShort { got }) => {
                AppError::WindowTooShort { got }
            }
            AnalysisError::Indicator(IndicatorError::ZeroHarmonicLength) => {
                AppError::WindowTooShort { got: 0 }
            }
            AnalysisError::StartsBeforeAnchor { .. }
            | AnalysisError::EmptyYearRange { .. }
            | AnalysisError::EmptySeries => AppError::Usage(err.to_string()),
        }
    }
}
