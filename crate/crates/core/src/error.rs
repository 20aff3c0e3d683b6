use thiserror::Error;

use crate::scalar::{LengthValue, Unit};
use crate::spectrum::Spectrum;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unit mismatch: {0} vs {1}")]
    UnitMismatch(Unit, Unit),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph has no cycle")]
    NoCycle,

    #[error("enumeration exceeded {limit} {what}")]
    EnumerationLimit { what: &'static str, limit: usize },

    /// A membership question at a decision point could not be settled.
    /// Carries the covering-spectrum values found before the failure.
    #[error("covering spectrum indeterminate after {} values", .partial.len())]
    IndeterminateSpectrum { partial: Spectrum<LengthValue> },

    #[error("membership undecided within the coset bound")]
    Undecided,

    #[error("short-basis search over {candidates} candidates exceeds the bound; upper bound {upper_bound}")]
    SubsetSearchLimit { candidates: usize, upper_bound: usize },

    #[error("no delta-pair witness found: {0}")]
    WitnessNotFound(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parameters fall outside the analyzed regimes: {0}")]
    UnhandledRegime(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
