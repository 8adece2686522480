use thiserror::Error;

use crate::params::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidParams(Vec<Violation>),

    /// Two landmarks that must be distinct coincide within the knife-edge tolerance.
    #[error("knife-edge configuration: {first} and {second} differ by {gap:e}")]
    KnifeEdge { first: String, second: String, gap: f64 },

    #[error("platform state has no stories")]
    EmptyState,

    #[error("no sign change on [{lo}, {hi}] (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    NoBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("hybrid policy requires the interesting-story threshold to be a stable steady state")]
    HybridUnavailable,

    #[error("no unstable steady state to test")]
    NoUnstableSteadyState,

    #[error("sweep grid has no analyzable point")]
    EmptyGrid,

    #[error("bounds not bracketed: {0}")]
    BoundsNotBracketed(String),

    #[error("stability scan inconclusive near {location}: |drift| = {drift:e}")]
    ScanInconclusive { location: f64, drift: f64 },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short machine-readable tag, used in CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParams(_) => "invalid_params",
            Error::KnifeEdge { .. } => "knife_edge",
            Error::EmptyState => "empty_state",
            Error::NoBracket { .. } => "no_bracket",
            Error::HybridUnavailable => "hybrid_unavailable",
            Error::NoUnstableSteadyState => "no_unstable_steady_state",
            Error::EmptyGrid => "empty_grid",
            Error::BoundsNotBracketed(_) => "bounds_not_bracketed",
            Error::ScanInconclusive { .. } => "scan_inconclusive",
            Error::Inconsistent(_) => "inconsistent",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }
}
