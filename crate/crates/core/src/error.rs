use thiserror::Error;

/// Errors raised by the library. All of them describe a violated
/// precondition; none are transient.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("direction undefined: theta has zero norm")]
    DirectionUndefined,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("shrinkage undefined at origin")]
    UndefinedAtOrigin,

    #[error("inverse moment diverges for p = {p} (requires p >= 3)")]
    InverseMomentDiverges { p: usize },

    #[error("series did not converge after {terms} terms (partial sum {partial_sum:e})")]
    SeriesNotConverged { terms: usize, partial_sum: f64 },

    #[error("projection degenerate: theta norm must be positive")]
    ProjectionDegenerate,

    #[error("no closed-form risk for estimator `{0}`; use Monte Carlo")]
    UnsupportedEstimator(String),

    #[error("invalid estimator spec `{0}`")]
    InvalidSpec(String),

    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
