use thiserror::Error;

use crate::quadrature::VolumeEstimate;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Inputs outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The half-space picture needs `0 < t < π/2`.
    #[error("degenerate embedding: {0}")]
    DegenerateEmbedding(String),

    /// Inconsistent geometric data (e.g. an upper height below the lower one).
    #[error("geometry error: {0}")]
    Geometry(String),

    /// Request beyond what the implementation supports (e.g. `n > n_max`).
    #[error("capability error: {0}")]
    Capability(String),

    /// An adaptive rule ran out of subdivisions. `level` is the nesting depth
    /// (0 = outermost) where it happened; `best` is the estimate reached.
    #[error("quadrature did not converge at level {level}: best {best}")]
    NotConverged { level: usize, best: VolumeEstimate },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn best_estimate(&self) -> Option<&VolumeEstimate> {
        match self {
            Error::NotConverged { best, .. } => Some(best),
            _ => None,
        }
    }
}
