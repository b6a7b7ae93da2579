use thiserror::Error;

use crate::extremal::ModulusEstimate;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid surface descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A word matrix came out with |trace| < 2, which no valid
    /// once-holed-torus representation produces.
    #[error("elliptic anomaly: word {word} has trace {trace}")]
    EllipticAnomaly { word: String, trace: f64 },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("point {0:?} of the graph of the boundary has a non-positive coordinate")]
    PositivityViolation([f64; 3]),

    #[error(
        "refinements did not converge (last relative change {:.3e})",
        .0.relative_change()
    )]
    NonConvergence(Box<ModulusEstimate>),

    #[error("linear solve failed: {0}")]
    Solver(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by bad input rather than numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidDescriptor(_)
                | Error::InvalidArgument(_)
                | Error::ResourceLimit(_)
                | Error::Unsupported(_)
                | Error::Json(_)
        )
    }
}
