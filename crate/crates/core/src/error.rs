use thiserror::Error;

use crate::inertia::Inertia;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),

    #[error("dimension mismatch in {op}: {detail}")]
    Dimension { op: &'static str, detail: String },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not Hermitian")]
    NotHermitian,

    #[error("invalid inner product: {0}")]
    InvalidInnerProduct(String),

    #[error("subspace containment violated: {0}")]
    Containment(String),

    #[error("pair is not H-expansive (defect inertia {inertia})")]
    NotExpansive { inertia: Inertia },

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("invalid transform: {0}")]
    InvalidTransform(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("structural identity failed: {}", .failed.join(", "))]
    TheoremViolation { failed: Vec<String> },

    #[error("I + K is singular for this skew-Hermitian sample; resample")]
    CayleySingular,

    #[error("generation failed for seed {seed} after {attempts} attempts")]
    GenerationFailure { seed: u64, attempts: usize },
}

impl Error {
    pub(crate) fn dim(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Dimension {
            op,
            detail: detail.into(),
        }
    }
}
