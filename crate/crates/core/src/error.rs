use thiserror::Error;

/// Error type shared by every module of the toolkit.
#[derive(Debug, Error)]
pub enum IonGateError {
    /// A state picked up more population near the truncation edge than the
    /// leakage guard allows.
    #[error("truncation leakage: {0}")]
    TruncationLeakage(String),

    /// Two objects live on different composite bases.
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    /// A generator that must be Hermitian is not.
    #[error("non-Hermitian generator: max |H - H^dag| = {0:.3e}")]
    NonHermitian(f64),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("domain error: {0}")]
    DomainError(String),

    /// Root finder exhausted its restart policy.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// A gate design whose commensurability residuals exceed the acceptance
    /// threshold was handed to a consumer that requires an accepted design.
    #[error("design rejected: {0}")]
    DesignRejected(String),

    /// Phase extraction is meaningless because the final state has almost no
    /// overlap with the free-evolved reference.
    #[error("ill-conditioned phase extraction: |overlap| = {0:.3e} < 0.9")]
    IllConditioned(f64),
}

pub type Result<T> = std::result::Result<T, IonGateError>;
