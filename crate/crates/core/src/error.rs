use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate interpolation nodes")]
    DegenerateNodes,
    #[error("singular system")]
    SingularSystem,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("instance exceeds desk scale: {0}")]
    ExceedsDeskScale(String),
    #[error("not stabilized: normalized counts kept changing up to d = {0}")]
    NotStabilized(u32),
    #[error("degree not confirmed at r_max = {0}")]
    DegreeNotConfirmed(u32),
    #[error("normalization unpinned: {0}")]
    NormalizationUnpinned(String),
    #[error("beta cross-check failed: {0}")]
    BetaCrossCheck(String),
    #[error("requires concrete q")]
    RequiresConcreteQ,
    #[error("precision exhaustion during type classification")]
    PrecisionExhausted,
    #[error("no integral structure: Gram matrix is not integral hermitian")]
    NotIntegral,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown suite name: {0}")]
    UnknownSuite(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
