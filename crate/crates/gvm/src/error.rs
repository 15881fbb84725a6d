use thiserror::Error;

/// Errors produced by the gvm library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("bessel argument {0} exceeds the overflow guard (z <= 700)")]
    BesselOverflow(f64),

    #[error("normalizing-constant series failed to converge within {0} terms")]
    SeriesNonConvergence(usize),

    #[error("unsupported case: {0}")]
    UnsupportedCase(String),

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("prior variant does not match test kind: {0}")]
    PriorMismatch(String),

    #[error("degenerate Monte Carlo estimate: every draw fell inside the null neighbourhood")]
    DegenerateEstimate,

    #[error("rejection sampler exceeded {0} consecutive rejections")]
    RejectionCap(u64),

    #[error("insufficient data: need at least {needed}, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("unknown study case: {0}")]
    UnknownCase(String),

    #[error("replicate {index} failed: {source}")]
    Replicate {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
