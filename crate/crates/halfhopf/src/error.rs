use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("bandwidth {bandwidth} needs at least {required} uniform samples, got {got}")]
    InsufficientSamples {
        bandwidth: usize,
        required: usize,
        got: usize,
    },

    #[error(
        "samples are not band-limited to {bandwidth}: out-of-band energy fraction {fraction:.3e}"
    )]
    AliasingDetected { bandwidth: usize, fraction: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("truncation tail fraction {fraction:.3e} exceeds limit {limit:.3e} at bandwidth {bandwidth}")]
    TailMass {
        fraction: f64,
        limit: f64,
        bandwidth: usize,
    },

    #[error("pointwise projection undefined: sample magnitude {magnitude:.3e} below threshold")]
    ProjectionUndefined { magnitude: f64 },

    #[error("quadrature resolution {got} below required {required}")]
    QuadratureResolution { got: usize, required: usize },

    #[error("estimate invariant violated: {detail}")]
    InvariantViolation { detail: String },

    #[error("gradient step rejected: energy still increases at step {step:.3e}")]
    StepTooLarge { step: f64 },

    #[error("non-finite value in {context}")]
    NonFinite { context: String },

    #[error("schema violation in {context}: {detail}")]
    Schema { context: String, detail: String },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
