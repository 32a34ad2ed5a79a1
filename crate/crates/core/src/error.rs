use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Parameter value outside the closed working interval.
    #[error("s = {value} lies outside the domain [{lo}, {hi}]")]
    Domain { value: f64, lo: f64, hi: f64 },

    /// A family or surface invariant fails (positivity, nondegenerate normal, ...).
    #[error("admissibility violated: {0}")]
    Admissibility(String),

    /// The curve or surface description itself is malformed.
    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("finite-difference step {h} is unusable: {reason}")]
    Step { h: f64, reason: String },

    #[error("need at least {needed} non-harmonic samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}
