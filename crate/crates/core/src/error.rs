use thiserror::Error;

/// Errors raised by the simulation and analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("collective rates are degenerate (|gamma - gamma12| = {gap:e}); use the limit path or the integrator")]
    Degenerate { gap: f64 },

    #[error("integration step {step:e} too coarse: estimated error {estimate:e} exceeds tolerance {tolerance:e}")]
    StepTooCoarse {
        step: f64,
        estimate: f64,
        tolerance: f64,
    },

    #[error("Bell outcome {outcome} unreachable (probability {probability:e})")]
    Unreachable { outcome: usize, probability: f64 },

    #[error("eigen-solver failed to converge on matrix:\n{matrix}")]
    EigenFailure { matrix: String },

    #[error("no crossing of the classical bound in [{lo}, {hi}]")]
    NoCrossing { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
