use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the function's domain.
    #[error("domain error: {0}")]
    Domain(&'static str),

    /// A parameter set violates a structural invariant.
    #[error("parameter error: {0}")]
    Parameter(&'static str),

    /// Iterative refinement ran out of budget before the tolerance was met.
    #[error("no convergence (last estimate {last:e}, previous {previous:e})")]
    Convergence { last: f64, previous: f64 },

    /// Both relay links vanish, so the high-SNR gain is undefined.
    #[error("degenerate channel: {0}")]
    DegenerateChannel(&'static str),

    /// The closed form's derivation does not cover these parameters.
    #[error("outside the closed-form region: {0}")]
    ParameterRegion(&'static str),

    /// The closed form exists only for symmetric relay links.
    #[error("unsupported region: {0}")]
    UnsupportedRegion(&'static str),

    /// A scenario configuration failed validation.
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
