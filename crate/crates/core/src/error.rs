use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// `f(lo) <= target <= f(hi)` does not hold.
    #[error("target {target} is not bracketed: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    Bracket { target: f64, f_lo: f64, f_hi: f64 },

    /// An iterative method ran out of iterations; `estimate` is the best value reached.
    #[error("no convergence after {iterations} iterations (estimate {estimate}, error {error:e})")]
    Accuracy {
        estimate: f64,
        error: f64,
        iterations: usize,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub(crate) fn require_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be finite, got {x}")))
    }
}
