use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid potential or solver configuration. The string names the field.
    #[error("configuration error: {field}: {message}")]
    Config { field: String, message: String },

    /// A numerical procedure stopped before meeting its tolerance.
    #[error("accuracy error: {what} (best estimate {best:e}, error estimate {error:e})")]
    Accuracy { what: String, best: f64, error: f64 },

    /// The integrals defining a bound vanish or diverge.
    #[error("degenerate potential: {0}")]
    Degenerate(String),

    /// A root or threshold was not found inside the search range.
    #[error("range error: {0}")]
    Range(String),

    /// The potential tail never drops below the requested tolerance.
    #[error("truncation error: tail still above {tol:e} at r = {radius:e}")]
    Truncation { tol: f64, radius: f64 },

    /// The ODE integrator could not take a step.
    #[error("integration error: {0}")]
    Integration(String),
}

impl Error {
    pub(crate) fn config(field: &str, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.to_string(),
            message: message.into(),
        }
    }

    /// True for failures of a numerical procedure (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::Domain(_) | Error::Config { .. })
    }
}
