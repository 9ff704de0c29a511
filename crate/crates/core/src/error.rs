use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the admissible parameter set.
    #[error("validation error: {0}")]
    Validation(String),

    #[error("domain error: {what} = {value} ({reason})")]
    Domain {
        what: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// Adaptive quadrature gave up; `estimate` is the best value found.
    #[error(
        "numerical accuracy: {what} did not converge (estimate {estimate:e}, error {abs_err:e})"
    )]
    Accuracy {
        what: String,
        estimate: f64,
        abs_err: f64,
    },

    #[error("Fock truncation: population {tail:e} in the top levels of dim {dim} exceeds {tol:e}; increase the dimension")]
    Truncation { dim: usize, tail: f64, tol: f64 },

    #[error("integration failure at gamma_t = {time}: {reason}")]
    Integration { time: f64, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            what,
            value,
            reason,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Domain { .. } => 2,
            Error::Accuracy { .. } | Error::Truncation { .. } | Error::Integration { .. } => 3,
            Error::Io(_) | Error::Csv(_) | Error::Json(_) => 1,
        }
    }
}
