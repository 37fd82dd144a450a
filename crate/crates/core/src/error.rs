use thiserror::Error;

use crate::coordinates::Wedge;

/// Errors raised by the toolkit. Numerical payloads are reported in `f64`
/// regardless of the scalar type used for the computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("event lies outside the right Rindler wedge (classified as {0:?})")]
    Wedge(Wedge),

    #[error("tolerance not reached: estimate {estimate:e} with error {error:e} (requested {requested:e})")]
    Tolerance { estimate: f64, error: f64, requested: f64 },

    #[error("extrapolation did not converge: {message}; sequence {sequence:?}")]
    Extrapolation { message: String, sequence: Vec<f64> },

    #[error("truncation error: {0}")]
    Truncation(String),

    #[error("integral is not finite: {0}")]
    Integrability(String),

    #[error("constants file: {0}")]
    Constants(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
