use thiserror::Error;

/// Errors produced by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// The requested argument is not one the routine supports (e.g. a zeta
    /// argument outside the hard-coded table).
    #[error("unsupported argument for {op}: {detail}")]
    UnsupportedArgument { op: &'static str, detail: String },

    /// The dispersion model does not admit the requested operation.
    #[error("{op} is not available for the {model} dispersion model")]
    UnsupportedModel { op: &'static str, model: &'static str },

    /// Adaptive quadrature ran out of subdivisions before reaching tolerance.
    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (estimate {estimate:e}, error {error:e})"
    )]
    Quadrature {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    /// Malformed tabulated-index data.
    #[error("invalid refractive index table: {0}")]
    Table(String),

    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        op,
        detail: detail.into(),
    }
}
