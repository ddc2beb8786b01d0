use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },

    #[error("grid mismatch: {left} nodes vs {right} nodes")]
    Shape { left: usize, right: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("log-integrability violated: {0}")]
    LogIntegrability(String),

    /// Kernel quadrature is not trusted this close to the circle.
    #[error("radius {r} exceeds the quadrature limit {limit}; use the spectral extension")]
    AccuracyRefusal { r: f64, limit: f64 },

    #[error("numerical inconsistency: {0}")]
    Numerical(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("precondition `{check}` failed: {detail}")]
    Precondition { check: &'static str, detail: String },

    #[error("spec parse error at `{path}`: {message}")]
    Parse { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Parameter {
            name,
            reason: reason.into(),
        }
    }
}
