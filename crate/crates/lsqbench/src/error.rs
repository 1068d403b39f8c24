//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Operand shapes do not conform for the requested operation.
    #[error("shape mismatch in {op}: {details}")]
    Shape { op: &'static str, details: String },

    /// The Jacobi SVD did not reach its off-diagonal tolerance within the
    /// sweep cap.
    #[error(
        "svd did not converge after {sweeps} sweeps \
         (worst off-diagonal ratio {worst_ratio:.3e})"
    )]
    SvdNonConvergence { sweeps: usize, worst_ratio: f64 },

    /// A matrix is singular or numerically not positive definite.
    #[error("singular matrix: {0}")]
    Singular(String),

    /// Input is degenerate (empty, all-zero, too few rows, ...).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A file could not be parsed; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A file is missing required columns or has an unexpected layout.
    #[error("schema error: {0}")]
    Schema(String),

    /// Invalid option or parameter combination.
    #[error("configuration error: {0}")]
    Config(String),

    /// An I/O failure, annotated with the path involved.
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn shape(op: &'static str, details: impl Into<String>) -> Self {
        Error::Shape {
            op,
            details: details.into(),
        }
    }

    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
