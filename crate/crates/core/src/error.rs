use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error)]
pub enum RlwError {
    /// Invalid grid, model, scenario or solver configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// Two grid functions (or a grid function and a grid) disagree in length.
    #[error("shape mismatch: expected {expected} values, found {found}")]
    Shape { expected: usize, found: usize },

    /// A quantity that should vanish in exact arithmetic is too large.
    #[error("numerical consistency error: {0}")]
    Numerical(String),

    /// The iterative linear solver did not reach its tolerance.
    #[error("linear solver did not converge after {iterations} iterations (relative residual {residual:.3e})")]
    Solver { iterations: usize, residual: f64 },

    /// Dense factorization of the step matrix failed.
    #[error("step matrix is singular")]
    Singular,

    /// The nonlinear startup iteration did not settle.
    #[error("startup iteration did not converge after {iterations} sweeps (last increment {increment:.3e})")]
    Startup { iterations: usize, increment: f64 },

    /// A time step failed; carries the index of the step being computed.
    #[error("step {step} failed: {source}")]
    Step {
        step: usize,
        #[source]
        source: Box<RlwError>,
    },

    /// Config text could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, RlwError>;

impl RlwError {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        RlwError::Config(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        RlwError::Io {
            path: path.into(),
            source,
        }
    }
}
