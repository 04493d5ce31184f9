use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degree error: {op} needs k >= {min}, got k = {k}")]
    Degree { op: &'static str, min: usize, k: usize },

    #[error("{what} did not converge after {iterations} iterations")]
    Convergence {
        what: &'static str,
        iterations: usize,
        /// Whatever was computed before the cap was hit, as `(re, im)` pairs.
        partial: Vec<(f64, f64)>,
    },

    #[error("numerical consistency error: {0}")]
    NumericalConsistency(String),

    #[error("unsupported companion power {0}; only 2 and 3 are defined")]
    UnsupportedPower(usize),

    #[error("negative discriminant {value:e} in {op}")]
    NegativeDiscriminant { op: &'static str, value: f64 },

    #[error("monicity error: leading coefficient must be the identity")]
    Monicity,

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
