use std::path::PathBuf;

use thiserror::Error;

use crate::material::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty chemical formula")]
    EmptyFormula,
    #[error("unrecognized element symbol `{0}`")]
    UnknownElement(String),
    #[error("invalid count `{count}` for element `{element}`")]
    InvalidCount { element: String, count: String },
    #[error("malformed formula `{formula}` at byte {position}")]
    MalformedFormula { formula: String, position: usize },

    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("{name} must be non-negative and finite, got {value}")]
    Negative { name: &'static str, value: f64 },
    #[error("{0}")]
    Domain(String),
    #[error("invalid material record: {}", format_violations(.0))]
    Invalid(Vec<Violation>),

    #[error("singular point z = {z} lies on the support boundary [0, {mu_max}]")]
    BoundarySingularity { z: f64, mu_max: f64 },
    #[error(
        "quadrature did not converge: estimated error {error:e} after {intervals} subintervals"
    )]
    Quadrature { error: f64, intervals: usize },
    #[error("acoustic limit did not converge: {0}")]
    NotConverged(String),

    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Stream(#[from] std::io::Error),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

/// Checks `value > 0` and finite.
pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}

/// Checks `value >= 0` and finite.
pub(crate) fn non_negative(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::Negative { name, value })
    }
}
