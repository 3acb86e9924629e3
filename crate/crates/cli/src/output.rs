use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use defect_loss::ScreenConfig;
use serde_json::Value;

use crate::{CliResult, Failure, Format};

pub struct Context {
    pub config: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Context {
    pub fn screen_config(&self) -> CliResult<ScreenConfig> {
        match &self.config {
            Some(path) => Ok(ScreenConfig::load(path)?),
            None => Ok(ScreenConfig::default()),
        }
    }

    /// The output file, or stdout.
    pub fn sink(&self) -> CliResult<Box<dyn Write>> {
        match &self.output {
            Some(path) => Ok(Box::new(BufWriter::new(create(path)?))),
            None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        }
    }
}

pub fn create(path: &Path) -> CliResult<File> {
    File::create(path).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

pub fn open(path: &Path) -> CliResult<io::BufReader<File>> {
    File::open(path)
        .map(io::BufReader::new)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

pub fn io_failure(e: io::Error) -> Failure {
    Failure::Input(format!("write failed: {e}"))
}

pub fn json_failure(e: serde_json::Error) -> Failure {
    Failure::Internal(format!("JSON serialisation failed: {e}"))
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_reader(open(path)?)
        .map_err(|e| Failure::Input(format!("{}: not valid output JSON: {e}", path.display())))
}

/// Compares two JSON trees; numbers at relative `tol`, everything else exactly.
pub fn compare(expected: &Value, actual: &Value, tol: f64, path: &str) -> Result<(), String> {
    match (expected, actual) {
        (Value::Number(a), Value::Number(b)) => {
            let (a, b) = (
                a.as_f64().unwrap_or(f64::NAN),
                b.as_f64().unwrap_or(f64::NAN),
            );
            let scale = a.abs().max(b.abs());
            if a == b || (scale > 0.0 && ((a - b) / scale).abs() <= tol) {
                Ok(())
            } else {
                Err(format!("{path}: stored {a:e}, recomputed {b:e}"))
            }
        }
        (Value::Array(a), Value::Array(b)) => {
            if a.len() != b.len() {
                return Err(format!("{path}: length {} vs {}", a.len(), b.len()));
            }
            a.iter()
                .zip(b)
                .enumerate()
                .try_for_each(|(i, (x, y))| compare(x, y, tol, &format!("{path}[{i}]")))
        }
        (Value::Object(a), Value::Object(b)) => {
            if a.len() != b.len() || a.keys().any(|k| !b.contains_key(k)) {
                return Err(format!("{path}: field sets differ"));
            }
            a.iter()
                .try_for_each(|(k, x)| compare(x, &b[k], tol, &format!("{path}.{k}")))
        }
        (a, b) if a == b => Ok(()),
        _ => Err(format!("{path}: {expected} vs {actual}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn compare_tolerates_rounding_only() {
        let a = json!({"x": [1.0, 2.0], "s": "a"});
        assert!(compare(&a, &json!({"x": [1.0, 2.0 + 1e-13], "s": "a"}), 1e-10, "$").is_ok());
        assert!(compare(&a, &json!({"x": [1.0, 2.001], "s": "a"}), 1e-10, "$").is_err());
        assert!(compare(&a, &json!({"x": [1.0, 2.0], "s": "b"}), 1e-10, "$").is_err());
        assert!(compare(&a, &json!({"x": [1.0], "s": "a"}), 1e-10, "$").is_err());
    }
}
