//! Structured outcome of a verification.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

/// What a passing check established. Failing checks return an
/// [`Error`](crate::Error) carrying the witness instead.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Value,
    /// Number of elementary identities compared.
    pub comparisons: usize,
    /// Free-form findings (recorded scalars, dimensions, ...).
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, params: Value) -> Self {
        CheckReport { check: check.into(), params, comparisons: 0, notes: Vec::new() }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn count(&mut self, n: usize) {
        self.comparisons += n;
    }
}

/// Runs `f` and returns its value with the elapsed wall time in seconds.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed().as_secs_f64())
}
