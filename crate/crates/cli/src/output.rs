use std::io::{self, Write};

use clap::ValueEnum;
use qaffine_core::Error;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Plain,
    Csv,
}

/// A verification failure as reported to the user.
#[derive(Clone, Debug)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
}

impl From<&Error> for Failure {
    fn from(e: &Error) -> Self {
        Failure { kind: kind(e), message: e.to_string() }
    }
}

pub fn kind(e: &Error) -> &'static str {
    match e {
        Error::NonExactDivision(_) => "NonExactDivision",
        Error::VariableMismatch { .. } => "VariableMismatch",
        Error::UnknownVariable(_) => "UnknownVariable",
        Error::DivisionByZero => "DivisionByZero",
        Error::NonMonomialInverse(_) => "NonMonomialInverse",
        Error::WeightMismatch(..) => "WeightMismatch",
        Error::InvalidPartition(_) => "InvalidPartition",
        Error::TooManyParts { .. } => "TooManyParts",
        Error::NonCancellingDenominator(_) => "NonCancellingDenominator",
        Error::EigenvalueCollision(_) => "EigenvalueCollision",
        Error::StabilityFailure(_) => "StabilityFailure",
        Error::IdentityViolation { .. } => "IdentityViolation",
        Error::IndexOutOfRange(_) => "IndexOutOfRange",
        Error::RelationViolation { .. } => "RelationViolation",
        Error::YbeViolation(_) => "YbeViolation",
        Error::ZeroParameter => "ZeroParameter",
        Error::FactorizationMismatch(_) => "FactorizationMismatch",
        Error::DimensionTooLarge(..) => "DimensionTooLarge",
        Error::TriangularityFailure(_) => "TriangularityFailure",
        Error::EigenvalueMismatch(_) => "EigenvalueMismatch",
        Error::InconsistentExpansions(_) => "InconsistentExpansions",
        Error::CutoffExceeded(_) => "CutoffExceeded",
        Error::SymmetryViolation(_) => "SymmetryViolation",
        Error::NegativePowerFound(_) => "NegativePowerFound",
        Error::MismatchBeyondScalar(_) => "MismatchBeyondScalar",
        Error::InhomogeneousVector(_) => "InhomogeneousVector",
        Error::NonVanishing(_) => "NonVanishing",
        Error::InvalidArgument(_) => "InvalidArgument",
        Error::Parse(_) => "Parse",
    }
}

/// Errors caused by the requested parameters rather than by a failed identity.
pub fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidArgument(_)
            | Error::InvalidPartition(_)
            | Error::TooManyParts { .. }
            | Error::Parse(_)
            | Error::CutoffExceeded(_)
            | Error::DimensionTooLarge(..)
            | Error::IndexOutOfRange(_)
    )
}

/// Everything a subcommand prints.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub command: String,
    pub params: Value,
    pub result: Option<Value>,
    pub error: Option<Failure>,
    pub plain: Vec<String>,
    /// Header row first.
    pub table: Vec<Vec<String>>,
}

impl Outcome {
    pub fn pass(command: &str, params: Value, result: Value, plain: Vec<String>, table: Vec<Vec<String>>) -> Self {
        Outcome { command: command.into(), params, result: Some(result), error: None, plain, table }
    }

    pub fn fail(command: &str, params: Value, e: &Error) -> Self {
        let f = Failure::from(e);
        Outcome {
            command: command.into(),
            params,
            result: None,
            plain: vec![format!("FAIL {}: {}", f.kind, f.message)],
            table: vec![
                vec!["status".into(), "kind".into(), "message".into()],
                vec!["fail".into(), f.kind.into(), f.message.clone()],
            ],
            error: Some(f),
        }
    }

    pub fn passed(&self) -> bool {
        self.error.is_none()
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("status".into(), json!(if self.passed() { "pass" } else { "fail" }));
        m.insert("params".into(), self.params.clone());
        if let Some(r) = &self.result {
            m.insert("result".into(), r.clone());
        }
        if let Some(f) = &self.error {
            m.insert("error".into(), json!({"kind": f.kind, "message": f.message}));
        }
        Value::Object(m)
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)
            }
            Format::Plain => {
                writeln!(out, "{}: {}", self.command, if self.passed() { "pass" } else { "fail" })?;
                for line in &self.plain {
                    writeln!(out, "{line}")?;
                }
                Ok(())
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                for row in &self.table {
                    w.write_record(row)?;
                }
                w.flush()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_envelope() {
        let e = Error::NonVanishing("z^1".into());
        let o = Outcome::fail("hwv fusion", json!({"cutoff": 4}), &e);
        assert!(!o.passed());
        let v = o.to_json();
        assert_eq!(v["status"], "fail");
        assert_eq!(v["error"]["kind"], "NonVanishing");
        assert!(v.get("result").is_none());
        assert!(!is_usage(&e));
        assert!(is_usage(&Error::CutoffExceeded(3)));
    }

    #[test]
    fn renderers() {
        let o = Outcome::pass(
            "x",
            json!({}),
            json!({"a": 1}),
            vec!["line".into()],
            vec![vec!["h".into()], vec!["a,b".into()]],
        );
        let mut buf = Vec::new();
        o.write(Format::Plain, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x: pass\nline\n");
        let mut buf = Vec::new();
        o.write(Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "h\n\"a,b\"\n");
        let mut buf = Vec::new();
        o.write(Format::Json, &mut buf).unwrap();
        let back: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, o.to_json());
    }
}
