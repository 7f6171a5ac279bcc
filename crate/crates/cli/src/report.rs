use std::fmt;

use finalg_core::{Error, FiniteAlgebra, VarAssignment};
use serde_json::{Map, Value};

pub const SCHEMA: u64 = 1;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::SizeCapExceeded { .. }) => 3,
            CliError::Core(
                Error::NotACongruence(_) | Error::NotAGroup(_) | Error::NotAHomomorphism { .. },
            ) => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        let CliError::Core(e) = self else {
            return "usage";
        };
        match e {
            Error::Syntax { .. } => "syntax",
            Error::DuplicateSymbol(_) => "duplicate_symbol",
            Error::NegativeArity { .. } => "negative_arity",
            Error::UnknownSymbol(_) => "unknown_symbol",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::UnboundVariable(_) => "unbound_variable",
            Error::SignatureMismatch(_) => "signature_mismatch",
            Error::OutOfCarrier { .. } => "out_of_carrier",
            Error::SizeMismatch { .. } => "size_mismatch",
            Error::SizeCapExceeded { .. } => "cap_exceeded",
            Error::NotACongruence(_) => "not_a_congruence",
            Error::NotAGroup(_) => "not_a_group",
            Error::NotAHomomorphism { .. } => "not_a_homomorphism",
            Error::MismatchedBase => "mismatched_base",
            Error::InvalidAlgebra(_) => "invalid_algebra",
            Error::InvalidPartition(_) => "invalid_partition",
            Error::InvalidMap(_) => "invalid_map",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    CapExceeded,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::CapExceeded => 3,
        }
    }

    pub fn verdict(passed: bool) -> Status {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// What a command produced: a machine-readable body, a human rendering and
/// the status that decides the exit code.
pub struct Outcome {
    pub status: Status,
    pub body: Map<String, Value>,
    pub human: String,
}

impl Outcome {
    pub fn new(status: Status, body: Value, human: String) -> Self {
        let Value::Object(body) = body else {
            panic!("report bodies are objects");
        };
        Outcome {
            status,
            body,
            human,
        }
    }
}

pub fn envelope(command: &str, mut body: Map<String, Value>) -> String {
    body.insert("schema".into(), SCHEMA.into());
    body.insert("command".into(), command.into());
    let mut text = serde_json::to_string_pretty(&Value::Object(body)).expect("reports serialize");
    text.push('\n');
    text
}

pub fn error_envelope(command: &str, err: &CliError) -> String {
    let mut body = Map::new();
    body.insert(
        "error".into(),
        serde_json::json!({ "kind": err.kind(), "message": err.to_string() }),
    );
    body.insert("exit_code".into(), err.exit_code().into());
    envelope(command, body)
}

pub fn verdict_str(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}

/// `{"v1": 3, …}`.
pub fn assignment_json(a: &VarAssignment) -> Value {
    Value::Object(
        a.0.iter()
            .map(|(v, x)| (format!("v{v}"), Value::from(*x)))
            .collect(),
    )
}

/// `v1=∞, v2=0`, using element labels when the algebra has them.
pub fn assignment_human(alg: &FiniteAlgebra, a: &VarAssignment) -> String {
    a.0.iter()
        .map(|(v, x)| format!("v{v}={}", alg.label(*x)))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn elements_human(alg: &FiniteAlgebra, xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(|&x| alg.label(x)).collect();
    format!("{{{}}}", parts.join(","))
}
