//! Algebra documents:
//!
//! ```json
//! {"signature": [{"symbol": "m", "arity": 2}, {"symbol": "e", "arity": 0}],
//!  "size": 2, "ops": {"m": [[0, 1], [1, 0]], "e": 0}}
//! ```
//!
//! An arity-`n` table is an array nested `n` deep, outermost index the first
//! argument; arity 0 is a bare integer. An optional `"labels"` array names
//! the elements for display.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::signature::Signature;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolEntry {
    pub symbol: String,
    pub arity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub signature: Vec<SymbolEntry>,
    pub size: usize,
    pub ops: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidAlgebra(msg.into())
}

impl AlgebraDocument {
    pub fn from_algebra(alg: &FiniteAlgebra) -> Self {
        let signature = alg
            .signature()
            .symbols()
            .iter()
            .map(|s| SymbolEntry {
                symbol: s.name.clone(),
                arity: s.arity,
            })
            .collect();
        let ops = alg
            .signature()
            .symbols()
            .iter()
            .zip(alg.tables())
            .map(|(s, t)| (s.name.clone(), nest(t.values(), alg.size(), s.arity)))
            .collect();
        AlgebraDocument {
            signature,
            size: alg.size(),
            ops,
            labels: alg.labels().map(<[String]>::to_vec),
        }
    }

    pub fn to_algebra(&self) -> Result<FiniteAlgebra> {
        let sig = Signature::new(self.signature.iter().map(|e| (e.symbol.clone(), e.arity)))?;
        if let Some(extra) = self.ops.keys().find(|k| sig.position(k).is_none()) {
            return Err(invalid(format!("table for undeclared symbol `{extra}`")));
        }
        let tables = sig
            .symbols()
            .iter()
            .map(|s| {
                let value = self
                    .ops
                    .get(&s.name)
                    .ok_or_else(|| invalid(format!("missing table for `{}`", s.name)))?;
                let mut out = Vec::new();
                flatten(value, self.size, s.arity, &s.name, &mut out)?;
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        let alg = FiniteAlgebra::new(sig, self.size, tables)?;
        match &self.labels {
            Some(labels) => alg.with_labels(labels.clone()),
            None => Ok(alg),
        }
    }
}

fn nest(values: &[usize], k: usize, arity: usize) -> Value {
    if arity == 0 {
        return Value::from(values[0]);
    }
    let stride = values.len() / k;
    Value::Array(
        values
            .chunks(stride.max(1))
            .map(|chunk| nest(chunk, k, arity - 1))
            .collect(),
    )
}

fn flatten(value: &Value, k: usize, arity: usize, name: &str, out: &mut Vec<usize>) -> Result<()> {
    if arity == 0 {
        let v = value.as_u64().ok_or_else(|| {
            invalid(format!(
                "table for `{name}`: expected an element, found {value}"
            ))
        })?;
        out.push(usize::try_from(v).map_err(|_| invalid("element out of range"))?);
        return Ok(());
    }
    let rows = value.as_array().ok_or_else(|| {
        invalid(format!(
            "table for `{name}`: expected an array, found {value}"
        ))
    })?;
    if rows.len() != k {
        return Err(invalid(format!(
            "table for `{name}`: expected {k} rows, found {}",
            rows.len()
        )));
    }
    rows.iter()
        .try_for_each(|row| flatten(row, k, arity - 1, name, out))
}

pub fn algebra_from_json(text: &str) -> Result<FiniteAlgebra> {
    let doc: AlgebraDocument =
        serde_json::from_str(text).map_err(|e| invalid(format!("malformed document: {e}")))?;
    doc.to_algebra()
}

pub fn algebra_to_json(alg: &FiniteAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraDocument::from_algebra(alg)).expect("documents serialize")
}
