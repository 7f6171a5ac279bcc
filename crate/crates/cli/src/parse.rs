//! Small argument formats: element lists, maps, pairs and assignments.

use finalg_core::{FiniteAlgebra, VarAssignment};

use crate::report::CliError;

fn usage(msg: String) -> CliError {
    CliError::Usage(msg)
}

fn strip_brackets(text: &str) -> &str {
    let t = text.trim();
    t.strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .unwrap_or(t)
}

fn items(text: &str) -> Vec<&str> {
    let inner = strip_brackets(text).trim();
    if inner.is_empty() {
        return Vec::new();
    }
    inner.split(',').map(str::trim).collect()
}

/// An element given by index or by label.
pub fn element(alg: &FiniteAlgebra, text: &str) -> Result<usize, CliError> {
    if let Ok(x) = text.parse::<usize>() {
        if x < alg.size() {
            return Ok(x);
        }
        return Err(finalg_core::Error::OutOfCarrier {
            value: x,
            size: alg.size(),
        }
        .into());
    }
    alg.labels()
        .and_then(|ls| ls.iter().position(|l| l == text))
        .ok_or_else(|| usage(format!("`{text}` is not an element")))
}

/// `0,2` or `[0,2]`.
pub fn elements(alg: &FiniteAlgebra, text: &str) -> Result<Vec<usize>, CliError> {
    items(text).into_iter().map(|e| element(alg, e)).collect()
}

/// `[z0,z1,…]` with natural-number values.
pub fn map_values(text: &str) -> Result<Vec<usize>, CliError> {
    items(text)
        .into_iter()
        .map(|e| {
            e.parse::<usize>()
                .map_err(|_| usage(format!("`{e}` is not a natural number")))
        })
        .collect()
}

/// `0:1,2:3`.
pub fn pairs(alg: &FiniteAlgebra, text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    items(text)
        .into_iter()
        .map(|p| {
            let (a, b) = p
                .split_once(':')
                .ok_or_else(|| usage(format!("`{p}` is not a pair `a:b`")))?;
            Ok((element(alg, a.trim())?, element(alg, b.trim())?))
        })
        .collect()
}

/// `v1=0,v2=∞`.
pub fn assignment(alg: &FiniteAlgebra, text: &str) -> Result<VarAssignment, CliError> {
    let mut out = VarAssignment::new();
    for item in items(text) {
        let (var, value) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("`{item}` is not a binding `vN=x`")))?;
        let index = var
            .trim()
            .strip_prefix('v')
            .and_then(|d| d.parse::<u32>().ok())
            .filter(|&i| i > 0)
            .ok_or_else(|| usage(format!("`{var}` is not a variable")))?;
        out.set(index, element(alg, value.trim())?);
    }
    Ok(out)
}
