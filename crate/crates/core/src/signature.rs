//! Finite signatures: named operation symbols with arities.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

/// A finite set of operation symbols, kept in declaration order.
///
/// Equality ignores declaration order: two signatures are equal when they
/// assign the same arities to the same names.
#[derive(Debug, Clone, Default)]
pub struct Signature {
    symbols: Vec<Symbol>,
    index: HashMap<String, usize>,
}

impl Signature {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut sig = Signature::default();
        for (name, arity) in symbols {
            sig.push(name.into(), arity)?;
        }
        Ok(sig)
    }

    /// The group signature `{m/2, i/1, e/0}`.
    pub fn group() -> Self {
        Signature::new([("m", 2), ("i", 1), ("e", 0)]).expect("static signature")
    }

    fn push(&mut self, name: String, arity: usize) -> Result<()> {
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateSymbol(name));
        }
        self.index.insert(name.clone(), self.symbols.len());
        self.symbols.push(Symbol { name, arity });
        Ok(())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.position(name).map(|i| self.symbols[i].arity)
    }

    /// The set of arities that occur.
    pub fn spectrum(&self) -> BTreeSet<usize> {
        self.symbols.iter().map(|s| s.arity).collect()
    }

    /// Symbols of the given arity, in declaration order.
    pub fn of_arity(&self, arity: usize) -> impl Iterator<Item = &Symbol> {
        self.symbols.iter().filter(move |s| s.arity == arity)
    }
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.symbols.len() == other.symbols.len()
            && self
                .symbols
                .iter()
                .all(|s| other.arity(&s.name) == Some(s.arity))
    }
}

impl Eq for Signature {}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}/{}", s.name, s.arity)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_signature(s)
    }
}

pub(crate) fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Variable names `v1`, `v2`, … are not available as symbol names.
pub(crate) fn variable_index(s: &str) -> Option<u32> {
    let digits = s.strip_prefix('v')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Parses whitespace-separated `name/arity` entries.
pub fn parse_signature(text: &str) -> Result<Signature> {
    let mut sig = Signature::default();
    for (pos, entry) in split_whitespace_indices(text) {
        let Some(slash) = entry.find('/') else {
            return Err(Error::Syntax {
                pos,
                message: format!("expected `name/arity`, found `{entry}`"),
            });
        };
        let (name, arity) = (&entry[..slash], &entry[slash + 1..]);
        if !is_name(name) {
            return Err(Error::Syntax {
                pos,
                message: format!("invalid symbol name `{name}`"),
            });
        }
        if variable_index(name).is_some() {
            return Err(Error::Syntax {
                pos,
                message: format!("`{name}` is reserved for variables"),
            });
        }
        let arity_pos = pos + slash + 1;
        if let Some(rest) = arity.strip_prefix('-') {
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::NegativeArity {
                    symbol: name.to_string(),
                    pos: arity_pos,
                });
            }
        }
        if arity.is_empty() || !arity.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Syntax {
                pos: arity_pos,
                message: format!("invalid arity `{arity}`"),
            });
        }
        let arity: usize = arity.parse().map_err(|_| Error::Syntax {
            pos: arity_pos,
            message: "arity out of range".into(),
        })?;
        sig.push(name.to_string(), arity)?;
    }
    Ok(sig)
}

fn split_whitespace_indices(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split(char::is_whitespace)
        .filter(|s| !s.is_empty())
        .map(move |s| (s.as_ptr() as usize - text.as_ptr() as usize, s))
}
