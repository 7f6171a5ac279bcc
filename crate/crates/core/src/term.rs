//! Terms over a signature, their parser, occurrence counts and evaluation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::signature::{is_name, variable_index, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TermKind {
    /// `v<index>`, index ≥ 1.
    Variable(u32),
    Constant(String),
    Apply(String, Vec<Term>),
}

/// A term with its variable occurrence counts cached at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    kind: TermKind,
    occurrences: BTreeMap<u32, u32>,
}

impl Term {
    /// # Panics
    /// If `index` is zero.
    pub fn var(index: u32) -> Term {
        assert!(index > 0, "variable indices start at 1");
        Term {
            kind: TermKind::Variable(index),
            occurrences: BTreeMap::from([(index, 1)]),
        }
    }

    pub fn constant(symbol: impl Into<String>) -> Term {
        Term {
            kind: TermKind::Constant(symbol.into()),
            occurrences: BTreeMap::new(),
        }
    }

    pub fn apply(symbol: impl Into<String>, children: Vec<Term>) -> Term {
        let mut occurrences = BTreeMap::new();
        for child in &children {
            for (&v, &n) in &child.occurrences {
                *occurrences.entry(v).or_insert(0) += n;
            }
        }
        Term {
            kind: TermKind::Apply(symbol.into(), children),
            occurrences,
        }
    }

    pub fn kind(&self) -> &TermKind {
        &self.kind
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        self.occurrences.keys().copied().collect()
    }

    pub fn occurrences(&self, var: u32) -> u32 {
        self.occurrences.get(&var).copied().unwrap_or(0)
    }

    /// Checks arities and symbol membership against `sig`.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        match &self.kind {
            TermKind::Variable(_) => Ok(()),
            TermKind::Constant(name) => expect_arity(sig, name, 0),
            TermKind::Apply(name, children) => {
                expect_arity(sig, name, children.len())?;
                children.iter().try_for_each(|c| c.check(sig))
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match &self.kind {
            TermKind::Apply(_, children) => 1 + children.iter().map(Term::size).sum::<usize>(),
            _ => 1,
        }
    }
}

fn expect_arity(sig: &Signature, name: &str, found: usize) -> Result<()> {
    match sig.arity(name) {
        None => Err(Error::UnknownSymbol(name.to_string())),
        Some(expected) if expected != found => Err(Error::ArityMismatch {
            symbol: name.to_string(),
            expected,
            found,
        }),
        Some(_) => Ok(()),
    }
}

/// Set of variables of `t`.
pub fn vars_of(t: &Term) -> BTreeSet<u32> {
    t.vars()
}

/// Number of occurrences of `v` in `t`.
pub fn occurrences(t: &Term, v: u32) -> u32 {
    t.occurrences(v)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            TermKind::Variable(i) => write!(f, "v{i}"),
            TermKind::Constant(name) => f.write_str(name),
            TermKind::Apply(name, children) => {
                write!(f, "{name}(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token<'a> {
    Name(&'a str),
    Open,
    Close,
    Comma,
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Result<Option<(usize, Token<'a>)>> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let Some(c) = rest.chars().next() else {
            return Ok(None);
        };
        let tok = match c {
            '(' => Token::Open,
            ')' => Token::Close,
            ',' => Token::Comma,
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let len = rest
                    .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                    .unwrap_or(rest.len());
                Token::Name(&rest[..len])
            }
            other => {
                return Err(Error::Syntax {
                    pos: self.pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        Ok(Some((self.pos, tok)))
    }

    fn bump(&mut self, tok: Token<'_>) {
        self.pos += match tok {
            Token::Name(s) => s.len(),
            _ => 1,
        };
    }

    fn next(&mut self) -> Result<Option<(usize, Token<'a>)>> {
        let t = self.peek()?;
        if let Some((_, tok)) = t {
            self.bump(tok);
        }
        Ok(t)
    }
}

fn unexpected(found: Option<(usize, Token<'_>)>, end: usize, wanted: &str) -> Error {
    match found {
        Some((pos, tok)) => Error::Syntax {
            pos,
            message: format!("expected {wanted}, found {tok:?}"),
        },
        None => Error::Syntax {
            pos: end,
            message: format!("expected {wanted}, found end of input"),
        },
    }
}

/// Parses a term in fully parenthesized prefix notation, e.g. `m(v1,i(v1))`.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term> {
    let mut lexer = Lexer { text, pos: 0 };
    let term = parse_inner(&mut lexer, sig)?;
    match lexer.next()? {
        None => Ok(term),
        found => Err(unexpected(found, text.len(), "end of input")),
    }
}

fn parse_inner(lexer: &mut Lexer<'_>, sig: &Signature) -> Result<Term> {
    let end = lexer.text.len();
    let (pos, name) = match lexer.next()? {
        Some((pos, Token::Name(name))) if is_name(name) => (pos, name),
        found => return Err(unexpected(found, end, "a variable or symbol")),
    };
    let has_args = matches!(lexer.peek()?, Some((_, Token::Open)));

    if let Some(index) = variable_index(name) {
        if has_args {
            return Err(Error::Syntax {
                pos,
                message: format!("variable `{name}` cannot take arguments"),
            });
        }
        return Ok(Term::var(index));
    }

    let arity = sig
        .arity(name)
        .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
    if !has_args {
        return if arity == 0 {
            Ok(Term::constant(name))
        } else {
            Err(Error::ArityMismatch {
                symbol: name.to_string(),
                expected: arity,
                found: 0,
            })
        };
    }

    lexer.next()?; // `(`
    let mut children = vec![parse_inner(lexer, sig)?];
    loop {
        match lexer.next()? {
            Some((_, Token::Comma)) => children.push(parse_inner(lexer, sig)?),
            Some((_, Token::Close)) => break,
            found => return Err(unexpected(found, end, "`,` or `)`")),
        }
    }
    if children.len() != arity {
        return Err(Error::ArityMismatch {
            symbol: name.to_string(),
            expected: arity,
            found: children.len(),
        });
    }
    Ok(Term::apply(name, children))
}

/// Which occurrence-count hypothesis an identity `p ≈ q` satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PreservationClass {
    /// Every variable occurs at most once on each side.
    Linear,
    /// Every variable occurs at most once on one side and at most twice on the other.
    LinearQuadratic,
    Unclassified,
}

impl fmt::Display for PreservationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PreservationClass::Linear => "Linear",
            PreservationClass::LinearQuadratic => "LinearQuadratic",
            PreservationClass::Unclassified => "Unclassified",
        })
    }
}

pub fn is_linear(p: &Term, q: &Term) -> bool {
    p.vars()
        .union(&q.vars())
        .all(|&v| p.occurrences(v) <= 1 && q.occurrences(v) <= 1)
}

pub fn is_linear_quadratic(p: &Term, q: &Term) -> bool {
    p.vars().union(&q.vars()).all(|&v| {
        let (a, b) = (p.occurrences(v), q.occurrences(v));
        (a <= 1 && b <= 2) || (a <= 2 && b <= 1)
    })
}

pub fn classify_identity(p: &Term, q: &Term) -> PreservationClass {
    if is_linear(p, q) {
        PreservationClass::Linear
    } else if is_linear_quadratic(p, q) {
        PreservationClass::LinearQuadratic
    } else {
        PreservationClass::Unclassified
    }
}

/// An identity `lhs ≈ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Identity { lhs, rhs }
    }

    /// Parses `p = q` (also accepts `≈`).
    pub fn parse(text: &str, sig: &Signature) -> Result<Self> {
        let split = text
            .find('≈')
            .map(|i| (i, '≈'.len_utf8()))
            .or_else(|| text.find('=').map(|i| (i, 1)));
        let Some((at, width)) = split else {
            return Err(Error::Syntax {
                pos: 0,
                message: "expected `p = q`".into(),
            });
        };
        let lhs = parse_term(&text[..at], sig)?;
        let rhs = parse_term(&text[at + width..], sig).map_err(|e| match e {
            Error::Syntax { pos, message } => Error::Syntax {
                pos: pos + at + width,
                message,
            },
            e => e,
        })?;
        Ok(Identity { lhs, rhs })
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        self.lhs.vars().union(&self.rhs.vars()).copied().collect()
    }

    pub fn class(&self) -> PreservationClass {
        classify_identity(&self.lhs, &self.rhs)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Values for variables, keyed by variable index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VarAssignment(pub BTreeMap<u32, usize>);

impl VarAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, var: u32) -> Option<usize> {
        self.0.get(&var).copied()
    }

    pub fn set(&mut self, var: u32, value: usize) {
        self.0.insert(var, value);
    }
}

impl<const N: usize> From<[(u32, usize); N]> for VarAssignment {
    fn from(pairs: [(u32, usize); N]) -> Self {
        VarAssignment(pairs.into_iter().collect())
    }
}

impl fmt::Display for VarAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, x)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "v{v}={x}")?;
        }
        Ok(())
    }
}

/// A term with symbols resolved to operation indices of one algebra and
/// variables resolved to positions in a value slice.
#[derive(Debug, Clone)]
pub(crate) enum Compiled {
    Slot(usize),
    Op(usize, Vec<Compiled>),
}

impl Compiled {
    pub(crate) fn new(
        t: &Term,
        alg: &FiniteAlgebra,
        slot: &impl Fn(u32) -> Option<usize>,
    ) -> Result<Self> {
        let resolve = |name: &str, found: usize| -> Result<usize> {
            let idx = alg.signature().position(name).ok_or_else(|| {
                Error::SignatureMismatch(format!(
                    "symbol `{name}` is not in the algebra's signature"
                ))
            })?;
            let expected = alg.signature().symbols()[idx].arity;
            if expected != found {
                return Err(Error::SignatureMismatch(format!(
                    "symbol `{name}` has arity {expected} in the algebra, {found} in the term"
                )));
            }
            Ok(idx)
        };
        Ok(match &t.kind {
            TermKind::Variable(v) => Compiled::Slot(slot(*v).ok_or(Error::UnboundVariable(*v))?),
            TermKind::Constant(name) => Compiled::Op(resolve(name, 0)?, Vec::new()),
            TermKind::Apply(name, children) => Compiled::Op(
                resolve(name, children.len())?,
                children
                    .iter()
                    .map(|c| Compiled::new(c, alg, slot))
                    .collect::<Result<_>>()?,
            ),
        })
    }

    pub(crate) fn eval(&self, alg: &FiniteAlgebra, values: &[usize]) -> usize {
        match self {
            Compiled::Slot(i) => values[*i],
            Compiled::Op(op, children) => {
                let k = alg.size();
                let index = children
                    .iter()
                    .fold(0, |acc, c| acc * k + c.eval(alg, values));
                alg.table(*op).values()[index]
            }
        }
    }
}

/// Value of `t` in `alg` under the assignment `a`.
pub fn evaluate(t: &Term, alg: &FiniteAlgebra, a: &VarAssignment) -> Result<usize> {
    let vars: Vec<u32> = t.vars().into_iter().collect();
    let mut values = Vec::with_capacity(vars.len());
    for &v in &vars {
        let x = a.get(v).ok_or(Error::UnboundVariable(v))?;
        if x >= alg.size() {
            return Err(Error::OutOfCarrier {
                value: x,
                size: alg.size(),
            });
        }
        values.push(x);
    }
    let compiled = Compiled::new(t, alg, &|v| vars.binary_search(&v).ok())?;
    Ok(compiled.eval(alg, &values))
}
