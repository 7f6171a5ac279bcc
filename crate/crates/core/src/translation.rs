//! Principal translations and the translation semigroup they generate.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::algebra::{next_tuple, FiniteAlgebra};
use crate::error::{Error, Result};

/// `symbol@slot(fixed)`: the unary map obtained from `symbol` by letting the
/// argument at `slot` (1-based) vary and fixing the others to `fixed`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Descriptor {
    pub symbol: String,
    pub slot: usize,
    pub fixed: Vec<usize>,
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol)?;
        if self.fixed.is_empty() && self.slot == 1 {
            return Ok(());
        }
        write!(f, "@{}(", self.slot)?;
        for (i, x) in self.fixed.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl Descriptor {
    /// The table `x ↦ symbol(…, x, …)` in `alg`.
    pub fn table(&self, alg: &FiniteAlgebra) -> Result<Vec<usize>> {
        let idx = alg
            .signature()
            .position(&self.symbol)
            .ok_or_else(|| Error::UnknownSymbol(self.symbol.clone()))?;
        let arity = alg.table(idx).arity();
        if self.slot == 0 || self.slot > arity || self.fixed.len() + 1 != arity {
            return Err(Error::ArityMismatch {
                symbol: self.symbol.clone(),
                expected: arity,
                found: self.fixed.len() + 1,
            });
        }
        if let Some(&bad) = self.fixed.iter().find(|&&v| v >= alg.size()) {
            return Err(Error::OutOfCarrier {
                value: bad,
                size: alg.size(),
            });
        }
        Ok(principal_table(alg, idx, self.slot - 1, &self.fixed))
    }
}

fn principal_table(alg: &FiniteAlgebra, symbol: usize, slot: usize, fixed: &[usize]) -> Vec<usize> {
    let mut args = Vec::with_capacity(fixed.len() + 1);
    args.extend_from_slice(&fixed[..slot]);
    args.push(0);
    args.extend_from_slice(&fixed[slot..]);
    (0..alg.size())
        .map(|x| {
            args[slot] = x;
            alg.apply_index(symbol, &args)
        })
        .collect()
}

/// Every principal translation of `alg` in lexicographic `(symbol, slot,
/// fixed)` order, without deduplication. Symbols follow declaration order.
pub fn principal_translation_descriptors(
    alg: &FiniteAlgebra,
) -> impl Iterator<Item = (Descriptor, Vec<usize>)> + '_ {
    alg.signature()
        .symbols()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.arity > 0)
        .flat_map(move |(j, s)| {
            (0..s.arity).flat_map(move |slot| {
                let mut fixed = vec![0; s.arity - 1];
                let mut done = false;
                std::iter::from_fn(move || {
                    if done {
                        return None;
                    }
                    let table = principal_table(alg, j, slot, &fixed);
                    let d = Descriptor {
                        symbol: s.name.clone(),
                        slot: slot + 1,
                        fixed: fixed.clone(),
                    };
                    done = !next_tuple(&mut fixed, alg.size());
                    Some((d, table))
                })
            })
        })
}

/// A self-map of the carrier together with a shortest word producing it.
///
/// `word` lists principal translations in the order they are applied; the
/// identity has the empty word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Translation {
    pub table: Vec<usize>,
    pub word: Vec<Descriptor>,
}

impl Translation {
    pub fn identity(size: usize) -> Self {
        Translation {
            table: (0..size).collect(),
            word: Vec::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &x)| i == x)
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// Recomputes the table by applying the word's principal translations in order.
    pub fn evaluate_word(&self, alg: &FiniteAlgebra) -> Result<Vec<usize>> {
        let mut table: Vec<usize> = (0..alg.size()).collect();
        for d in &self.word {
            let step = d.table(alg)?;
            for x in table.iter_mut() {
                *x = step[*x];
            }
        }
        Ok(table)
    }
}

/// Prints `word ⇒ table` with the word in composition notation, so the
/// rightmost factor is applied first: `m@1(2)∘i ⇒ [2,1,0]`.
impl fmt::Display for Translation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            f.write_str("e")?;
        }
        for (i, d) in self.word.iter().rev().enumerate() {
            if i > 0 {
                f.write_str("∘")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(" ⇒ [")?;
        for (i, x) in self.table.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

/// Distinct principal translations; each table keeps its first descriptor.
pub fn principal_translations(alg: &FiniteAlgebra) -> Vec<Translation> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (d, table) in principal_translation_descriptors(alg) {
        if seen.insert(table.clone()) {
            out.push(Translation {
                table,
                word: vec![d],
            });
        }
    }
    out
}

/// The semigroup generated by the principal translations and the identity,
/// enumerated breadth-first by word length. The identity comes first.
pub fn translation_semigroup(alg: &FiniteAlgebra, cap: usize) -> Result<Vec<Translation>> {
    let generators = principal_translations(alg);
    let mut members = vec![Translation::identity(alg.size())];
    let mut seen = HashSet::from([members[0].table.clone()]);
    let too_many = || Error::SizeCapExceeded {
        what: "translation semigroup",
        limit: cap,
    };
    if cap == 0 {
        return Err(too_many());
    }
    let mut frontier = vec![0];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &m in &frontier {
            for g in &generators {
                let table: Vec<usize> = members[m].table.iter().map(|&x| g.table[x]).collect();
                if seen.contains(&table) {
                    continue;
                }
                if members.len() == cap {
                    return Err(too_many());
                }
                let mut word = members[m].word.clone();
                word.extend(g.word.iter().cloned());
                seen.insert(table.clone());
                next.push(members.len());
                members.push(Translation { table, word });
            }
        }
        frontier = next;
    }
    Ok(members)
}
