//! Mal'cev operations `μ(y,y,x) = μ(x,y,y) = x`: detection, exhaustive
//! search, the group operation `xy⁻¹z`, and Mal'cev terms via the ternary clone.

use std::collections::HashSet;

use serde::Serialize;

use crate::algebra::{group_axioms, in_equational_class, next_tuple, FiniteAlgebra};
use crate::check::Check;
use crate::error::{Error, Result};

#[inline]
fn at(k: usize, x: usize, y: usize, z: usize) -> usize {
    (x * k + y) * k + z
}

/// Least `(x, y)` with `μ(y,y,x) ≠ x` or `μ(x,y,y) ≠ x`, for a `k³` table.
pub fn malcev_violation(k: usize, table: &[usize]) -> Option<(usize, usize)> {
    (0..k)
        .flat_map(|x| (0..k).map(move |y| (x, y)))
        .find(|&(x, y)| table[at(k, y, y, x)] != x || table[at(k, x, y, y)] != x)
}

pub fn is_malcev_table(k: usize, table: &[usize]) -> bool {
    malcev_violation(k, table).is_none()
}

/// Checks the Mal'cev identities for the ternary operation `symbol`.
/// A failure carries the least `(x, y)`.
pub fn is_malcev_op(x: &FiniteAlgebra, symbol: &str) -> Result<Check<(usize, usize)>> {
    let table = x
        .table_by_name(symbol)
        .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))?;
    if table.arity() != 3 {
        return Err(Error::ArityMismatch {
            symbol: symbol.to_string(),
            expected: 3,
            found: table.arity(),
        });
    }
    Ok(Check::from_option(malcev_violation(
        x.size(),
        table.values(),
    )))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MalcevSearch {
    pub size: usize,
    /// Tables in lexicographic order.
    pub operations: Vec<Vec<usize>>,
    /// False when the search stopped at the cap.
    pub complete: bool,
}

/// Every Mal'cev table on `{0,…,k-1}` in lexicographic order, up to `cap`.
///
/// Entries `(a,b,c)` with `a = b` or `b = c` are forced; the remaining
/// `k(k-1)²` entries range freely.
pub fn find_malcev_operations(k: usize, cap: usize) -> Result<MalcevSearch> {
    if k == 0 {
        return Err(Error::InvalidAlgebra("carrier must be nonempty".into()));
    }
    let len = k.checked_pow(3).ok_or(Error::SizeCapExceeded {
        what: "ternary table",
        limit: usize::MAX,
    })?;
    let mut table = vec![0; len];
    let mut free = Vec::new();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let i = at(k, a, b, c);
                if a == b {
                    table[i] = c;
                } else if b == c {
                    table[i] = a;
                } else {
                    free.push(i);
                }
            }
        }
    }
    let mut operations = Vec::new();
    let mut digits = vec![0; free.len()];
    loop {
        if operations.len() == cap {
            return Ok(MalcevSearch {
                size: k,
                operations,
                complete: false,
            });
        }
        for (&i, &d) in free.iter().zip(&digits) {
            table[i] = d;
        }
        operations.push(table.clone());
        if !next_tuple(&mut digits, k) {
            return Ok(MalcevSearch {
                size: k,
                operations,
                complete: true,
            });
        }
    }
}

/// `μ(x,y,z) = m(x, m(i(y), z))` for a group over `{m/2, i/1, e/0}`.
pub fn group_malcev(g: &FiniteAlgebra) -> Result<Vec<usize>> {
    match in_equational_class(g, &group_axioms()) {
        Ok(Check::Pass) => {}
        Ok(Check::Fail(f)) => return Err(Error::NotAGroup(f.identity.to_string())),
        Err(Error::SignatureMismatch(s)) => return Err(Error::NotAGroup(s)),
        Err(e) => return Err(e),
    }
    let k = g.size();
    let m = |a: usize, b: usize| g.apply("m", &[a, b]).expect("group signature");
    let inv: Vec<usize> = (0..k)
        .map(|a| g.apply("i", &[a]).expect("group signature"))
        .collect();
    let mut table = Vec::with_capacity(k * k * k);
    for x in 0..k {
        for &y_inv in &inv {
            for z in 0..k {
                table.push(m(x, m(y_inv, z)));
            }
        }
    }
    Ok(table)
}

/// All operations `X³ → X` induced by terms in three variables: the closure
/// of the projections and constants under the operations of `x`, in
/// discovery order (projections first).
pub fn clone_ternary_terms(x: &FiniteAlgebra, cap: usize) -> Result<Vec<Vec<usize>>> {
    Ok(close_ternary(x, cap, |_| false)?.0)
}

/// Runs the closure behind [`clone_ternary_terms`], stopping as soon as a
/// newly discovered operation satisfies `stop`. Returns the operations found
/// so far and the index of the one that stopped it.
fn close_ternary(
    x: &FiniteAlgebra,
    cap: usize,
    stop: impl Fn(&[usize]) -> bool,
) -> Result<(Vec<Vec<usize>>, Option<usize>)> {
    let k = x.size();
    let points = k.checked_pow(3).ok_or(Error::SizeCapExceeded {
        what: "ternary table",
        limit: usize::MAX,
    })?;
    let too_many = || Error::SizeCapExceeded {
        what: "ternary clone",
        limit: cap,
    };
    let mut funcs: Vec<Vec<usize>> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut push = |f: Vec<usize>, funcs: &mut Vec<Vec<usize>>| -> Result<bool> {
        if seen.insert(f.clone()) {
            if funcs.len() == cap {
                return Err(too_many());
            }
            let hit = stop(&f);
            funcs.push(f);
            return Ok(hit);
        }
        Ok(false)
    };
    for proj in 0..3 {
        let f = (0..points)
            .map(|p| match proj {
                0 => p / (k * k),
                1 => (p / k) % k,
                _ => p % k,
            })
            .collect();
        if push(f, &mut funcs)? {
            let at = funcs.len() - 1;
            return Ok((funcs, Some(at)));
        }
    }
    for (j, s) in x.signature().symbols().iter().enumerate() {
        if s.arity == 0 && push(vec![x.table(j).values()[0]; points], &mut funcs)? {
            let at = funcs.len() - 1;
            return Ok((funcs, Some(at)));
        }
    }

    let mut done = 0;
    loop {
        let len = funcs.len();
        for (j, s) in x.signature().symbols().iter().enumerate() {
            let n = s.arity;
            if n == 0 {
                continue;
            }
            let mut pick = vec![0; n];
            let mut args = vec![0; n];
            loop {
                if pick.iter().any(|&p| p >= done) {
                    let f = (0..points)
                        .map(|p| {
                            for (a, &fi) in args.iter_mut().zip(&pick) {
                                *a = funcs[fi][p];
                            }
                            x.apply_index(j, &args)
                        })
                        .collect();
                    if push(f, &mut funcs)? {
                        let at = funcs.len() - 1;
                        return Ok((funcs, Some(at)));
                    }
                }
                if !next_tuple(&mut pick, len) {
                    break;
                }
            }
        }
        if funcs.len() == len {
            return Ok((funcs, None));
        }
        done = len;
    }
}

/// The first ternary term operation satisfying the Mal'cev identities, if any.
pub fn malcev_term_witness(x: &FiniteAlgebra, cap: usize) -> Result<Option<Vec<usize>>> {
    let k = x.size();
    let (mut funcs, hit) = close_ternary(x, cap, |f| is_malcev_table(k, f))?;
    Ok(hit.map(|i| funcs.swap_remove(i)))
}

pub fn has_malcev_term(x: &FiniteAlgebra, cap: usize) -> Result<bool> {
    Ok(malcev_term_witness(x, cap)?.is_some())
}
