//! Congruence testing, generation and the congruence lattice.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{next_tuple, symbols_by_arity, FiniteAlgebra};
use crate::caps::Caps;
use crate::check::Check;
use crate::error::{Error, Result};
use crate::partition::{all_partitions, Partition};
use crate::translation::{
    principal_translation_descriptors, principal_translations, translation_semigroup, Descriptor,
    Translation,
};

/// Two equivalent tuples whose images under `symbol` are not equivalent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectViolation {
    pub symbol: String,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl fmt::Display for DirectViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{:?} ≁ {}{:?}",
            self.symbol, self.left, self.symbol, self.right
        )
    }
}

/// A principal translation separating an equivalent pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TranslationViolation {
    pub translation: Descriptor,
    pub pair: (usize, usize),
    pub images: (usize, usize),
}

impl fmt::Display for TranslationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} maps {} ∼ {} to {} ≁ {}",
            self.translation, self.pair.0, self.pair.1, self.images.0, self.images.1
        )
    }
}

fn require_size(x: &FiniteAlgebra, pi: &Partition) -> Result<()> {
    if pi.size() != x.size() {
        return Err(Error::SizeMismatch {
            expected: x.size(),
            found: pi.size(),
        });
    }
    Ok(())
}

/// Checks compatibility with every operation on every pair of
/// componentwise-equivalent argument tuples.
pub fn is_congruence_direct(x: &FiniteAlgebra, pi: &Partition) -> Result<Check<DirectViolation>> {
    require_size(x, pi)?;
    let blocks = pi.blocks();
    for j in symbols_by_arity(x.signature()) {
        let symbol = &x.signature().symbols()[j];
        let n = symbol.arity;
        let mut left = vec![0; n];
        loop {
            let image = pi.block(x.apply_index(j, &left));
            let choices: Vec<&[usize]> = left.iter().map(|&a| &blocks[pi.block(a)][..]).collect();
            let mut pick = vec![0; n];
            let mut right = vec![0; n];
            loop {
                for ((r, &p), c) in right.iter_mut().zip(&pick).zip(&choices) {
                    *r = c[p];
                }
                if pi.block(x.apply_index(j, &right)) != image {
                    return Ok(Check::Fail(DirectViolation {
                        symbol: symbol.name.clone(),
                        left,
                        right,
                    }));
                }
                if !advance(&mut pick, &choices) {
                    break;
                }
            }
            if !next_tuple(&mut left, x.size()) {
                break;
            }
        }
    }
    Ok(Check::Pass)
}

fn advance(pick: &mut [usize], choices: &[&[usize]]) -> bool {
    for (p, c) in pick.iter_mut().zip(choices).rev() {
        *p += 1;
        if *p < c.len() {
            return true;
        }
        *p = 0;
    }
    false
}

/// Checks that every principal translation maps equivalent pairs to
/// equivalent pairs.
pub fn is_congruence_via_translations(
    x: &FiniteAlgebra,
    pi: &Partition,
) -> Result<Check<TranslationViolation>> {
    require_size(x, pi)?;
    let pairs: Vec<(usize, usize)> = pi.pairs().collect();
    for (d, table) in principal_translation_descriptors(x) {
        if let Some(&(a, b)) = pairs
            .iter()
            .find(|&&(a, b)| !pi.same_block(table[a], table[b]))
        {
            return Ok(Check::Fail(TranslationViolation {
                translation: d,
                pair: (a, b),
                images: (table[a], table[b]),
            }));
        }
    }
    Ok(Check::Pass)
}

pub fn is_congruence(x: &FiniteAlgebra, pi: &Partition) -> Result<bool> {
    Ok(is_congruence_via_translations(x, pi)?.passed())
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Returns true if the sets were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // smaller root wins so roots stay least representatives
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn into_partition(mut self) -> Partition {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&roots)
    }
}

fn saturate(x: &FiniteAlgebra, mut uf: UnionFind) -> Partition {
    let generators = principal_translations(x);
    loop {
        let mut merged = false;
        for g in &generators {
            for e in 0..x.size() {
                let r = uf.find(e);
                if r != e {
                    merged |= uf.union(g.table[e], g.table[r]);
                }
            }
        }
        if !merged {
            return uf.into_partition();
        }
    }
}

/// The least congruence containing `pairs`.
pub fn congruence_generated(x: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Result<Partition> {
    let mut uf = UnionFind::new(x.size());
    for &(a, b) in pairs {
        for v in [a, b] {
            if v >= x.size() {
                return Err(Error::OutOfCarrier {
                    value: v,
                    size: x.size(),
                });
            }
        }
        uf.union(a, b);
    }
    Ok(saturate(x, uf))
}

/// Every congruence of `x`, in canonical partition order.
pub fn all_congruences(x: &FiniteAlgebra, caps: &Caps) -> Result<Vec<Partition>> {
    if x.size() > caps.max_partition_carrier {
        return Err(Error::SizeCapExceeded {
            what: "carrier for partition enumeration",
            limit: caps.max_partition_carrier,
        });
    }
    let candidates: Vec<Partition> = all_partitions(x.size()).collect();
    let verdicts = candidates
        .par_iter()
        .map(|p| is_congruence_direct(x, p).map(|c| c.passed()))
        .collect::<Result<Vec<bool>>>()?;
    Ok(candidates
        .into_iter()
        .zip(verdicts)
        .filter_map(|(p, ok)| ok.then_some(p))
        .collect())
}

/// Groups elements by `⟨π-block of σ(x)⟩_{σ ∈ semigroup}`.
pub fn translation_pullback(semigroup: &[Translation], pi: &Partition) -> Partition {
    let signatures: Vec<Vec<usize>> = (0..pi.size())
        .map(|e| semigroup.iter().map(|s| pi.block(s.apply(e))).collect())
        .collect();
    Partition::from_labels(&signatures)
}

/// The largest congruence refining `π`: `x θ y` iff `σ(x) π σ(y)` for every
/// translation `σ`.
pub fn largest_congruence_below(
    x: &FiniteAlgebra,
    pi: &Partition,
    caps: &Caps,
) -> Result<Partition> {
    require_size(x, pi)?;
    let semigroup = translation_semigroup(x, caps.max_semigroup)?;
    Ok(translation_pullback(&semigroup, pi))
}

/// Same result as [`largest_congruence_below`], computed by splitting `π`
/// along principal translations until stable. Never builds the semigroup.
pub fn largest_congruence_below_by_refinement(
    x: &FiniteAlgebra,
    pi: &Partition,
) -> Result<Partition> {
    require_size(x, pi)?;
    let generators = principal_translations(x);
    let mut theta = pi.clone();
    loop {
        let labels: Vec<Vec<usize>> = (0..x.size())
            .map(|e| {
                std::iter::once(theta.block(e))
                    .chain(generators.iter().map(|g| theta.block(g.table[e])))
                    .collect()
            })
            .collect();
        let next = Partition::from_labels(&labels);
        if next == theta {
            return Ok(theta);
        }
        theta = next;
    }
}

pub fn meet(a: &Partition, b: &Partition) -> Result<Partition> {
    a.meet(b)
}

/// The least congruence containing both congruences.
pub fn join_congruences(x: &FiniteAlgebra, a: &Partition, b: &Partition) -> Result<Partition> {
    for p in [a, b] {
        if let Check::Fail(v) = is_congruence_via_translations(x, p)? {
            return Err(Error::NotACongruence(Box::new(v)));
        }
    }
    let mut uf = UnionFind::new(x.size());
    for (s, t) in a.pairs().chain(b.pairs()) {
        uf.union(s, t);
    }
    Ok(saturate(x, uf))
}
