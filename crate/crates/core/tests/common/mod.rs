//! Brute-force oracles written directly from the definitions, sharing no
//! code paths with the library beyond table lookup.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use finalg_core::{fixtures, FiniteAlgebra, Partition, Signature};

pub fn fixture_set() -> Vec<(&'static str, FiniteAlgebra)> {
    ["Z2", "Z3", "Z4", "Z5", "Z6", "V4", "SL2", "Sinf3"]
        .into_iter()
        .map(|n| (n, fixtures::by_name(n).unwrap()))
        .collect()
}

/// A few non-group algebras with mixed arities.
pub fn odd_algebras() -> Vec<(&'static str, FiniteAlgebra)> {
    let unary = Signature::new([("s", 1), ("c", 0)]).unwrap();
    let chain = FiniteAlgebra::from_fn(unary, 5, |j, a| if j == 0 { (a[0] + 1).min(4) } else { 0 })
        .unwrap();
    let bin = Signature::new([("f", 2)]).unwrap();
    let left_zero = FiniteAlgebra::from_fn(bin.clone(), 3, |_, a| a[0]).unwrap();
    let sub = FiniteAlgebra::from_fn(bin, 4, |_, a| (a[0] + 4 - a[1]) % 4).unwrap();
    let tern = Signature::new([("q", 3)]).unwrap();
    let majority = FiniteAlgebra::from_fn(tern, 3, |_, a| {
        if a[0] == a[1] || a[0] == a[2] {
            a[0]
        } else if a[1] == a[2] {
            a[1]
        } else {
            a[0]
        }
    })
    .unwrap();
    vec![
        ("chain5", chain),
        ("leftzero3", left_zero),
        ("minus4", sub),
        ("majority3", majority),
    ]
}

/// All set partitions of `0..n`, generated by inserting each element into an
/// existing block or a new one.
pub fn partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![Vec::new()];
    for x in 0..n {
        let mut next = Vec::new();
        for p in out {
            for b in 0..p.len() {
                let mut q: Vec<Vec<usize>> = p.clone();
                q[b].push(x);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![x]);
            next.push(q);
        }
        out = next;
    }
    out
}

pub fn related(blocks: &[Vec<usize>], x: usize, y: usize) -> bool {
    blocks.iter().any(|b| b.contains(&x) && b.contains(&y))
}

fn tuples(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..k).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Compatibility with every operation, straight from the definition.
pub fn is_congruence(alg: &FiniteAlgebra, blocks: &[Vec<usize>]) -> bool {
    let k = alg.size();
    alg.signature().symbols().iter().all(|s| {
        let all = tuples(k, s.arity);
        all.iter().all(|a| {
            all.iter().all(|b| {
                !a.iter().zip(b).all(|(&x, &y)| related(blocks, x, y))
                    || related(
                        blocks,
                        alg.apply(&s.name, a).unwrap(),
                        alg.apply(&s.name, b).unwrap(),
                    )
            })
        })
    })
}

pub fn to_partition(n: usize, blocks: &[Vec<usize>]) -> Partition {
    Partition::from_blocks(n, blocks).unwrap()
}

pub fn congruences(alg: &FiniteAlgebra) -> Vec<Partition> {
    let mut out: Vec<Partition> = partitions(alg.size())
        .iter()
        .filter(|b| is_congruence(alg, b))
        .map(|b| to_partition(alg.size(), b))
        .collect();
    out.sort();
    out
}

/// The congruence refining `pi` with the fewest blocks, checked to be the
/// unique maximum.
pub fn max_congruence_below(alg: &FiniteAlgebra, pi: &Partition) -> Partition {
    let below: Vec<Partition> = congruences(alg)
        .into_iter()
        .filter(|c| c.refines(pi))
        .collect();
    let best = below.iter().min_by_key(|c| c.num_blocks()).unwrap().clone();
    assert!(below.iter().all(|c| c.refines(&best)), "no unique maximum");
    best
}

/// Principal translation tables by direct substitution.
pub fn principal_tables(alg: &FiniteAlgebra) -> BTreeSet<Vec<usize>> {
    let k = alg.size();
    let mut out = BTreeSet::new();
    for s in alg.signature().symbols() {
        for slot in 0..s.arity {
            for fixed in tuples(k, s.arity - 1) {
                let table = (0..k)
                    .map(|x| {
                        let mut args = fixed.clone();
                        args.insert(slot, x);
                        alg.apply(&s.name, &args).unwrap()
                    })
                    .collect();
                out.insert(table);
            }
        }
    }
    out
}

/// Composition closure of the principal translations and the identity,
/// iterated until no new table appears.
pub fn semigroup(alg: &FiniteAlgebra) -> HashSet<Vec<usize>> {
    let gens = principal_tables(alg);
    let mut all: HashSet<Vec<usize>> = gens.iter().cloned().collect();
    all.insert((0..alg.size()).collect());
    loop {
        let current: Vec<Vec<usize>> = all.iter().cloned().collect();
        let before = all.len();
        for a in &current {
            for b in &current {
                all.insert(a.iter().map(|&x| b[x]).collect());
            }
        }
        if all.len() == before {
            return all;
        }
    }
}

/// All maps `0..n → 0..z`.
pub fn all_maps(n: usize, z: usize) -> Vec<Vec<usize>> {
    tuples(z, n)
}
