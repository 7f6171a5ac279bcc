//! Acceptance suite: one PASS/FAIL line per criterion, each checked against a
//! brute-force oracle written in this file. Exits nonzero if any criterion
//! fails.

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use finalg_core::fixtures::{by_name, malcev_algebra_from};
use finalg_core::{
    classify_identity, clone_ternary_terms, enumerate_factorizations, find_malcev_operations,
    greatest_factorization, group_axioms, group_malcev, has_malcev_term, holds,
    in_equational_class, is_congruence_direct, is_congruence_via_translations, is_homomorphism,
    is_malcev_op, kernel, least_factorization, parse_term, precedes, principal_translations,
    quotient, subalgebra_generated, translation_semigroup, Caps, CarrierMap, FiniteAlgebra,
    Partition, PreservationClass, Signature, Term,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every criterion is exact: no mismatching case is tolerated.
const MAX_MISMATCHES: usize = 0;
const RANDOM_MAPS: usize = 200;
const SEED: u64 = 0x5eed_f00d;
const EXHAUSTIVE_CARRIER: usize = 4;
const MAX_TARGET: usize = 3;

const FIXTURES: [&str; 8] = ["Z2", "Z3", "Z4", "Z5", "Z6", "V4", "SL2", "Sinf3"];

fn fixture(name: &str) -> FiniteAlgebra {
    by_name(name).unwrap_or_else(|| panic!("fixture {name}"))
}

// ---- oracles -------------------------------------------------------------

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

/// Set partitions of `0..n` as block-label vectors, built by placing each
/// element into an earlier block or a fresh one.
fn label_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|(labels, blocks)| {
                (0..=blocks).map(move |b| {
                    let mut l = labels.clone();
                    l.push(b);
                    (l, blocks.max(b + 1))
                })
            })
            .collect();
    }
    out.into_iter().map(|(l, _)| l).collect()
}

fn oracle_is_congruence(x: &FiniteAlgebra, labels: &[usize]) -> bool {
    x.signature().symbols().iter().all(|s| {
        let all = tuples(x.size(), s.arity);
        all.iter().all(|a| {
            all.iter().all(|b| {
                !a.iter().zip(b).all(|(&p, &q)| labels[p] == labels[q])
                    || labels[x.apply(&s.name, a).unwrap()] == labels[x.apply(&s.name, b).unwrap()]
            })
        })
    })
}

fn oracle_congruences(x: &FiniteAlgebra) -> Vec<Partition> {
    label_partitions(x.size())
        .into_iter()
        .filter(|l| oracle_is_congruence(x, l))
        .map(|l| Partition::from_labels(&l))
        .collect()
}

/// The congruence refining `pi` that every other such congruence refines.
fn oracle_max_below(cons: &[Partition], pi: &Partition) -> Partition {
    let below: Vec<&Partition> = cons.iter().filter(|c| c.refines(pi)).collect();
    let top = below
        .iter()
        .find(|c| below.iter().all(|o| o.refines(c)))
        .expect("a largest congruence exists");
    (*top).clone()
}

/// Every ternary table on `k` points satisfying both identities pointwise.
fn oracle_malcev_count(k: usize) -> usize {
    let len = k * k * k;
    tuples(k, len)
        .into_iter()
        .filter(|t| {
            let mu = |a: usize, b: usize, c: usize| t[(a * k + b) * k + c];
            (0..k).all(|x| (0..k).all(|y| mu(y, y, x) == x && mu(x, y, y) == x))
        })
        .count()
}

/// Ternary term operations: closure of the projections and constants under
/// the operations, by repeated full passes.
fn oracle_clone(x: &FiniteAlgebra) -> BTreeSet<Vec<usize>> {
    let k = x.size();
    let points = tuples(k, 3);
    let mut set: BTreeSet<Vec<usize>> = (0..3)
        .map(|i| points.iter().map(|p| p[i]).collect())
        .collect();
    loop {
        let current: Vec<Vec<usize>> = set.iter().cloned().collect();
        let before = set.len();
        for s in x.signature().symbols() {
            for pick in tuples(current.len(), s.arity) {
                let f = (0..points.len())
                    .map(|p| {
                        let args: Vec<usize> = pick.iter().map(|&i| current[i][p]).collect();
                        x.apply(&s.name, &args).unwrap()
                    })
                    .collect();
                set.insert(f);
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

/// Composition closure of the principal translation tables and the identity.
fn oracle_semigroup(x: &FiniteAlgebra) -> (HashSet<Vec<usize>>, HashSet<Vec<usize>>) {
    let k = x.size();
    let mut principal = HashSet::new();
    for s in x.signature().symbols() {
        for slot in 0..s.arity {
            for fixed in tuples(k, s.arity - 1) {
                let table = (0..k)
                    .map(|v| {
                        let mut args = fixed.clone();
                        args.insert(slot, v);
                        x.apply(&s.name, &args).unwrap()
                    })
                    .collect();
                principal.insert(table);
            }
        }
    }
    let mut all = principal.clone();
    all.insert((0..k).collect());
    loop {
        let current: Vec<Vec<usize>> = all.iter().cloned().collect();
        let before = all.len();
        for a in &current {
            for b in &current {
                all.insert(a.iter().map(|&v| b[v]).collect());
            }
        }
        if all.len() == before {
            return (principal, all);
        }
    }
}

fn maps_for(n: usize, z: usize, rng: &mut ChaCha8Rng) -> Vec<CarrierMap> {
    let values: Vec<Vec<usize>> = if n <= EXHAUSTIVE_CARRIER {
        tuples(z, n)
    } else {
        (0..RANDOM_MAPS)
            .map(|_| (0..n).map(|_| rng.random_range(0..z)).collect())
            .collect()
    };
    values
        .into_iter()
        .map(|v| CarrierMap::new(z, v).unwrap())
        .collect()
}

// ---- criteria ------------------------------------------------------------

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

#[allow(clippy::absurd_extreme_comparisons)]
fn tally(mismatches: Vec<String>, checked: usize, what: &str) -> Verdict {
    if mismatches.len() <= MAX_MISMATCHES {
        Ok(format!("{checked} {what}, {} mismatches", mismatches.len()))
    } else {
        Err(format!(
            "{} of {checked} {what} mismatch; first: {}",
            mismatches.len(),
            mismatches[0]
        ))
    }
}

fn construction_matches_oracle() -> Verdict {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = Vec::new();
    let mut checked = 0;
    for name in FIXTURES {
        let x = fixture(name);
        let cons = oracle_congruences(&x);
        for z in 1..=MAX_TARGET {
            for f in maps_for(x.size(), z, &mut rng) {
                checked += 1;
                let g = least_factorization(&x, &f, &caps).map_err(|e| e.to_string())?;
                let expected = oracle_max_below(&cons, &kernel(&f));
                if g.kernel() != expected {
                    bad.push(format!("{name} f={f}: got {} want {expected}", g.kernel()));
                }
            }
        }
    }
    tally(bad, checked, "maps")
}

fn least_ness() -> Verdict {
    let caps = Caps::default();
    let mut bad = Vec::new();
    let mut checked = 0;
    for name in FIXTURES {
        let x = fixture(name);
        if x.size() > EXHAUSTIVE_CARRIER {
            continue;
        }
        for z in 1..=MAX_TARGET {
            for v in tuples(z, x.size()) {
                let f = CarrierMap::new(z, v).unwrap();
                checked += 1;
                let run = || -> finalg_core::Result<Option<String>> {
                    let least = least_factorization(&x, &f, &caps)?;
                    let greatest = greatest_factorization(&x, &f);
                    let all = enumerate_factorizations(&x, &f, &caps)?;
                    for c in &all {
                        if precedes(&least, c)?.is_none() {
                            return Ok(Some("least does not precede".into()));
                        }
                        if precedes(c, &greatest)?.is_none() {
                            return Ok(Some("greatest does not dominate".into()));
                        }
                    }
                    let rel: Vec<Vec<bool>> = all
                        .iter()
                        .map(|a| {
                            all.iter()
                                .map(|b| precedes(a, b).map(|q| q.is_some()))
                                .collect()
                        })
                        .collect::<finalg_core::Result<_>>()?;
                    let n = all.len();
                    if (0..n).any(|i| !rel[i][i]) {
                        return Ok(Some("not reflexive".into()));
                    }
                    for i in 0..n {
                        for j in 0..n {
                            for k in 0..n {
                                if rel[i][j] && rel[j][k] && !rel[i][k] {
                                    return Ok(Some("not transitive".into()));
                                }
                            }
                        }
                    }
                    Ok(None)
                };
                if let Some(why) = run().map_err(|e| e.to_string())? {
                    bad.push(format!("{name} f={f}: {why}"));
                }
            }
        }
    }
    tally(bad, checked, "maps")
}

fn proposition_one() -> Verdict {
    let mut bad = Vec::new();
    let mut checked = 0;
    for name in FIXTURES {
        let x = fixture(name);
        if x.size() > 5 {
            continue;
        }
        for labels in label_partitions(x.size()) {
            let pi = Partition::from_labels(&labels);
            checked += 1;
            let direct = is_congruence_direct(&x, &pi)
                .map_err(|e| e.to_string())?
                .passed();
            let via = is_congruence_via_translations(&x, &pi)
                .map_err(|e| e.to_string())?
                .passed();
            if direct != via {
                bad.push(format!("{name} {pi}: direct {direct}, translations {via}"));
            }
        }
    }
    tally(bad, checked, "partitions")
}

fn malcev_counts() -> Verdict {
    let mut bad = Vec::new();
    for (k, expected) in [(1, 1), (2, 4)] {
        let oracle = oracle_malcev_count(k);
        let search = find_malcev_operations(k, 1 << 16).map_err(|e| e.to_string())?;
        if oracle != expected || search.operations.len() != expected || !search.complete {
            bad.push(format!(
                "k={k}: search {}, oracle {oracle}, expected {expected}",
                search.operations.len()
            ));
        }
    }
    let groups = ["Z2", "Z3", "Z4", "Z5", "Z6", "V4"];
    for name in groups {
        let g = fixture(name);
        let table = group_malcev(&g).map_err(|e| e.to_string())?;
        let alg = malcev_algebra_from(g.size(), table).map_err(|e| e.to_string())?;
        if !is_malcev_op(&alg, "mu")
            .map_err(|e| e.to_string())?
            .passed()
        {
            bad.push(format!("{name}: group operation is not Mal'cev"));
        }
    }
    tally(bad, 2 + groups.len(), "cases")
}

fn clone_checks() -> Verdict {
    let cap = Caps::default().max_clone;
    let mut bad = Vec::new();
    for (name, expected) in [("Z2", 8), ("SL2", 7)] {
        let x = fixture(name);
        let ours: BTreeSet<Vec<usize>> = clone_ternary_terms(&x, cap)
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        let oracle = oracle_clone(&x);
        if ours.len() != expected || ours != oracle {
            bad.push(format!(
                "{name}: {} operations, oracle {}, expected {expected}",
                ours.len(),
                oracle.len()
            ));
        }
    }
    let cases = [
        ("Z2", true),
        ("Z3", true),
        ("Z4", true),
        ("Z5", true),
        ("Z6", true),
        ("Z7", true),
        ("Z8", true),
        ("V4", true),
        ("SL2", false),
    ];
    for (name, expected) in cases {
        if has_malcev_term(&fixture(name), cap).map_err(|e| e.to_string())? != expected {
            bad.push(format!("{name}: has_malcev_term should be {expected}"));
        }
    }
    tally(bad, 2 + cases.len(), "cases")
}

fn lattice_counts() -> Verdict {
    let caps = Caps::default();
    let mut bad = Vec::new();
    let cases = [("Z4", 3), ("Z6", 4), ("V4", 5), ("SL2", 2)];
    for (name, expected) in cases {
        let x = fixture(name);
        let mut ours = finalg_core::all_congruences(&x, &caps).map_err(|e| e.to_string())?;
        ours.sort();
        let mut oracle = oracle_congruences(&x);
        oracle.sort();
        if ours.len() != expected || ours != oracle {
            bad.push(format!(
                "{name}: {} congruences, oracle {}, expected {expected}",
                ours.len(),
                oracle.len()
            ));
        }
    }
    tally(bad, cases.len(), "algebras")
}

fn correspondences() -> Verdict {
    let mut bad = Vec::new();
    let mut checked = 0;
    let algebras: Vec<(&str, FiniteAlgebra)> = FIXTURES
        .iter()
        .map(|&n| (n, fixture(n)))
        .filter(|(_, x)| x.size() <= 5)
        .collect();
    for (name, x) in &algebras {
        for labels in label_partitions(x.size()) {
            let pi = Partition::from_labels(&labels);
            checked += 1;
            let congruence = oracle_is_congruence(x, &labels);
            match quotient(x, &pi) {
                Ok(q) => {
                    if !congruence {
                        bad.push(format!("{name} {pi}: quotient of a non-congruence"));
                    }
                    if !is_homomorphism(&q.map, x, &q.algebra)
                        .map_err(|e| e.to_string())?
                        .passed()
                    {
                        bad.push(format!("{name} {pi}: quotient map is not a homomorphism"));
                    }
                }
                Err(finalg_core::Error::NotACongruence(_)) => {
                    if congruence {
                        bad.push(format!("{name} {pi}: congruence rejected"));
                    }
                }
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    // homomorphisms between fixtures of equal signature: X/ker φ ≅ φ(X)
    for (xn, x) in &algebras {
        for (yn, y) in &algebras {
            if x.signature() != y.signature() || x.size() > 4 || y.size() > 4 {
                continue;
            }
            for v in tuples(y.size(), x.size()) {
                let phi = CarrierMap::new(y.size(), v).unwrap();
                if !is_homomorphism(&phi, x, y)
                    .map_err(|e| e.to_string())?
                    .passed()
                {
                    continue;
                }
                checked += 1;
                let ker = kernel(&phi);
                let q = quotient(x, &ker).map_err(|e| e.to_string())?;
                let image: Vec<usize> = phi.image().into_iter().collect();
                let sub = subalgebra_generated(y, &image).map_err(|e| e.to_string())?;
                let Some(img) = sub.algebra else {
                    bad.push(format!("{xn}→{yn} {phi}: empty image"));
                    continue;
                };
                if sub.elements != image {
                    bad.push(format!("{xn}→{yn} {phi}: image is not a subalgebra"));
                    continue;
                }
                let induced = CarrierMap::new(
                    img.size(),
                    ker.representatives()
                        .into_iter()
                        .map(|r| image.binary_search(&phi.get(r)).unwrap())
                        .collect(),
                )
                .unwrap();
                let bijective = induced.is_injective() && induced.is_surjective();
                let hom = is_homomorphism(&induced, &q.algebra, &img)
                    .map_err(|e| e.to_string())?
                    .passed();
                if !bijective || !hom {
                    bad.push(format!(
                        "{xn}→{yn} {phi}: induced map bijective {bijective}, hom {hom}"
                    ));
                }
            }
        }
    }
    tally(bad, checked, "cases")
}

fn identity_checks() -> Verdict {
    let mut bad = Vec::new();
    for name in ["Z2", "Z3", "Z4", "Z5", "Z6"] {
        if !in_equational_class(&fixture(name), &group_axioms())
            .map_err(|e| e.to_string())?
            .passed()
        {
            bad.push(format!("{name}: group axioms fail"));
        }
    }
    let s = fixture("Sinf3");
    let sig = Signature::group();
    let p = parse_term("m(v1,i(v1))", &sig).map_err(|e| e.to_string())?;
    match holds(&s, &p, &Term::constant("e"))
        .map_err(|e| e.to_string())?
        .into_counterexample()
    {
        Some(a) if a.0.len() == 1 && a.get(1).map(|v| s.label(v)) == Some("∞".into()) => {}
        other => bad.push(format!("Sinf3: expected failure at v1=∞, got {other:?}")),
    }
    let mu_sig = Signature::new([("mu", 3)]).unwrap();
    let mu = |t: &str| parse_term(t, &mu_sig).unwrap();
    let classes = [
        (
            mu("mu(v2,v2,v1)"),
            Term::var(1),
            PreservationClass::LinearQuadratic,
        ),
        (
            mu("mu(v1,v2,v2)"),
            Term::var(1),
            PreservationClass::LinearQuadratic,
        ),
        (
            parse_term("m(v1,m(v2,v3))", &sig).unwrap(),
            parse_term("m(m(v1,v2),v3)", &sig).unwrap(),
            PreservationClass::Linear,
        ),
        (
            parse_term("m(v1,v2)", &sig).unwrap(),
            parse_term("m(v2,v1)", &sig).unwrap(),
            PreservationClass::Linear,
        ),
    ];
    for (l, r, expected) in &classes {
        let got = classify_identity(l, r);
        if got != *expected {
            bad.push(format!("{l} = {r}: {got:?}, expected {expected:?}"));
        }
    }
    tally(bad, 6 + classes.len(), "cases")
}

fn translation_semigroups() -> Verdict {
    let cap = Caps::default().max_semigroup;
    let mut bad = Vec::new();
    let z2 = fixture("Z2");
    let z3 = fixture("Z3");
    let s_z2 = translation_semigroup(&z2, cap).map_err(|e| e.to_string())?;
    let s_z3 = translation_semigroup(&z3, cap).map_err(|e| e.to_string())?;
    let s1_z3 = principal_translations(&z3);
    let (o1_z3, o_z3) = oracle_semigroup(&z3);
    let (_, o_z2) = oracle_semigroup(&z2);
    let sizes = [
        ("|S(Z2)|", s_z2.len(), o_z2.len(), 2),
        ("|S(Z3)|", s_z3.len(), o_z3.len(), 6),
        ("|S1(Z3)|", s1_z3.len(), o1_z3.len(), 4),
    ];
    for (what, ours, oracle, expected) in sizes {
        if ours != expected || oracle != expected {
            bad.push(format!(
                "{what}: {ours}, oracle {oracle}, expected {expected}"
            ));
        }
    }
    let mut words = 0;
    for name in FIXTURES {
        let x = fixture(name);
        for t in translation_semigroup(&x, cap).map_err(|e| e.to_string())? {
            words += 1;
            if t.evaluate_word(&x).map_err(|e| e.to_string())? != t.table {
                bad.push(format!("{name}: word of {t} does not reproduce its table"));
            }
        }
    }
    tally(bad, sizes.len() + words, "checks")
}

const CLI_RUNS: &[&[&str]] = &[
    &["check-identity", "Sinf3", "m(v1,i(v1))", "e"],
    &["check-identity", "Z3", "m(v1,v2)", "m(v2,v1)"],
    &[
        "variety-check",
        "Z6",
        "--group-axioms",
        "-i",
        "m(v1,v2) = m(v2,v1)",
    ],
    &["eval", "Sinf3", "m(v1,v2)", "-a", "v1=∞,v2=1"],
    &["hom-check", "Z4", "Z2", "[0,1,0,1]"],
    &["subalgebra", "Z6", "2"],
    &["product", "Z2", "V4"],
    &["quotient", "Z4", "0,2|1,3"],
    &["quotient", "Z4", "0,1|2,3"],
    &["congruences", "Z6"],
    &["congruences", "Z8"],
    &["gen-congruence", "Z6", "0:2"],
    &["translations", "Z4"],
    &["malcev", "2"],
    &["malcev", "V4"],
    &["clone", "Z3", "--list"],
    &["factorize", "Z6", "[0,1,2,0,1,2]", "--oracle"],
    &["factorize", "Sinf3", "[0,1,1,0]", "--oracle"],
    &["fixtures"],
];

fn run_cli(args: &[&str], threads: &str) -> Result<(Vec<u8>, Option<i32>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_finalg"))
        .args(args)
        .args(["--json", "--threads", threads])
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code()))
}

fn determinism() -> Verdict {
    let mut bad = Vec::new();
    for args in CLI_RUNS {
        let first = run_cli(args, "4")?;
        let second = run_cli(args, "4")?;
        let single = run_cli(args, "1")?;
        if first.0.is_empty() {
            bad.push(format!("{}: no output", args.join(" ")));
        } else if first != second || first != single {
            bad.push(format!("{}: output differs between runs", args.join(" ")));
        }
    }
    tally(bad, CLI_RUNS.len(), "commands")
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "least factorization kernel equals the largest congruence below ker f",
            construction_matches_oracle,
        ),
        (
            "least factorization precedes all, greatest dominates all, ≺ is a preorder",
            least_ness,
        ),
        (
            "direct and translation congruence criteria agree",
            proposition_one,
        ),
        (
            "Mal'cev operation counts and group Mal'cev operations",
            malcev_counts,
        ),
        ("ternary clone sizes and Mal'cev terms", clone_checks),
        ("congruence lattice sizes", lattice_counts),
        (
            "quotients exist exactly for congruences; induced maps are isomorphisms",
            correspondences,
        ),
        (
            "group axioms, x·x⁻¹ = e fails at ∞, identity classes",
            identity_checks,
        ),
        (
            "translation semigroup sizes and words",
            translation_semigroups,
        ),
        (
            "CLI --json output is deterministic across runs and thread counts",
            determinism,
        ),
    ];
    let started = Instant::now();
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let ms = t.elapsed().as_millis();
        match verdict {
            Ok(detail) => println!("PASS  {:>2}  {title}  ({detail}; {ms} ms)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {:>2}  {title}  ({detail}; {ms} ms)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
