//! Small named algebras used throughout the tests and the CLI.

use crate::algebra::FiniteAlgebra;
use crate::error::Result;
use crate::signature::Signature;

/// `ℤ/n` over `{m/2, i/1, e/0}`.
///
/// # Panics
/// If `n` is zero.
pub fn cyclic_group(n: usize) -> FiniteAlgebra {
    assert!(n > 0, "cyclic group of order 0");
    FiniteAlgebra::from_fn(Signature::group(), n, |j, args| match j {
        0 => (args[0] + args[1]) % n,
        1 => (n - args[0]) % n,
        _ => 0,
    })
    .expect("valid group table")
}

/// `ℤ/2 × ℤ/2` as a group, elements encoded as two-bit vectors.
pub fn klein_four() -> FiniteAlgebra {
    FiniteAlgebra::from_fn(Signature::group(), 4, |j, args| match j {
        0 => args[0] ^ args[1],
        1 => args[0],
        _ => 0,
    })
    .expect("valid group table")
}

/// `({0,1}, meet)`.
pub fn semilattice2() -> FiniteAlgebra {
    let sig = Signature::new([("meet", 2)]).expect("static signature");
    FiniteAlgebra::from_fn(sig, 2, |_, args| args[0] & args[1]).expect("valid table")
}

/// `ℤ/n` with an absorbing point `∞` (encoded as `n`):
/// `∞+x = x+∞ = ∞` and `-∞ = ∞`.
pub fn adjoined_infinity_monoid(n: usize) -> FiniteAlgebra {
    assert!(n > 0, "cyclic part of order 0");
    let inf = n;
    let alg = FiniteAlgebra::from_fn(Signature::group(), n + 1, |j, args| match j {
        0 if args[0] == inf || args[1] == inf => inf,
        0 => (args[0] + args[1]) % n,
        1 if args[0] == inf => inf,
        1 => (n - args[0]) % n,
        _ => 0,
    })
    .expect("valid table");
    let labels = (0..n)
        .map(|x| x.to_string())
        .chain(std::iter::once("∞".to_string()))
        .collect();
    alg.with_labels(labels).expect("one label per element")
}

/// A single ternary operation `mu` given by its `k³` row-major table.
pub fn malcev_algebra_from(k: usize, table: Vec<usize>) -> Result<FiniteAlgebra> {
    let sig = Signature::new([("mu", 3)])?;
    FiniteAlgebra::new(sig, k, vec![table])
}

/// Names accepted by [`by_name`], besides `Sinf<n>` for any `n ≥ 1`.
pub const NAMES: &[&str] = &[
    "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "V4", "SL2", "Sinf3",
];

/// Resolves `Z2`…`Z8`, `V4`, `SL2` and `Sinf<n>`.
pub fn by_name(name: &str) -> Option<FiniteAlgebra> {
    match name {
        "V4" => return Some(klein_four()),
        "SL2" => return Some(semilattice2()),
        _ => {}
    }
    let parse_order = |digits: &str| -> Option<usize> {
        if digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        digits.parse().ok()
    };
    if let Some(n) = name.strip_prefix("Sinf").and_then(parse_order) {
        return (1..=64).contains(&n).then(|| adjoined_infinity_monoid(n));
    }
    if let Some(n) = name.strip_prefix('Z').and_then(parse_order) {
        return (2..=8).contains(&n).then(|| cyclic_group(n));
    }
    None
}
