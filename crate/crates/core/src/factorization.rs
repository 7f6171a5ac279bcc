//! Factorizations `f = h ∘ g` of a map `f: X → Z` through surjective
//! homomorphisms `g: X → Y`, their preorder, and the least one.
//!
//! `Z` is a bare finite set: only its size is recorded, as the target size of
//! `f` and `h`.

use serde::Serialize;

use crate::algebra::{
    is_homomorphism, kernel, quotient, quotient_unchecked, CarrierMap, FiniteAlgebra, HomViolation,
};
use crate::caps::Caps;
use crate::check::Check;
use crate::congruence::all_congruences;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::translation::{translation_semigroup, Translation};

/// A triple `(g, Y, h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub g: CarrierMap,
    pub y: FiniteAlgebra,
    pub h: CarrierMap,
}

impl Factorization {
    /// `h ∘ g`.
    pub fn composite(&self) -> Result<CarrierMap> {
        self.g.then(&self.h)
    }

    pub fn kernel(&self) -> Partition {
        kernel(&self.g)
    }
}

/// First clause of the factorization conditions that fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum FactorizationDefect {
    /// `g` or `h` has the wrong domain or codomain size.
    ShapeMismatch {
        map: &'static str,
        expected: usize,
        found: usize,
    },
    NotSurjective {
        missing: usize,
    },
    NotHomomorphism {
        violation: HomViolation,
    },
    CompositionMismatch {
        x: usize,
        expected: usize,
        found: usize,
    },
}

fn shape(map: &'static str, expected: usize, found: usize) -> Option<FactorizationDefect> {
    (expected != found).then_some(FactorizationDefect::ShapeMismatch {
        map,
        expected,
        found,
    })
}

/// Checks that `g` is a surjective homomorphism `X → Y` and `h ∘ g = f`.
pub fn is_factorization(
    x: &FiniteAlgebra,
    f: &CarrierMap,
    cand: &Factorization,
) -> Result<Check<FactorizationDefect>> {
    if x.signature() != cand.y.signature() {
        return Err(Error::SignatureMismatch(format!(
            "`{}` vs `{}`",
            x.signature(),
            cand.y.signature()
        )));
    }
    if f.source_size() != x.size() {
        return Err(Error::SizeMismatch {
            expected: x.size(),
            found: f.source_size(),
        });
    }
    let shape_defect = shape("g domain", x.size(), cand.g.source_size())
        .or_else(|| shape("g codomain", cand.y.size(), cand.g.target_size()))
        .or_else(|| shape("h domain", cand.y.size(), cand.h.source_size()))
        .or_else(|| shape("h codomain", f.target_size(), cand.h.target_size()));
    if let Some(d) = shape_defect {
        return Ok(Check::Fail(d));
    }
    let image = cand.g.image();
    if let Some(missing) = (0..cand.y.size()).find(|y| !image.contains(y)) {
        return Ok(Check::Fail(FactorizationDefect::NotSurjective { missing }));
    }
    if let Check::Fail(violation) = is_homomorphism(&cand.g, x, &cand.y)? {
        return Ok(Check::Fail(FactorizationDefect::NotHomomorphism {
            violation,
        }));
    }
    for e in 0..x.size() {
        let found = cand.h.get(cand.g.get(e));
        if found != f.get(e) {
            return Ok(Check::Fail(FactorizationDefect::CompositionMismatch {
                x: e,
                expected: f.get(e),
                found,
            }));
        }
    }
    Ok(Check::Pass)
}

/// `F₁ ≺ F₂`: some homomorphism `q: Y₂ → Y₁` satisfies `g₁ = q ∘ g₂`
/// (first `g₂`, then `q`). Returns the witness `q`.
///
/// `q` is forced on the image of `g₂`, which is all of `Y₂`, so it is
/// constructed directly and then checked.
pub fn precedes(f1: &Factorization, f2: &Factorization) -> Result<Option<CarrierMap>> {
    if f1.g.source_size() != f2.g.source_size() || f1.composite()? != f2.composite()? {
        return Err(Error::MismatchedBase);
    }
    let mut q = vec![None; f2.y.size()];
    for e in 0..f1.g.source_size() {
        let slot = &mut q[f2.g.get(e)];
        match *slot {
            None => *slot = Some(f1.g.get(e)),
            Some(v) if v != f1.g.get(e) => return Ok(None),
            Some(_) => {}
        }
    }
    let Some(values) = q.into_iter().collect::<Option<Vec<usize>>>() else {
        return Ok(None);
    };
    let q = CarrierMap::new(f1.y.size(), values)?;
    Ok(is_homomorphism(&q, &f2.y, &f1.y)?.passed().then_some(q))
}

/// `⟨f(σ(x))⟩_{σ ∈ semigroup}` for every `x`.
pub fn translation_signatures(semigroup: &[Translation], f: &CarrierMap) -> Vec<Vec<usize>> {
    (0..f.source_size())
        .map(|e| semigroup.iter().map(|s| f.get(s.apply(e))).collect())
        .collect()
}

/// The least factorization together with the data it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeastFactorization {
    pub factorization: Factorization,
    /// The translation semigroup, identity first.
    pub semigroup: Vec<Translation>,
    /// Signature of each element of `Y`, i.e. the point of `Z^S(X)` it names.
    pub embedding: Vec<Vec<usize>>,
}

/// `g = Δ_{σ ∈ S(X)} f∘σ`, `Y = g(X)`, `h` = the identity coordinate.
pub fn least_factorization_detailed(
    x: &FiniteAlgebra,
    f: &CarrierMap,
    caps: &Caps,
) -> Result<LeastFactorization> {
    if f.source_size() != x.size() {
        return Err(Error::SizeMismatch {
            expected: x.size(),
            found: f.source_size(),
        });
    }
    let semigroup = translation_semigroup(x, caps.max_semigroup)?;
    debug_assert!(semigroup[0].is_identity());
    let signatures = translation_signatures(&semigroup, f);
    let theta = Partition::from_labels(&signatures);
    let q = quotient(x, &theta)?;
    let embedding: Vec<Vec<usize>> = theta
        .representatives()
        .into_iter()
        .map(|r| signatures[r].clone())
        .collect();
    let h = CarrierMap::new(f.target_size(), embedding.iter().map(|s| s[0]).collect())?;
    Ok(LeastFactorization {
        factorization: Factorization {
            g: q.map,
            y: q.algebra,
            h,
        },
        semigroup,
        embedding,
    })
}

pub fn least_factorization(
    x: &FiniteAlgebra,
    f: &CarrierMap,
    caps: &Caps,
) -> Result<Factorization> {
    Ok(least_factorization_detailed(x, f, caps)?.factorization)
}

/// The quotient factorization for a congruence `θ` refining `ker f`.
pub(crate) fn factorization_through(
    x: &FiniteAlgebra,
    f: &CarrierMap,
    theta: &Partition,
) -> Factorization {
    let q = quotient_unchecked(x, theta);
    let h = CarrierMap::new(
        f.target_size(),
        theta
            .representatives()
            .into_iter()
            .map(|r| f.get(r))
            .collect(),
    )
    .expect("values of f are in range");
    Factorization {
        g: q.map,
        y: q.algebra,
        h,
    }
}

/// One factorization per congruence refining `ker f`, in canonical order.
pub fn enumerate_factorizations(
    x: &FiniteAlgebra,
    f: &CarrierMap,
    caps: &Caps,
) -> Result<Vec<Factorization>> {
    if f.source_size() != x.size() {
        return Err(Error::SizeMismatch {
            expected: x.size(),
            found: f.source_size(),
        });
    }
    let ker = kernel(f);
    Ok(all_congruences(x, caps)?
        .iter()
        .filter(|theta| theta.refines(&ker))
        .map(|theta| factorization_through(x, f, theta))
        .collect())
}

/// `(id, X, f)`.
pub fn greatest_factorization(x: &FiniteAlgebra, f: &CarrierMap) -> Factorization {
    Factorization {
        g: CarrierMap::identity(x.size()),
        y: x.clone(),
        h: f.clone(),
    }
}
