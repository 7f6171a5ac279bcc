//! Finite algebras stored as dense operation tables, and the constructions
//! on them: homomorphisms, subalgebras, products, quotients and identities.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::caps::Caps;
use crate::check::Check;
use crate::congruence;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::signature::Signature;
use crate::term::{Compiled, Identity, Term, VarAssignment};

/// Table of one operation of arity `n`: `k^n` entries in row-major
/// lexicographic argument order (first argument most significant).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpTable {
    arity: usize,
    values: Vec<usize>,
}

impl OpTable {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// Row-major index of `args` in a table over a carrier of size `k`.
pub(crate) fn tuple_index(args: &[usize], k: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * k + a)
}

/// Inverse of [`tuple_index`].
pub(crate) fn decode_tuple(mut index: usize, k: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = index % k;
        index /= k;
    }
}

pub(crate) fn checked_pow(k: usize, n: usize) -> Option<usize> {
    k.checked_pow(u32::try_from(n).ok()?)
}

/// Advances `tuple` to its lexicographic successor over `{0,…,k-1}`.
/// Returns false after the last tuple.
pub(crate) fn next_tuple(tuple: &mut [usize], k: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < k {
            return true;
        }
        *slot = 0;
    }
    false
}

/// A finite algebra with carrier `{0,…,size-1}`.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    sig: Signature,
    size: usize,
    tables: Vec<OpTable>,
    labels: Option<Vec<String>>,
}

impl FiniteAlgebra {
    /// `tables[j]` is the table of the `j`-th symbol of `sig`.
    pub fn new(sig: Signature, size: usize, tables: Vec<Vec<usize>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidAlgebra("carrier must be nonempty".into()));
        }
        if tables.len() != sig.len() {
            return Err(Error::InvalidAlgebra(format!(
                "{} tables for {} symbols",
                tables.len(),
                sig.len()
            )));
        }
        let mut ops = Vec::with_capacity(tables.len());
        for (symbol, values) in sig.symbols().iter().zip(tables) {
            let expected = checked_pow(size, symbol.arity).ok_or_else(|| {
                Error::InvalidAlgebra(format!("table for `{}` is too large", symbol.name))
            })?;
            if values.len() != expected {
                return Err(Error::InvalidAlgebra(format!(
                    "table for `{}` has {} entries, expected {expected}",
                    symbol.name,
                    values.len()
                )));
            }
            if let Some(&bad) = values.iter().find(|&&v| v >= size) {
                return Err(Error::OutOfCarrier { value: bad, size });
            }
            ops.push(OpTable {
                arity: symbol.arity,
                values,
            });
        }
        Ok(FiniteAlgebra {
            sig,
            size,
            tables: ops,
            labels: None,
        })
    }

    /// Builds every table from `op(symbol_index, args)`.
    pub fn from_fn(
        sig: Signature,
        size: usize,
        mut op: impl FnMut(usize, &[usize]) -> usize,
    ) -> Result<Self> {
        let mut tables = Vec::with_capacity(sig.len());
        for (j, symbol) in sig.symbols().iter().enumerate() {
            let len = checked_pow(size, symbol.arity).ok_or_else(|| {
                Error::InvalidAlgebra(format!("table for `{}` is too large", symbol.name))
            })?;
            let mut args = vec![0; symbol.arity];
            let mut values = Vec::with_capacity(len);
            for idx in 0..len {
                decode_tuple(idx, size, &mut args);
                values.push(op(j, &args));
            }
            tables.push(values);
        }
        FiniteAlgebra::new(sig, size, tables)
    }

    /// Attaches display names to carrier elements.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::SizeMismatch {
                expected: self.size,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn tables(&self) -> &[OpTable] {
        &self.tables
    }

    pub fn table(&self, symbol_index: usize) -> &OpTable {
        &self.tables[symbol_index]
    }

    pub fn table_by_name(&self, name: &str) -> Option<&OpTable> {
        self.sig.position(name).map(|i| &self.tables[i])
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of an element: its label if any, else the number.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    #[inline]
    pub(crate) fn apply_index(&self, symbol_index: usize, args: &[usize]) -> usize {
        self.tables[symbol_index].values[tuple_index(args, self.size)]
    }

    pub fn apply(&self, symbol: &str, args: &[usize]) -> Result<usize> {
        apply(self, symbol, args)
    }
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && self.sig == other.sig
            && self
                .sig
                .symbols()
                .iter()
                .zip(&self.tables)
                .all(|(s, t)| other.table_by_name(&s.name) == Some(t))
    }
}

impl Eq for FiniteAlgebra {}

/// Looks up `symbol(args)` in the table of `alg`.
pub fn apply(alg: &FiniteAlgebra, symbol: &str, args: &[usize]) -> Result<usize> {
    let idx = alg
        .sig
        .position(symbol)
        .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))?;
    let arity = alg.tables[idx].arity;
    if args.len() != arity {
        return Err(Error::ArityMismatch {
            symbol: symbol.to_string(),
            expected: arity,
            found: args.len(),
        });
    }
    if let Some(&bad) = args.iter().find(|&&a| a >= alg.size) {
        return Err(Error::OutOfCarrier {
            value: bad,
            size: alg.size,
        });
    }
    Ok(alg.apply_index(idx, args))
}

/// A total map between finite carriers; entry `i` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CarrierMap {
    target_size: usize,
    values: Vec<usize>,
}

impl CarrierMap {
    pub fn new(target_size: usize, values: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|&&v| v >= target_size) {
            return Err(Error::OutOfCarrier {
                value: bad,
                size: target_size,
            });
        }
        Ok(CarrierMap {
            target_size,
            values,
        })
    }

    /// Target size is one more than the largest value (zero for the empty map).
    pub fn from_values(values: Vec<usize>) -> Self {
        let target_size = values.iter().max().map_or(0, |m| m + 1);
        CarrierMap {
            target_size,
            values,
        }
    }

    pub fn identity(size: usize) -> Self {
        CarrierMap {
            target_size: size,
            values: (0..size).collect(),
        }
    }

    pub fn source_size(&self) -> usize {
        self.values.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn get(&self, x: usize) -> usize {
        self.values[x]
    }

    /// `next ∘ self`: first `self`, then `next`.
    pub fn then(&self, next: &CarrierMap) -> Result<CarrierMap> {
        if next.source_size() != self.target_size {
            return Err(Error::SizeMismatch {
                expected: self.target_size,
                found: next.source_size(),
            });
        }
        Ok(CarrierMap {
            target_size: next.target_size,
            values: self.values.iter().map(|&x| next.values[x]).collect(),
        })
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.values.iter().copied().collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target_size
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.values.len()
    }
}

impl fmt::Display for CarrierMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// An operation application where a map fails to commute.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomViolation {
    pub symbol: String,
    pub args: Vec<usize>,
}

fn require_same_signature(x: &FiniteAlgebra, y: &FiniteAlgebra) -> Result<()> {
    if x.sig != y.sig {
        return Err(Error::SignatureMismatch(format!(
            "`{}` vs `{}`",
            x.sig, y.sig
        )));
    }
    Ok(())
}

/// Symbol indices ordered by arity, then declaration. Counterexample searches
/// visit symbols in this order so nullary failures are reported first.
pub(crate) fn symbols_by_arity(sig: &Signature) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sig.len()).collect();
    order.sort_by_key(|&j| sig.symbols()[j].arity);
    order
}

/// Checks `φ(f(x₁,…,xₙ)) = f(φ(x₁),…,φ(xₙ))` for every symbol and tuple.
pub fn is_homomorphism(
    phi: &CarrierMap,
    x: &FiniteAlgebra,
    y: &FiniteAlgebra,
) -> Result<Check<HomViolation>> {
    require_same_signature(x, y)?;
    if phi.source_size() != x.size {
        return Err(Error::SizeMismatch {
            expected: x.size,
            found: phi.source_size(),
        });
    }
    if phi.target_size() != y.size {
        return Err(Error::SizeMismatch {
            expected: y.size,
            found: phi.target_size(),
        });
    }
    for j in symbols_by_arity(&x.sig) {
        let symbol = &x.sig.symbols()[j];
        let y_idx = y.sig.position(&symbol.name).expect("same signature");
        let mut args = vec![0; symbol.arity];
        let mut image = vec![0; symbol.arity];
        loop {
            for (im, &a) in image.iter_mut().zip(&args) {
                *im = phi.get(a);
            }
            if phi.get(x.apply_index(j, &args)) != y.apply_index(y_idx, &image) {
                return Ok(Check::Fail(HomViolation {
                    symbol: symbol.name.clone(),
                    args,
                }));
            }
            if !next_tuple(&mut args, x.size) {
                break;
            }
        }
    }
    Ok(Check::Pass)
}

/// A subalgebra, renumbered onto `{0,…,m-1}` in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subalgebra {
    /// Elements of the parent, sorted.
    pub elements: Vec<usize>,
    /// `None` only when the generated subset is empty.
    pub algebra: Option<FiniteAlgebra>,
    /// Inclusion into the parent.
    pub embedding: CarrierMap,
}

/// The least subset containing `seed` and the constants that is closed under
/// every operation.
pub fn subalgebra_generated(x: &FiniteAlgebra, seed: &[usize]) -> Result<Subalgebra> {
    let mut member = vec![false; x.size];
    for &s in seed {
        if s >= x.size {
            return Err(Error::OutOfCarrier {
                value: s,
                size: x.size,
            });
        }
        member[s] = true;
    }
    loop {
        let current: Vec<usize> = (0..x.size).filter(|&e| member[e]).collect();
        let mut grew = false;
        for (j, symbol) in x.sig.symbols().iter().enumerate() {
            let n = symbol.arity;
            if n > 0 && current.is_empty() {
                continue;
            }
            let mut pick = vec![0; n];
            let mut args = vec![0; n];
            loop {
                for (a, &p) in args.iter_mut().zip(&pick) {
                    *a = current[p];
                }
                let v = x.apply_index(j, &args);
                if !member[v] {
                    member[v] = true;
                    grew = true;
                }
                if !next_tuple(&mut pick, current.len()) {
                    break;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let elements: Vec<usize> = (0..x.size).filter(|&e| member[e]).collect();
    let embedding = CarrierMap::new(x.size, elements.clone())?;
    if elements.is_empty() {
        return Ok(Subalgebra {
            elements,
            algebra: None,
            embedding,
        });
    }
    let mut renumber = vec![usize::MAX; x.size];
    for (new, &old) in elements.iter().enumerate() {
        renumber[old] = new;
    }
    let mut old_args = Vec::new();
    let algebra = FiniteAlgebra::from_fn(x.sig.clone(), elements.len(), |j, args| {
        old_args.clear();
        old_args.extend(args.iter().map(|&a| elements[a]));
        renumber[x.apply_index(j, &old_args)]
    })?;
    let algebra = match &x.labels {
        Some(l) => algebra.with_labels(elements.iter().map(|&e| l[e].clone()).collect())?,
        None => algebra,
    };
    Ok(Subalgebra {
        elements,
        algebra: Some(algebra),
        embedding,
    })
}

/// A direct product with its projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product {
    pub algebra: FiniteAlgebra,
    pub projections: Vec<CarrierMap>,
}

/// Componentwise product. Element `(a₁,…,a_r)` is encoded as
/// `Σ aⱼ·Π_{l>j} kₗ`. The empty product is the one-element algebra over `sig`.
pub fn product(sig: &Signature, factors: &[&FiniteAlgebra], caps: &Caps) -> Result<Product> {
    for f in factors {
        if f.sig != *sig {
            return Err(Error::SignatureMismatch(format!(
                "factor `{}` vs `{}`",
                f.sig, sig
            )));
        }
    }
    let mut size = 1usize;
    for f in factors {
        size = size
            .checked_mul(f.size)
            .filter(|&s| s <= caps.max_carrier)
            .ok_or(Error::SizeCapExceeded {
                what: "product carrier",
                limit: caps.max_carrier,
            })?;
    }
    for symbol in sig.symbols() {
        if checked_pow(size, symbol.arity).is_none_or(|n| n > caps.max_table_entries) {
            return Err(Error::SizeCapExceeded {
                what: "product operation table",
                limit: caps.max_table_entries,
            });
        }
    }

    let sizes: Vec<usize> = factors.iter().map(|f| f.size).collect();
    let components: Vec<Vec<usize>> = (0..size)
        .map(|e| {
            let mut c = vec![0; sizes.len()];
            let mut rest = e;
            for (slot, &k) in c.iter_mut().zip(&sizes).rev() {
                *slot = rest % k;
                rest /= k;
            }
            c
        })
        .collect();
    let factor_idx: Vec<Vec<usize>> = factors
        .iter()
        .map(|f| {
            sig.symbols()
                .iter()
                .map(|s| f.sig.position(&s.name).expect("same signature"))
                .collect()
        })
        .collect();

    let mut comp_args = Vec::new();
    let algebra = FiniteAlgebra::from_fn(sig.clone(), size, |j, args| {
        let mut value = 0;
        for (l, f) in factors.iter().enumerate() {
            comp_args.clear();
            comp_args.extend(args.iter().map(|&a| components[a][l]));
            value = value * sizes[l] + f.apply_index(factor_idx[l][j], &comp_args);
        }
        value
    })?;
    let projections = (0..factors.len())
        .map(|l| CarrierMap::new(sizes[l], components.iter().map(|c| c[l]).collect()))
        .collect::<Result<_>>()?;
    Ok(Product {
        algebra,
        projections,
    })
}

/// A quotient algebra and its quotient map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub algebra: FiniteAlgebra,
    pub map: CarrierMap,
}

/// `X/π`, with carrier the block indices of `π` in canonical order.
pub fn quotient(x: &FiniteAlgebra, pi: &Partition) -> Result<Quotient> {
    if let Check::Fail(v) = congruence::is_congruence_via_translations(x, pi)? {
        return Err(Error::NotACongruence(Box::new(v)));
    }
    Ok(quotient_unchecked(x, pi))
}

/// Builds `X/π` from block representatives. `π` must be a congruence.
pub(crate) fn quotient_unchecked(x: &FiniteAlgebra, pi: &Partition) -> Quotient {
    let reps = pi.representatives();
    let mut rep_args = Vec::new();
    let algebra = FiniteAlgebra::from_fn(x.sig.clone(), pi.num_blocks(), |j, args| {
        rep_args.clear();
        rep_args.extend(args.iter().map(|&b| reps[b]));
        pi.block(x.apply_index(j, &rep_args))
    })
    .expect("quotient of a valid algebra is valid");
    let map = CarrierMap::new(pi.num_blocks(), pi.block_of().to_vec()).expect("block ids in range");
    Quotient { algebra, map }
}

/// The fiber partition of `φ`.
pub fn kernel(phi: &CarrierMap) -> Partition {
    Partition::from_labels(phi.values())
}

/// Checks `p ≈ q` over all assignments of `vars p ∪ vars q`, in
/// lexicographic order with the smallest variable most significant.
pub fn holds(x: &FiniteAlgebra, p: &Term, q: &Term) -> Result<Check<VarAssignment>> {
    let vars: Vec<u32> = p.vars().union(&q.vars()).copied().collect();
    let slot = |v: u32| vars.binary_search(&v).ok();
    let cp = Compiled::new(p, x, &slot)?;
    let cq = Compiled::new(q, x, &slot)?;
    let mut values = vec![0; vars.len()];
    loop {
        if cp.eval(x, &values) != cq.eval(x, &values) {
            let assignment = VarAssignment(vars.iter().copied().zip(values).collect());
            return Ok(Check::Fail(assignment));
        }
        if !next_tuple(&mut values, x.size) {
            return Ok(Check::Pass);
        }
    }
}

/// The first identity (in list order) that fails, with its counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationalFailure {
    pub index: usize,
    pub identity: Identity,
    pub assignment: VarAssignment,
}

pub fn in_equational_class(
    x: &FiniteAlgebra,
    identities: &[Identity],
) -> Result<Check<EquationalFailure>> {
    for (index, id) in identities.iter().enumerate() {
        if let Check::Fail(assignment) = holds(x, &id.lhs, &id.rhs)? {
            return Ok(Check::Fail(EquationalFailure {
                index,
                identity: id.clone(),
                assignment,
            }));
        }
    }
    Ok(Check::Pass)
}

/// Group axioms over `{m/2, i/1, e/0}`:
/// `xe ≈ x`, `ex ≈ x`, `xx⁻¹ ≈ e`, `x⁻¹x ≈ e`, `x(yz) ≈ (xy)z`.
pub fn group_axioms() -> Vec<Identity> {
    let x = || Term::var(1);
    let y = || Term::var(2);
    let z = || Term::var(3);
    let e = || Term::constant("e");
    let m = |a, b| Term::apply("m", vec![a, b]);
    let i = |a| Term::apply("i", vec![a]);
    vec![
        Identity::new(m(x(), e()), x()),
        Identity::new(m(e(), x()), x()),
        Identity::new(m(x(), i(x())), e()),
        Identity::new(m(i(x()), x()), e()),
        Identity::new(m(x(), m(y(), z())), m(m(x(), y()), z())),
    ]
}

/// `x ↦ (φ₁(x),…,φᵣ(x))` into the product of the targets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagonal {
    pub product: Product,
    pub map: CarrierMap,
    pub injective: bool,
}

pub fn diagonal_hom(
    x: &FiniteAlgebra,
    homs: &[(&CarrierMap, &FiniteAlgebra)],
    caps: &Caps,
) -> Result<Diagonal> {
    if homs.is_empty() {
        return Err(Error::InvalidMap("diagonal of an empty family".into()));
    }
    for (phi, y) in homs {
        if let Check::Fail(v) = is_homomorphism(phi, x, y)? {
            return Err(Error::NotAHomomorphism {
                symbol: v.symbol,
                args: v.args,
            });
        }
    }
    let targets: Vec<&FiniteAlgebra> = homs.iter().map(|(_, y)| *y).collect();
    let product = product(&x.sig, &targets, caps)?;
    let values = (0..x.size)
        .map(|e| {
            homs.iter()
                .fold(0, |acc, (phi, y)| acc * y.size + phi.get(e))
        })
        .collect();
    let map = CarrierMap::new(product.algebra.size, values)?;
    let injective = map.is_injective();
    Ok(Diagonal {
        product,
        map,
        injective,
    })
}
