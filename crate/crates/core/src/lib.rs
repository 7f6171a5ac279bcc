//! Finite universal algebra workbench.
//!
//! Algebras are finite, with carrier `{0,…,k-1}` and one dense lookup table
//! per operation symbol. On top of that the crate provides term parsing and
//! evaluation, identity checking, congruences (directly and through
//! principal translations), translation semigroups, Mal'cev operations and
//! the least factorization of a map through a surjective homomorphism.

pub mod algebra;
pub mod caps;
pub mod check;
pub mod congruence;
pub mod error;
pub mod factorization;
pub mod fixtures;
pub mod json;
pub mod malcev;
pub mod partition;
pub mod signature;
pub mod term;
pub mod translation;

pub use algebra::{
    apply, diagonal_hom, group_axioms, holds, in_equational_class, is_homomorphism, kernel,
    product, quotient, subalgebra_generated, CarrierMap, Diagonal, EquationalFailure,
    FiniteAlgebra, HomViolation, OpTable, Product, Quotient, Subalgebra,
};
pub use caps::Caps;
pub use check::Check;
pub use congruence::{
    all_congruences, congruence_generated, is_congruence, is_congruence_direct,
    is_congruence_via_translations, join_congruences, largest_congruence_below,
    largest_congruence_below_by_refinement, meet, DirectViolation, TranslationViolation,
};
pub use error::{Error, Result};
pub use factorization::{
    enumerate_factorizations, greatest_factorization, is_factorization, least_factorization,
    least_factorization_detailed, precedes, Factorization, FactorizationDefect, LeastFactorization,
};
pub use json::{algebra_from_json, algebra_to_json, AlgebraDocument};
pub use malcev::{
    clone_ternary_terms, find_malcev_operations, group_malcev, has_malcev_term, is_malcev_op,
    malcev_term_witness, MalcevSearch,
};
pub use partition::{all_partitions, Partition};
pub use signature::{parse_signature, Signature, Symbol};
pub use term::{
    classify_identity, evaluate, occurrences, parse_term, vars_of, Identity, PreservationClass,
    Term, TermKind, VarAssignment,
};
pub use translation::{principal_translations, translation_semigroup, Descriptor, Translation};
