use finalg_core::fixtures::{cyclic_group, klein_four};
use finalg_core::{
    classify_identity, evaluate, occurrences, parse_term, vars_of, PreservationClass, Signature,
    Term, TermKind, VarAssignment,
};
use proptest::prelude::*;

fn sig() -> Signature {
    Signature::new([("m", 2), ("i", 1), ("e", 0), ("mu", 3)]).unwrap()
}

fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![(1u32..5).prop_map(Term::var), Just(Term::constant("e")),];
    leaf.prop_recursive(5, 40, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2).prop_map(|c| Term::apply("m", c)),
            inner.clone().prop_map(|t| Term::apply("i", vec![t])),
            prop::collection::vec(inner, 3).prop_map(|c| Term::apply("mu", c)),
        ]
    })
}

/// Counts `Variable(v)` leaves by walking the tree.
fn leaf_count(t: &Term, v: u32) -> u32 {
    match t.kind() {
        TermKind::Variable(w) => u32::from(*w == v),
        TermKind::Constant(_) => 0,
        TermKind::Apply(_, children) => children.iter().map(|c| leaf_count(c, v)).sum(),
    }
}

fn mu_algebra() -> finalg_core::FiniteAlgebra {
    // Z4 extended by the ternary x - y + z
    let z4 = cyclic_group(4);
    finalg_core::FiniteAlgebra::from_fn(sig(), 4, |j, a| match j {
        3 => (a[0] + 4 - a[1] + a[2]) % 4,
        _ => z4.table(j).values()[a.iter().fold(0, |acc, &x| acc * 4 + x)],
    })
    .unwrap()
}

proptest! {
    #[test]
    fn print_parse_round_trip(t in arb_term()) {
        let text = t.to_string();
        prop_assert_eq!(parse_term(&text, &sig()).unwrap(), t.clone());
        prop_assert!(t.check(&sig()).is_ok());
    }

    #[test]
    fn occurrences_match_leaves(t in arb_term()) {
        for v in 1..6 {
            prop_assert_eq!(occurrences(&t, v), leaf_count(&t, v));
            prop_assert_eq!(occurrences(&t, v) > 0, vars_of(&t).contains(&v));
        }
    }

    #[test]
    fn linear_implies_linear_quadratic(p in arb_term(), q in arb_term()) {
        let class = classify_identity(&p, &q);
        if finalg_core::term::is_linear(&p, &q) {
            prop_assert!(finalg_core::term::is_linear_quadratic(&p, &q));
            prop_assert_eq!(class, PreservationClass::Linear);
        }
        prop_assert_eq!(class, classify_identity(&q, &p));
    }

    #[test]
    fn evaluation_depends_only_on_term_variables(
        t in arb_term(),
        a in prop::collection::vec(0usize..4, 5),
        b in prop::collection::vec(0usize..4, 5),
    ) {
        let alg = mu_algebra();
        let vars = vars_of(&t);
        let first = VarAssignment((1..=5).map(|v| (v, a[v as usize - 1])).collect());
        // agrees with `first` on vars_of(t), arbitrary elsewhere
        let second = VarAssignment(
            (1..=5)
                .map(|v| (v, if vars.contains(&v) { a[v as usize - 1] } else { b[v as usize - 1] }))
                .collect(),
        );
        prop_assert_eq!(evaluate(&t, &alg, &first).unwrap(), evaluate(&t, &alg, &second).unwrap());
    }

    #[test]
    fn evaluation_ignores_extra_bindings(t in arb_term(), a in prop::collection::vec(0usize..4, 5)) {
        let alg = mu_algebra();
        let full = VarAssignment((1..=5).map(|v| (v, a[v as usize - 1])).collect());
        let minimal = VarAssignment(vars_of(&t).into_iter().map(|v| (v, a[v as usize - 1])).collect());
        prop_assert_eq!(evaluate(&t, &alg, &full).unwrap(), evaluate(&t, &alg, &minimal).unwrap());
    }
}

#[test]
fn evaluation_against_direct_arithmetic() {
    let g = Signature::group();
    let t = parse_term("m(i(v1), m(v2, v2))", &g).unwrap();
    let z4 = cyclic_group(4);
    for a in 0..4 {
        for b in 0..4 {
            let got = evaluate(&t, &z4, &VarAssignment::from([(1, a), (2, b)])).unwrap();
            assert_eq!(got, (4 - a + 2 * b) % 4);
        }
    }
    let v4 = klein_four();
    let t = parse_term("m(v1, v1)", &g).unwrap();
    for a in 0..4 {
        assert_eq!(
            evaluate(&t, &v4, &VarAssignment::from([(1, a)])).unwrap(),
            0
        );
    }
}

#[test]
fn paper_style_identities_classify() {
    let g = Signature::group();
    let comm_l = parse_term("m(v1,v2)", &g).unwrap();
    let comm_r = parse_term("m(v2,v1)", &g).unwrap();
    assert_eq!(
        classify_identity(&comm_l, &comm_r),
        PreservationClass::Linear
    );
    // x·x⁻¹ ≈ e has x twice on the left, none on the right
    let inv = parse_term("m(v1,i(v1))", &g).unwrap();
    assert_eq!(
        classify_identity(&inv, &Term::constant("e")),
        PreservationClass::LinearQuadratic
    );
}
