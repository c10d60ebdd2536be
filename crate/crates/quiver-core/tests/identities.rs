use num_bigint::BigInt;
use proptest::prelude::*;
use quiver_core::{check_property, PropertyKind, Quiver, Tri, VertexSet};

fn arb_quiver() -> impl Strategy<Value = Quiver> {
    proptest::collection::vec((1u64..=8, 1u64..=8, -4i64..=4), 0..20)
        .prop_map(|t| Quiver::from_arrows(t.into_iter().filter(|(i, j, _)| i != j)))
}

fn arb_set() -> impl Strategy<Value = VertexSet> {
    proptest::collection::btree_set(1u64..=8, 0..8)
}

proptest! {
    #[test]
    fn mutation_is_an_involution(q in arb_quiver(), x in 1u64..=9) {
        prop_assert_eq!(q.mutate(x).mutate(x), q);
    }

    #[test]
    fn restriction_commutes_with_inner_mutation(q in arb_quiver(), v in arb_set(), pick in 0usize..8) {
        prop_assume!(!v.is_empty());
        let x = *v.iter().nth(pick % v.len()).unwrap();
        prop_assert_eq!(q.restrict(&v).mutate(x), q.mutate(x).restrict(&v));
    }

    #[test]
    fn overfill_commutes_with_inner_mutation(q in arb_quiver(), v in arb_set(), pick in 0usize..8) {
        prop_assume!(!v.is_empty());
        let x = *v.iter().nth(pick % v.len()).unwrap();
        prop_assert_eq!(q.overfill(&v).mutate(x).overfill(&v), q.mutate(x).overfill(&v));
    }

    #[test]
    fn restriction_is_full_inside_overfill(q in arb_quiver(), v in arb_set()) {
        prop_assert_eq!(q.overfill(&v).restrict(&v), q.restrict(&v));
    }

    #[test]
    fn support_is_invariant_under_mutation(q in arb_quiver(), x in 1u64..=9) {
        prop_assert_eq!(q.mutate(x).support(), q.support());
    }

    #[test]
    fn connectivity_is_invariant_under_mutation(q in arb_quiver(), x in 1u64..=9) {
        let c = check_property(&q, &PropertyKind::Connected);
        prop_assert_eq!(check_property(&q.mutate(x), &PropertyKind::Connected), c);
    }

    #[test]
    fn json_round_trip(q in arb_quiver()) {
        let text = quiver_core::to_json(&q);
        let back: Quiver = quiver_core::from_json(&text).unwrap();
        prop_assert_eq!(quiver_core::to_json(&back), text);
    }
}

#[test]
fn markov_mutations_stay_markov() {
    let markov = Quiver::from_arrows([(1, 2, 2), (2, 3, 2), (3, 1, 2)]);
    for x in 1..=3 {
        let m = markov.mutate(x);
        assert!(quiver_core::is_isomorphic(&markov, &m).is_some());
        assert_eq!(m.max_weight(), BigInt::from(2));
    }
    assert_eq!(check_property(&markov, &PropertyKind::Acyclic), Tri::No);
}
