use fraisse::{back_and_forth, steer_toward, GenericQuiver};
use proptest::prelude::*;
use quiver_core::range_set;
use quiver_core::sample::random_quiver;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn random_targets_are_reached_and_kept() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20 {
        let target = random_quiver(&mut rng, 6, 3);
        for seed in 0..5 {
            let mut g = GenericQuiver::new(seed);
            let r = steer_toward(&mut g, &target, 6);
            let w = range_set(1, 6);
            assert_eq!(r.start.mutate_word(&r.word).restrict(&w), target.restrict(&w));
            assert!(r.monotone_agreement(&target, &r.start));
        }
    }
}

#[test]
fn twenty_nested_isomorphisms() {
    let mut g = GenericQuiver::new(20);
    g.force_all(1..=8);
    let isos = back_and_forth(&mut g, 4, 20);
    assert_eq!(isos.len(), 20);
    for (k, p) in isos.iter().enumerate() {
        assert_eq!(p.pairs.len(), k + 1);
        assert!(p.holds_on(g.current(), 4));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // Steering after earlier mutations still lands on the target: mutated
    // generic quivers are generic.
    #[test]
    fn steering_from_a_mutated_frame(seed in any::<u64>(), pre in proptest::collection::vec(1u64..6, 0..6)) {
        let mut g = GenericQuiver::new(seed);
        g.force_all(1..=5);
        for v in pre {
            g.mutate(v).unwrap();
        }
        let target = random_quiver(&mut ChaCha8Rng::seed_from_u64(seed ^ 1), 5, 2);
        let before = g.current().clone();
        let r = steer_toward(&mut g, &target, 5);
        prop_assert_eq!(r.start.restrict(&before.support()), before.restrict(&before.support()));
        prop_assert!(r.monotone_agreement(&target, &r.start));
    }
}
