use convergence::{classify_lf, strong_certificate, weak_certificate, LfVerdict, Status, Trajectory};
use proptest::prelude::*;
use quiver_core::sample::random_quiver_on;
use quiver_core::{Quiver, VertexSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seqcomb::{Descriptor, Generator};

#[test]
fn pair_blocks_converge_back_to_the_start() {
    let d = Descriptor::generator(Generator::PairBlocks);
    assert_eq!(classify_lf(&d, 100).unwrap().verdict, LfVerdict::AllConverge);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let q = random_quiver_on(&mut rng, 6, 3);
        let window = quiver_core::range_set(1, 6);
        let c = strong_certificate(&Trajectory::new(q.clone(), d.clone()), &window, 60).unwrap();
        assert!(matches!(c.status, Status::StableSince(_)), "{:?} on {q:?}", c.status);
        assert_eq!(c.limit(), Some(&q.overfill(&window)));
    }
}

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        Just(Generator::IdentityRay),
        (1u64..4).prop_map(Generator::ShiftedRay),
        Just(Generator::PairBlocks),
        (1u64..6).prop_map(Generator::Repeat),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // A frozen overfill freezes the restriction inside it, and a frozen
    // restriction freezes every smaller one.
    #[test]
    fn certificates_are_monotone(seed in any::<u64>(), g in generator(), bits in 1u8..64, sub in 1u8..64) {
        let q: Quiver = random_quiver_on(&mut ChaCha8Rng::seed_from_u64(seed), 6, 2);
        let window: VertexSet = (1..=6).filter(|i| bits >> (i - 1) & 1 == 1).collect();
        let smaller: VertexSet = window.iter().copied().filter(|i| sub >> (i - 1) & 1 == 1).collect();
        let t = Trajectory::new(q, Descriptor::generator(g));
        let strong = strong_certificate(&t, &window, 40).unwrap();
        let weak = weak_certificate(&t, &window, 40).unwrap();
        if let Some(limit) = strong.limit() {
            prop_assert_eq!(weak.limit(), Some(&limit.restrict(&window)));
        }
        if let Some(limit) = weak.limit() {
            let inner = weak_certificate(&t, &smaller, 40).unwrap();
            prop_assert_eq!(inner.limit(), Some(&limit.restrict(&smaller)));
        }
    }
}
