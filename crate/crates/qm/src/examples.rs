//! Reference examples re-derived through the library, one PASS/FAIL each.
//! Labels name the example by what it exercises.

use std::collections::BTreeMap;

use convergence::{a_infinity, classify_lf, strong_certificate, weak_certificate, LfVerdict, Status, Trajectory};
use fraisse::{back_and_forth, GenericQuiver, Slot};
use framing::{frame, is_strongly_triangular, is_triangular, offdiag_witness, qn_abundant, stabilized_c_vector, Color};
use num_bigint::BigInt;
use quiver_core::{acyclic_order, check_property, fork_point, is_isomorphic, range_set, PropertyKind, Quiver, Tri, Vertex};
use seqcomb::{
    convex_hull, extend_irreducible, is_irreducible, is_linked, reduce_word, reduction_trace, stream_reduce, Descriptor,
    Generator, Rank, VertexFilter,
};

type Check = (&'static str, fn() -> bool);

fn q<const N: usize>(arrows: [(Vertex, Vertex, i64); N]) -> Quiver {
    Quiver::from_arrows(arrows)
}

fn cv(c: &[i64]) -> BTreeMap<Vertex, BigInt> {
    c.iter().enumerate().map(|(k, &v)| (k as Vertex + 1, BigInt::from(v))).collect()
}

/// The two-sided ray on `-5..=5`, shifted by 6: the centre 6 points at every
/// other vertex, `5 -> 4 -> ... -> 1` and `7 -> 8 -> ... -> 11`.
fn two_sided_ray() -> Quiver {
    let mut r = Quiver::new();
    for v in (1..=11).filter(|&v| v != 6) {
        r.set(6, v, 1.into());
    }
    for v in 2..=5 {
        r.set(v, v - 1, 1.into());
    }
    for v in 7..=10 {
        r.set(v, v + 1, 1.into());
    }
    r
}

fn triangular() -> Descriptor {
    Descriptor::generator(Generator::TriangularPalindromes)
}

fn ray(g: Generator, bound: Vertex) -> Trajectory {
    Trajectory::on_truncation(a_infinity(bound), bound, Descriptor::generator(g))
}

const CHECKS: &[Check] = &[
    ("three-cycle mutated at its middle vertex becomes a path", || {
        q([(1, 2, 1), (2, 3, 1), (3, 1, 1)]).mutate(2) == q([(2, 1, 1), (3, 2, 1)])
    }),
    ("two-sided ray restricted around its centre keeps two arrows", || {
        two_sided_ray().restrict(&[5, 6, 7].into()) == q([(6, 5, 1), (6, 7, 1)])
    }),
    ("two-sided ray overfilled around its centre keeps incident arrows", || {
        let w = [5, 6, 7].into();
        let r = two_sided_ray();
        let kept = Quiver::from_arrows(
            r.arrows().filter(|(i, j, _)| [5, 6, 7].contains(i) || [5, 6, 7].contains(j)).map(|(i, j, m)| (i, j, m.clone())),
        );
        r.overfill(&w) == kept && kept.arrows().count() == 12
    }),
    ("Markov quiver is not certified mutation-acyclic at depth 6", || {
        check_property(&q([(1, 2, 2), (2, 3, 2), (3, 1, 2)]), &PropertyKind::MutationAcyclicWithin(6)) == Tri::Unknown
    }),
    ("three-cycle is cyclic and its mutation is acyclic", || {
        let c = q([(1, 2, 1), (2, 3, 1), (3, 1, 1)]);
        check_property(&c, &PropertyKind::Acyclic) == Tri::No && check_property(&c.mutate(2), &PropertyKind::Acyclic) == Tri::Yes
    }),
    ("abundant tournament mutated at a middle vertex is a fork there", || fork_point(&qn_abundant(3).mutate(2)) == Some(2)),
    ("abundant tournament orders its vertices from the top down", || {
        (1..=4).all(|n| {
            acyclic_order(&qn_abundant(n), &range_set(1, n + 1)) == Ok(Some((1..=n + 1).rev().collect()))
        })
    }),
    ("pair blocks reduce to the empty word", || reduce_word(&[1, 1, 2, 2, 3, 3]).is_empty()),
    ("triangular palindromes reduce to the empty word", || {
        let w = triangular().take(12);
        w == [1, 1, 2, 3, 3, 2, 4, 5, 6, 6, 5, 4] && reduce_word(&w).is_empty()
    }),
    ("pair blocks have rank 1 with every letter of rank 1", || {
        let t = reduction_trace(&[1, 1, 2, 2, 3, 3, 4, 4]);
        t.rank == Rank::Finite(1) && t.i_rank.values().all(|&m| m == 1)
    }),
    ("a reduced word has rank 0", || reduction_trace(&[1, 2, 1, 3]).rank == Rank::Finite(0)),
    ("triangular palindromes: letter rank reaches the next triangular number", || {
        // Blocks 1..=5 cover letters 1..=15.
        let t = reduction_trace(&triangular().take(30));
        let tri = |x: usize| (1..=x).any(|k| k * (k + 1) / 2 == x);
        (1..=10u64).all(|i| {
            let m = (1..).find(|&m| tri(i as usize + m - 1)).unwrap();
            t.i_rank[&i] == m
        })
    }),
    ("triangular palindromes induced on three letters", || {
        triangular().induced(VertexFilter::Set([1, 2, 3].into())).take(6) == [1, 1, 2, 3, 3, 2]
    }),
    ("pair blocks stream-reduce to nothing frozen", || {
        let s = stream_reduce(&Descriptor::generator(Generator::PairBlocks), 40).unwrap();
        s.frozen.is_empty() && s.live_suffix.len() <= 1
    }),
    ("triangular palindromes stream-reduce to nothing frozen", || {
        let s = stream_reduce(&triangular(), 72).unwrap();
        s.frozen.is_empty() && s.live_suffix.is_empty()
    }),
    ("convex hull of an absent letter is empty", || {
        convex_hull(&Descriptor::prefix(vec![1, 2, 1]), 3, 10).map(|h| h.is_empty()) == Ok(true)
    }),
    ("the empty set is never linked", || {
        is_linked(&Descriptor::generator(Generator::IdentityRay), &[].into(), 50) == Ok(Tri::No)
    }),
    ("extending a single letter gives an irreducible word", || {
        extend_irreducible(&[5], 2).map(|w| w == [5, 2, 5, 2] && is_irreducible(&w)) == Ok(true)
    }),
    ("worked irreducible word over four letters", || {
        is_irreducible(&[5, 2, 5, 2, 8, 2, 5, 2, 5, 8, 1, 8, 5, 2, 5, 2, 8, 2, 5, 2, 5])
    }),
    ("double arrow framed and mutated at its sink", || {
        frame(&q([(2, 1, 2)])).mutate(1).and_then(|f| f.c_vector(2)) == Ok(cv(&[2, 1]))
    }),
    ("double arrow after mutation: sink red, source green", || {
        let f = frame(&q([(2, 1, 2)])).mutate(1).unwrap();
        f.color(1) == Ok(Color::Red) && f.color(2) == Ok(Color::Green)
    }),
    ("abundant tournament on three vertices along its sinks", || {
        frame(&qn_abundant(2)).mutate_word(&[1, 2]).and_then(|f| f.c_vector(3)) == Ok(cv(&[6, 2, 1]))
    }),
    ("abundant tournaments on two and three vertices", || {
        qn_abundant(1) == q([(2, 1, 2)]) && qn_abundant(2) == q([(2, 1, 2), (3, 1, 2), (3, 2, 2)])
    }),
    ("sink sequences are strongly triangular, source-first ones are not", || {
        let q3 = qn_abundant(3);
        is_strongly_triangular(&[1, 2, 3], &q3, Some(4)) == Ok(true) && is_triangular(&[3, 2, 1], &q3) == Ok(false)
    }),
    ("stabilized c-vectors grow by factors of three", || {
        stabilized_c_vector(1) == cv(&[2, 1]) && stabilized_c_vector(2) == cv(&[6, 2, 1]) && stabilized_c_vector(3) == cv(&[18, 6, 2, 1])
    }),
    ("off-diagonal witness for a single letter", || {
        offdiag_witness(&[1]).is_ok_and(|w| w.quiver == q([(2, 1, 2)]) && w.vertex == 1 && w.entry == BigInt::from(2))
    }),
    ("identity ray only disturbs arrows near its prefix", || {
        let mut t = ray(Generator::IdentityRay, 40);
        t.step(10).unwrap();
        let init = a_infinity(40);
        let cur = t.current();
        let touched = range_set(1, 11);
        (1..=40u64).all(|i| {
            (i + 1..=40).all(|j| touched.contains(&i) || touched.contains(&j) || cur.get(i, j) == init.get(i, j))
        }) && cur.get(10, 11) == init.get(11, 10)
    }),
    ("shifted ray converges weakly, cutting vertex 1 loose", || {
        let w = range_set(1, 20);
        let c = weak_certificate(&ray(Generator::ShiftedRay(2), 40), &w, 30).unwrap();
        let mut limit = a_infinity(40);
        limit.set(1, 2, 0.into());
        matches!(c.status, Status::StableSince(_)) && c.limit() == Some(&limit.restrict(&w))
    }),
    ("identity ray converges weakly to the initial quiver", || {
        let w = range_set(1, 20);
        let c = weak_certificate(&ray(Generator::IdentityRay, 40), &w, 30).unwrap();
        matches!(c.status, Status::StableSince(_)) && c.limit() == Some(&a_infinity(40).restrict(&w))
    }),
    ("shifted ray diverges strongly at vertex 1", || {
        let c = strong_certificate(&ray(Generator::ShiftedRay(2), 40), &[1].into(), 30).unwrap();
        matches!(c.status, Status::OscillationWitness { .. })
    }),
    ("identity ray converges strongly", || {
        let c = strong_certificate(&ray(Generator::IdentityRay, 40), &range_set(1, 20), 30).unwrap();
        matches!(c.status, Status::StableSince(_))
    }),
    ("pair blocks return every finite quiver to itself", || {
        let q0 = q([(1, 2, 2), (2, 3, -1), (1, 3, 1)]);
        let t = Trajectory::new(q0.clone(), Descriptor::generator(Generator::PairBlocks));
        let c = strong_certificate(&t, &q0.support(), 10).unwrap();
        matches!(c.status, Status::StableSince(k) if k % 2 == 0) && c.limit() == Some(&q0)
    }),
    ("locally finite verdicts for pair blocks, identity ray and a repeated letter", || {
        let v = |g| classify_lf(&Descriptor::generator(g), 200).unwrap().verdict;
        v(Generator::PairBlocks) == LfVerdict::AllConverge
            && v(Generator::IdentityRay) == LfVerdict::BothDense
            && v(Generator::Repeat(3)) == LfVerdict::CNotDense { d_dense: false }
    }),
    ("generic quiver realizes an isolated extension", || {
        let mut g = GenericQuiver::new(0);
        g.force_all(1..=4);
        let base = range_set(1, 4);
        let slot = Slot { to_base: base.iter().map(|&v| (v, BigInt::from(0))).collect(), to_earlier: BTreeMap::new() };
        let Ok(new) = g.realize_extension(&base, &[slot]) else { return false };
        base.iter().all(|&v| g.count(new[0], v) == Ok(BigInt::from(0)))
    }),
    ("generic quiver correction gadget adds the error", || {
        let mut g = GenericQuiver::new(1);
        g.force_all(1..=3);
        let (v, n) = (1, 3);
        let before = g.count(v, n).unwrap();
        let error = BigInt::from(2);
        let eps = BigInt::from(1);
        let slot = Slot { to_base: [(v, -eps.clone()), (n, error.clone())].into(), to_earlier: BTreeMap::new() };
        let Ok(w) = g.realize_extension(&[v, n].into(), &[slot]) else { return false };
        g.count(v, w[0]) == Ok(eps) && g.mutate(w[0]).is_ok() && g.count(v, n) == Ok(before + error)
    }),
    ("back-and-forth starts with the identity on the mutated vertex", || {
        let mut g = GenericQuiver::new(0);
        g.force_all(1..=3);
        let isos = back_and_forth(&mut g, 2, 1);
        isos.len() == 1 && isos[0].pairs == [(2, 2)].into()
    }),
    ("mutation class of the empty quiver is the one-vertex quiver", || {
        let node = mutclass::explore_class(&mutclass::VertexedQuiver::one_vertex(), &mutclass::Bounds::new(1, 10));
        node.classes.len() == 1 && node.representative == mutclass::VertexedQuiver::one_vertex()
            && is_isomorphic(node.representative.arrows(), &Quiver::new()).is_some()
    }),
];

pub fn run_all() -> Vec<(&'static str, bool)> {
    CHECKS.iter().map(|(name, f)| (*name, f())).collect()
}
