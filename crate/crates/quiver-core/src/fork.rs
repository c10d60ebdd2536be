use thiserror::Error;

use crate::props::{is_abundant, is_acyclic};
use crate::{QuiverOf, Vertex, VertexSet, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("AbundanceViolation: |Q({0},{1})| <= 1")]
pub struct AbundanceViolation(pub Vertex, pub Vertex);

/// The point of return, if `q` is a fork on its support.
///
/// A fork is abundant and not acyclic; at its return `r` every arrow
/// `i -> r -> j` is beaten by `Q(j, i)`, and removing `r` leaves an acyclic
/// quiver. At most one vertex can qualify, which is asserted.
pub fn fork_point<W: Weight>(q: &QuiverOf<W>) -> Option<Vertex> {
    if !is_abundant(q) || is_acyclic(q) {
        return None;
    }
    let support = q.support();
    let mut found = None;
    for &r in &support {
        let nbrs = q.neighbors(r);
        // Q(r, y) > 0 means y in Q^+(r); < 0 means y in Q^-(r).
        let ins: Vec<&(Vertex, W)> = nbrs.iter().filter(|(_, m)| m.is_negative()).collect();
        let outs: Vec<&(Vertex, W)> = nbrs.iter().filter(|(_, m)| m.is_positive()).collect();
        let f1 = ins.iter().all(|(i, q_ri)| {
            let q_ir = -q_ri.clone();
            outs.iter().all(|(j, q_rj)| {
                let q_ji = q.get(*j, *i);
                q_ji > q_ir && &q_ji > q_rj
            })
        });
        if !f1 {
            continue;
        }
        let mut rest = support.clone();
        rest.remove(&r);
        if is_acyclic(&q.restrict(&rest)) {
            assert!(found.is_none(), "two points of return: {found:?} and {r}");
            found = Some(r);
        }
    }
    found
}

/// The acyclic order on `v`, least element first: `x` precedes `y` iff
/// `Q(x, y) > 0`. `None` when the restriction to `v` has an oriented cycle.
pub fn acyclic_order<W: Weight>(q: &QuiverOf<W>, v: &VertexSet) -> Result<Option<Vec<Vertex>>, AbundanceViolation> {
    let vs: Vec<Vertex> = v.iter().copied().collect();
    let one = W::from(1);
    for (a, &x) in vs.iter().enumerate() {
        for &y in &vs[a + 1..] {
            if q.get(x, y).abs() <= one {
                return Err(AbundanceViolation(x, y));
            }
        }
    }
    // In a tournament the acyclic order is by decreasing out-degree.
    let mut scored: Vec<(usize, Vertex)> = vs
        .iter()
        .map(|&x| (vs.iter().filter(|&&y| q.get(x, y).is_positive()).count(), x))
        .collect();
    scored.sort_by(|a, b| b.cmp(a));
    let order: Vec<Vertex> = scored.into_iter().map(|(_, x)| x).collect();
    let consistent = order
        .iter()
        .enumerate()
        .all(|(a, &x)| order[a + 1..].iter().all(|&y| q.get(x, y).is_positive()));
    Ok(consistent.then_some(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{range_set, Quiver};
    use num_traits::Signed;
    use proptest::prelude::*;

    fn qn(n: u64) -> Quiver {
        let mut q = Quiver::new();
        for i in 1..=n + 1 {
            for j in 1..i {
                q.set(i, j, 2.into());
            }
        }
        q
    }

    #[test]
    fn markov_is_not_a_fork() {
        let markov = Quiver::from_arrows([(1, 2, 2), (2, 3, 2), (3, 1, 2)]);
        assert_eq!(fork_point(&markov), None);
    }

    #[test]
    fn acyclic_quivers_are_not_forks() {
        assert_eq!(fork_point(&qn(3)), None);
        assert_eq!(fork_point(&Quiver::new()), None);
    }

    #[test]
    fn mutating_q3_in_the_middle_gives_a_fork() {
        assert_eq!(fork_point(&qn(3).mutate(2)), Some(2));
    }

    #[test]
    fn qn_order_runs_from_top_to_bottom() {
        for n in 1..=5 {
            let order = acyclic_order(&qn(n), &range_set(1, n + 1)).unwrap().unwrap();
            assert_eq!(order, (1..=n + 1).rev().collect::<Vec<_>>());
        }
    }

    #[test]
    fn order_edge_cases() {
        let cyc = Quiver::from_arrows([(1, 2, 2), (2, 3, 2), (3, 1, 2)]);
        assert_eq!(acyclic_order(&cyc, &range_set(1, 3)), Ok(None));
        let two = Quiver::from_arrows([(2, 1, 3)]);
        assert_eq!(acyclic_order(&two, &range_set(1, 2)), Ok(Some(vec![2, 1])));
        let thin = Quiver::from_arrows([(1, 2, 1)]);
        assert_eq!(acyclic_order(&thin, &range_set(1, 2)), Err(AbundanceViolation(1, 2)));
    }

    // Abundant acyclic quiver on [n]: i -> j for i < j in a random relabeling,
    // with weights in [2, 4].
    fn arb_abundant_acyclic() -> impl Strategy<Value = Quiver> {
        (3usize..=6).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                Just(n),
                Just((1..=n as u64).collect::<Vec<_>>()).prop_shuffle(),
                proptest::collection::vec(2i64..=4, pairs),
            )
                .prop_map(|(n, perm, ws)| {
                    let mut q = Quiver::new();
                    let mut k = 0;
                    for a in 0..n {
                        for b in a + 1..n {
                            q.set(perm[a], perm[b], ws[k].into());
                            k += 1;
                        }
                    }
                    q
                })
        })
    }

    // Drives an abundant acyclic quiver into fork territory and returns the
    // fork together with its point of return.
    fn into_fork(q: &Quiver) -> (Quiver, Vertex) {
        let order = acyclic_order(q, &q.support()).unwrap().unwrap();
        let k = order[1];
        let f = q.mutate(k);
        (f, k)
    }

    proptest! {
        #[test]
        fn fork_growth(q in arb_abundant_acyclic(), steps in proptest::collection::vec(0usize..6, 1..5)) {
            let (mut f, mut r) = into_fork(&q);
            prop_assert_eq!(fork_point(&f), Some(r));
            for s in steps {
                let others: Vec<Vertex> = f.support().into_iter().filter(|&v| v != r).collect();
                let k = others[s % others.len()];
                let g = f.mutate(k);
                prop_assert_eq!(fork_point(&g), Some(k));
                prop_assert!(g.arrow_total() > f.arrow_total());
                f = g;
                r = k;
            }
        }

        #[test]
        fn acyclic_order_shift(q in arb_abundant_acyclic(), s in 0usize..6) {
            let (f, r) = into_fork(&q);
            let mut rest = f.support();
            rest.remove(&r);
            let order = acyclic_order(&f, &rest).unwrap().unwrap();
            let j = s % order.len();
            let vj = order[j];
            let g = f.mutate(vj);
            let mut rest_g = g.support();
            rest_g.remove(&vj);
            let got = acyclic_order(&g, &rest_g).unwrap().unwrap();
            let mut expected: Vec<Vertex> = order.iter().copied().filter(|&v| v != vj).collect();
            if f.get(r, vj).is_positive() {
                expected.insert(0, r);
            } else {
                expected.push(r);
            }
            prop_assert_eq!(&got, &expected);
            // In- and out-neighbors of the new return split the order at vj's old slot.
            let pos_r = expected.iter().position(|&v| v == r).unwrap();
            for (idx, &v) in expected.iter().enumerate() {
                let before = if f.get(r, vj).is_positive() { idx <= j } else { idx < j };
                prop_assert_eq!(g.get(vj, v).is_positive(), before, "vertex {} (r at {})", v, pos_r);
            }
        }
    }
}
