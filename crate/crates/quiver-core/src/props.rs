use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::{QuiverOf, Tri, Vertex, VertexSet, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropertyKind {
    Finite,
    /// At most one connected component containing an arrow.
    Connected,
    Acyclic,
    /// `|Q(x, y)| >= 2` for all distinct support vertices.
    Abundant,
    /// Some pair has `|Q(x, y)|` in the set. Entries are read as absolute values.
    HasWeightIn(BTreeSet<i64>),
    MutationAcyclicWithin(usize),
    TameWithin(usize),
}

/// Evaluates `p` on `q`. The depth-bounded kinds never answer the side they
/// cannot certify: mutation-acyclicity is Yes or Unknown, tameness No or Unknown.
pub fn check_property<W: Weight>(q: &QuiverOf<W>, p: &PropertyKind) -> Tri {
    let tri = |b: bool| if b { Tri::Yes } else { Tri::No };
    match p {
        PropertyKind::Finite => Tri::Yes,
        PropertyKind::Connected => tri(components(q).len() <= 1),
        PropertyKind::Acyclic => tri(is_acyclic(q)),
        PropertyKind::Abundant => tri(is_abundant(q)),
        PropertyKind::HasWeightIn(s) => {
            // The vertex set is infinite, so some pair always has weight 0.
            if s.contains(&0) {
                return Tri::Yes;
            }
            let hit = q.arrows().any(|(_, _, m)| s.iter().any(|&w| m.abs() == W::from(w.abs())));
            tri(hit)
        }
        PropertyKind::MutationAcyclicWithin(d) => {
            if bfs_within(q, *d, is_acyclic) {
                Tri::Yes
            } else {
                Tri::Unknown
            }
        }
        PropertyKind::TameWithin(d) => {
            let two = W::from(2);
            if bfs_within(q, *d, |x| x.max_weight() > two) {
                Tri::No
            } else {
                Tri::Unknown
            }
        }
    }
}

/// Whether some quiver reachable by at most `depth` mutations satisfies `hit`.
fn bfs_within<W: Weight>(q: &QuiverOf<W>, depth: usize, hit: impl Fn(&QuiverOf<W>) -> bool) -> bool {
    let support: Vec<Vertex> = q.support().into_iter().collect();
    let mut seen: HashSet<QuiverOf<W>> = HashSet::new();
    let mut queue = VecDeque::from([(q.clone(), 0usize)]);
    seen.insert(q.clone());
    while let Some((cur, d)) = queue.pop_front() {
        if hit(&cur) {
            return true;
        }
        if d == depth {
            continue;
        }
        for &x in &support {
            let next = cur.mutate(x);
            if seen.insert(next.clone()) {
                queue.push_back((next, d + 1));
            }
        }
    }
    false
}

/// Connected components of the support.
pub fn components<W: Weight>(q: &QuiverOf<W>) -> Vec<VertexSet> {
    let mut left = q.support();
    let mut out = Vec::new();
    while let Some(&start) = left.iter().next() {
        let mut comp = VertexSet::new();
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if left.remove(&v) {
                comp.insert(v);
                stack.extend(q.neighbors(v).into_iter().map(|(y, _)| y));
            }
        }
        out.push(comp);
    }
    out
}

/// No oriented cycle along positive arrows.
pub fn is_acyclic<W: Weight>(q: &QuiverOf<W>) -> bool {
    // Kahn's algorithm on the support.
    let support = q.support();
    let mut indeg: std::collections::BTreeMap<Vertex, usize> = support.iter().map(|&v| (v, 0)).collect();
    for (i, j, m) in q.arrows() {
        *indeg.get_mut(if m.is_positive() { &j } else { &i }).unwrap() += 1;
    }
    let mut ready: Vec<Vertex> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
    let mut done = 0;
    while let Some(v) = ready.pop() {
        done += 1;
        for (y, m) in q.neighbors(v) {
            if m.is_positive() {
                let d = indeg.get_mut(&y).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.push(y);
                }
            }
        }
    }
    done == support.len()
}

pub fn is_abundant<W: Weight>(q: &QuiverOf<W>) -> bool {
    is_abundant_on(q, &q.support())
}

/// `|Q(x, y)| >= 2` for all distinct `x, y` in `v`.
pub fn is_abundant_on<W: Weight>(q: &QuiverOf<W>, v: &VertexSet) -> bool {
    let two = W::from(2);
    let vs: Vec<Vertex> = v.iter().copied().collect();
    vs.iter()
        .enumerate()
        .all(|(a, &x)| vs[a + 1..].iter().all(|&y| q.get(x, y).abs() >= two))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Quiver;

    fn markov() -> Quiver {
        Quiver::from_arrows([(1, 2, 2), (2, 3, 2), (3, 1, 2)])
    }

    #[test]
    fn markov_is_not_certified_mutation_acyclic() {
        assert_eq!(check_property(&markov(), &PropertyKind::MutationAcyclicWithin(6)), Tri::Unknown);
        assert_eq!(check_property(&markov(), &PropertyKind::TameWithin(6)), Tri::Unknown);
        assert_eq!(check_property(&markov(), &PropertyKind::Abundant), Tri::Yes);
    }

    #[test]
    fn three_cycle_acyclicity() {
        let c = Quiver::from_arrows([(1, 2, 1), (2, 3, 1), (3, 1, 1)]);
        assert_eq!(check_property(&c, &PropertyKind::Acyclic), Tri::No);
        assert_eq!(check_property(&c.mutate(2), &PropertyKind::Acyclic), Tri::Yes);
        assert_eq!(check_property(&c, &PropertyKind::MutationAcyclicWithin(1)), Tri::Yes);
        assert_eq!(check_property(&c, &PropertyKind::MutationAcyclicWithin(0)), Tri::Unknown);
    }

    #[test]
    fn connectivity_ignores_isolated_vertices() {
        assert_eq!(check_property(&Quiver::new(), &PropertyKind::Connected), Tri::Yes);
        let two = Quiver::from_arrows([(1, 2, 1), (5, 6, 1)]);
        assert_eq!(check_property(&two, &PropertyKind::Connected), Tri::No);
        let one = Quiver::from_arrows([(1, 2, 1), (2, 6, 1)]);
        assert_eq!(check_property(&one, &PropertyKind::Connected), Tri::Yes);
    }

    #[test]
    fn weights() {
        let q = Quiver::from_arrows([(1, 2, -3)]);
        let w = |s: &[i64]| PropertyKind::HasWeightIn(s.iter().copied().collect());
        assert_eq!(check_property(&q, &w(&[3])), Tri::Yes);
        assert_eq!(check_property(&q, &w(&[1, 2])), Tri::No);
        assert_eq!(check_property(&Quiver::new(), &w(&[0])), Tri::Yes);
        assert_eq!(check_property(&q, &PropertyKind::TameWithin(0)), Tri::No);
    }

    #[test]
    fn kronecker_like_weight_growth_is_wild() {
        // 1 -> 2 -> 3 with a double arrow 1 -> 3 reaches weight > 2.
        let q = Quiver::from_arrows([(1, 2, 1), (2, 3, 2), (1, 3, 2)]);
        assert_eq!(check_property(&q, &PropertyKind::TameWithin(3)), Tri::No);
    }
}
