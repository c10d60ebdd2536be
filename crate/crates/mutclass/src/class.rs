use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write;

use num_bigint::BigInt;
use quiver_core::{Quiver, Tri, Vertex, VertexSet};
use serde_json::{json, Value};

use crate::vertexed::VertexedQuiver;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Members with a larger arrow count on some pair are not explored.
    pub max_weight: BigInt,
    /// At most this many isomorphism classes are recorded.
    pub max_nodes: usize,
}

impl Bounds {
    pub fn new(max_weight: i64, max_nodes: usize) -> Self {
        Bounds { max_weight: BigInt::from(max_weight), max_nodes }
    }
}

type ArrowKey = Vec<(Vertex, Vertex, BigInt)>;

fn key(q: &Quiver) -> ArrowKey {
    q.arrows().map(|(i, j, m)| (i, j, m.clone())).collect()
}

/// The relabeling onto `1..=n` with the least arrow list.
///
/// Vertices are first sorted by their sorted neighbour counts, a label-free
/// invariant, so only permutations inside blocks of equal invariant need to
/// be tried.
pub fn canonical_form(q: &VertexedQuiver) -> VertexedQuiver {
    let q = q.compact();
    let n = q.len();
    let profile = |v: Vertex| {
        let mut p: Vec<BigInt> = q.arrows().neighbors(v).into_iter().map(|(_, m)| m).collect();
        p.sort();
        p
    };
    let mut by_profile: BTreeMap<Vec<BigInt>, Vec<Vertex>> = BTreeMap::new();
    for v in 1..=n as Vertex {
        by_profile.entry(profile(v)).or_default().push(v);
    }
    let blocks: Vec<Vec<Vertex>> = by_profile.into_values().collect();
    let mut best: Option<(ArrowKey, Quiver)> = None;
    let mut label: BTreeMap<Vertex, Vertex> = BTreeMap::new();

    fn go(
        q: &Quiver,
        blocks: &[Vec<Vertex>],
        b: usize,
        used: &mut Vec<bool>,
        next: Vertex,
        label: &mut BTreeMap<Vertex, Vertex>,
        best: &mut Option<(ArrowKey, Quiver)>,
    ) {
        if b == blocks.len() {
            let r = q.relabel(|v| label[&v]);
            let k = key(&r);
            if best.as_ref().map_or(true, |(bk, _)| k < *bk) {
                *best = Some((k, r));
            }
            return;
        }
        let block = &blocks[b];
        let done = used.iter().filter(|u| **u).count();
        if done == block.len() {
            let mut fresh = vec![false; blocks.get(b + 1).map_or(0, |x| x.len())];
            go(q, blocks, b + 1, &mut fresh, next, label, best);
            return;
        }
        for (k, &v) in block.iter().enumerate() {
            if used[k] {
                continue;
            }
            used[k] = true;
            label.insert(v, next);
            go(q, blocks, b, used, next + 1, label, best);
            label.remove(&v);
            used[k] = false;
        }
    }
    let mut used = vec![false; blocks.first().map_or(0, |x| x.len())];
    go(q.arrows(), &blocks, 0, &mut used, 1, &mut label, &mut best);
    let arrows = best.map(|(_, r)| r).unwrap_or_default();
    VertexedQuiver::on_range(n as Vertex, arrows)
}

/// What a bounded breadth-first search found in a mutation class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationClassNode {
    /// Least canonical form among the classes found.
    pub representative: VertexedQuiver,
    /// Canonical forms of the isomorphism classes found, sorted by arrow list.
    pub classes: Vec<VertexedQuiver>,
    /// Pairs of class indices related by one mutation.
    pub edges: BTreeSet<(usize, usize)>,
    pub members_found: usize,
    pub weight_bound_hit: bool,
    pub node_bound_hit: bool,
    /// Closed under mutation within the bounds: the class is complete.
    pub frontier_exhausted: bool,
    pub bounds: Bounds,
}

impl MutationClassNode {
    pub fn to_json(&self) -> Value {
        json!({
            "representative": self.representative.to_json(),
            "members_found": self.members_found,
            "frontier_exhausted": self.frontier_exhausted,
            "weight_bound_hit": self.weight_bound_hit,
            "node_bound_hit": self.node_bound_hit,
            "max_weight": self.bounds.max_weight.to_string(),
            "max_nodes": self.bounds.max_nodes,
            "classes": self.classes.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "edges": self.edges,
        })
    }

    /// Exchange graph between isomorphism classes.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph mutation_class {\n");
        for (k, c) in self.classes.iter().enumerate() {
            let arrows: Vec<String> = c.arrows().arrows().map(|(i, j, m)| format!("{i}>{j}:{m}")).collect();
            writeln!(s, "  c{k} [label=\"{}\"];", arrows.join(" ")).unwrap();
        }
        for (a, b) in &self.edges {
            writeln!(s, "  c{a} -- c{b};").unwrap();
        }
        s.push_str("}\n");
        s
    }
}

/// Breadth-first search over single mutations, one entry per isomorphism
/// class. Stops expanding past `max_weight` and stops recording new classes
/// after `max_nodes`, remembering which bound fired.
pub fn explore_class(q: &VertexedQuiver, bounds: &Bounds) -> MutationClassNode {
    let start = canonical_form(q);
    let n = start.len() as Vertex;
    let mut index: BTreeMap<ArrowKey, usize> = BTreeMap::new();
    let mut found: Vec<VertexedQuiver> = Vec::new();
    let mut edges = BTreeSet::new();
    let (mut weight_hit, mut node_hit) = (false, false);
    let mut queue = VecDeque::new();
    index.insert(key(start.arrows()), 0);
    found.push(start.clone());
    queue.push_back(0);
    while let Some(at) = queue.pop_front() {
        let cur = found[at].clone();
        for v in 1..=n {
            let m = cur.arrows().mutate(v);
            if m.max_weight() > bounds.max_weight {
                weight_hit = true;
                continue;
            }
            let c = canonical_form(&VertexedQuiver::on_range(n, m));
            let k = key(c.arrows());
            let to = match index.get(&k) {
                Some(&t) => t,
                None if found.len() >= bounds.max_nodes => {
                    node_hit = true;
                    continue;
                }
                None => {
                    index.insert(k, found.len());
                    found.push(c);
                    queue.push_back(found.len() - 1);
                    found.len() - 1
                }
            };
            if to != at {
                edges.insert((at.min(to), at.max(to)));
            }
        }
    }
    // Renumber by arrow list so the output does not depend on the start.
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by_key(|&k| key(found[k].arrows()));
    let mut new_index = vec![0; found.len()];
    for (new, &old) in order.iter().enumerate() {
        new_index[old] = new;
    }
    let classes: Vec<VertexedQuiver> = order.iter().map(|&k| found[k].clone()).collect();
    let edges = edges
        .into_iter()
        .map(|(a, b)| {
            let (x, y) = (new_index[a], new_index[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    MutationClassNode {
        representative: classes[0].clone(),
        members_found: classes.len(),
        classes,
        edges,
        weight_bound_hit: weight_hit,
        node_bound_hit: node_hit,
        frontier_exhausted: !weight_hit && !node_hit,
        bounds: bounds.clone(),
    }
}

fn subsets(n: Vertex, k: usize) -> Vec<VertexSet> {
    fn go(from: Vertex, n: Vertex, k: usize, cur: &mut Vec<Vertex>, out: &mut Vec<VertexSet>) {
        if cur.len() == k {
            out.push(cur.iter().copied().collect());
            return;
        }
        for v in from..=n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Whether `p` is isomorphic to a full subquiver of some member of the class.
/// `No` needs the class to be completely explored.
pub fn class_embeds(p: &VertexedQuiver, node: &MutationClassNode) -> Tri {
    let target = canonical_form(p);
    for c in &node.classes {
        if c.len() < target.len() {
            continue;
        }
        let hit = subsets(c.len() as Vertex, target.len())
            .iter()
            .any(|s| canonical_form(&c.restrict(s)) == target);
        if hit {
            return Tri::Yes;
        }
    }
    if node.frontier_exhausted {
        Tri::No
    } else {
        Tri::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use quiver_core::is_isomorphic;

    fn vq(n: Vertex, a: &[(Vertex, Vertex, i64)]) -> VertexedQuiver {
        VertexedQuiver::on_range(n, Quiver::from_arrows(a.iter().copied()))
    }

    fn markov() -> VertexedQuiver {
        vq(3, &[(1, 2, 2), (2, 3, 2), (3, 1, 2)])
    }

    fn a3() -> VertexedQuiver {
        vq(3, &[(1, 2, 1), (2, 3, 1)])
    }

    #[test]
    fn canonical_forms_decide_isomorphism() {
        let a = vq(3, &[(3, 1, 2), (1, 2, 1)]);
        let b = vq(3, &[(2, 3, 2), (3, 1, 1)]);
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert!(is_isomorphic(a.arrows(), b.arrows()).is_some());
        let c = vq(3, &[(3, 1, 1), (1, 2, 2)]);
        assert_ne!(canonical_form(&a), canonical_form(&c));
        // Isolated vertices count.
        assert_ne!(canonical_form(&vq(2, &[])), canonical_form(&vq(3, &[])));
    }

    #[test]
    fn markov_class_is_one_node() {
        let node = explore_class(&markov(), &Bounds::new(2, 100));
        assert_eq!(node.members_found, 1);
        assert!(node.frontier_exhausted);
        assert!(node.edges.is_empty());
    }

    #[test]
    fn a3_class_has_four_nodes() {
        let node = explore_class(&a3(), &Bounds::new(1, 100));
        assert_eq!(node.members_found, 4);
        assert!(node.frontier_exhausted);
        let triangle = vq(3, &[(1, 2, 1), (2, 3, 1), (3, 1, 1)]);
        let sink = vq(3, &[(1, 2, 1), (3, 2, 1)]);
        let source = vq(3, &[(2, 1, 1), (2, 3, 1)]);
        for q in [a3(), triangle, sink, source] {
            assert!(node.classes.contains(&canonical_form(&q)), "{q:?}");
        }
    }

    #[test]
    fn single_vertex_class() {
        let node = explore_class(&VertexedQuiver::one_vertex(), &Bounds::new(1, 10));
        assert_eq!(node.members_found, 1);
        assert!(node.frontier_exhausted);
    }

    #[test]
    fn bounds_are_reported() {
        // Kronecker-like pair with a third vertex grows without bound.
        let q = vq(3, &[(1, 2, 2), (2, 3, 1)]);
        let node = explore_class(&q, &Bounds::new(3, 1000));
        assert!(node.weight_bound_hit && !node.frontier_exhausted);
        let node = explore_class(&a3(), &Bounds::new(1, 2));
        assert!(node.node_bound_hit && !node.frontier_exhausted);
        assert_eq!(node.members_found, 2);
    }

    #[test]
    fn start_does_not_matter() {
        let a = explore_class(&a3(), &Bounds::new(1, 100));
        let b = explore_class(&vq(3, &[(1, 2, 1), (2, 3, 1), (3, 1, 1)]), &Bounds::new(1, 100));
        assert_eq!(a, b);
    }

    #[test]
    fn embedding_examples() {
        let node = explore_class(&a3(), &Bounds::new(1, 100));
        assert_eq!(class_embeds(&VertexedQuiver::one_vertex(), &node), Tri::Yes);
        assert_eq!(class_embeds(&vq(3, &[(1, 2, 1), (2, 3, 1), (3, 1, 1)]), &node), Tri::Yes);
        assert_eq!(class_embeds(&markov(), &node), Tri::No);
        let partial = explore_class(&a3(), &Bounds::new(1, 1));
        assert_eq!(class_embeds(&markov(), &partial), Tri::Unknown);
    }

    #[test]
    fn dot_lists_classes() {
        let dot = explore_class(&a3(), &Bounds::new(1, 100)).to_dot();
        assert_eq!(dot.matches(" -- ").count(), explore_class(&a3(), &Bounds::new(1, 100)).edges.len());
        assert!(dot.starts_with("graph mutation_class {"));
    }
}
