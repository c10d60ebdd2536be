use quiver_core::{Quiver, Vertex, VertexSet};
use serde_json::{json, Value};

/// A quiver with an explicit vertex set, so isolated vertices count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexedQuiver {
    vertices: VertexSet,
    arrows: Quiver,
}

impl VertexedQuiver {
    pub fn new(vertices: VertexSet, arrows: Quiver) -> Self {
        assert!(arrows.support().is_subset(&vertices), "arrows leave the vertex set");
        VertexedQuiver { vertices, arrows }
    }

    /// Vertex set = support.
    pub fn from_quiver(arrows: Quiver) -> Self {
        VertexedQuiver { vertices: arrows.support(), arrows }
    }

    /// `n` vertices `1..=n`.
    pub fn on_range(n: Vertex, arrows: Quiver) -> Self {
        Self::new((1..=n).collect(), arrows)
    }

    pub fn one_vertex() -> Self {
        Self::on_range(1, Quiver::new())
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn arrows(&self) -> &Quiver {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Same quiver on `1..=n`, keeping the vertex order.
    pub fn compact(&self) -> Self {
        let pos: Vec<Vertex> = self.vertices.iter().copied().collect();
        let arrows = self.arrows.relabel(|v| pos.binary_search(&v).expect("vertex in set") as Vertex + 1);
        Self::on_range(pos.len() as Vertex, arrows)
    }

    /// Full subquiver on `s`, which must be a subset of the vertices.
    pub fn restrict(&self, s: &VertexSet) -> Self {
        assert!(s.is_subset(&self.vertices));
        Self::new(s.clone(), self.arrows.restrict(s))
    }

    pub fn is_full_subquiver_of(&self, other: &VertexedQuiver) -> bool {
        self.vertices.is_subset(&other.vertices) && other.arrows.restrict(&self.vertices) == self.arrows
    }

    pub fn to_json(&self) -> Value {
        let arrows: Value = serde_json::from_str(&quiver_core::to_json(&self.arrows)).expect("quiver JSON");
        json!({"vertices": self.vertices, "arrows": arrows["arrows"]})
    }
}

/// Drops isolated vertices. A quiver without arrows becomes the one-vertex
/// quiver, the class every arrowless quiver's pieces land in.
pub fn strip_isolated(q: &VertexedQuiver) -> VertexedQuiver {
    if q.arrows.is_empty() {
        return VertexedQuiver::one_vertex();
    }
    VertexedQuiver::from_quiver(q.arrows.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stripping() {
        let q = VertexedQuiver::new([1, 3, 7].into(), Quiver::from_arrows([(3, 7, 1)]));
        assert_eq!(strip_isolated(&q), VertexedQuiver::from_quiver(Quiver::from_arrows([(3, 7, 1)])));
        assert_eq!(strip_isolated(&VertexedQuiver::new(VertexSet::new(), Quiver::new())), VertexedQuiver::one_vertex());
        assert_eq!(strip_isolated(&VertexedQuiver::on_range(4, Quiver::new())), VertexedQuiver::one_vertex());
        let markov = VertexedQuiver::from_quiver(Quiver::from_arrows([(1, 2, 2), (2, 3, 2), (3, 1, 2)]));
        assert_eq!(strip_isolated(&markov), markov);
        assert_eq!(strip_isolated(&strip_isolated(&q)), strip_isolated(&q));
    }

    #[test]
    fn compacting_keeps_order() {
        let q = VertexedQuiver::new([2, 5, 9].into(), Quiver::from_arrows([(9, 2, 3)]));
        assert_eq!(q.compact(), VertexedQuiver::on_range(3, Quiver::from_arrows([(3, 1, 3)])));
    }
}
