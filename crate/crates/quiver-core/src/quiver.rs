use std::collections::BTreeMap;
use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{CheckedAdd, CheckedMul, Signed};

use crate::{Vertex, VertexSet};

/// Scalar usable as an arrow count.
pub trait Weight:
    Clone + Ord + Hash + Debug + Display + FromStr + Signed + From<i64> + CheckedAdd + CheckedMul
{
}

impl<T> Weight for T where
    T: Clone + Ord + Hash + Debug + Display + FromStr + Signed + From<i64> + CheckedAdd + CheckedMul
{
}

fn pos<W: Weight>(w: &W) -> W {
    if w.is_positive() {
        w.clone()
    } else {
        W::zero()
    }
}

fn add<W: Weight>(a: &W, b: &W) -> W {
    a.checked_add(b).expect("arrow count overflow")
}

fn mul<W: Weight>(a: &W, b: &W) -> W {
    a.checked_mul(b).expect("arrow count overflow")
}

/// Skew-symmetric arrow counts on positive vertices.
///
/// Only pairs `(i, j)` with `i < j` and a nonzero count are stored; `Q(j, i)`
/// is `-Q(i, j)` and loops cannot be represented. The derived `Ord` compares
/// the sorted arrow lists lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuiverOf<W> {
    arrows: BTreeMap<(Vertex, Vertex), W>,
}

impl<W> Default for QuiverOf<W> {
    fn default() -> Self {
        QuiverOf { arrows: BTreeMap::new() }
    }
}

impl<W: Weight> Debug for QuiverOf<W> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::io::to_json(self))
    }
}

impl<W: Weight> QuiverOf<W> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from triples `(i, j, m)` meaning `Q(i, j) = m`, in either
    /// orientation. Later triples for the same pair overwrite earlier ones.
    pub fn from_arrows<I, M>(triples: I) -> Self
    where
        I: IntoIterator<Item = (Vertex, Vertex, M)>,
        M: Into<W>,
    {
        let mut q = Self::new();
        for (i, j, m) in triples {
            q.set(i, j, m.into());
        }
        q
    }

    /// `Q(i, j)`; zero for absent pairs and for `i == j`.
    pub fn get(&self, i: Vertex, j: Vertex) -> W {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.arrows.get(&(i, j)).cloned().unwrap_or_else(W::zero),
            Greater => self.arrows.get(&(j, i)).map(|m| -m.clone()).unwrap_or_else(W::zero),
            Equal => W::zero(),
        }
    }

    /// Sets `Q(i, j) = m` (and so `Q(j, i) = -m`).
    ///
    /// Panics on a loop or on vertex 0.
    pub fn set(&mut self, i: Vertex, j: Vertex, m: W) {
        assert!(i != j, "loop at vertex {i}");
        assert!(i > 0 && j > 0, "vertices are positive integers");
        let (key, m) = if i < j { ((i, j), m) } else { ((j, i), -m) };
        if m.is_zero() {
            self.arrows.remove(&key);
        } else {
            self.arrows.insert(key, m);
        }
    }

    /// Adds `k` arrows `i -> j`.
    pub fn add_arrows(&mut self, i: Vertex, j: Vertex, k: W) {
        let m = add(&self.get(i, j), &k);
        self.set(i, j, m);
    }

    /// Stored pairs `((i, j), Q(i, j))` with `i < j`, sorted.
    pub fn arrows(&self) -> impl Iterator<Item = (Vertex, Vertex, &W)> + '_ {
        self.arrows.iter().map(|(&(i, j), m)| (i, j, m))
    }

    pub fn arrow_pairs(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Total number of arrows, `sum |Q(i, j)|` over `i < j`.
    pub fn arrow_total(&self) -> W {
        self.arrows.values().fold(W::zero(), |acc, m| add(&acc, &m.abs()))
    }

    /// Largest `|Q(i, j)|`, zero for the empty quiver.
    pub fn max_weight(&self) -> W {
        self.arrows.values().map(|m| m.abs()).max().unwrap_or_else(W::zero)
    }

    pub fn support(&self) -> VertexSet {
        self.arrows.keys().flat_map(|&(i, j)| [i, j]).collect()
    }

    pub fn is_isolated(&self, v: Vertex) -> bool {
        self.arrows.keys().all(|&(i, j)| i != v && j != v)
    }

    /// `(y, Q(x, y))` for every `y` joined to `x`, sorted by `y`.
    pub fn neighbors(&self, x: Vertex) -> Vec<(Vertex, W)> {
        let mut out: Vec<(Vertex, W)> = self
            .arrows
            .iter()
            .filter_map(|(&(i, j), m)| {
                if i == x {
                    Some((j, m.clone()))
                } else if j == x {
                    Some((i, -m.clone()))
                } else {
                    None
                }
            })
            .collect();
        out.sort_by_key(|(y, _)| *y);
        out
    }

    /// Mutation at `x`: arrows at `x` reverse, and every path `a -> x -> b`
    /// contributes an arrow `a -> b` (with 2-cycles cancelled).
    pub fn mutate(&self, x: Vertex) -> Self {
        let nbrs = self.neighbors(x);
        let mut out = self.clone();
        for (y, m) in &nbrs {
            out.set(x, *y, -m.clone());
        }
        for (ia, (a, q_xa)) in nbrs.iter().enumerate() {
            let q_ax = -q_xa.clone();
            for (b, q_xb) in &nbrs[ia + 1..] {
                // Q(a,x)[Q(x,b)]_+ + [-Q(a,x)]_+ Q(x,b)
                let delta = add(&mul(&q_ax, &pos(q_xb)), &mul(&pos(&-q_ax.clone()), q_xb));
                if !delta.is_zero() {
                    out.add_arrows(*a, *b, delta);
                }
            }
        }
        out
    }

    /// Mutates at each letter of `word`, first letter first.
    pub fn mutate_word(&self, word: &[Vertex]) -> Self {
        word.iter().fold(self.clone(), |q, &x| q.mutate(x))
    }

    /// Full subquiver on `v`: arrows with both endpoints in `v`.
    pub fn restrict(&self, v: &VertexSet) -> Self {
        self.filter(|i, j| v.contains(&i) && v.contains(&j))
    }

    /// Overfull subquiver on `v`: arrows with at least one endpoint in `v`.
    pub fn overfill(&self, v: &VertexSet) -> Self {
        self.filter(|i, j| v.contains(&i) || v.contains(&j))
    }

    fn filter(&self, keep: impl Fn(Vertex, Vertex) -> bool) -> Self {
        QuiverOf {
            arrows: self
                .arrows
                .iter()
                .filter(|(&(i, j), _)| keep(i, j))
                .map(|(k, m)| (*k, m.clone()))
                .collect(),
        }
    }

    /// Renames vertices; `f` must be injective on the support.
    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> Self {
        let mut out = Self::new();
        for (i, j, m) in self.arrows() {
            let (fi, fj) = (f(i), f(j));
            assert!(out.get(fi, fj).is_zero(), "relabeling is not injective");
            out.set(fi, fj, m.clone());
        }
        out
    }

    /// Union of arrows; pairs present in both must agree.
    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, m) in other.arrows() {
            let cur = out.get(i, j);
            assert!(cur.is_zero() || &cur == m, "conflicting counts on ({i}, {j})");
            out.set(i, j, m.clone());
        }
        out
    }

    /// Converts the scalar type, e.g. from `i64` to `BigInt`.
    pub fn map_weights<V: Weight>(&self, f: impl Fn(&W) -> V) -> QuiverOf<V> {
        QuiverOf::from_arrows(self.arrows().map(|(i, j, m)| (i, j, f(m))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{range_set, Quiver, QuiverI64};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn three_cycle() -> Quiver {
        Quiver::from_arrows([(1, 2, 1), (2, 3, 1), (3, 1, 1)])
    }

    #[test]
    fn three_cycle_mutated_at_middle_is_a_path() {
        let expected = Quiver::from_arrows([(3, 2, 1), (2, 1, 1)]);
        assert_eq!(three_cycle().mutate(2), expected);
    }

    #[test]
    fn mutation_at_isolated_vertex_is_identity() {
        assert_eq!(Quiver::new().mutate(5), Quiver::new());
        assert_eq!(three_cycle().mutate(9), three_cycle());
    }

    #[test]
    fn skew_symmetry_is_structural() {
        let q = QuiverI64::from_arrows([(7, 3, 2)]);
        assert_eq!(q.get(7, 3), 2);
        assert_eq!(q.get(3, 7), -2);
        assert_eq!(q.get(3, 3), 0);
        assert_eq!(q.arrows().collect::<Vec<_>>(), vec![(3, 7, &-2)]);
        assert_eq!(q.support(), [3, 7].into_iter().collect());
    }

    #[test]
    fn empty_restrictions() {
        let q = three_cycle();
        assert!(q.restrict(&VertexSet::new()).is_empty());
        assert_eq!(q.restrict(&q.support()), q);
        assert_eq!(q.overfill(&q.support()), q);
        assert!(q.overfill(&range_set(10, 12)).is_empty());
    }

    // Matrix mutation on a dense skew-symmetric matrix indexed by 0..n.
    fn dense_mutation(b: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
        let n = b.len();
        let mut out = b.to_vec();
        for i in 0..n {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
                };
            }
        }
        out
    }

    fn to_dense(q: &QuiverI64, n: u64) -> Vec<Vec<i64>> {
        (1..=n).map(|i| (1..=n).map(|j| q.get(i, j)).collect()).collect()
    }

    fn arb_small_quiver(max_v: u64, max_w: i64) -> impl Strategy<Value = QuiverI64> {
        proptest::collection::vec((1..=max_v, 1..=max_v, -max_w..=max_w), 0..16).prop_map(|t| {
            QuiverI64::from_arrows(t.into_iter().filter(|(i, j, _)| i != j))
        })
    }

    proptest! {
        #[test]
        fn agrees_with_dense_matrix_mutation(q in arb_small_quiver(6, 4), x in 1u64..=6) {
            let expected = dense_mutation(&to_dense(&q, 6), (x - 1) as usize);
            prop_assert_eq!(to_dense(&q.mutate(x), 6), expected);
        }

        #[test]
        fn scalar_types_agree(q in arb_small_quiver(6, 4), x in 1u64..=6) {
            let big: Quiver = q.map_weights(|m| BigInt::from(*m));
            prop_assert_eq!(big.mutate(x), q.mutate(x).map_weights(|m| BigInt::from(*m)));
        }

        #[test]
        fn isolation_is_invariant(q in arb_small_quiver(6, 3), x in 1u64..=6, v in 1u64..=7) {
            prop_assert_eq!(q.is_isolated(v), q.mutate(x).is_isolated(v));
        }
    }
}
