//! Independent oracles for the acceptance run. Nothing here calls into the
//! routines being checked: mutation is redone on dense exchange matrices,
//! forks and linked sets are found by brute force, and closed-form values are
//! computed from their formulas.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use quiver_core::{Quiver, Vertex, VertexSet};

/// Skew-symmetric integer matrix indexed by `labels`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense {
    pub labels: Vec<Vertex>,
    pub b: Vec<Vec<BigInt>>,
}

impl Dense {
    pub fn from_quiver(q: &Quiver, labels: &[Vertex]) -> Self {
        let b = labels.iter().map(|&i| labels.iter().map(|&j| q.get(i, j)).collect()).collect();
        Dense { labels: labels.to_vec(), b }
    }

    fn index(&self, v: Vertex) -> usize {
        self.labels.iter().position(|&x| x == v).expect("known label")
    }

    pub fn get(&self, i: Vertex, j: Vertex) -> BigInt {
        self.b[self.index(i)][self.index(j)].clone()
    }

    /// Matrix mutation: `b'_ij = -b_ij` on row and column `k`, otherwise
    /// `b_ij + sgn(b_ik) [b_ik b_kj]_+`.
    pub fn mutate(&self, k: Vertex) -> Self {
        let k = self.index(k);
        let n = self.labels.len();
        let mut b = self.b.clone();
        for i in 0..n {
            for j in 0..n {
                b[i][j] = if i == k || j == k {
                    -&self.b[i][j]
                } else {
                    let (bik, bkj) = (&self.b[i][k], &self.b[k][j]);
                    &self.b[i][j] + bik.signum() * (bik * bkj).max(BigInt::zero())
                };
            }
        }
        Dense { labels: self.labels.clone(), b }
    }

    pub fn to_quiver(&self) -> Quiver {
        let mut q = Quiver::new();
        for (a, &i) in self.labels.iter().enumerate() {
            for (c, &j) in self.labels.iter().enumerate().skip(a + 1) {
                q.set(i, j, self.b[a][c].clone());
            }
        }
        q
    }

    /// Arrows counted with multiplicity.
    pub fn arrow_total(&self) -> BigInt {
        let n = self.labels.len();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| self.b[i][j].abs()).sum()
    }

    fn acyclic_on(&self, keep: &[usize]) -> bool {
        // Repeatedly peel off a vertex with no incoming arrow.
        let mut left: Vec<usize> = keep.to_vec();
        while !left.is_empty() {
            let Some(p) = left.iter().position(|&x| left.iter().all(|&y| !self.b[y][x].is_positive())) else {
                return false;
            };
            left.remove(p);
        }
        true
    }

    /// Point of return by direct search over the fork conditions.
    pub fn fork_return(&self) -> Option<Vertex> {
        let n = self.labels.len();
        let all: Vec<usize> = (0..n).collect();
        let abundant = (0..n).all(|i| (0..n).all(|j| i == j || self.b[i][j].abs() >= BigInt::from(2)));
        if !abundant || self.acyclic_on(&all) {
            return None;
        }
        let returns: Vec<Vertex> = (0..n)
            .filter(|&r| {
                let into: Vec<usize> = (0..n).filter(|&i| self.b[i][r].is_positive()).collect();
                let out: Vec<usize> = (0..n).filter(|&j| self.b[r][j].is_positive()).collect();
                let beaten = into
                    .iter()
                    .all(|&i| out.iter().all(|&j| self.b[j][i] > self.b[i][r] && self.b[j][i] > self.b[r][j]));
                let rest: Vec<usize> = all.iter().copied().filter(|&x| x != r).collect();
                beaten && self.acyclic_on(&rest)
            })
            .map(|r| self.labels[r])
            .collect();
        assert!(returns.len() <= 1, "several points of return {returns:?}");
        returns.first().copied()
    }

    pub fn is_source_or_sink(&self, v: Vertex) -> bool {
        let row = &self.b[self.index(v)];
        row.iter().all(|m| !m.is_negative()) || row.iter().all(|m| !m.is_positive())
    }
}

/// Extended exchange matrix of the framing of `q` on `1..=n`: frozen copy of
/// `y` is `n + y`, with one arrow `y -> n + y`.
pub fn framed_dense(q: &Quiver, n: Vertex) -> Dense {
    let labels: Vec<Vertex> = (1..=2 * n).collect();
    let mut d = Dense::from_quiver(q, &labels);
    for y in 1..=n {
        let (a, f) = ((y - 1) as usize, (n + y - 1) as usize);
        d.b[a][f] = BigInt::one();
        d.b[f][a] = -BigInt::one();
    }
    d
}

/// Row `x` of a framed dense matrix at the frozen columns.
pub fn dense_c_vector(d: &Dense, n: Vertex, x: Vertex) -> Vec<BigInt> {
    (1..=n).map(|y| d.get(x, n + y)).collect()
}

/// `(2 * 3^(n-1), ..., 2 * 3^0, 1)`.
pub fn stabilized_formula(n: u32) -> Vec<BigInt> {
    (1..=n).map(|i| BigInt::from(2 * 3i64.pow(n - i))).chain([BigInt::one()]).collect()
}

/// Free reduction by rewriting: delete the leftmost adjacent equal pair until none is left.
pub fn rewrite_reduce(w: &[Vertex]) -> Vec<Vertex> {
    let mut w = w.to_vec();
    while let Some(p) = w.windows(2).position(|p| p[0] == p[1]) {
        w.drain(p..p + 2);
    }
    w
}

pub fn induced(w: &[Vertex], s: &VertexSet) -> Vec<Vertex> {
    w.iter().copied().filter(|x| s.contains(x)).collect()
}

pub fn linked(w: &[Vertex], s: &VertexSet) -> bool {
    !s.is_empty() && !rewrite_reduce(&induced(w, s)).is_empty()
}

/// Every subset of `universe`, by bitmask.
pub fn subsets(universe: &VertexSet) -> Vec<VertexSet> {
    let u: Vec<Vertex> = universe.iter().copied().collect();
    (0u32..1 << u.len())
        .map(|mask| u.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &v)| v).collect())
        .collect()
}

/// Inclusion-minimal linked subsets of `universe`.
pub fn minimal_linked(w: &[Vertex], universe: &VertexSet) -> BTreeSet<VertexSet> {
    let all: Vec<VertexSet> = subsets(universe).into_iter().filter(|s| linked(w, s)).collect();
    all.iter().filter(|s| !all.iter().any(|t| t != *s && t.is_subset(s))).cloned().collect()
}

pub fn is_triangular_number(x: usize) -> bool {
    (0..=x).take_while(|k| k * (k + 1) / 2 <= x).any(|k| k * (k + 1) / 2 == x)
}

/// Least `m >= 1` with a triangular number in `[i, i + m - 1]`.
pub fn triangular_i_rank(i: usize) -> usize {
    (1..).find(|&m| is_triangular_number(i + m - 1)).unwrap()
}

pub fn zigzag(t: i64) -> u64 {
    if t >= 0 {
        2 * t as u64
    } else {
        (-2 * t - 1) as u64
    }
}

pub fn nth_primes(count: usize) -> Vec<u64> {
    let mut ps = Vec::with_capacity(count);
    let mut c = 2u64;
    while ps.len() < count {
        if ps.iter().take_while(|&&p| p * p <= c).all(|&p| c % p != 0) {
            ps.push(c);
        }
        c += 1;
    }
    ps
}

/// Entry `i` of the window encoding, from its product formula, for a quiver
/// whose support lies in `1..=top`.
pub fn encode_entry(q: &Quiver, i: Vertex, top: Vertex) -> BigUint {
    let ps = nth_primes(top as usize);
    (1..=top.saturating_sub(i)).fold(BigUint::from(1u32), |acc, k| {
        let t = i64::try_from(&q.get(i, i + k)).unwrap();
        acc * BigUint::from(ps[k as usize - 1]).pow(zigzag(t) as u32)
    })
}
