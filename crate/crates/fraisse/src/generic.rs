use std::collections::BTreeMap;

use num_bigint::BigInt;
use quiver_core::{Quiver, Vertex, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::FraisseError;

/// Range of the seeded counts given to pairs nobody constrained.
pub const DEFAULT_COUNT: i64 = 3;

/// One new vertex in an extension request.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Slot {
    /// Arrow counts to base vertices (positive: new vertex -> base vertex).
    /// Base vertices not listed get 0.
    pub to_base: BTreeMap<Vertex, BigInt>,
    /// Arrow counts to earlier slots of the same request, by slot index.
    pub to_earlier: BTreeMap<usize, BigInt>,
}

/// A finite committed piece of the generic quiver, seen after the mutations
/// applied so far.
///
/// Every mutated vertex is committed, so restricting to the committed set
/// commutes with the mutations: the piece of the original quiver is recovered
/// by undoing `history`. A mutated generic quiver is again generic, so fresh
/// vertices may be attached in the current frame with any arrow counts.
#[derive(Clone, Debug)]
pub struct GenericQuiver {
    current: Quiver,
    vertices: VertexSet,
    history: Vec<Vertex>,
    seed: u64,
    rng: ChaCha8Rng,
}

impl GenericQuiver {
    pub fn new(seed: u64) -> Self {
        GenericQuiver {
            current: Quiver::new(),
            vertices: VertexSet::new(),
            history: Vec::new(),
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Committed part after the mutations in `history`.
    pub fn current(&self) -> &Quiver {
        &self.current
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn history(&self) -> &[Vertex] {
        &self.history
    }

    /// Committed part of the unmutated quiver.
    pub fn original(&self) -> Quiver {
        let undo: Vec<Vertex> = self.history.iter().rev().copied().collect();
        self.current.mutate_word(&undo)
    }

    /// Least vertex not committed yet, above every committed one.
    pub fn next_fresh(&self) -> Vertex {
        self.vertices.last().map_or(1, |v| v + 1)
    }

    pub fn count(&self, a: Vertex, b: Vertex) -> Result<BigInt, FraisseError> {
        for v in [a, b] {
            if !self.vertices.contains(&v) {
                return Err(FraisseError::UnknownVertex(v));
            }
        }
        Ok(self.current.get(a, b))
    }

    /// Commits `v` if needed, drawing its counts to every committed vertex
    /// from the seeded stream.
    pub fn force(&mut self, v: Vertex) {
        if self.vertices.contains(&v) {
            return;
        }
        for &u in &self.vertices {
            let m = self.rng.gen_range(-DEFAULT_COUNT..=DEFAULT_COUNT);
            self.current.set(v, u, BigInt::from(m));
        }
        self.vertices.insert(v);
    }

    pub fn force_all(&mut self, vs: impl IntoIterator<Item = Vertex>) {
        for v in vs {
            self.force(v);
        }
    }

    /// Allocates one fresh vertex per slot, above everything committed, with
    /// exactly the requested counts to `base` and to earlier slots and no
    /// arrows to any other committed vertex. Base vertices are forced first.
    pub fn realize_extension(&mut self, base: &VertexSet, spec: &[Slot]) -> Result<Vec<Vertex>, FraisseError> {
        for (k, slot) in spec.iter().enumerate() {
            if let Some(v) = slot.to_base.keys().find(|v| !base.contains(v)) {
                return Err(FraisseError::SpecConflict(format!("slot {k} constrains {v} outside the base")));
            }
            if let Some(j) = slot.to_earlier.keys().find(|&&j| j >= k) {
                return Err(FraisseError::SpecConflict(format!("slot {k} refers to slot {j}, not an earlier one")));
            }
        }
        self.force_all(base.iter().copied());
        let mut fresh = Vec::with_capacity(spec.len());
        for slot in spec {
            let v = self.next_fresh();
            for (&b, m) in &slot.to_base {
                self.current.set(v, b, m.clone());
            }
            for (&j, m) in &slot.to_earlier {
                self.current.set(v, fresh[j], m.clone());
            }
            self.vertices.insert(v);
            fresh.push(v);
        }
        Ok(fresh)
    }

    /// Mutates the committed part at a committed vertex. Arrows to vertices
    /// committed later are decided in the mutated frame.
    pub fn mutate(&mut self, v: Vertex) -> Result<(), FraisseError> {
        if !self.vertices.contains(&v) {
            return Err(FraisseError::UnknownVertex(v));
        }
        self.current = self.current.mutate(v);
        self.history.push(v);
        Ok(())
    }
}
