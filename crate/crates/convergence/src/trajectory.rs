use std::collections::BTreeMap;

use num_bigint::BigInt;
use quiver_core::{Quiver, Vertex};
use seqcomb::{Descriptor, Occurrence};

use crate::ConvError;

/// `1 -> 2 -> ... -> bound`: the ray quiver cut off at `bound`.
pub fn a_infinity(bound: Vertex) -> Quiver {
    Quiver::from_arrows((1..bound).map(|i| (i, i + 1, BigInt::from(1))))
}

/// A quiver being mutated letter by letter along a sequence.
///
/// With a truncation bound `M`, the quiver stands for the restriction to
/// `[1..M]` of an infinite quiver whose only arrows leaving `[1..M]` start or
/// end at `M`. As long as no letter reaches `M`, every vertex below `M` keeps
/// exactly the arrows it has in the infinite quiver.
#[derive(Clone, Debug)]
pub struct Trajectory {
    initial: Quiver,
    bound: Option<Vertex>,
    descriptor: Descriptor,
    cursor: usize,
    current: Quiver,
    used: BTreeMap<Vertex, u64>,
}

impl Trajectory {
    pub fn new(initial: Quiver, descriptor: Descriptor) -> Self {
        Trajectory {
            current: initial.clone(),
            initial,
            bound: None,
            descriptor,
            cursor: 0,
            used: BTreeMap::new(),
        }
    }

    pub fn on_truncation(initial: Quiver, bound: Vertex, descriptor: Descriptor) -> Self {
        assert!(initial.support().iter().all(|&v| v <= bound), "support exceeds the truncation");
        Trajectory { bound: Some(bound), ..Trajectory::new(initial, descriptor) }
    }

    pub fn initial(&self) -> &Quiver {
        &self.initial
    }

    pub fn current(&self) -> &Quiver {
        &self.current
    }

    /// Mutations applied so far.
    pub fn cursor(&self) -> usize {
        self.cursor
    }

    pub fn descriptor(&self) -> &Descriptor {
        &self.descriptor
    }

    pub fn bound(&self) -> Option<Vertex> {
        self.bound
    }

    /// Occurrences of `v` still to come.
    pub fn remaining(&self, v: Vertex) -> Occurrence {
        match self.descriptor.total(v) {
            Occurrence::Finite(n) => Occurrence::Finite(n - self.used.get(&v).copied().unwrap_or(0)),
            Occurrence::Infinite => Occurrence::Infinite,
        }
    }

    pub fn step(&mut self, k: usize) -> Result<(), ConvError> {
        self.walk(k, |_| {})
    }

    /// Applies up to `k` letters, calling `visit` after each one.
    pub(crate) fn walk(&mut self, k: usize, mut visit: impl FnMut(&Trajectory)) -> Result<(), ConvError> {
        let d = self.descriptor.clone();
        let mut letters = d.letters().skip(self.cursor);
        for _ in 0..k {
            let Some(v) = letters.next() else {
                return Err(ConvError::DescriptorExhausted(self.cursor));
            };
            if let Some(bound) = self.bound {
                if v >= bound {
                    return Err(ConvError::TruncationExceeded { letter: v, bound });
                }
            }
            self.current = self.current.mutate(v);
            *self.used.entry(v).or_insert(0) += 1;
            self.cursor += 1;
            visit(self);
        }
        Ok(())
    }
}
