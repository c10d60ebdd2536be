use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use quiver_core::{range_set, Quiver, Vertex};
use serde_json::{json, Value};

use crate::generic::{GenericQuiver, Slot};

/// How one stage extended the word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stage {
    /// The window already agreed; one mutation at a vertex with no arrows into it.
    Idle(Vertex),
    /// Wrong counts `(v, m)` fixed by mutating once at each correction vertex.
    Corrected { top: Vertex, fixes: Vec<(Vertex, Vertex)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteerReport {
    pub word: Vec<Vertex>,
    /// `stage_ends[m-1]`: word length after which `[1..m]` agrees with the target for good.
    pub stage_ends: Vec<usize>,
    pub stages: Vec<Stage>,
    /// Committed quiver in the frame steering started from, including every
    /// vertex committed along the way.
    pub start: Quiver,
}

impl SteerReport {
    pub fn to_json(&self) -> Value {
        let stages: Vec<Value> = self
            .stages
            .iter()
            .map(|s| match s {
                Stage::Idle(v) => json!({"kind": "idle", "vertex": v}),
                Stage::Corrected { top, fixes } => json!({"kind": "corrected", "top": top, "fixes": fixes}),
            })
            .collect();
        json!({"word": self.word, "stage_ends": self.stage_ends, "stages": stages})
    }
}

/// A prefix of a mutation sequence under which the generic quiver converges
/// to `target`: after the prefix, the restriction to `[1..radius]` equals the
/// target's, and each `[1..m]` already agrees from the end of stage `m` on.
///
/// Stage `m` assumes `[1..m-1]` agrees. If `[1..m]` does too, it mutates a
/// fresh vertex with no arrows to the window. Otherwise, for each `v < m`
/// with a wrong count to `m`, it attaches a fresh `w` with one arrow to or
/// from `v` (sign of the error) and the error as count from `w` to `m`;
/// mutating at `w` adds exactly the error to `(v, m)`.
pub fn steer_toward(g: &mut GenericQuiver, target: &Quiver, radius: Vertex) -> SteerReport {
    assert!(radius >= 1);
    g.force_all(1..=radius);
    let mut word = Vec::new();
    let mut stage_ends = Vec::new();
    let mut stages = Vec::new();
    for m in 1..=radius {
        let window = range_set(1, m);
        let wrong: Vec<(Vertex, BigInt)> = (1..m)
            .map(|v| (v, target.get(v, m) - g.current().get(v, m)))
            .filter(|(_, e)| !e.is_zero())
            .collect();
        if wrong.is_empty() {
            let w = g.realize_extension(&window, &[Slot::default()]).expect("well-formed slot")[0];
            g.mutate(w).expect("just committed");
            word.push(w);
            stages.push(Stage::Idle(w));
        } else {
            let spec: Vec<Slot> = wrong
                .iter()
                .map(|(v, e)| Slot {
                    // Counts are stored from the slot's side: `v -> w` is `-1` here.
                    to_base: [(*v, if e.is_positive() { -BigInt::one() } else { BigInt::one() }), (m, e.clone())].into(),
                    ..Slot::default()
                })
                .collect();
            let ws = g.realize_extension(&window, &spec).expect("well-formed slots");
            let mut fixes = Vec::new();
            for ((v, _), &w) in wrong.iter().zip(&ws) {
                g.mutate(w).expect("just committed");
                assert_eq!(g.current().get(*v, m), target.get(*v, m), "correction at {w} missed ({v}, {m})");
                word.push(w);
                fixes.push((*v, w));
            }
            stages.push(Stage::Corrected { top: m, fixes });
        }
        assert_eq!(g.current().restrict(&window), target.restrict(&window), "stage {m}");
        stage_ends.push(word.len());
    }
    let undo: Vec<Vertex> = word.iter().rev().copied().collect();
    let start = g.current().mutate_word(&undo);
    SteerReport { word, stage_ends, stages, start }
}

impl SteerReport {
    /// Replays the word on `start` and checks that `[1..m]` agrees with
    /// `target` at every prefix from the end of stage `m` on.
    pub fn monotone_agreement(&self, target: &Quiver, from: &Quiver) -> bool {
        let mut q = from.clone();
        let check = |q: &Quiver, len: usize| {
            self.stage_ends.iter().enumerate().filter(|(_, &e)| e <= len).all(|(k, _)| {
                let w = range_set(1, k as Vertex + 1);
                q.restrict(&w) == target.restrict(&w)
            })
        };
        if !check(&q, 0) {
            return false;
        }
        for (len, &v) in self.word.iter().enumerate() {
            q = q.mutate(v);
            if !check(&q, len + 1) {
                return false;
            }
        }
        true
    }
}
