use quiver_core::Tri;
use serde_json::{json, Value};

use crate::class::{class_embeds, explore_class, Bounds};
use crate::vertexed::{strip_isolated, VertexedQuiver};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrderReport {
    pub checked: usize,
    pub confirmed: usize,
    pub unknown: usize,
    /// Indices of pairs whose embedding was refuted.
    pub violations: Vec<usize>,
    /// Indices of pairs that were not a full subquiver pair to begin with.
    pub skipped: Vec<usize>,
}

impl OrderReport {
    pub fn consistent(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "checked": self.checked,
            "confirmed": self.confirmed,
            "unknown": self.unknown,
            "violations": self.violations,
            "skipped": self.skipped,
            "consistent": self.consistent(),
        })
    }
}

/// For each `(q, q')` with `q` a full subquiver of `q'`, the class of `q`
/// with isolated vertices stripped must not be refuted as embedding into the
/// class of `q'` stripped.
pub fn poset_order_check(samples: &[(VertexedQuiver, VertexedQuiver)], bounds: &Bounds) -> OrderReport {
    let mut r = OrderReport::default();
    for (k, (small, big)) in samples.iter().enumerate() {
        if !small.is_full_subquiver_of(big) {
            r.skipped.push(k);
            continue;
        }
        r.checked += 1;
        let node = explore_class(&strip_isolated(big), bounds);
        match class_embeds(&strip_isolated(small), &node) {
            Tri::Yes => r.confirmed += 1,
            Tri::Unknown => r.unknown += 1,
            Tri::No => r.violations.push(k),
        }
    }
    r
}
