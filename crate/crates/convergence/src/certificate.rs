//! Stabilization certificates.
//!
//! A vertex `w` is *settled* at the current step when no future mutation can
//! change any arrow at `w`:
//! - `w` is isolated (it stays isolated, and mutating it does nothing), or
//! - neither `w` nor any current neighbour of `w` occurs again, or
//! - no vertex of the connected component of `w` occurs again (and the
//!   component lies below any truncation bound).
//!
//! A strong (overfill) window is frozen when all its vertices are settled. A
//! weak (restriction) window only needs one endpoint of every pair settled,
//! so at most one unsettled vertex is allowed.

use quiver_core::props::components;
use quiver_core::{io::from_value, Quiver, Vertex, VertexSet};
use seqcomb::Occurrence;
use serde_json::{json, Value};

use crate::trajectory::Trajectory;
use crate::ConvError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Restrictions to the window.
    Weak,
    /// Overfills at the window.
    Strong,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Weak => "weak",
            Mode::Strong => "strong",
        }
    }

    fn view(self, q: &Quiver, window: &VertexSet) -> Quiver {
        match self {
            Mode::Weak => q.restrict(window),
            Mode::Strong => q.overfill(window),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    /// The view at step `k` is final: unchanged up to the horizon and frozen beyond it.
    StableSince(usize),
    /// The views after steps `k1 < k2` differ and nothing rules out further change.
    OscillationWitness { k1: usize, k2: usize, before: Quiver, after: Quiver },
    /// No change seen, but no freeze justification either.
    Inconclusive(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub mode: Mode,
    pub window: VertexSet,
    pub horizon: usize,
    pub status: Status,
    /// The view at the last step inspected.
    pub last_view: Quiver,
    /// Window vertices not settled at the last step inspected.
    pub unsettled: VertexSet,
}

impl Certificate {
    /// The limit of the view, when stabilization is certified.
    pub fn limit(&self) -> Option<&Quiver> {
        matches!(self.status, Status::StableSince(_)).then_some(&self.last_view)
    }

    pub fn to_json(&self) -> Value {
        let q = |q: &Quiver| -> Value { serde_json::from_str(&quiver_core::to_json(q)).unwrap() };
        let status = match &self.status {
            Status::StableSince(k) => json!({"kind": "stable_since", "step": k}),
            Status::OscillationWitness { k1, k2, before, after } => {
                json!({"kind": "oscillation", "k1": k1, "k2": k2, "before": q(before), "after": q(after)})
            }
            Status::Inconclusive(h) => json!({"kind": "inconclusive", "horizon": h}),
        };
        json!({
            "mode": self.mode.as_str(),
            "window": self.window,
            "horizon": self.horizon,
            "status": status,
            "limit": self.limit().map(q),
            "unsettled": self.unsettled,
        })
    }

    /// Recovers the quiver stored under `key`, for round-trip checks.
    pub fn quiver_field(v: &Value, key: &str) -> Option<Quiver> {
        v.get(key).filter(|x| !x.is_null()).and_then(|x| from_value(x).ok())
    }
}

fn done(t: &Trajectory, v: Vertex) -> bool {
    t.remaining(v) == Occurrence::Finite(0)
}

/// Window vertices that are not settled at the trajectory's current step.
pub fn unsettled(t: &Trajectory, window: &VertexSet) -> VertexSet {
    let q = t.current();
    let comps = components(q);
    window
        .iter()
        .copied()
        .filter(|&w| {
            if q.is_isolated(w) {
                return false;
            }
            if done(t, w) && q.neighbors(w).iter().all(|(y, _)| done(t, *y)) {
                return false;
            }
            let comp = comps.iter().find(|c| c.contains(&w)).expect("non-isolated vertices lie in a component");
            // A component reaching the truncation bound continues past it.
            let cut = t.bound().is_some_and(|b| comp.iter().any(|&y| y >= b));
            cut || !comp.iter().all(|&y| done(t, y))
        })
        .collect()
}

fn certify(t: &Trajectory, window: &VertexSet, horizon: usize, mode: Mode) -> Result<Certificate, ConvError> {
    if let Some(bound) = t.bound() {
        if let Some(&w) = window.iter().find(|&&w| w >= bound) {
            return Err(ConvError::NotLocallyFiniteWindow(w));
        }
    }
    let mut run = t.clone();
    let mut last = mode.view(run.current(), window);
    let mut change: Option<(usize, Quiver, Quiver)> = None;
    let want = horizon.saturating_sub(run.cursor());
    let walked = run.walk(want, |s| {
        let view = mode.view(s.current(), window);
        if view != last {
            change = Some((s.cursor(), std::mem::replace(&mut last, view.clone()), view));
        }
    });
    match walked {
        Ok(()) | Err(ConvError::DescriptorExhausted(_)) => {}
        Err(e) => return Err(e),
    }
    let unsettled = unsettled(&run, window);
    let justified = match mode {
        Mode::Strong => unsettled.is_empty(),
        Mode::Weak => unsettled.len() <= 1,
    };
    let status = match (justified, change) {
        (true, Some((k, _, _))) => Status::StableSince(k),
        (true, None) => Status::StableSince(t.cursor()),
        (false, Some((k, before, after))) => Status::OscillationWitness { k1: k - 1, k2: k, before, after },
        (false, None) => Status::Inconclusive(run.cursor()),
    };
    Ok(Certificate { mode, window: window.clone(), horizon, status, last_view: last, unsettled })
}

/// Restriction-level certificate for `window`, running `t` up to `horizon` letters.
pub fn weak_certificate(t: &Trajectory, window: &VertexSet, horizon: usize) -> Result<Certificate, ConvError> {
    certify(t, window, horizon, Mode::Weak)
}

/// Overfill-level certificate for `window`, running `t` up to `horizon` letters.
pub fn strong_certificate(t: &Trajectory, window: &VertexSet, horizon: usize) -> Result<Certificate, ConvError> {
    certify(t, window, horizon, Mode::Strong)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trajectory::a_infinity;
    use num_bigint::BigInt;
    use quiver_core::range_set;
    use seqcomb::{Descriptor, Generator};

    fn ray(g: Generator, bound: Vertex) -> Trajectory {
        Trajectory::on_truncation(a_infinity(bound), bound, Descriptor::generator(g))
    }

    #[test]
    fn identity_ray_stabilizes_strongly_to_the_initial_quiver() {
        let t = ray(Generator::IdentityRay, 40);
        let w = range_set(1, 20);
        let c = strong_certificate(&t, &w, 30).unwrap();
        assert_eq!(c.status, Status::StableSince(21));
        assert_eq!(c.limit(), Some(&a_infinity(40).overfill(&w)));
        let c = weak_certificate(&t, &w, 30).unwrap();
        assert_eq!(c.status, Status::StableSince(20));
        assert_eq!(c.limit(), Some(&a_infinity(40).restrict(&w)));
    }

    #[test]
    fn shifted_ray_diverges_strongly_at_one() {
        let c = strong_certificate(&ray(Generator::ShiftedRay(2), 40), &[1].into(), 30).unwrap();
        let Status::OscillationWitness { k1, k2, before, after } = &c.status else { panic!("{:?}", c.status) };
        assert_eq!((*k1, *k2), (29, 30));
        assert_eq!(before, &Quiver::from_arrows([(1, 31, 1), (30, 1, 1)]));
        assert_eq!(after, &Quiver::from_arrows([(1, 32, 1), (31, 1, 1)]));
        assert_eq!(c.unsettled, [1].into());
    }

    #[test]
    fn shifted_ray_converges_weakly() {
        let w = range_set(1, 20);
        let c = weak_certificate(&ray(Generator::ShiftedRay(2), 40), &w, 30).unwrap();
        assert_eq!(c.status, Status::StableSince(20));
        let mut limit = a_infinity(40);
        limit.set(1, 2, BigInt::from(0));
        assert_eq!(c.limit(), Some(&limit.restrict(&w)));
        assert_eq!(c.unsettled, [1].into());
        // Strong mode needs every window vertex settled.
        let s = strong_certificate(&ray(Generator::ShiftedRay(2), 40), &w, 30).unwrap();
        assert!(matches!(s.status, Status::OscillationWitness { .. }));
    }

    #[test]
    fn truncation_size_does_not_matter() {
        for g in [Generator::IdentityRay, Generator::ShiftedRay(2)] {
            for w in [range_set(1, 20), [1].into(), range_set(3, 7)] {
                for f in [weak_certificate, strong_certificate] {
                    let a = f(&ray(g.clone(), 40), &w, 30).unwrap();
                    let b = f(&ray(g.clone(), 60), &w, 30).unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn boundary_windows_are_rejected() {
        let t = ray(Generator::IdentityRay, 10);
        assert_eq!(strong_certificate(&t, &[10].into(), 5), Err(ConvError::NotLocallyFiniteWindow(10)));
        assert_eq!(
            weak_certificate(&t, &[1].into(), 12),
            Err(ConvError::TruncationExceeded { letter: 10, bound: 10 })
        );
    }

    #[test]
    fn repeated_letter_flips_forever() {
        let q = Quiver::from_arrows([(3, 4, 1)]);
        let t = Trajectory::new(q, Descriptor::generator(Generator::Repeat(3)));
        let c = weak_certificate(&t, &[3, 4].into(), 10).unwrap();
        assert!(matches!(c.status, Status::OscillationWitness { k1: 9, k2: 10, .. }));
    }

    #[test]
    fn pair_blocks_return_to_the_start() {
        let q = Quiver::from_arrows([(1, 2, 2), (2, 3, -1), (1, 3, 1)]);
        let t = Trajectory::new(q.clone(), Descriptor::generator(Generator::PairBlocks));
        let c = strong_certificate(&t, &q.support(), 10).unwrap();
        assert_eq!(c.status, Status::StableSince(6));
        assert_eq!(c.limit(), Some(&q));
    }

    #[test]
    fn untouched_window_is_stable_from_the_start() {
        let q = Quiver::from_arrows([(1, 2, 1), (5, 6, 1)]);
        let t = Trajectory::new(q.clone(), Descriptor::generator(Generator::ShiftedRay(5)));
        assert_eq!(strong_certificate(&t, &[1, 2].into(), 4).unwrap().status, Status::StableSince(0));
        // A finite window that is still being mutated has no justification yet.
        let t = Trajectory::new(q, Descriptor::prefix(vec![7, 7, 7, 5]));
        let c = strong_certificate(&t, &[5].into(), 3).unwrap();
        assert_eq!(c.status, Status::Inconclusive(3));
    }

    #[test]
    fn json_shape() {
        let c = weak_certificate(&ray(Generator::ShiftedRay(2), 40), &range_set(1, 5), 10).unwrap();
        let v = c.to_json();
        assert_eq!(v["mode"], "weak");
        assert_eq!(v["status"]["kind"], "stable_since");
        assert_eq!(Certificate::quiver_field(&v, "limit").as_ref(), c.limit());
    }
}
