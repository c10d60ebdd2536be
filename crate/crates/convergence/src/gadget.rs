//! Quivers near a given one on which a sequence provably diverges.
//!
//! Both constructions attach a gadget on fresh vertices above everything the
//! neighbourhood looks at, pre-mutated by the reversed prefix of the sequence
//! so that the gadget sits in its initial shape exactly when the tail starts.
//! The results are checked by running the sequence.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use quiver_core::{Quiver, Vertex, VertexSet};
use seqcomb::{normal_form_subset, Descriptor, Occurrence, SeqError};
use serde_json::{json, Value};

use crate::ConvError;

/// Tail steps checked by the arrow-finite gadget.
pub const AF_CHECKED_STEPS: usize = 50;

fn q_json(q: &Quiver) -> Value {
    serde_json::from_str(&quiver_core::to_json(q)).expect("quiver JSON")
}

/// Largest vertex the neighbourhood constrains: window and support of `q`.
fn anchor_base(q: &Quiver, window: &VertexSet) -> Vertex {
    window.iter().chain(q.support().iter()).copied().max().unwrap_or(0)
}

/// Ticks up to and including the last occurrence of any letter `<= top`.
fn prefix_through(d: &Descriptor, top: Vertex, horizon: usize) -> Result<usize, ConvError> {
    let mut left: u64 = 0;
    for v in 1..=top {
        match d.total(v) {
            Occurrence::Finite(n) => left += n,
            Occurrence::Infinite => {
                return Err(ConvError::GadgetInapplicable(format!("letter {v} occurs infinitely often")))
            }
        }
    }
    if left == 0 {
        return Ok(0);
    }
    for (pos, t) in d.ticks().take(horizon).enumerate() {
        if t.is_some_and(|v| v <= top) {
            left -= 1;
            if left == 0 {
                return Ok(pos + 1);
            }
        }
    }
    Err(ConvError::GadgetInapplicable(format!("letters up to {top} keep occurring past tick {horizon}")))
}

fn letters_in(d: &Descriptor, ticks: usize) -> Vec<Vertex> {
    d.ticks().take(ticks).flatten().collect()
}

fn star_quiver(hub: Vertex, rim: Vertex, top: Vertex) -> Quiver {
    Quiver::from_arrows((rim + 1..=top).flat_map(|s| [(hub, s, 1), (s, rim, 1)]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AfBranch {
    /// `letter` recurs forever; `added` is the arrow attached when it was isolated.
    Recurring { letter: Vertex, added: Option<(Vertex, Vertex)> },
    /// Star `hub -> spoke -> rim` over fresh vertices, with `hub = N+1`,
    /// `rim = N+2` and spokes up to `top`.
    Star { hub: Vertex, rim: Vertex, top: Vertex, prefix_ticks: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AfGadget {
    pub quiver: Quiver,
    pub branch: AfBranch,
    /// Vertices whose restriction is shown to keep changing.
    pub watched: VertexSet,
    /// Number of changes of the watched restriction seen during the check.
    pub changes: usize,
}

impl AfGadget {
    pub fn to_json(&self) -> Value {
        let branch = match &self.branch {
            AfBranch::Recurring { letter, added } => json!({"kind": "recurring", "letter": letter, "added": added}),
            AfBranch::Star { hub, rim, top, prefix_ticks } => {
                json!({"kind": "star", "hub": hub, "rim": rim, "top": top, "prefix_ticks": prefix_ticks})
            }
        };
        json!({"quiver": q_json(&self.quiver), "branch": branch, "watched": self.watched, "changes": self.changes})
    }
}

/// A quiver agreeing with `q` on `window` on which `d` diverges, for an
/// infinite sequence `d`.
///
/// If some letter `i` recurs forever, every mutation at `i` flips an arrow at
/// `i`, as long as `i` has one; an isolated `i` gets an arrow to a fresh
/// vertex. Otherwise a star over fresh vertices `N+1, N+2, ...` is attached,
/// where every later letter lies strictly above `N+2`: each mutation at a
/// spoke moves the count between hub and rim by one.
pub fn af_divergence_gadget(
    q: &Quiver,
    window: &VertexSet,
    d: &Descriptor,
    horizon: usize,
) -> Result<AfGadget, ConvError> {
    let recurring = d.infinite_letters();
    let n = anchor_base(q, window);
    let gadget = if let Some(&i) = recurring.iter().next() {
        let mut quiver = q.clone();
        let (added, partner) = if q.is_isolated(i) {
            let j = n.max(i) + 1;
            quiver.set(i, j, BigInt::one());
            (Some((i, j)), j)
        } else {
            (None, q.neighbors(i)[0].0)
        };
        let watched: VertexSet = window.iter().copied().chain([i, partner]).collect();
        AfGadget { quiver, branch: AfBranch::Recurring { letter: i, added }, watched, changes: 0 }
    } else {
        if d.alphabet().is_some() {
            return Err(ConvError::GadgetInapplicable("finite sequences converge everywhere".into()));
        }
        let (hub, rim) = (n + 1, n + 2);
        let prefix_ticks = prefix_through(d, rim, horizon)?;
        let prefix = letters_in(d, prefix_ticks);
        let tail: Vec<Vertex> = d.ticks().skip(prefix_ticks).flatten().take(AF_CHECKED_STEPS).collect();
        if tail.len() < AF_CHECKED_STEPS {
            return Err(ConvError::GadgetInapplicable("sequence ends before the checked steps".into()));
        }
        let top = prefix.iter().chain(&tail).copied().max().unwrap_or(0).max(n + 3);
        let star = star_quiver(hub, rim, top);
        let reversed: Vec<Vertex> = prefix.iter().rev().copied().collect();
        let quiver = q.union(&star.mutate_word(&reversed));
        let watched: VertexSet = [hub, rim].into();
        AfGadget { quiver, branch: AfBranch::Star { hub, rim, top, prefix_ticks }, watched, changes: 0 }
    };
    verify_af(gadget, q, window, d)
}

fn verify_af(mut g: AfGadget, q: &Quiver, window: &VertexSet, d: &Descriptor) -> Result<AfGadget, ConvError> {
    assert_eq!(g.quiver.restrict(window), q.restrict(window), "gadget left the neighbourhood");
    let mut cur = g.quiver.clone();
    let mut view = cur.restrict(&g.watched);
    match g.branch.clone() {
        AfBranch::Recurring { letter, .. } => {
            let mut seen = 0;
            for v in d.letters() {
                cur = cur.mutate(v);
                let next = cur.restrict(&g.watched);
                if v == letter {
                    assert_ne!(next, view, "mutation at recurring {letter} left the watched arrows alone");
                    seen += 1;
                }
                g.changes += (next != view) as usize;
                view = next;
                if seen == AF_CHECKED_STEPS {
                    break;
                }
            }
        }
        AfBranch::Star { hub, rim, top, prefix_ticks } => {
            let mut ticks = d.ticks();
            for v in ticks.by_ref().take(prefix_ticks).flatten() {
                cur = cur.mutate(v);
            }
            let frozen = cur.restrict(window);
            let star = star_quiver(hub, rim, top);
            assert_eq!(cur.restrict(&star.support()), star, "star not restored");
            view = cur.restrict(&g.watched);
            for v in ticks.flatten().take(AF_CHECKED_STEPS) {
                cur = cur.mutate(v);
                let next = cur.restrict(&g.watched);
                assert_eq!((&next.get(hub, rim) - &view.get(hub, rim)).abs(), BigInt::one(), "hub count stalled at {v}");
                assert_eq!(cur.restrict(window), frozen, "tail touched the window");
                g.changes += 1;
                view = next;
            }
        }
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LfGadget {
    pub quiver: Quiver,
    /// `N+1`: plays the frozen copy of each segment's witness vertex in turn.
    pub anchor: Vertex,
    pub prefix_ticks: usize,
    pub sets: Vec<VertexSet>,
    pub segments: Vec<Vec<Vertex>>,
    /// Witness vertex of each segment, then the fresh vertex closing the last one.
    pub pivots: Vec<Vertex>,
    /// Positive c-vector entry produced by each segment.
    pub entries: Vec<BigInt>,
    /// Arrows from `pivots[k+1]` to the anchor after segment `k`: running products of `entries`.
    pub anchor_counts: Vec<BigInt>,
    /// Tick after which each segment is complete.
    pub boundaries: Vec<usize>,
}

impl LfGadget {
    pub fn to_json(&self) -> Value {
        json!({
            "quiver": q_json(&self.quiver),
            "anchor": self.anchor,
            "prefix_ticks": self.prefix_ticks,
            "sets": self.sets,
            "segments": self.segments,
            "pivots": self.pivots,
            "entries": self.entries.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "anchor_counts": self.anchor_counts.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "boundaries": self.boundaries,
        })
    }
}

/// A locally finite quiver agreeing with `q` on `window` whose overfill at the
/// anchor `N+1` changes after each of `count` segments of `d`.
///
/// The tail after the last occurrence of any letter `<= N+1` is split into
/// disjoint minimal linked sets. Each set carries a copy of the abundant
/// acyclic quiver in which its reduced segment drives a positive c-vector
/// entry; the copies are chained so the frozen vertex of one is the witness
/// vertex of the next, and the anchor starts as the frozen copy of the first.
pub fn lf_divergence_gadget(
    q: &Quiver,
    window: &VertexSet,
    d: &Descriptor,
    count: usize,
    horizon: usize,
) -> Result<LfGadget, ConvError> {
    if let Some(&v) = d.infinite_letters().iter().next() {
        return Err(ConvError::GadgetInapplicable(format!("letter {v} occurs infinitely often")));
    }
    if count == 0 {
        return Err(ConvError::InsufficientSegments { found: 0, wanted: 0 });
    }
    let n = anchor_base(q, window);
    let anchor = n + 1;
    let prefix_ticks = prefix_through(d, anchor, horizon)?;
    let tail = d.tail(prefix_ticks);
    let window_ticks = horizon.saturating_sub(prefix_ticks);
    let nf = normal_form_subset(&tail, count, window_ticks).map_err(|e| match e {
        SeqError::ExhaustedHorizon { found, wanted } => ConvError::InsufficientSegments { found, wanted },
        e => e.into(),
    })?;

    let mut last: BTreeMap<Vertex, usize> = BTreeMap::new();
    for (pos, t) in tail.ticks().take(window_ticks).enumerate() {
        if let Some(v) = t {
            last.insert(v, pos);
        }
    }
    let boundaries: Vec<usize> =
        nf.sets.iter().map(|s| prefix_ticks + 1 + s.iter().map(|x| last[x]).max().expect("nonempty set")).collect();

    let witnesses = nf
        .sets
        .iter()
        .zip(&nf.segments)
        .map(|(s, w)| {
            let order: Vec<Vertex> = s.iter().copied().collect();
            let pos = |x: Vertex| order.iter().position(|&y| y == x).expect("segment letter outside its set") as Vertex + 1;
            let compressed: Vec<Vertex> = w.iter().map(|&x| pos(x)).collect();
            Ok((order, framing::offdiag_witness(&compressed)?))
        })
        .collect::<Result<Vec<_>, ConvError>>()?;

    let seen_top = letters_in(d, *boundaries.last().unwrap()).into_iter().max().unwrap_or(0);
    let fresh = seen_top.max(anchor) + 1;
    let mut pivots: Vec<Vertex> = witnesses.iter().map(|(order, w)| order[w.vertex as usize - 1]).collect();
    pivots.push(fresh);

    let mut gadget = Quiver::from_arrows([(pivots[0], anchor, 1)]);
    for (k, (order, w)) in witnesses.iter().enumerate() {
        let star = pivots[k + 1];
        let copy = w.quiver.relabel(|x| if x == w.n + 1 { star } else { order[x as usize - 1] });
        gadget = gadget.union(&copy);
    }
    let prefix = letters_in(d, prefix_ticks);
    let reversed: Vec<Vertex> = prefix.iter().rev().copied().collect();
    let quiver = q.union(&gadget.mutate_word(&reversed));
    assert_eq!(quiver.restrict(window), q.restrict(window), "gadget left the neighbourhood");

    let entries: Vec<BigInt> = witnesses.iter().map(|(_, w)| w.entry.clone()).collect();
    let anchor_counts: Vec<BigInt> = entries
        .iter()
        .scan(BigInt::one(), |m, e| {
            *m *= e;
            Some(m.clone())
        })
        .collect();
    let g = LfGadget {
        quiver,
        anchor,
        prefix_ticks,
        sets: nf.sets,
        segments: nf.segments,
        pivots,
        entries,
        anchor_counts,
        boundaries,
    };
    verify_lf(&g, &gadget, d);
    Ok(g)
}

fn verify_lf(g: &LfGadget, gadget: &Quiver, d: &Descriptor) {
    let above: VertexSet = gadget.support();
    let at_anchor: VertexSet = [g.anchor].into();
    let mut cur = g.quiver.clone();
    let mut previous = None;
    let mut seg = 0;
    for (pos, t) in d.ticks().take(*g.boundaries.last().unwrap()).enumerate() {
        if let Some(v) = t {
            cur = cur.mutate(v);
        }
        let tick = pos + 1;
        if tick == g.prefix_ticks {
            assert_eq!(cur.restrict(&above), *gadget, "gadget not restored by the prefix");
        }
        if tick == g.boundaries[seg] {
            let view = cur.overfill(&at_anchor);
            let next = g.pivots[seg + 1];
            assert_eq!(cur.get(next, g.anchor), g.anchor_counts[seg], "anchor count after segment {seg}");
            // Only finished sets and the next pivot may point at the anchor.
            let done: VertexSet = g.sets[..=seg].iter().flatten().copied().collect();
            assert!(view.support().iter().all(|&x| x == g.anchor || x == next || done.contains(&x)));
            assert_ne!(previous.as_ref(), Some(&view), "anchor overfill unchanged across segment {seg}");
            previous = Some(view);
            seg += 1;
        }
    }
    assert_eq!(seg, g.boundaries.len());
}

#[cfg(test)]
mod tests {
    use super::*;
    use quiver_core::range_set;
    use seqcomb::{FamilySpec, Generator};

    fn gen(g: Generator) -> Descriptor {
        Descriptor::generator(g)
    }

    #[test]
    fn star_on_the_empty_quiver() {
        let g = af_divergence_gadget(&Quiver::new(), &[1].into(), &gen(Generator::ShiftedRay(4)), 200).unwrap();
        let AfBranch::Star { hub, rim, prefix_ticks, .. } = g.branch else { panic!("{:?}", g.branch) };
        assert_eq!((hub, rim, prefix_ticks), (2, 3, 0));
        assert_eq!(g.changes, AF_CHECKED_STEPS);
    }

    #[test]
    fn isolated_recurring_letter_gets_an_arrow() {
        let g = af_divergence_gadget(&Quiver::new(), &VertexSet::new(), &gen(Generator::Repeat(5)), 10).unwrap();
        assert_eq!(g.branch, AfBranch::Recurring { letter: 5, added: Some((5, 6)) });
        assert_eq!(g.quiver, Quiver::from_arrows([(5, 6, 1)]));
        assert_eq!(g.changes, AF_CHECKED_STEPS);
    }

    #[test]
    fn markov_neighbourhood_with_a_prefix() {
        let markov = Quiver::from_arrows([(1, 2, 2), (2, 3, 2), (3, 1, 2)]);
        let w = range_set(1, 3);
        let g = af_divergence_gadget(&markov, &w, &gen(Generator::ShiftedRay(6)), 200).unwrap();
        assert_eq!(g.quiver.restrict(&w), markov);
        let AfBranch::Star { hub, prefix_ticks, .. } = g.branch else { panic!() };
        assert_eq!(hub, 4);
        // Letters 6, 7, ... : nothing at or below 5 ever occurs.
        assert_eq!(prefix_ticks, 0);
        let g = af_divergence_gadget(&markov, &w, &gen(Generator::IdentityRay), 200).unwrap();
        assert!(matches!(g.branch, AfBranch::Star { prefix_ticks: 5, .. }));
    }

    #[test]
    fn finite_sequences_have_no_gadget() {
        let e = af_divergence_gadget(&Quiver::new(), &[1].into(), &Descriptor::prefix(vec![1, 2]), 10).unwrap_err();
        assert!(matches!(e, ConvError::GadgetInapplicable(_)));
    }

    #[test]
    fn identity_ray_chain() {
        for count in [3, 5] {
            let g = lf_divergence_gadget(&Quiver::new(), &[1].into(), &gen(Generator::IdentityRay), count, 200).unwrap();
            assert_eq!(g.anchor, 2);
            assert_eq!(g.prefix_ticks, 2);
            assert_eq!(g.sets.len(), count);
            // Singletons: each segment is one letter, entry 2.
            assert!(g.entries.iter().all(|e| *e == BigInt::from(2)));
            assert_eq!(g.anchor_counts.last().unwrap(), &BigInt::from(1u64 << count));
        }
    }

    #[test]
    fn block_family_chain() {
        let d = gen(Generator::FamilyConcat(FamilySpec::Blocks { size: 2 }));
        let g = lf_divergence_gadget(&Quiver::new(), &VertexSet::new(), &d, 2, 400).unwrap();
        assert_eq!(g.sets.len(), 2);
        assert!(g.anchor_counts.iter().all(|m| m.is_positive()));
    }

    #[test]
    fn not_enough_segments() {
        let e = lf_divergence_gadget(&Quiver::new(), &[1].into(), &gen(Generator::IdentityRay), 5, 6).unwrap_err();
        assert!(matches!(e, ConvError::InsufficientSegments { wanted: 5, .. }));
        let e = lf_divergence_gadget(&Quiver::new(), &[1].into(), &gen(Generator::Repeat(2)), 1, 60).unwrap_err();
        assert!(matches!(e, ConvError::GadgetInapplicable(_)));
    }
}
