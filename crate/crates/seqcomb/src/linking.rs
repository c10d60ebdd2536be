use std::collections::{BTreeMap, HashMap};

use quiver_core::{Tri, Vertex, VertexSet};

use crate::descriptor::{Descriptor, Occurrence};
use crate::stream::{stream_reduce, Remaining};
use crate::word::{reduce_word, Word};
use crate::SeqError;

/// Default bound on hull size for exhaustive subset searches.
pub const HULL_CAP: usize = 20;

fn finite_total(d: &Descriptor, v: Vertex) -> Result<u64, SeqError> {
    match d.total(v) {
        Occurrence::Finite(n) => Ok(n),
        Occurrence::Infinite => Err(SeqError::InfiniteOccurrence(v)),
    }
}

/// Letters from the first to the last occurrence of `i`, inclusive of both.
pub fn convex_hull(d: &Descriptor, i: Vertex, horizon: usize) -> Result<VertexSet, SeqError> {
    let total = finite_total(d, i)?;
    let mut hull = VertexSet::new();
    if total == 0 {
        return Ok(hull);
    }
    let mut seen = 0;
    let mut pending: Vec<Vertex> = Vec::new();
    for t in d.ticks().take(horizon) {
        let Some(v) = t else { continue };
        if v == i {
            seen += 1;
            hull.extend(pending.drain(..));
            hull.insert(i);
            if seen == total {
                return Ok(hull);
            }
        } else if seen > 0 {
            pending.push(v);
        }
    }
    Err(SeqError::HorizonTooSmall(i))
}

/// Whether the subsequence induced by `s` has nonempty reduction.
pub fn is_linked(d: &Descriptor, s: &VertexSet, horizon: usize) -> Result<Tri, SeqError> {
    if s.is_empty() {
        return Ok(Tri::No);
    }
    let r = stream_reduce(&d.induced_by(s), horizon)?;
    Ok(if !r.frozen.is_empty() {
        Tri::Yes
    } else if r.exhausted && r.live_suffix.is_empty() {
        Tri::No
    } else {
        Tri::Unknown
    })
}

/// The complete occurrences of the letters in `letters`, in order. Fails if
/// some letter is not used up within `horizon` ticks.
fn complete_subsequence(d: &Descriptor, letters: &VertexSet, horizon: usize) -> Result<Word, SeqError> {
    let mut rem = Remaining::new(d);
    for &v in letters {
        finite_total(d, v)?;
    }
    let mut open = letters.iter().filter(|&&v| rem.get(v) > 0).count();
    let mut out = Word::new();
    for t in d.ticks().take(horizon) {
        if open == 0 {
            break;
        }
        let Some(v) = t else { continue };
        if letters.contains(&v) {
            rem.consume(v);
            if rem.get(v) == 0 {
                open -= 1;
            }
            out.push(v);
        }
    }
    match letters.iter().find(|&&v| rem.get(v) > 0) {
        Some(&v) => Err(SeqError::HorizonTooSmall(v)),
        None => Ok(out),
    }
}

/// Inclusion-minimal linked sets containing `i`. All of them lie inside the
/// convex hull of `i`, which is searched exhaustively.
pub fn minimal_linked_supersets(
    d: &Descriptor,
    i: Vertex,
    horizon: usize,
    cap: usize,
) -> Result<Vec<VertexSet>, SeqError> {
    let hull = convex_hull(d, i, horizon)?;
    if hull.is_empty() {
        return Ok(Vec::new());
    }
    if hull.len() > cap {
        return Err(SeqError::HullTooLarge { letter: i, size: hull.len(), cap });
    }
    let letters: Vec<Vertex> = hull.iter().copied().collect();
    let bit: BTreeMap<Vertex, u32> = letters.iter().enumerate().map(|(k, &v)| (v, k as u32)).collect();
    let word: Vec<u32> = complete_subsequence(d, &hull, horizon)?.iter().map(|v| bit[v]).collect();
    let mut memo: HashMap<u64, bool> = HashMap::new();
    let mut linked = |mask: u64| {
        *memo.entry(mask).or_insert_with(|| {
            let sub: Word = word.iter().filter(|&&b| mask >> b & 1 == 1).map(|&b| b as Vertex).collect();
            !reduce_word(&sub).is_empty()
        })
    };
    let ib = bit[&i];
    let mut out = Vec::new();
    for mask in 0..1u64 << letters.len() {
        if mask >> ib & 1 == 0 || !linked(mask) {
            continue;
        }
        // Linked sets are upward closed, so single-letter removals decide minimality.
        let minimal = (0..letters.len()).filter(|&b| mask >> b & 1 == 1).all(|b| !linked(mask & !(1 << b)));
        if minimal {
            out.push((0..letters.len()).filter(|&b| mask >> b & 1 == 1).map(|b| letters[b]).collect::<VertexSet>());
        }
    }
    out.sort();
    debug_assert!(out.iter().all(|s| s.is_subset(&hull)));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub sets: Vec<VertexSet>,
    /// Reduction of the subsequence induced by each set.
    pub segments: Vec<Word>,
}

impl NormalForm {
    pub fn union(&self) -> VertexSet {
        self.sets.iter().flatten().copied().collect()
    }
}

/// `count` pairwise disjoint minimal linked sets, chosen left to right: each
/// set's first occurrence comes after the previous set's last occurrence.
///
/// Candidates are tried in order of first occurrence; for a candidate letter
/// the admissible minimal set ending earliest wins (ties broken by contents).
pub fn normal_form_subset(d: &Descriptor, count: usize, horizon: usize) -> Result<NormalForm, SeqError> {
    if let Some(&v) = d.infinite_letters().iter().next() {
        return Err(SeqError::InfiniteOccurrence(v));
    }
    let prefix: Vec<Option<Vertex>> = d.ticks().take(horizon).collect();
    let mut first: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut last: BTreeMap<Vertex, usize> = BTreeMap::new();
    for (pos, t) in prefix.iter().enumerate() {
        if let Some(v) = t {
            first.entry(*v).or_insert(pos);
            last.insert(*v, pos);
        }
    }
    let mut by_first: Vec<(usize, Vertex)> = first.iter().map(|(&v, &p)| (p, v)).collect();
    by_first.sort();

    let mut nf = NormalForm { sets: Vec::new(), segments: Vec::new() };
    let mut cutoff: Option<usize> = None;
    let after = |p: usize, c: Option<usize>| c.map_or(true, |c| p > c);
    'outer: while nf.sets.len() < count {
        for &(p, v) in &by_first {
            if !after(p, cutoff) {
                continue;
            }
            let sets = match minimal_linked_supersets(d, v, horizon, HULL_CAP) {
                Ok(s) => s,
                Err(SeqError::HorizonTooSmall(_)) | Err(SeqError::HullTooLarge { .. }) => break 'outer,
                Err(e) => return Err(e),
            };
            let best = sets
                .into_iter()
                .filter(|s| s.iter().all(|x| after(first[x], cutoff)))
                .min_by_key(|s| (s.iter().map(|x| last[x]).max(), s.clone()));
            if let Some(s) = best {
                let seg = reduce_word(&complete_subsequence(d, &s, horizon)?);
                assert!(!seg.is_empty(), "minimal linked set with empty reduction");
                assert!(nf.union().is_disjoint(&s), "normal-form sets overlap");
                cutoff = s.iter().map(|x| last[x]).max();
                nf.sets.push(s);
                nf.segments.push(seg);
                continue 'outer;
            }
        }
        break;
    }
    if nf.sets.len() < count {
        return Err(SeqError::ExhaustedHorizon { found: nf.sets.len(), wanted: count });
    }
    Ok(nf)
}
