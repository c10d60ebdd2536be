//! Sequences realizing a prescribed antichain of minimal linked sets, built by
//! concatenating one irreducible word per set.

use quiver_core::{Vertex, VertexSet};
use serde_json::{json, Value};

use crate::descriptor::{word_of, Descriptor, Generator};
use crate::word::{irreducible_word, Word};
use crate::SeqError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// A finite list of sets, scheduled in the given order.
    Explicit(Vec<VertexSet>),
    /// `{1}, {2}, {3}, ...`
    Singletons,
    /// `{1..size}, {size+1..2 size}, ...`
    Blocks { size: u64 },
    /// `{hub, k}` for every `k != hub`: an antichain in which `hub` has
    /// infinitely many memberships, so it can never be realized.
    Fan { hub: Vertex },
}

impl FamilySpec {
    /// Member `k >= 1` of an infinite family.
    pub fn member(&self, k: u64) -> Option<VertexSet> {
        match self {
            FamilySpec::Explicit(sets) => sets.get((k - 1) as usize).cloned(),
            FamilySpec::Singletons => Some([k].into()),
            FamilySpec::Blocks { size } => Some(((k - 1) * size + 1..=k * size).collect()),
            FamilySpec::Fan { hub } => {
                let other = if k < *hub { k } else { k + 1 };
                Some([*hub, other].into())
            }
        }
    }

    /// Index of the unique member containing `v`, for the disjoint infinite families.
    pub(crate) fn index_of(&self, v: Vertex) -> u64 {
        match self {
            FamilySpec::Singletons => v,
            FamilySpec::Blocks { size } => (v - 1) / size + 1,
            _ => unreachable!("only disjoint infinite families are indexed"),
        }
    }

    /// Checks the antichain and finite-membership conditions.
    pub fn validated(self) -> Result<Self, SeqError> {
        match &self {
            FamilySpec::Explicit(sets) => {
                if sets.iter().any(VertexSet::is_empty) {
                    return Err(SeqError::EmptyMember);
                }
                for (a, s) in sets.iter().enumerate() {
                    for (b, t) in sets.iter().enumerate() {
                        if a != b && s.is_subset(t) {
                            return Err(SeqError::NotAntichain(s.clone(), t.clone()));
                        }
                    }
                }
            }
            FamilySpec::Blocks { size: 0 } => return Err(SeqError::EmptyMember),
            FamilySpec::Fan { hub } => return Err(SeqError::InfiniteMembership(*hub)),
            FamilySpec::Singletons | FamilySpec::Blocks { .. } => {}
        }
        Ok(self)
    }

    pub fn to_json(&self) -> Value {
        match self {
            FamilySpec::Explicit(sets) => json!({"sets": sets}),
            FamilySpec::Singletons => json!({"family": "singletons"}),
            FamilySpec::Blocks { size } => json!({"family": "blocks", "size": size}),
            FamilySpec::Fan { hub } => json!({"family": "fan", "hub": hub}),
        }
    }

    /// Accepts `{"sets": [[...], ...]}`, a bare list of sets, or
    /// `{"family": "singletons" | "blocks" | "fan", ...}`.
    pub fn from_json(v: &Value) -> Result<Self, SeqError> {
        let bad = |m: &str| SeqError::MalformedDescriptor(m.to_string());
        let sets_of = |a: &Value| -> Result<Self, SeqError> {
            let sets = a.as_array().ok_or_else(|| bad("\"sets\" must be a list of lists"))?;
            Ok(FamilySpec::Explicit(sets.iter().map(|s| word_of(s).map(|w| w.into_iter().collect())).collect::<Result<_, _>>()?))
        };
        if v.is_array() {
            return sets_of(v);
        }
        if let Some(sets) = v.get("sets") {
            return sets_of(sets);
        }
        let num = |key: &str| v.get(key).and_then(Value::as_u64).filter(|&x| x > 0).ok_or_else(|| bad(&format!("missing positive \"{key}\"")));
        match v.get("family").and_then(Value::as_str) {
            Some("singletons") => Ok(FamilySpec::Singletons),
            Some("blocks") => Ok(FamilySpec::Blocks { size: num("size")? }),
            Some("fan") => Ok(FamilySpec::Fan { hub: num("hub")? }),
            _ => Err(bad("family needs \"sets\" or a known \"family\" name")),
        }
    }
}

/// Irreducible words for an explicit family, in emission order.
///
/// Each step appends the earliest pending set whose canonical word (letters
/// inserted in ascending order) does not start with the current last letter.
/// If every pending word collides, the earliest set's word is rebuilt starting
/// from another of its letters; a collision on a singleton cannot happen, as
/// the singleton would then be contained in the previous set.
pub fn schedule_explicit(spec: &FamilySpec) -> Result<Vec<Word>, SeqError> {
    let FamilySpec::Explicit(sets) = spec.clone().validated()? else {
        unreachable!("only explicit families are scheduled up front")
    };
    let mut pending: Vec<Vec<Vertex>> = sets.iter().map(|s| s.iter().copied().collect()).collect();
    let mut out: Vec<Word> = Vec::new();
    let mut last: Option<Vertex> = None;
    while !pending.is_empty() {
        let word = match pending.iter().position(|s| Some(s[0]) != last) {
            Some(k) => irreducible_word(&pending.remove(k)),
            None => {
                let mut s = pending.remove(0);
                let start = s.iter().position(|&x| Some(x) != last).expect("a set of size >= 2");
                let first = s.remove(start);
                s.insert(0, first);
                irreducible_word(&s)
            }
        };
        last = word.last().copied();
        out.push(word);
    }
    Ok(out)
}

/// A descriptor whose minimal linked sets are exactly the given family.
pub fn build_sequence_from_family(family: FamilySpec) -> Result<Descriptor, SeqError> {
    Ok(Descriptor::generator(Generator::FamilyConcat(family.validated()?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::is_reduced;

    fn set(v: &[Vertex]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn validation() {
        let ok = FamilySpec::Explicit(vec![set(&[1, 2]), set(&[2, 3])]);
        assert!(ok.validated().is_ok());
        let nested = FamilySpec::Explicit(vec![set(&[1]), set(&[1, 2])]);
        assert_eq!(nested.validated(), Err(SeqError::NotAntichain(set(&[1]), set(&[1, 2]))));
        assert_eq!(FamilySpec::Fan { hub: 3 }.validated(), Err(SeqError::InfiniteMembership(3)));
        assert_eq!(FamilySpec::Explicit(vec![VertexSet::new()]).validated(), Err(SeqError::EmptyMember));
        let dup = FamilySpec::Explicit(vec![set(&[4]), set(&[4])]);
        assert!(matches!(dup.validated(), Err(SeqError::NotAntichain(..))));
    }

    #[test]
    fn overlapping_sets_use_the_fallback() {
        let spec = FamilySpec::Explicit(vec![set(&[1, 2]), set(&[2, 3])]);
        let words = schedule_explicit(&spec).unwrap();
        assert_eq!(words, vec![vec![1, 2, 1, 2], vec![3, 2, 3, 2]]);
        assert!(is_reduced(&words.concat()));
    }

    #[test]
    fn colliding_set_is_postponed() {
        // (1,2,1,2) ends in 2; {2,5} would start with 2, so {3} goes first.
        let spec = FamilySpec::Explicit(vec![set(&[1, 2]), set(&[2, 5]), set(&[3])]);
        let words = schedule_explicit(&spec).unwrap();
        assert_eq!(words, vec![vec![1, 2, 1, 2], vec![3], vec![2, 5, 2, 5]]);
    }
}
