//! Finitely described infinite (or finite) mutation sequences.
//!
//! A descriptor yields a stream of *ticks*: one per letter of the underlying
//! sequence, `None` where an induced filter drops the letter. Horizons are
//! counted in ticks, so a filter that removes everything still makes progress.

use std::collections::BTreeMap;

use quiver_core::{Vertex, VertexSet};
use serde_json::{json, Value};

use crate::family::{schedule_explicit, FamilySpec};
use crate::word::{irreducible_word, Word};
use crate::SeqError;

/// How often a letter occurs in the whole sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Occurrence {
    Finite(u64),
    Infinite,
}

/// Shape of `R^omega` known analytically for registry entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionTail {
    Empty,
    /// Nonempty or empty, but certainly finite.
    Finite,
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `1, 2, 3, ...`
    IdentityRay,
    /// `k, k+1, k+2, ...`
    ShiftedRay(Vertex),
    /// `1, 1, 2, 2, 3, 3, ...`
    PairBlocks,
    /// Block `n` is `T(n-1)+1, ..., T(n)` followed by its reverse, `T` triangular.
    TriangularPalindromes,
    /// `i, i, i, ...`
    Repeat(Vertex),
    /// Irreducible words of an antichain family, concatenated.
    FamilyConcat(FamilySpec),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexFilter {
    Set(VertexSet),
    Complement(VertexSet),
}

impl VertexFilter {
    pub fn admits(&self, v: Vertex) -> bool {
        match self {
            VertexFilter::Set(s) => s.contains(&v),
            VertexFilter::Complement(s) => !s.contains(&v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Descriptor {
    Prefix(Word),
    Generator(Generator),
    Induced { base: Box<Descriptor>, filter: VertexFilter },
    /// The sequence with its first `skip` ticks removed.
    Tail { base: Box<Descriptor>, skip: usize },
}

fn triangular(n: u64) -> u64 {
    n * (n + 1) / 2
}

impl Generator {
    /// Block `k >= 1`, or `None` past the end of a finite generator.
    pub fn block(&self, k: u64) -> Option<Word> {
        match self {
            Generator::IdentityRay => Some(vec![k]),
            Generator::ShiftedRay(s) => Some(vec![s + k - 1]),
            Generator::PairBlocks => Some(vec![k, k]),
            Generator::TriangularPalindromes => {
                let up: Word = (triangular(k - 1) + 1..=triangular(k)).collect();
                Some(up.iter().chain(up.iter().rev()).copied().collect())
            }
            Generator::Repeat(i) => Some(vec![*i]),
            Generator::FamilyConcat(spec) => match spec {
                FamilySpec::Explicit(_) => schedule_explicit(spec).ok()?.into_iter().nth((k - 1) as usize),
                _ => spec.member(k).map(|s| irreducible_word(&s.into_iter().collect::<Vec<_>>())),
            },
        }
    }

    fn total(&self, v: Vertex) -> Occurrence {
        use Occurrence::*;
        match self {
            Generator::IdentityRay => Finite(1),
            Generator::ShiftedRay(s) => Finite(u64::from(v >= *s)),
            Generator::PairBlocks | Generator::TriangularPalindromes => Finite(2),
            Generator::Repeat(i) => {
                if v == *i {
                    Infinite
                } else {
                    Finite(0)
                }
            }
            Generator::FamilyConcat(spec) => match spec {
                FamilySpec::Explicit(_) => {
                    let words = schedule_explicit(spec).unwrap_or_default();
                    Finite(words.iter().flatten().filter(|&&x| x == v).count() as u64)
                }
                FamilySpec::Fan { .. } => Finite(0),
                _ => {
                    let k = spec.index_of(v);
                    let w = self.block(k).unwrap_or_default();
                    Finite(w.iter().filter(|&&x| x == v).count() as u64)
                }
            },
        }
    }

    fn alphabet(&self) -> Option<VertexSet> {
        match self {
            Generator::Repeat(i) => Some([*i].into()),
            Generator::FamilyConcat(FamilySpec::Explicit(sets)) => Some(sets.iter().flatten().copied().collect()),
            _ => None,
        }
    }

    fn tail(&self) -> Option<ReductionTail> {
        match self {
            // Every letter occurs once, so the sequence is already reduced.
            Generator::IdentityRay | Generator::ShiftedRay(_) => Some(ReductionTail::Infinite),
            // Concatenations of even palindromes cancel completely.
            Generator::PairBlocks | Generator::TriangularPalindromes => Some(ReductionTail::Empty),
            Generator::Repeat(_) => None,
            Generator::FamilyConcat(FamilySpec::Explicit(_)) => Some(ReductionTail::Finite),
            // Reduced concatenation of infinitely many nonempty words.
            Generator::FamilyConcat(_) => Some(ReductionTail::Infinite),
        }
    }
}

impl Descriptor {
    pub fn prefix(word: impl Into<Word>) -> Self {
        Descriptor::Prefix(word.into())
    }

    pub fn generator(g: Generator) -> Self {
        Descriptor::Generator(g)
    }

    /// The subsequence of letters admitted by `filter`.
    pub fn induced(&self, filter: VertexFilter) -> Self {
        Descriptor::Induced { base: Box::new(self.clone()), filter }
    }

    pub fn induced_by(&self, s: &VertexSet) -> Self {
        self.induced(VertexFilter::Set(s.clone()))
    }

    pub fn tail(&self, skip: usize) -> Self {
        Descriptor::Tail { base: Box::new(self.clone()), skip }
    }

    pub fn ticks(&self) -> Box<dyn Iterator<Item = Option<Vertex>> + '_> {
        match self {
            Descriptor::Prefix(w) => Box::new(w.iter().map(|&x| Some(x))),
            Descriptor::Generator(g) => {
                if let Generator::FamilyConcat(spec @ FamilySpec::Explicit(_)) = g {
                    let words = schedule_explicit(spec).unwrap_or_default();
                    return Box::new(words.into_iter().flatten().map(Some));
                }
                Box::new((1..).map_while(move |k| g.block(k)).flatten().map(Some))
            }
            Descriptor::Induced { base, filter } => {
                Box::new(base.ticks().map(move |t| t.filter(|&v| filter.admits(v))))
            }
            Descriptor::Tail { base, skip } => Box::new(base.ticks().skip(*skip)),
        }
    }

    /// The letters, ending when the sequence is finite and used up.
    pub fn letters(&self) -> Letters<'_> {
        let remaining = self.alphabet().and_then(|a| {
            a.iter()
                .map(|&v| match self.total(v) {
                    Occurrence::Finite(n) => Some((v, n)),
                    Occurrence::Infinite => None,
                })
                .collect::<Option<BTreeMap<Vertex, u64>>>()
        });
        Letters { ticks: self.ticks(), remaining }
    }

    /// The first `n` letters (fewer if the sequence is shorter).
    pub fn take(&self, n: usize) -> Word {
        self.letters().take(n).collect()
    }

    pub fn total(&self, v: Vertex) -> Occurrence {
        match self {
            Descriptor::Prefix(w) => Occurrence::Finite(w.iter().filter(|&&x| x == v).count() as u64),
            Descriptor::Generator(g) => g.total(v),
            Descriptor::Induced { base, filter } => {
                if filter.admits(v) {
                    base.total(v)
                } else {
                    Occurrence::Finite(0)
                }
            }
            Descriptor::Tail { base, skip } => match base.total(v) {
                Occurrence::Finite(n) => {
                    let early = base.ticks().take(*skip).filter(|&t| t == Some(v)).count() as u64;
                    Occurrence::Finite(n - early)
                }
                Occurrence::Infinite => Occurrence::Infinite,
            },
        }
    }

    /// Every letter that can occur, when that set is finite.
    pub fn alphabet(&self) -> Option<VertexSet> {
        match self {
            Descriptor::Prefix(w) => Some(w.iter().copied().collect()),
            Descriptor::Generator(g) => g.alphabet(),
            Descriptor::Induced { base, filter } => match (base.alphabet(), filter) {
                (Some(a), f) => Some(a.into_iter().filter(|&v| f.admits(v)).collect()),
                (None, VertexFilter::Set(s)) => Some(s.iter().copied().filter(|&v| base.total(v) != Occurrence::Finite(0)).collect()),
                (None, VertexFilter::Complement(_)) => None,
            },
            Descriptor::Tail { base, .. } => {
                base.alphabet().map(|a| a.into_iter().filter(|&v| self.total(v) != Occurrence::Finite(0)).collect())
            }
        }
    }

    /// Letters occurring infinitely often. Registry entries only ever have
    /// finitely many of these.
    pub fn infinite_letters(&self) -> VertexSet {
        match self {
            Descriptor::Prefix(_) => VertexSet::new(),
            Descriptor::Generator(Generator::Repeat(i)) => [*i].into(),
            Descriptor::Generator(_) => VertexSet::new(),
            Descriptor::Induced { base, filter } => {
                base.infinite_letters().into_iter().filter(|&v| filter.admits(v)).collect()
            }
            Descriptor::Tail { base, .. } => base.infinite_letters(),
        }
    }

    /// Analytic shape of the reduction, when known; `None` if some letter
    /// occurs infinitely often (reduction undefined).
    pub fn reduction_tail(&self) -> Option<ReductionTail> {
        if !self.infinite_letters().is_empty() {
            return None;
        }
        match self {
            Descriptor::Prefix(w) => Some(if crate::reduce_word(w).is_empty() {
                ReductionTail::Empty
            } else {
                ReductionTail::Finite
            }),
            Descriptor::Generator(g) => g.tail(),
            Descriptor::Induced { base, filter } => {
                if self.alphabet().is_some() {
                    return Some(ReductionTail::Finite);
                }
                let VertexFilter::Complement(_) = filter else { unreachable!("finite filters give finite alphabets") };
                // Dropping finitely many letters touches finitely many blocks.
                match base.reduction_tail() {
                    Some(t) => Some(t),
                    None => match base.as_ref() {
                        Descriptor::Generator(Generator::Repeat(_)) => Some(ReductionTail::Empty),
                        _ => None,
                    },
                }
            }
            // A finite prefix can cancel at most finitely much of the rest.
            Descriptor::Tail { base, .. } => base.reduction_tail().map(|t| match t {
                ReductionTail::Infinite => ReductionTail::Infinite,
                _ => ReductionTail::Finite,
            }),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Descriptor::Prefix(w) => json!({"kind": "prefix", "word": w}),
            Descriptor::Generator(g) => {
                let (id, params) = match g {
                    Generator::IdentityRay => ("identity_ray", json!({})),
                    Generator::ShiftedRay(k) => ("shifted_ray", json!({"k": k})),
                    Generator::PairBlocks => ("pair_blocks", json!({})),
                    Generator::TriangularPalindromes => ("triangular_palindromes", json!({})),
                    Generator::Repeat(i) => ("repeat", json!({"i": i})),
                    Generator::FamilyConcat(spec) => ("family_concat", spec.to_json()),
                };
                json!({"kind": "generator", "id": id, "params": params})
            }
            Descriptor::Induced { base, filter } => {
                let (key, s) = match filter {
                    VertexFilter::Set(s) => ("set", s),
                    VertexFilter::Complement(s) => ("complement", s),
                };
                json!({"kind": "induced", "base": base.to_json(), key: s})
            }
            Descriptor::Tail { base, skip } => json!({"kind": "tail", "base": base.to_json(), "skip": skip}),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, SeqError> {
        let bad = |m: &str| SeqError::MalformedDescriptor(m.to_string());
        let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| bad("missing \"kind\""))?;
        match kind {
            "prefix" => Ok(Descriptor::Prefix(word_of(v.get("word").ok_or_else(|| bad("missing \"word\""))?)?)),
            "generator" => {
                let id = v.get("id").and_then(Value::as_str).ok_or_else(|| bad("missing \"id\""))?;
                let empty = json!({});
                let params = v.get("params").unwrap_or(&empty);
                let param = |key: &str| {
                    params
                        .get(key)
                        .and_then(Value::as_u64)
                        .filter(|&x| x > 0)
                        .ok_or_else(|| bad(&format!("{id} needs a positive \"{key}\"")))
                };
                let g = match id {
                    "identity_ray" => Generator::IdentityRay,
                    "shifted_ray" => Generator::ShiftedRay(param("k")?),
                    "pair_blocks" => Generator::PairBlocks,
                    "triangular_palindromes" => Generator::TriangularPalindromes,
                    "repeat" => Generator::Repeat(param("i")?),
                    "family_concat" => Generator::FamilyConcat(FamilySpec::from_json(params)?.validated()?),
                    other => return Err(bad(&format!("unknown generator {other}"))),
                };
                Ok(Descriptor::Generator(g))
            }
            "induced" => {
                let base = Descriptor::from_json(v.get("base").ok_or_else(|| bad("missing \"base\""))?)?;
                let filter = match (v.get("set"), v.get("complement")) {
                    (Some(s), None) => VertexFilter::Set(word_of(s)?.into_iter().collect()),
                    (None, Some(s)) => VertexFilter::Complement(word_of(s)?.into_iter().collect()),
                    _ => return Err(bad("induced needs exactly one of \"set\", \"complement\"")),
                };
                Ok(base.induced(filter))
            }
            "tail" => {
                let base = Descriptor::from_json(v.get("base").ok_or_else(|| bad("missing \"base\""))?)?;
                let skip = v.get("skip").and_then(Value::as_u64).ok_or_else(|| bad("tail needs \"skip\""))?;
                Ok(base.tail(skip as usize))
            }
            other => Err(bad(&format!("unknown kind {other}"))),
        }
    }
}

/// Parses a JSON list of positive integers.
pub fn word_of(v: &Value) -> Result<Word, SeqError> {
    let bad = || SeqError::MalformedDescriptor(format!("expected a list of positive integers, got {v}"));
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|x| x.as_u64().filter(|&x| x > 0).ok_or_else(bad))
        .collect()
}

/// Letter iterator of a descriptor; see [`Descriptor::letters`].
pub struct Letters<'a> {
    ticks: Box<dyn Iterator<Item = Option<Vertex>> + 'a>,
    remaining: Option<BTreeMap<Vertex, u64>>,
}

impl Iterator for Letters<'_> {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if let Some(r) = &self.remaining {
            if r.values().all(|&n| n == 0) {
                return None;
            }
        }
        let v = loop {
            if let Some(v) = self.ticks.next()? {
                break v;
            }
        };
        if let Some(r) = &mut self.remaining {
            *r.get_mut(&v).expect("letter outside the alphabet") -= 1;
        }
        Some(v)
    }
}
