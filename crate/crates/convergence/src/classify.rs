//! Density verdicts for infinite mutation sequences.

use quiver_core::{Tri, VertexSet};
use seqcomb::{stream_reduce, Descriptor, ReductionTail, StreamReduction, VertexFilter};
use serde_json::{json, Value};

use crate::ConvError;

/// Where a sequence converges, on locally finite quivers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LfVerdict {
    /// Every letter occurs finitely often and the reduction is finite: the
    /// sequence converges everywhere, to its reduction's action.
    AllConverge,
    /// Every letter occurs finitely often and the reduction is infinite: both
    /// convergence and divergence are dense.
    BothDense,
    /// Some letter occurs infinitely often: convergence is not dense.
    /// Divergence is dense iff infinitely many letters recur forever or the
    /// subsequence of the other letters has infinite reduction.
    CNotDense { d_dense: bool },
    /// The reduction's shape could not be certified.
    Inconclusive,
}

impl LfVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            LfVerdict::AllConverge => "all_converge",
            LfVerdict::BothDense => "both_dense",
            LfVerdict::CNotDense { .. } => "c_not_dense",
            LfVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LfClassification {
    pub verdict: LfVerdict,
    /// Letters occurring infinitely often.
    pub recurring: VertexSet,
    /// Shape of the reduction that decides the verdict: of the sequence itself,
    /// or of the subsequence avoiding `recurring` when that is nonempty.
    pub tail: Option<ReductionTail>,
    /// Bounded-horizon stack reduction of the same sequence.
    pub stream: StreamReduction,
}

impl LfClassification {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "verdict": self.verdict.as_str(),
            "recurring": self.recurring,
            "tail": self.tail.map(|t| format!("{t:?}").to_lowercase()),
            "certified_prefix": self.stream.frozen,
            "live_suffix": self.stream.live_suffix,
            "exhausted": self.stream.exhausted,
        });
        if let LfVerdict::CNotDense { d_dense } = self.verdict {
            v["d_dense"] = json!(d_dense);
        }
        v
    }
}

/// Three-way classification, decided by the occurrence oracle and the
/// analytic reduction shape of the descriptor. The stack reduction over
/// `horizon` ticks is a cross-check: a certified nonempty prefix contradicts
/// an empty reduction.
pub fn classify_lf(d: &Descriptor, horizon: usize) -> Result<LfClassification, ConvError> {
    let recurring = d.infinite_letters();
    let decisive = if recurring.is_empty() { d.clone() } else { d.induced(VertexFilter::Complement(recurring.clone())) };
    let tail = decisive.reduction_tail();
    let stream = stream_reduce(&decisive, horizon)?;
    assert!(
        !(tail == Some(ReductionTail::Empty) && !stream.frozen.is_empty()),
        "reduction claimed empty but {:?} is certified",
        stream.frozen
    );
    if let Some(ReductionTail::Finite | ReductionTail::Empty) = tail {
        assert!(stream.exhausted || !stream.frozen.is_empty() || stream.live_suffix.len() <= horizon);
    }
    let infinite = match tail {
        Some(ReductionTail::Infinite) => Some(true),
        Some(ReductionTail::Finite | ReductionTail::Empty) => Some(false),
        None => None,
    };
    let verdict = match (recurring.is_empty(), infinite) {
        (_, None) => LfVerdict::Inconclusive,
        (true, Some(false)) => LfVerdict::AllConverge,
        (true, Some(true)) => LfVerdict::BothDense,
        // Registry descriptors only ever have finitely many recurring letters.
        (false, Some(inf)) => LfVerdict::CNotDense { d_dense: inf },
    };
    Ok(LfClassification { verdict, recurring, tail, stream })
}

/// Density facts on arrow-finite quivers. Divergence is always dense for an
/// infinite sequence; convergence is dense when no letter recurs forever and
/// not dense when only finitely many letters occur. The remaining case (some
/// letter recurs and infinitely many letters occur) is open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AfClassification {
    pub finite_sequence: bool,
    pub divergence_dense: Tri,
    pub convergence_dense: Tri,
}

impl AfClassification {
    pub fn to_json(&self) -> Value {
        json!({
            "finite_sequence": self.finite_sequence,
            "divergence_dense": self.divergence_dense.as_str(),
            "convergence_dense": self.convergence_dense.as_str(),
        })
    }
}

pub fn classify_af(d: &Descriptor) -> AfClassification {
    let recurring = d.infinite_letters();
    let finite_alphabet = d.alphabet().is_some();
    if recurring.is_empty() && finite_alphabet {
        // A finite sequence is a single homeomorphism.
        return AfClassification { finite_sequence: true, divergence_dense: Tri::No, convergence_dense: Tri::Yes };
    }
    let convergence_dense = if recurring.is_empty() {
        Tri::Yes
    } else if finite_alphabet {
        Tri::No
    } else {
        Tri::Unknown
    };
    AfClassification { finite_sequence: false, divergence_dense: Tri::Yes, convergence_dense }
}
