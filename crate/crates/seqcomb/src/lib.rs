//! Word calculus for mutation sequences: block reduction and its stack form,
//! ranks, induced subsequences, linked sets, irreducible words, sequences
//! realizing a prescribed family of minimal linked sets, and a disjoint
//! normal-form selection of minimal linked sets.

pub mod descriptor;
pub mod family;
pub mod linking;
pub mod stream;
pub mod word;

use quiver_core::{Vertex, VertexSet};
use thiserror::Error;

pub use descriptor::{Descriptor, Generator, Occurrence, ReductionTail, VertexFilter};
pub use family::{build_sequence_from_family, schedule_explicit, FamilySpec};
pub use linking::{convex_hull, is_linked, minimal_linked_supersets, normal_form_subset, NormalForm, HULL_CAP};
pub use stream::{stream_reduce, StreamReduction};
pub use word::{
    extend_irreducible, irreducible_word, is_irreducible, is_reduced, one_step_reduce, reduce_word, reduction_trace,
    Rank, ReductionTrace, Word,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("InfiniteOccurrence: letter {0} occurs infinitely often")]
    InfiniteOccurrence(Vertex),
    #[error("HorizonTooSmall: occurrences of {0} extend past the horizon")]
    HorizonTooSmall(Vertex),
    #[error("HullTooLarge: hull of {letter} has {size} letters, cap is {cap}")]
    HullTooLarge { letter: Vertex, size: usize, cap: usize },
    #[error("LetterCollision: {0} already occurs in the word")]
    LetterCollision(Vertex),
    #[error("NotAntichain: {0:?} is contained in {1:?}")]
    NotAntichain(VertexSet, VertexSet),
    #[error("InfiniteMembership: vertex {0} lies in infinitely many sets")]
    InfiniteMembership(Vertex),
    #[error("EmptyMember: the empty set is never linked")]
    EmptyMember,
    #[error("ExhaustedHorizon: found {found} of {wanted} disjoint minimal linked sets")]
    ExhaustedHorizon { found: usize, wanted: usize },
    #[error("MalformedDescriptor: {0}")]
    MalformedDescriptor(String),
}
