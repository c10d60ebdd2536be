//! Framed quivers: every mutable vertex `x` gets a frozen companion `x'` with
//! one arrow `x -> x'`. The arrows from mutable vertices to frozen ones form
//! the c-matrix, whose rows (c-vectors) color vertices green or red.
//!
//! Also home to the triangular-word machinery on the doubled acyclic
//! tournament `qn_abundant(n)` and the off-diagonal c-vector witness.

pub mod framed;
pub mod triangular;

use quiver_core::Vertex;
use thiserror::Error;

pub use framed::{frame, frame_on, CVector, Color, FramedQuiver, FramedVertex};
pub use triangular::{
    is_strongly_triangular, is_triangular, offdiag_witness, qn_abundant, stabilized_c_vector, strongly_triangular_words,
    triangular_index,
    OffdiagWitness,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FramingError {
    #[error("FrozenMutation: vertex {0}' is frozen")]
    FrozenMutation(Vertex),
    #[error("UnknownVertex: {0} is not a mutable vertex")]
    UnknownVertex(Vertex),
    #[error("SignIncoherence: c-vector of {0} has entries of both signs")]
    SignIncoherence(Vertex),
    #[error("NotAbundantAcyclic: {0}")]
    NotAbundantAcyclic(String),
    #[error("UnreducedWord: letter {0} repeats consecutively")]
    UnreducedWord(Vertex),
    #[error("EmptyWord: the word must be nontrivial")]
    EmptyWord,
    #[error("MalformedFramedQuiver: {0}")]
    Malformed(String),
}
