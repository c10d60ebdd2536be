//! Trajectories of quivers under (prefixes of) infinite mutation sequences,
//! stabilization certificates for the weak and strong topologies, the
//! three-way classification of sequences acting on locally finite quivers,
//! and the quivers on which a sequence provably diverges.

pub mod certificate;
pub mod classify;
pub mod gadget;
pub mod trajectory;

use framing::FramingError;
use quiver_core::Vertex;
use seqcomb::SeqError;
use thiserror::Error;

pub use certificate::{strong_certificate, weak_certificate, Certificate, Mode, Status};
pub use classify::{classify_af, classify_lf, AfClassification, LfClassification, LfVerdict};
pub use gadget::{af_divergence_gadget, lf_divergence_gadget, AfGadget, AfBranch, LfGadget};
pub use trajectory::{a_infinity, Trajectory};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConvError {
    #[error("DescriptorExhausted: the sequence ends after {0} letters")]
    DescriptorExhausted(usize),
    #[error("TruncationExceeded: letter {letter} reaches the truncation bound {bound}")]
    TruncationExceeded { letter: Vertex, bound: Vertex },
    #[error("NotLocallyFiniteWindow: arrows at {0} are not all visible in the truncation")]
    NotLocallyFiniteWindow(Vertex),
    #[error("GadgetInapplicable: {0}")]
    GadgetInapplicable(String),
    #[error("InsufficientSegments: found {found} of {wanted} segments")]
    InsufficientSegments { found: usize, wanted: usize },
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Framing(#[from] FramingError),
}
