//! The generic countable quiver, realized lazily: arrow counts are decided
//! only when something asks for them. On top of it, the back-and-forth
//! isomorphism between the quiver and its mutation at a vertex, and the
//! infinite mutation sequence steering it toward an arbitrary target.

pub mod baf;
pub mod generic;
pub mod steer;

use quiver_core::Vertex;
use thiserror::Error;

pub use baf::{back_and_forth, PartialIso};
pub use generic::{GenericQuiver, Slot};
pub use steer::{steer_toward, SteerReport, Stage};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FraisseError {
    #[error("SpecConflict: {0}")]
    SpecConflict(String),
    #[error("UnknownVertex: {0} has not been committed")]
    UnknownVertex(Vertex),
}
