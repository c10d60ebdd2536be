//! Quivers on the positive integers: skew-symmetric arrow counts with finite
//! support, the pointwise operators (mutation, restriction, overfill), property
//! predicates, isomorphism search, forks and the prime-power window encoding.
//!
//! The quiver type is generic over its arrow-count scalar. `Quiver` (arbitrary
//! precision) is what every downstream crate uses; `QuiverI64` exists for
//! cheap experiments where counts are known to stay small.

pub mod encode;
pub mod fork;
pub mod io;
pub mod iso;
pub mod props;
pub mod quiver;
pub mod sample;

use num_bigint::BigInt;

pub use encode::{h, h_inv, lf_decode, lf_encode, DecodeError};
pub use fork::{acyclic_order, fork_point, AbundanceViolation};
pub use io::{from_json, to_dot, to_json, IoError};
pub use iso::is_isomorphic;
pub use props::{check_property, PropertyKind};
pub use quiver::{QuiverOf, Weight};

pub type Vertex = u64;
pub type VertexSet = std::collections::BTreeSet<Vertex>;

pub type Quiver = QuiverOf<BigInt>;
pub type QuiverI64 = QuiverOf<i64>;

/// Answer of a semidecidable question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn as_str(self) -> &'static str {
        match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        }
    }
}

impl std::fmt::Display for Tri {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `{lo, lo+1, ..., hi}`.
pub fn range_set(lo: Vertex, hi: Vertex) -> VertexSet {
    (lo..=hi).collect()
}
