//! Mutation classes of finite quivers explored up to isomorphism, and the
//! map sending an infinite quiver's finite pieces to the embedding poset of
//! classes.

pub mod class;
pub mod order;
pub mod vertexed;

pub use class::{canonical_form, class_embeds, explore_class, Bounds, MutationClassNode};
pub use order::{poset_order_check, OrderReport};
pub use vertexed::{strip_isolated, VertexedQuiver};
