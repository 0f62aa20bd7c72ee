//! Finite permutation groups stored by full element enumeration.
//!
//! Every group keeps its sorted element list, so membership, cosets,
//! conjugates and cores are computed directly on elements. This is only
//! meant for small groups; closure stops with [`GroupError::OrderCapExceeded`]
//! once the configured cap is passed.

mod group;
mod perm;

pub use group::{CosetTable, Group, GroupPart, RightCoset, DEFAULT_ORDER_CAP};
pub use perm::Perm;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group order exceeds the cap of {cap} elements")]
    OrderCapExceeded { cap: usize },
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("element {0} is not in the ambient group")]
    NotInAmbientGroup(String),
    #[error("image sequence {0:?} is not a bijection")]
    NotABijection(Vec<usize>),
    #[error("point {} out of range for degree {degree}", point + 1)]
    PointOutOfRange { point: usize, degree: usize },
    #[error("cannot parse permutation: {0}")]
    Parse(String),
}
