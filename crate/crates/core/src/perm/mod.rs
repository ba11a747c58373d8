//! Permutations, permutation groups and stabilizer chains.

mod blocks;
mod chain;
mod group;
mod permutation;

use thiserror::Error;

pub use blocks::minimal_block;
pub use chain::{Level, StabilizerChain};
pub use group::PermGroup;
pub(crate) use group::orbits_of;
pub use permutation::{compose, inverse, support, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("not a permutation of 0..{degree}: {reason}")]
    NotABijection { degree: usize, reason: String },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group is not transitive")]
    Intransitive,
}
