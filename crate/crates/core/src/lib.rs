//! Base sizes and minimal degrees of primitive permutation groups.
//!
//! The crate builds concrete permutation representations of several families
//! of primitive groups (symmetric groups on subsets and partitions, affine
//! groups, classical groups on subspaces and related actions, product-action
//! wreath products, the Mathieu group M24), computes their base size and
//! minimal degree exactly, and checks them against closed-form bounds.

pub mod families;
pub mod formulas;
pub mod gf;
pub mod invariants;
pub mod perm;
pub mod verifier;

pub use perm::{PermError, PermGroup, Permutation, StabilizerChain};
