//! Closed-form degrees, group orders, base-size bounds and inequality chains.

pub mod bounds;
pub mod bz;
pub mod chains;
pub mod degree;
pub mod orders;

use thiserror::Error;

pub use bounds::{log2_big, BoundName, SubspaceType};
pub use bz::{bz, BzValue};
pub use degree::degree;
pub use orders::group_order;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("formula for {0} did not give an integer")]
    NotIntegral(String),
    #[error("value {0} is too large")]
    TooLarge(String),
}
