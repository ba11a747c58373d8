//! Base size and minimal degree, exact where budgets allow.

pub mod affine_mu;
pub mod base;
pub mod mindeg;
pub mod report;

use num_bigint::BigUint;
use thiserror::Error;

use crate::perm::PermError;

pub use affine_mu::{affine_mu_structure, AffineMuStructure};
pub use base::{
    base_lower_bound, base_size_exact, base_size_greedy, is_base, is_irredundant_base, BaseSearch, DEFAULT_BASE_BUDGET,
};
pub use mindeg::{
    minimal_degree_by_stabilizers, minimal_degree_exact, MinimalDegree, MuMethod, MuOptions, DEFAULT_ORDER_CAP,
    DEFAULT_STABILIZER_BUDGET,
};
pub use report::{action_invariants, group_invariants, InvariantOptions, InvariantReport};

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error("the trivial group has no nonidentity element")]
    TrivialGroup,
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    OrderCapExceeded { order: BigUint, cap: u64 },
    #[error("search budget of {budget} exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}
