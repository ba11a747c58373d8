//! Finite fields, matrices, classical forms and subspace domains.

mod field;
mod form;
mod matrix;
mod subspace;
pub mod vectors;

use thiserror::Error;

pub use field::{Field, SUPPORTED_Q};
pub use form::{null_space, Form, FormKind, Sign};
pub use matrix::Matrix;
pub use subspace::{accepts, gaussian_binomial, DomainKind, NondegenerateFilter, SubspaceDomain, ENUMERATION_LIMIT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("unsupported field size {0} (supported: 2, 3, 4, 5, 7, 8, 9)")]
    UnsupportedField(u32),
    #[error("malformed reduction polynomial table: {0}")]
    BadTable(String),
    #[error("field axiom violated: {0}")]
    AxiomViolation(String),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("{value} is not an element of GF({q})")]
    NotAFieldElement { value: u8, q: u32 },
    #[error("GF({0}) has no involutory automorphism")]
    NotASquareField(u32),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("vector is singular for this operation")]
    SingularVector,
    #[error("empty domain: {0}")]
    EmptyDomain(String),
    #[error("domain too large: {0} members")]
    TooLarge(u64),
    #[error("matrix does not preserve the domain")]
    NotPreserved,
}
