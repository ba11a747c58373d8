//! Concrete permutation groups for each [`FamilySpec`].

mod affine;
mod classical;
mod cosets;
mod mathieu;
mod spec;
mod symmetric;
mod witness;
mod wreath;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::formulas::{self, FormulaError};
use crate::gf::{Form, GfError, SubspaceDomain};
use crate::perm::{PermError, PermGroup};

pub use classical::{envelope_max_dimension, ENVELOPE};
pub use mathieu::{load_mathieu24, parse_generator_file, GeneratorFile};
pub use spec::{FamilySpec, PointClass};
pub use witness::{witness, Witness};

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("cannot parse family spec: {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("{spec}: degree {degree} exceeds the cap {cap}")]
    CapExceeded { spec: String, degree: BigUint, cap: usize },
    #[error("{0}: outside the constructible envelope")]
    OutsideEnvelope(String),
    #[error("{spec}: constructed degree {found} differs from the formula {expected}")]
    DegreeMismatch { spec: String, expected: BigUint, found: usize },
    #[error("{spec}: generated group has order {found}, expected {expected}")]
    OrderMismatch { spec: String, expected: BigUint, found: BigUint },
    #[error("{0}: constructed action is not transitive")]
    Intransitive(String),
    #[error("generator data: {0}")]
    DataFile(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Limits applied while building.
#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// Largest degree that is constructed.
    pub degree_cap: usize,
}

pub const DEFAULT_DEGREE_CAP: usize = 20_000;

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }
}

/// Extra structure kept for classical actions.
#[derive(Clone, Debug)]
pub struct LinearModel {
    pub form: Option<Form>,
    pub domain: SubspaceDomain,
}

/// A permutation group together with its domain.
#[derive(Clone, Debug)]
pub struct ConstructedAction {
    pub group: PermGroup,
    pub labels: Vec<String>,
    pub spec: FamilySpec,
    pub n: usize,
    pub(crate) linear: Option<LinearModel>,
    pub(crate) inner: Option<Box<ConstructedAction>>,
}

impl ConstructedAction {
    pub(crate) fn new(spec: FamilySpec, group: PermGroup, labels: Vec<String>) -> Self {
        Self {
            n: group.degree(),
            group,
            labels,
            spec,
            linear: None,
            inner: None,
        }
    }

    /// The form and subspace domain of a classical action.
    pub fn linear(&self) -> Option<&LinearModel> {
        self.linear.as_ref()
    }

    /// The component action of a wreath product.
    pub fn inner(&self) -> Option<&ConstructedAction> {
        self.inner.as_deref()
    }
}

/// Builds a family with the default options.
pub fn build(spec: &FamilySpec) -> Result<ConstructedAction, FamilyError> {
    build_with(spec, &BuildOptions::default())
}

/// Builds a family: checks parameters and the degree cap, constructs the
/// action, then checks degree, order and transitivity against the formulas.
pub fn build_with(spec: &FamilySpec, opts: &BuildOptions) -> Result<ConstructedAction, FamilyError> {
    spec.validate()?;
    let predicted = formulas::degree(spec)?;
    if predicted.to_usize().is_none_or(|n| n > opts.degree_cap) {
        return Err(FamilyError::CapExceeded {
            spec: spec.to_string(),
            degree: predicted,
            cap: opts.degree_cap,
        });
    }
    let action = match spec {
        FamilySpec::SymSubsets { m, k } => symmetric::on_subsets(spec, *m, *k, false)?,
        FamilySpec::AltSubsets { m, k } => symmetric::on_subsets(spec, *m, *k, true)?,
        FamilySpec::SymPartitions { a, b } => symmetric::on_partitions(spec, *a, *b)?,
        FamilySpec::Affine { d, q } => affine::affine(spec, *d, *q)?,
        FamilySpec::SpOnGOCosets { d, sign } => cosets::sp_on_forms(spec, *d, *sign)?,
        FamilySpec::WreathProduct { r, inner } => {
            let inner = build_with(inner, opts)?;
            wreath::product_action(spec, inner, *r)?
        }
        FamilySpec::Mathieu24 => mathieu::mathieu24(spec)?,
        _ => classical::classical(spec)?,
    };
    if BigUint::from(action.n) != predicted {
        return Err(FamilyError::DegreeMismatch {
            spec: spec.to_string(),
            expected: predicted,
            found: action.n,
        });
    }
    let expected = formulas::group_order(spec)?;
    let found = action.group.order();
    if found != expected {
        return Err(FamilyError::OrderMismatch {
            spec: spec.to_string(),
            expected,
            found,
        });
    }
    if !action.group.is_transitive() {
        return Err(FamilyError::Intransitive(spec.to_string()));
    }
    Ok(action)
}

/// Builds `generators` as a group whose order is known to be `expected`, then
/// confirms the order.
pub(crate) fn validated_group(
    spec: &FamilySpec,
    degree: usize,
    generators: Vec<crate::Permutation>,
    expected: &BigUint,
) -> Result<PermGroup, FamilyError> {
    let group = PermGroup::with_order_bound(degree, generators, expected)?;
    let found = group.order();
    if &found != expected {
        return Err(FamilyError::OrderMismatch {
            spec: spec.to_string(),
            expected: expected.clone(),
            found,
        });
    }
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: &str) -> (usize, BigUint) {
        let a = build(&s.parse().unwrap()).unwrap();
        (a.n, a.group.order())
    }

    #[test]
    fn small_examples() {
        assert_eq!(order("SymSubsets(m=5,k=2)"), (10, 120u32.into()));
        assert_eq!(order("AltSubsets(m=6,k=3)"), (20, 360u32.into()));
        assert_eq!(order("Affine(d=3,q=2)"), (8, 1344u32.into()));
        assert_eq!(order("Affine(d=1,q=3)"), (3, 6u32.into()));
        assert_eq!(order("Affine(d=2,q=4)"), (16, (16u32 * 180).into()));
        assert_eq!(order("SymPartitions(a=2,b=3)"), (15, 720u32.into()));
        assert_eq!(order("SymPartitions(a=4,b=2)"), (35, 40320u32.into()));
    }

    #[test]
    fn cap_is_enforced() {
        let spec: FamilySpec = "SymSubsets(m=30,k=5)".parse().unwrap();
        assert!(matches!(build(&spec), Err(FamilyError::CapExceeded { .. })));
    }
}
