//! Fixed inputs shared by the benchmarks.

use primbase_core::families::{build, ConstructedAction, FamilySpec};

/// Families of increasing degree, cheap enough to rebuild per sample.
pub const SPECS: [&str; 5] = [
    "Affine(d=4,q=2)",
    "SymPartitions(a=2,b=4)",
    "LinearOnPk(d=3,q=3,k=1)",
    "SpOnGOCosets(d=6,sign=+)",
    "GOOnS1(d=8,q=2,sign=-)",
];

pub fn fixture(spec: &str) -> ConstructedAction {
    let spec: FamilySpec = spec.parse().expect("valid spec");
    build(&spec).expect("buildable family")
}
