//! Base sizes of `S_{ab}` acting on partitions into `b` blocks of size `a`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::bounds::ceil_log;
use super::FormulaError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BzValue {
    Exact(u64),
    /// Only an upper bound is known.
    AtMost(u64),
    /// No closed form is available.
    Unknown,
}

impl BzValue {
    pub fn exact(self) -> Option<u64> {
        match self {
            BzValue::Exact(v) => Some(v),
            _ => None,
        }
    }

    /// True if `b` is consistent with this value.
    pub fn admits(self, b: u64) -> bool {
        match self {
            BzValue::Exact(v) => b == v,
            BzValue::AtMost(v) => b <= v,
            BzValue::Unknown => true,
        }
    }
}

impl fmt::Display for BzValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BzValue::Exact(v) => write!(f, "{v}"),
            BzValue::AtMost(v) => write!(f, "<={v}"),
            BzValue::Unknown => f.write_str("?"),
        }
    }
}

const EXCEPTIONAL: [(u64, u64); 4] = [(3, 6), (3, 7), (4, 7), (7, 3)];

/// Base size of `S_{ab}` on partitions into `b` blocks of size `a`.
pub fn bz(a: u64, b: u64) -> Result<BzValue, FormulaError> {
    if a < 2 || b < 2 {
        return Err(FormulaError::InvalidParameters(format!("bz needs a, b >= 2, got ({a}, {b})")));
    }
    if (a, b) == (2, 2) {
        return Err(FormulaError::InvalidParameters("the action for (2, 2) is not faithful".into()));
    }
    Ok(match (a, b) {
        (2, 3) => BzValue::Exact(4),
        (2, _) => BzValue::Exact(3),
        (3, 2) => BzValue::Unknown,
        (4, 2) => BzValue::Exact(5),
        (_, 2) => BzValue::Exact(ceil_log(2, a + 3) + 1),
        _ if EXCEPTIONAL.contains(&(a, b)) || b == a + 2 => BzValue::AtMost(4),
        _ => BzValue::Exact(ceil_log(b, a + 2) + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(bz(2, 3).unwrap(), BzValue::Exact(4));
        assert_eq!(bz(2, 4).unwrap(), BzValue::Exact(3));
        assert_eq!(bz(4, 2).unwrap(), BzValue::Exact(5));
        assert_eq!(bz(5, 2).unwrap(), BzValue::Exact(4));
        assert_eq!(bz(3, 5).unwrap(), BzValue::AtMost(4));
        assert_eq!(bz(7, 3).unwrap(), BzValue::AtMost(4));
        assert_eq!(bz(3, 3).unwrap(), BzValue::Exact(3));
        assert!(bz(2, 2).is_err());
        assert!(bz(1, 5).is_err());
    }
}
