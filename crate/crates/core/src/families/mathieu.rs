//! Generator data files.
//!
//! Format: the degree on the first line, one permutation per line as
//! whitespace-separated 0-based images, and a final line `sha256 <hex>` with
//! the SHA-256 of everything before it (newlines included).

use num_bigint::BigUint;
use sha2::{Digest, Sha256};

use super::{ConstructedAction, FamilyError, FamilySpec};
use crate::formulas::orders::MATHIEU24_ORDER;
use crate::{PermGroup, Permutation};

const M24_DATA: &str = include_str!("../../data/m24.perm");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorFile {
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

pub fn parse_generator_file(text: &str) -> Result<GeneratorFile, FamilyError> {
    let err = |m: String| FamilyError::DataFile(m);
    let body_end = text
        .rfind("sha256 ")
        .ok_or_else(|| err("missing checksum line".into()))?;
    let (body, tail) = text.split_at(body_end);
    let expected = tail["sha256 ".len()..].trim();
    let actual: String = Sha256::digest(body.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
    if actual != expected {
        return Err(err(format!("checksum mismatch: file says {expected}, content hashes to {actual}")));
    }
    let mut lines = body.lines().filter(|l| !l.trim().is_empty());
    let degree: usize = lines
        .next()
        .and_then(|l| l.trim().parse().ok())
        .ok_or_else(|| err("first line must be the degree".into()))?;
    let mut generators = Vec::new();
    for (i, line) in lines.enumerate() {
        let images = line
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| err(format!("generator {}: {e}", i + 1)))?;
        if images.len() != degree {
            return Err(err(format!("generator {} has {} images, expected {degree}", i + 1, images.len())));
        }
        generators.push(Permutation::from_images(images)?);
    }
    Ok(GeneratorFile { degree, generators })
}

/// `M_24` from the embedded data, with its order checked.
pub fn load_mathieu24() -> Result<PermGroup, FamilyError> {
    let file = parse_generator_file(M24_DATA)?;
    // No order hint here: a corrupted file must not be able to hide behind it.
    let group = PermGroup::new(file.degree, file.generators)?;
    let expected = BigUint::from(MATHIEU24_ORDER);
    let found = group.order();
    if found != expected {
        return Err(FamilyError::OrderMismatch {
            spec: FamilySpec::Mathieu24.to_string(),
            expected,
            found,
        });
    }
    Ok(group)
}

pub(super) fn mathieu24(spec: &FamilySpec) -> Result<ConstructedAction, FamilyError> {
    let group = load_mathieu24()?;
    let labels = (0..group.degree()).map(|i| i.to_string()).collect();
    Ok(ConstructedAction::new(spec.clone(), group, labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m24_loads() {
        let g = load_mathieu24().unwrap();
        assert_eq!(g.order(), BigUint::from(MATHIEU24_ORDER));
        assert!(g.is_primitive().unwrap());
    }

    #[test]
    fn corrupted_data_is_rejected() {
        let bad = M24_DATA.replacen("1 2 3", "2 1 3", 1);
        assert!(matches!(parse_generator_file(&bad), Err(FamilyError::DataFile(_))));
    }
}
