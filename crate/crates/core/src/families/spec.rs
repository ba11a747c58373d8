use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::FamilyError;
use crate::gf::{NondegenerateFilter, Sign};

/// Which class of nonsingular points a `N_1` action uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PointClass {
    /// All nonsingular points (even characteristic).
    All,
    /// `Q(v)` a nonzero square (odd `q`, even `d`).
    Square,
    /// `Q(v)` a nonsquare (odd `q`, even `d`).
    NonSquare,
    /// `v^⊥` of the given type (odd `d`).
    Perp(Sign),
}

impl PointClass {
    pub fn filter(self) -> NondegenerateFilter {
        match self {
            PointClass::All => NondegenerateFilter::Any,
            PointClass::Square => NondegenerateFilter::SquareNorm,
            PointClass::NonSquare => NondegenerateFilter::NonSquareNorm,
            PointClass::Perp(s) => NondegenerateFilter::PerpSign(s),
        }
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointClass::All => f.write_str("all"),
            PointClass::Square => f.write_str("square"),
            PointClass::NonSquare => f.write_str("nonsquare"),
            PointClass::Perp(s) => write!(f, "{s}"),
        }
    }
}

impl FromStr for PointClass {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(PointClass::All),
            "square" => Ok(PointClass::Square),
            "nonsquare" => Ok(PointClass::NonSquare),
            "+" => Ok(PointClass::Perp(Sign::Plus)),
            "-" => Ok(PointClass::Perp(Sign::Minus)),
            _ => Err(FamilyError::Parse(format!("unknown point class `{s}`"))),
        }
    }
}

/// A group together with the action to construct.
///
/// Classical groups act through their projective image. Unitary families take
/// the subfield order `q`: matrices live over `GF(q²)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum FamilySpec {
    /// `S_m` on `k`-subsets.
    SymSubsets { m: usize, k: usize },
    /// `A_m` on `k`-subsets.
    AltSubsets { m: usize, k: usize },
    /// `S_{ab}` on partitions into `b` blocks of size `a`.
    SymPartitions { a: usize, b: usize },
    /// `AGL_d(q)` on `GF(q)^d`.
    Affine { d: usize, q: u32 },
    /// `PSL_d(q)` on `k`-subspaces.
    LinearOnPk { d: usize, q: u32, k: usize },
    /// `PSp_d(q)` on totally isotropic `k`-subspaces.
    SpOnSk { d: usize, q: u32, k: usize },
    /// `Sp_d(2)` on the quadratic forms of the given type polarizing to its form.
    SpOnGOCosets { d: usize, sign: Sign },
    /// `PGO^ε_d(q)` on singular points.
    GOOnS1 { d: usize, q: u32, sign: Sign },
    /// `PGO^ε_d(q)` on nonsingular points of one class.
    GOOnN1 { d: usize, q: u32, sign: Sign, class: PointClass },
    /// `PΩ^ε_d(q)` on singular points.
    OmegaOnS1 { d: usize, q: u32, sign: Sign },
    /// `PΩ^ε_d(q)` on nonsingular points of one class.
    OmegaOnN1 { d: usize, q: u32, sign: Sign, class: PointClass },
    /// `PSU_d(q)` on isotropic points.
    UnitaryOnS1 { d: usize, q: u32 },
    /// `PSU_d(q)` on nonisotropic points.
    UnitaryOnN1 { d: usize, q: u32 },
    /// `H ≀ S_r` in product action on `Γ^r`.
    WreathProduct { r: usize, inner: Box<FamilySpec> },
    /// `M_24` on 24 points.
    Mathieu24,
}

impl FamilySpec {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::SymSubsets { .. } => "SymSubsets",
            FamilySpec::AltSubsets { .. } => "AltSubsets",
            FamilySpec::SymPartitions { .. } => "SymPartitions",
            FamilySpec::Affine { .. } => "Affine",
            FamilySpec::LinearOnPk { .. } => "LinearOnPk",
            FamilySpec::SpOnSk { .. } => "SpOnSk",
            FamilySpec::SpOnGOCosets { .. } => "SpOnGOCosets",
            FamilySpec::GOOnS1 { .. } => "GOOnS1",
            FamilySpec::GOOnN1 { .. } => "GOOnN1",
            FamilySpec::OmegaOnS1 { .. } => "OmegaOnS1",
            FamilySpec::OmegaOnN1 { .. } => "OmegaOnN1",
            FamilySpec::UnitaryOnS1 { .. } => "UnitaryOnS1",
            FamilySpec::UnitaryOnN1 { .. } => "UnitaryOnN1",
            FamilySpec::WreathProduct { .. } => "WreathProduct",
            FamilySpec::Mathieu24 => "Mathieu24",
        }
    }

    /// Checks the parameter constraints of the family.
    pub fn validate(&self) -> Result<(), FamilyError> {
        let bad = |msg: String| Err(FamilyError::InvalidParameters(format!("{self}: {msg}")));
        let field_ok = |q: u32| crate::gf::SUPPORTED_Q.contains(&q);
        match *self {
            FamilySpec::SymSubsets { m, k } | FamilySpec::AltSubsets { m, k } => {
                if m < 3 {
                    return bad("need m >= 3".into());
                }
                if k == 0 || 2 * k > m {
                    return bad("need 1 <= k <= m/2".into());
                }
                if matches!(self, FamilySpec::AltSubsets { .. }) && m < 4 && k > 1 {
                    return bad("need m >= 4".into());
                }
            }
            FamilySpec::SymPartitions { a, b } => {
                if a < 2 || b < 2 {
                    return bad("need a, b >= 2".into());
                }
                if a == 2 && b == 2 {
                    return bad("S_4 on partitions into two pairs is not faithful".into());
                }
            }
            FamilySpec::Affine { d, q } => {
                if d == 0 || !field_ok(q) {
                    return bad("need d >= 1 and a supported q".into());
                }
            }
            FamilySpec::LinearOnPk { d, q, k } => {
                if d < 2 || k == 0 || k >= d || !field_ok(q) {
                    return bad("need d >= 2, 1 <= k < d and a supported q".into());
                }
                if d == 2 && q <= 3 {
                    return bad("PSL_2(q) for q <= 3 is solvable of tiny degree; use Affine or SymSubsets".into());
                }
            }
            FamilySpec::SpOnSk { d, q, k } => {
                if d < 4 || d % 2 != 0 || k == 0 || k > d / 2 || !field_ok(q) {
                    return bad("need even d >= 4, 1 <= k <= d/2 and a supported q".into());
                }
            }
            FamilySpec::SpOnGOCosets { d, sign } => {
                if !matches!(d, 4 | 6 | 8) || sign == Sign::Circle {
                    return bad("need d in {4, 6, 8} and sign + or -".into());
                }
            }
            FamilySpec::GOOnS1 { d, q, sign } | FamilySpec::OmegaOnS1 { d, q, sign } => {
                check_orthogonal(d, q, sign).or_else(bad)?;
                if d < 3 || (sign == Sign::Minus && d < 4) {
                    return bad("no singular points".into());
                }
            }
            FamilySpec::GOOnN1 { d, q, sign, class } | FamilySpec::OmegaOnN1 { d, q, sign, class } => {
                check_orthogonal(d, q, sign).or_else(bad)?;
                if d < 3 {
                    return bad("need d >= 3".into());
                }
                let ok = match (q % 2 == 0, d % 2 == 0, class) {
                    (true, true, PointClass::All) => true,
                    (false, true, PointClass::Square | PointClass::NonSquare) => true,
                    (false, false, PointClass::Perp(s)) => s != Sign::Circle,
                    _ => false,
                };
                if !ok {
                    return bad(format!(
                        "point class `{class}` does not fit: use `all` for even q, \
                         `square`/`nonsquare` for odd q and even d, `+`/`-` for odd d"
                    ));
                }
            }
            FamilySpec::UnitaryOnS1 { d, q } | FamilySpec::UnitaryOnN1 { d, q } => {
                if !matches!(q, 2 | 3) || d < 3 {
                    return bad("need q in {2, 3} and d >= 3".into());
                }
                if (d, q) == (3, 2) {
                    return bad("PSU_3(2) is solvable; it is not the socle of an almost simple group".into());
                }
                if (d, q) == (3, 2) {
                    return bad("PSU_3(2) is solvable; it is not the socle of an almost simple group".into());
                }
            }
            FamilySpec::WreathProduct { r, ref inner } => {
                if r < 2 {
                    return bad("need r >= 2".into());
                }
                inner.validate()?;
            }
            FamilySpec::Mathieu24 => {}
        }
        Ok(())
    }

    /// True if the action is known to be imprimitive.
    pub fn is_known_imprimitive(&self) -> bool {
        match self {
            FamilySpec::SymSubsets { m, k } | FamilySpec::AltSubsets { m, k } => 2 * k == *m,
            FamilySpec::WreathProduct { inner, .. } => inner.is_known_imprimitive(),
            _ => false,
        }
    }
}

fn check_orthogonal(d: usize, q: u32, sign: Sign) -> Result<(), String> {
    if !crate::gf::SUPPORTED_Q.contains(&q) {
        return Err(format!("unsupported q = {q}"));
    }
    match sign {
        Sign::Circle if d % 2 == 1 && q % 2 == 1 => Ok(()),
        Sign::Circle => Err("sign o needs odd d and odd q".into()),
        _ if d % 2 == 0 => Ok(()),
        _ => Err("sign + or - needs even d".into()),
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())?;
        match self {
            FamilySpec::SymSubsets { m, k } | FamilySpec::AltSubsets { m, k } => {
                write!(f, "(m={m},k={k})")
            }
            FamilySpec::SymPartitions { a, b } => write!(f, "(a={a},b={b})"),
            FamilySpec::Affine { d, q } => write!(f, "(d={d},q={q})"),
            FamilySpec::LinearOnPk { d, q, k } | FamilySpec::SpOnSk { d, q, k } => {
                write!(f, "(d={d},q={q},k={k})")
            }
            FamilySpec::SpOnGOCosets { d, sign } => write!(f, "(d={d},q=2,sign={sign})"),
            FamilySpec::GOOnS1 { d, q, sign } | FamilySpec::OmegaOnS1 { d, q, sign } => {
                write!(f, "(d={d},q={q},sign={sign})")
            }
            FamilySpec::GOOnN1 { d, q, sign, class } | FamilySpec::OmegaOnN1 { d, q, sign, class } => {
                write!(f, "(d={d},q={q},sign={sign},class={class})")
            }
            FamilySpec::UnitaryOnS1 { d, q } | FamilySpec::UnitaryOnN1 { d, q } => {
                write!(f, "(d={d},q={q})")
            }
            FamilySpec::WreathProduct { r, inner } => write!(f, "(r={r},inner={inner})"),
            FamilySpec::Mathieu24 => Ok(()),
        }
    }
}

/// Splits `key=value,key=value` at top-level commas.
fn split_params(s: &str) -> Result<Vec<(&str, &str)>, FamilyError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 0..=bytes.len() {
        let at_end = i == bytes.len();
        if !at_end {
            match bytes[i] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                _ => {}
            }
        }
        if at_end || (bytes[i] == b',' && depth == 0) {
            let part = s[start..i].trim();
            if !part.is_empty() {
                let (k, v) = part
                    .split_once('=')
                    .ok_or_else(|| FamilyError::Parse(format!("expected key=value, got `{part}`")))?;
                out.push((k.trim(), v.trim()));
            }
            start = i + 1;
        }
    }
    if depth != 0 {
        return Err(FamilyError::Parse(format!("unbalanced parentheses in `{s}`")));
    }
    Ok(out)
}

struct Params<'a> {
    spec: &'a str,
    items: Vec<(&'a str, &'a str)>,
}

impl<'a> Params<'a> {
    fn raw(&mut self, key: &str) -> Option<&'a str> {
        let pos = self.items.iter().position(|(k, _)| *k == key)?;
        Some(self.items.remove(pos).1)
    }

    fn req<T: FromStr>(&mut self, key: &str) -> Result<T, FamilyError> {
        let raw = self
            .raw(key)
            .ok_or_else(|| FamilyError::Parse(format!("`{}` is missing `{key}`", self.spec)))?;
        raw.parse()
            .map_err(|_| FamilyError::Parse(format!("bad value `{raw}` for `{key}` in `{}`", self.spec)))
    }

    fn sign(&mut self) -> Result<Sign, FamilyError> {
        let raw = self
            .raw("sign")
            .ok_or_else(|| FamilyError::Parse(format!("`{}` is missing `sign`", self.spec)))?;
        raw.parse()
            .map_err(|_| FamilyError::Parse(format!("bad sign `{raw}` in `{}`", self.spec)))
    }

    fn class(&mut self, q: u32) -> Result<PointClass, FamilyError> {
        match self.raw("class") {
            Some(raw) => raw.parse(),
            None if q % 2 == 0 => Ok(PointClass::All),
            None => Err(FamilyError::Parse(format!("`{}` is missing `class`", self.spec))),
        }
    }

    fn finish(self) -> Result<(), FamilyError> {
        match self.items.first() {
            Some((k, _)) => Err(FamilyError::Parse(format!("unknown key `{k}` in `{}`", self.spec))),
            None => Ok(()),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// Parses the [`Display`](fmt::Display) form, e.g. `SymSubsets(m=5,k=2)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (tag, body) = match s.find('(') {
            Some(i) => {
                if !s.ends_with(')') {
                    return Err(FamilyError::Parse(format!("missing `)` in `{s}`")));
                }
                (&s[..i], &s[i + 1..s.len() - 1])
            }
            None => (s, ""),
        };
        let mut p = Params {
            spec: s,
            items: split_params(body)?,
        };
        let spec = match tag.trim() {
            "SymSubsets" => FamilySpec::SymSubsets { m: p.req("m")?, k: p.req("k")? },
            "AltSubsets" => FamilySpec::AltSubsets { m: p.req("m")?, k: p.req("k")? },
            "SymPartitions" => FamilySpec::SymPartitions { a: p.req("a")?, b: p.req("b")? },
            "Affine" => FamilySpec::Affine { d: p.req("d")?, q: p.req("q")? },
            "LinearOnPk" => FamilySpec::LinearOnPk { d: p.req("d")?, q: p.req("q")?, k: p.req("k")? },
            "SpOnSk" => FamilySpec::SpOnSk { d: p.req("d")?, q: p.req("q")?, k: p.req("k")? },
            "SpOnGOCosets" => {
                let d = p.req("d")?;
                if let Some(q) = p.raw("q") {
                    if q != "2" {
                        return Err(FamilyError::Parse(format!("`{s}`: only q=2 is supported")));
                    }
                }
                FamilySpec::SpOnGOCosets { d, sign: p.sign()? }
            }
            "GOOnS1" => FamilySpec::GOOnS1 { d: p.req("d")?, q: p.req("q")?, sign: p.sign()? },
            "OmegaOnS1" => FamilySpec::OmegaOnS1 { d: p.req("d")?, q: p.req("q")?, sign: p.sign()? },
            "GOOnN1" | "OmegaOnN1" => {
                let d = p.req("d")?;
                let q = p.req("q")?;
                let sign = p.sign()?;
                let class = p.class(q)?;
                if tag.trim() == "GOOnN1" {
                    FamilySpec::GOOnN1 { d, q, sign, class }
                } else {
                    FamilySpec::OmegaOnN1 { d, q, sign, class }
                }
            }
            "UnitaryOnS1" => FamilySpec::UnitaryOnS1 { d: p.req("d")?, q: p.req("q")? },
            "UnitaryOnN1" => FamilySpec::UnitaryOnN1 { d: p.req("d")?, q: p.req("q")? },
            "WreathProduct" => {
                let r = p.req("r")?;
                let inner = p
                    .raw("inner")
                    .ok_or_else(|| FamilyError::Parse(format!("`{s}` is missing `inner`")))?;
                FamilySpec::WreathProduct { r, inner: Box::new(inner.parse()?) }
            }
            "Mathieu24" => FamilySpec::Mathieu24,
            other => return Err(FamilyError::Parse(format!("unknown family `{other}`"))),
        };
        p.finish()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_round_trips() {
        for s in [
            "SymSubsets(m=5,k=2)",
            "SymPartitions(a=2,b=3)",
            "Affine(d=3,q=2)",
            "LinearOnPk(d=3,q=2,k=1)",
            "SpOnGOCosets(d=6,q=2,sign=-)",
            "GOOnN1(d=8,q=2,sign=-,class=all)",
            "OmegaOnN1(d=7,q=3,sign=o,class=+)",
            "WreathProduct(r=2,inner=SymSubsets(m=5,k=2))",
            "Mathieu24",
        ] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            spec.validate().unwrap();
        }
    }

    #[test]
    fn parse_errors() {
        assert!("SymSubsets(m=5)".parse::<FamilySpec>().is_err());
        assert!("Nope(m=5)".parse::<FamilySpec>().is_err());
        assert!("SymSubsets(m=5,k=2,z=1)".parse::<FamilySpec>().is_err());
        assert!("GOOnN1(d=6,q=3,sign=+)".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn validation() {
        let bad = [
            "SymSubsets(m=5,k=3)",
            "SymPartitions(a=2,b=2)",
            "GOOnS1(d=7,q=2,sign=o)",
            "GOOnS1(d=6,q=2,sign=o)",
            "GOOnN1(d=7,q=3,sign=o,class=square)",
            "UnitaryOnS1(d=3,q=4)",
        ];
        for s in bad {
            let spec: FamilySpec = s.parse().unwrap();
            assert!(spec.validate().is_err(), "{s}");
        }
        assert!("SymSubsets(m=6,k=3)".parse::<FamilySpec>().unwrap().is_known_imprimitive());
    }
}
