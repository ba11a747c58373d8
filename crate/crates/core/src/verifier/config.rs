//! Sweep configuration files.
//!
//! One directive per line; `#` starts a comment.
//!
//! ```text
//! degree_cap = 20000
//! order_cap = 1000000000
//! base_budget = 100000000
//! stabilizer_budget = 100000
//! checks = thm1, thm2, lower_bound, formula_crosscheck
//! format = csv
//! grid Affine d=1..4 q=2
//! grid GOOnN1 d=8 q=2 sign=+,- class=all
//! grid WreathProduct r=2 inner=SymSubsets(m=5,k=2),SymSubsets(m=6,k=2)
//! grid Mathieu24
//! ```
//!
//! A `grid` line names a family and gives each parameter as a value, an
//! inclusive range `a..b`, or a comma-separated list. The grid is the
//! cartesian product, expanded with the last parameter varying fastest.

use std::str::FromStr;

use serde::Serialize;

use super::VerifierError;
use crate::families::{BuildOptions, DEFAULT_DEGREE_CAP};
use crate::invariants::{InvariantOptions, MuOptions, DEFAULT_BASE_BUDGET, DEFAULT_ORDER_CAP, DEFAULT_STABILIZER_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Thm1,
    Thm2,
    LowerBound,
    FormulaCrosscheck,
    InequalityChains,
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "thm1" => Check::Thm1,
            "thm2" => Check::Thm2,
            "lower_bound" => Check::LowerBound,
            "formula_crosscheck" => Check::FormulaCrosscheck,
            "inequality_chains" => Check::InequalityChains,
            other => return Err(format!("unknown check `{other}`")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
    Table,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            other => Err(format!("unknown format `{other}` (csv, json or table)")),
        }
    }
}

/// One expanded grid point, as written in the config.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridPoint {
    pub line: usize,
    /// Family spec string, e.g. `Affine(d=3,q=2)`.
    pub spec: String,
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub degree_cap: usize,
    pub order_cap: u64,
    pub base_budget: u64,
    pub stabilizer_budget: u64,
    pub checks: Vec<Check>,
    pub format: Format,
    pub points: Vec<GridPoint>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            degree_cap: DEFAULT_DEGREE_CAP,
            order_cap: DEFAULT_ORDER_CAP,
            base_budget: DEFAULT_BASE_BUDGET,
            stabilizer_budget: DEFAULT_STABILIZER_BUDGET,
            checks: vec![Check::Thm1, Check::Thm2, Check::LowerBound, Check::FormulaCrosscheck],
            format: Format::Csv,
            points: Vec::new(),
        }
    }
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self, VerifierError> {
        let mut config = SweepConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix("grid") {
                if rest.starts_with(char::is_whitespace) || rest.is_empty() {
                    config.points.extend(expand_grid(rest.trim(), line)?);
                    continue;
                }
            }
            let (key, value) = content.split_once('=').ok_or_else(|| VerifierError::Config {
                line,
                field: content.to_string(),
                message: "expected `key = value` or `grid <Family> ...`".into(),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |message: String| VerifierError::Config {
                line,
                field: key.to_string(),
                message,
            };
            let number = |v: &str| v.replace('_', "").parse::<u64>().map_err(|e| bad(format!("`{v}`: {e}")));
            match key {
                "degree_cap" => config.degree_cap = number(value)? as usize,
                "order_cap" => config.order_cap = number(value)?,
                "base_budget" => config.base_budget = number(value)?,
                "stabilizer_budget" => config.stabilizer_budget = number(value)?,
                "format" => config.format = value.parse().map_err(bad)?,
                "checks" => {
                    let mut checks = value
                        .split(',')
                        .map(|c| c.trim().parse::<Check>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(bad)?;
                    checks.sort();
                    checks.dedup();
                    config.checks = checks;
                }
                _ => return Err(bad("unknown setting".into())),
            }
        }
        Ok(config)
    }

    pub fn has(&self, check: Check) -> bool {
        self.checks.contains(&check)
    }

    pub fn build_options(&self) -> BuildOptions {
        BuildOptions {
            degree_cap: self.degree_cap,
        }
    }

    pub fn invariant_options(&self) -> InvariantOptions {
        InvariantOptions {
            base_budget: Some(self.base_budget),
            mu: MuOptions {
                order_cap: self.order_cap,
                ..Default::default()
            },
            stabilizer_budget: Some(self.stabilizer_budget),
        }
    }
}

/// Splits at commas that are not inside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

fn expand_values(key: &str, value: &str, line: usize) -> Result<Vec<String>, VerifierError> {
    let bad = |message: String| VerifierError::Config {
        line,
        field: key.to_string(),
        message,
    };
    let mut out = Vec::new();
    for item in split_top_level(value) {
        if item.is_empty() {
            return Err(bad("empty value".into()));
        }
        match item.split_once("..") {
            Some((lo, hi)) if !item.contains('(') => {
                let lo: u64 = lo.trim().parse().map_err(|_| bad(format!("bad range start in `{item}`")))?;
                let hi: u64 = hi.trim().parse().map_err(|_| bad(format!("bad range end in `{item}`")))?;
                if lo > hi {
                    return Err(bad(format!("empty range `{item}`")));
                }
                out.extend((lo..=hi).map(|v| v.to_string()));
            }
            _ => out.push(item.to_string()),
        }
    }
    Ok(out)
}

fn expand_grid(body: &str, line: usize) -> Result<Vec<GridPoint>, VerifierError> {
    let mut words = body.split_whitespace();
    let family = words.next().ok_or_else(|| VerifierError::Config {
        line,
        field: "grid".into(),
        message: "missing family name".into(),
    })?;
    let mut axes: Vec<(&str, Vec<String>)> = Vec::new();
    for word in words {
        let (key, value) = word.split_once('=').ok_or_else(|| VerifierError::Config {
            line,
            field: word.to_string(),
            message: "expected `key=values`".into(),
        })?;
        if axes.iter().any(|(k, _)| *k == key) {
            return Err(VerifierError::Config {
                line,
                field: key.to_string(),
                message: "parameter given twice".into(),
            });
        }
        axes.push((key, expand_values(key, value, line)?));
    }
    let mut combos: Vec<Vec<String>> = vec![Vec::new()];
    for (key, values) in &axes {
        combos = combos
            .into_iter()
            .flat_map(|c| {
                values.iter().map(move |v| {
                    let mut c = c.clone();
                    c.push(format!("{key}={v}"));
                    c
                })
            })
            .collect();
    }
    Ok(combos
        .into_iter()
        .map(|params| GridPoint {
            line,
            spec: if params.is_empty() {
                family.to_string()
            } else {
                format!("{family}({})", params.join(","))
            },
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expands_cartesian_products() {
        let c = SweepConfig::parse("grid Affine d=1..2 q=2,3\ngrid Mathieu24\n").unwrap();
        let specs: Vec<&str> = c.points.iter().map(|p| p.spec.as_str()).collect();
        assert_eq!(
            specs,
            ["Affine(d=1,q=2)", "Affine(d=1,q=3)", "Affine(d=2,q=2)", "Affine(d=2,q=3)", "Mathieu24"]
        );
    }

    #[test]
    fn nested_specs_are_single_values() {
        let c = SweepConfig::parse("grid WreathProduct r=2 inner=SymSubsets(m=5,k=2),SymSubsets(m=6,k=2)").unwrap();
        assert_eq!(c.points[1].spec, "WreathProduct(r=2,inner=SymSubsets(m=6,k=2))");
    }

    #[test]
    fn settings_and_comments() {
        let c = SweepConfig::parse("# sweep\norder_cap = 1_000 # small\nchecks = thm2, thm1\nformat = table\n").unwrap();
        assert_eq!(c.order_cap, 1000);
        assert_eq!(c.checks, [Check::Thm1, Check::Thm2]);
        assert_eq!(c.format, Format::Table);
    }

    #[test]
    fn errors_carry_line_and_field() {
        let e = SweepConfig::parse("\n\nchecks = thm1, thm9").unwrap_err();
        assert!(matches!(e, VerifierError::Config { line: 3, ref field, .. } if field == "checks"), "{e}");
        let e = SweepConfig::parse("grid Affine d=4..1 q=2").unwrap_err();
        assert!(matches!(e, VerifierError::Config { line: 1, ref field, .. } if field == "d"), "{e}");
        assert!(SweepConfig::parse("colour = blue").is_err());
        assert!(SweepConfig::parse("grid").is_err());
    }
}
