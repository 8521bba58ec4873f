//! Algebra definitions read from JSON files.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use cmalg::algebra::{make_structure_algebra, split_nilpotent_pair, truncated_polynomial, FinAlgebra, SplitNilpotentPair};
use cmalg::{Coefficients, Scalar};
use serde::Deserialize;
use serde_json::Value;

pub const CONFIG_SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigError {
    Io(String),
    /// Malformed JSON or a document that does not fit the schema.
    Parse { offset: usize, message: String },
    /// Well-formed input describing an invalid algebra or ideal.
    Validation(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io(m) => write!(f, "cannot read config: {m}"),
            ConfigError::Parse { offset, message } => write!(f, "ParseError at byte {offset}: {message}"),
            ConfigError::Validation(m) => write!(f, "ValidationError: {m}"),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    schema_version: Option<u64>,
    coefficients: RawCoefficients,
    algebra: RawAlgebra,
    #[serde(default)]
    ideal: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RawCoefficients {
    Rationals,
    PrimeField { p: u64 },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RawAlgebra {
    TruncatedPolynomial {
        vars: Vec<(String, usize)>,
    },
    StructureConstants {
        dim: usize,
        #[serde(default)]
        names: Option<Vec<String>>,
        unit: Vec<Value>,
        /// table[i][j][k]: coefficient of b_k in b_i·b_j
        table: Vec<Vec<Vec<Value>>>,
    },
}

/// A validated config: the algebra, the pair when an ideal is given, and the parsed document.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub algebra: FinAlgebra,
    pub pair: Option<SplitNilpotentPair>,
    pub document: Value,
}

pub fn load_algebra_config(path: &Path) -> Result<Loaded, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
    parse_algebra_config(&text)
}

pub fn parse_algebra_config(text: &str) -> Result<Loaded, ConfigError> {
    let parse_err = |e: serde_json::Error| ConfigError::Parse {
        offset: byte_offset(text, e.line(), e.column()),
        message: e.to_string(),
    };
    let document: Value = serde_json::from_str(text).map_err(parse_err)?;
    let raw: RawConfig = serde_json::from_str(text).map_err(parse_err)?;
    let invalid = |m: String| ConfigError::Validation(m);
    if let Some(v) = raw.schema_version {
        if v != CONFIG_SCHEMA_VERSION {
            return Err(invalid(format!("unsupported schema_version {v}")));
        }
    }
    let coeffs = match raw.coefficients {
        RawCoefficients::Rationals => Coefficients::Rationals,
        RawCoefficients::PrimeField { p } => Coefficients::prime_field(p).map_err(|e| invalid(e.to_string()))?,
    };
    let algebra = match raw.algebra {
        RawAlgebra::TruncatedPolynomial { vars } => truncated_polynomial(coeffs, &vars),
        RawAlgebra::StructureConstants { dim, names, unit, table } => {
            let unit = unit.iter().map(scalar).collect::<Result<Vec<_>, _>>().map_err(invalid)?;
            let table = table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| v.iter().map(scalar).collect::<Result<Vec<_>, _>>())
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(invalid)?;
            make_structure_algebra(coeffs, dim, unit, table, names)
        }
    }
    .map_err(|e| invalid(e.to_string()))?;
    let pair = match &raw.ideal {
        None => None,
        Some(gens) => {
            let elems = gens
                .iter()
                .map(|g| algebra.parse_element(g))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| invalid(e.to_string()))?;
            Some(split_nilpotent_pair(&algebra, &elems).map_err(|e| invalid(e.to_string()))?)
        }
    };
    Ok(Loaded { algebra, pair, document })
}

/// Integers, or strings such as "-3" and "1/2".
fn scalar(v: &Value) -> Result<Scalar, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|x| Scalar::from_integer(x.into()))
            .ok_or_else(|| format!("structure constant {n} is not an integer; write fractions as strings")),
        Value::String(s) => Scalar::from_str(s.trim()).map_err(|_| format!("bad scalar '{s}'")),
        other => Err(format!("bad scalar {other}")),
    }
}

/// serde_json reports 1-based lines and columns; column 0 means the error is at a line start.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    (start + column.saturating_sub(1)).min(text.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets() {
        assert_eq!(byte_offset("abc\ndef", 2, 2), 5);
        assert_eq!(byte_offset("abc", 1, 1), 0);
        assert_eq!(byte_offset("", 1, 0), 0);
    }

    #[test]
    fn scalars() {
        assert_eq!(scalar(&Value::from(3)).unwrap(), Scalar::from_integer(3.into()));
        assert_eq!(scalar(&Value::from("-1/2")).unwrap(), Scalar::new((-1).into(), 2.into()));
        assert!(scalar(&Value::from(0.5)).is_err());
        assert!(scalar(&Value::Null).is_err());
    }
}
