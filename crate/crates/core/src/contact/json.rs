//! Action files:
//!
//! ```text
//! { "n": int, "generators": [ [ [ "p/q", ... ], ... ], ... ] }
//! ```
//!
//! Each generator is a `(2n+2) x (2n+2)` matrix given row by row. Entries are
//! rationals written as strings (`"-1"`, `"3/2"`); plain JSON integers are
//! also accepted.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{ContactError, LinearContactAction};
use crate::lattice::RationalMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionJson {
    pub n: usize,
    generators: Vec<Vec<Vec<Entry>>>,
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("not a rational: {s:?}"))?;
    let den: BigInt = den.parse().map_err(|_| format!("not a rational: {s:?}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(num, den))
}

impl ActionJson {
    pub fn from_action(action: &LinearContactAction) -> Self {
        let generators = action
            .generators()
            .iter()
            .map(|g| {
                g.to_rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(|x| Entry::Text(x.to_string())).collect())
                    .collect()
            })
            .collect();
        Self {
            n: action.n(),
            generators,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("action serializes")
    }

    pub fn into_action(self) -> Result<LinearContactAction, ContactError> {
        let dim = 2 * self.n + 2;
        let mut gens = Vec::with_capacity(self.generators.len());
        for (gi, rows) in self.generators.into_iter().enumerate() {
            let entry_err = |message: String| ContactError::Entry { generator: gi, message };
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return Err(entry_err(format!("expected a {dim}x{dim} matrix")));
            }
            let rows = rows
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|e| match e {
                            Entry::Int(v) => Ok(BigRational::from_integer(BigInt::from(v))),
                            Entry::Text(s) => parse_rational(&s),
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(entry_err)?;
            gens.push(RationalMatrix::from_rows(rows).map_err(|e| entry_err(e.to_string()))?);
        }
        LinearContactAction::new(self.n, gens)
    }
}

/// Parse and validate an action file.
pub fn parse_action(src: &str) -> Result<LinearContactAction, ContactError> {
    let raw: ActionJson = serde_json::from_str(src).map_err(|e| ContactError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    raw.into_action()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::{fav_action, quot_action};

    #[test]
    fn round_trip() {
        let a = fav_action(2);
        let back = parse_action(&ActionJson::from_action(&a).to_json()).unwrap();
        assert_eq!(back.generators(), a.generators());
        assert_eq!(back.order(), 4);
    }

    #[test]
    fn integer_entries_accepted() {
        let src = r#"{"n":1,"generators":[[[1,0,0,0],[0,1,0,0],[0,0,-1,0],[0,0,0,"-1"]]]}"#;
        assert_eq!(parse_action(src).unwrap().generators(), quot_action().generators());
    }

    #[test]
    fn syntax_error_position() {
        let src = "{\"n\": 1,\n \"generators\": [[[\"1\" \"0\"]]]}";
        match parse_action(src) {
            Err(ContactError::Json { line, column, .. }) => {
                assert_eq!(line, 2);
                assert!(column > 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_generators() {
        let err = parse_action(r#"{"n":1,"generators":[]}"#).unwrap_err();
        assert_eq!(err.to_string(), "trivial group");
    }

    #[test]
    fn bad_entries() {
        let src = r#"{"n":0,"generators":[[["1","x"],["0","1"]]]}"#;
        assert!(matches!(parse_action(src), Err(ContactError::Entry { generator: 0, .. })));
        let src = r#"{"n":0,"generators":[[["1/0","0"],["0","1"]]]}"#;
        assert!(matches!(parse_action(src), Err(ContactError::Entry { .. })));
        let src = r#"{"n":1,"generators":[[["1","0"],["0","1"]]]}"#;
        assert!(matches!(parse_action(src), Err(ContactError::Entry { .. })));
    }
}
