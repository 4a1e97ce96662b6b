//! The problem file: a small, strict, versioned TOML schema.
//!
//! ```toml
//! format_version = 1
//! charge_matrix = [[2, 1, 0], [0, 1, 1]]
//!
//! [characters]
//! theta_plus = [4, 2]
//! theta_minus = [2, 4]
//!
//! [options]
//! cap = 16
//! seed = 0
//! ```
//!
//! Unknown keys anywhere are rejected.

use std::collections::BTreeMap;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use toml::Spanned;
use vgit_core::{Character, ChargeMatrix};

use crate::CliError;

pub const FORMAT_VERSION: i64 = 1;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Options {
    fn is_empty(&self) -> bool {
        self.cap.is_none() && self.seed.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProblemFile {
    pub format_version: i64,
    pub charge_matrix: Vec<Vec<i64>>,
    pub characters: BTreeMap<String, Vec<i64>>,
    #[serde(skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    #[allow(dead_code)]
    format_version: i64,
    charge_matrix: Spanned<Vec<Spanned<Vec<i64>>>>,
    #[serde(default)]
    characters: BTreeMap<String, Spanned<Vec<i64>>>,
    #[serde(default)]
    options: Options,
}

fn line_of(text: &str, span: Option<Range<usize>>) -> Option<usize> {
    span.map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1)
}

fn parse_error(text: &str, span: Option<Range<usize>>, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line: line_of(text, span),
        message: message.into(),
    }
}

impl ProblemFile {
    pub fn new(charge_matrix: Vec<Vec<i64>>) -> Self {
        ProblemFile {
            format_version: FORMAT_VERSION,
            charge_matrix,
            characters: BTreeMap::new(),
            options: Options::default(),
        }
    }

    /// Parses and validates a problem file.
    pub fn parse(text: &str) -> Result<ProblemFile, CliError> {
        // The version is checked before the schema so that files written for
        // a newer format fail with a version error rather than a field error.
        let table: toml::Table =
            toml::from_str(text).map_err(|e| parse_error(text, e.span(), e.message()))?;
        match table.get("format_version") {
            None => return Err(parse_error(text, None, "missing field `format_version`")),
            Some(toml::Value::Integer(FORMAT_VERSION)) => {}
            Some(toml::Value::Integer(v)) => return Err(CliError::Version(*v)),
            Some(other) => {
                return Err(parse_error(
                    text,
                    None,
                    format!("format_version must be an integer, found {other}"),
                ))
            }
        }

        let raw: Raw =
            toml::from_str(text).map_err(|e| parse_error(text, e.span(), e.message()))?;

        let rows = raw.charge_matrix.get_ref();
        if rows.is_empty() || rows.iter().all(|r| r.get_ref().is_empty()) {
            return Err(parse_error(
                text,
                Some(raw.charge_matrix.span()),
                "charge_matrix must be non-empty (k, n >= 1)",
            ));
        }
        let n = rows[0].get_ref().len();
        for (i, r) in rows.iter().enumerate() {
            if r.get_ref().len() != n {
                return Err(parse_error(
                    text,
                    Some(r.span()),
                    format!(
                        "charge_matrix row {} has {} entries, expected {n}",
                        i + 1,
                        r.get_ref().len()
                    ),
                ));
            }
        }
        let k = rows.len();
        let charge_matrix: Vec<Vec<i64>> = rows.iter().map(|r| r.get_ref().clone()).collect();
        ChargeMatrix::new(charge_matrix.clone())
            .map_err(|e| parse_error(text, Some(raw.charge_matrix.span()), e.to_string()))?;

        let mut characters = BTreeMap::new();
        for (name, v) in raw.characters {
            if v.get_ref().len() != k {
                return Err(parse_error(
                    text,
                    Some(v.span()),
                    format!(
                        "character `{name}` has length {}, expected k = {k}",
                        v.get_ref().len()
                    ),
                ));
            }
            characters.insert(name, v.into_inner());
        }

        Ok(ProblemFile {
            format_version: FORMAT_VERSION,
            charge_matrix,
            characters,
            options: raw.options,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("problem files always serialize")
    }

    pub fn charge(&self) -> ChargeMatrix {
        ChargeMatrix::new(self.charge_matrix.clone()).expect("validated on parse")
    }

    pub fn character(&self, name: &str) -> Result<Character, CliError> {
        self.characters
            .get(name)
            .map(|v| Character::from_i64s(v))
            .ok_or_else(|| CliError::UnknownCharacter(name.to_string()))
    }

    /// The problem for `T x G_m` acting on the same space with the extra
    /// factor scaling every coordinate, each character extended by `degree`.
    pub fn lifted(&self, degree: i64) -> ProblemFile {
        let mut charge_matrix = self.charge_matrix.clone();
        charge_matrix.push(vec![1; self.charge_matrix[0].len()]);
        let characters = self
            .characters
            .iter()
            .map(|(name, v)| {
                let mut w = v.clone();
                w.push(degree);
                (name.clone(), w)
            })
            .collect();
        ProblemFile {
            format_version: FORMAT_VERSION,
            charge_matrix,
            characters,
            options: self.options.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FOOTBALL: &str = "format_version = 1\n\
        charge_matrix = [[2, 1, 0], [0, 1, 1]]\n\
        [characters]\n\
        theta_plus = [4, 2]\n\
        theta_minus = [2, 4]\n";

    #[test]
    fn parses_the_football() {
        let p = ProblemFile::parse(FOOTBALL).unwrap();
        assert_eq!(p.charge().torus_rank(), 2);
        assert_eq!(p.charge().num_coords(), 3);
        assert_eq!(p.characters["theta_minus"], vec![2, 4]);
        assert_eq!(ProblemFile::parse(&p.to_toml()).unwrap(), p);
    }

    #[test]
    fn rejects_bad_files() {
        let bad_len = FOOTBALL.replace("[2, 4]", "[2, 4, 1]");
        match ProblemFile::parse(&bad_len) {
            Err(CliError::Parse { line: Some(5), .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            ProblemFile::parse("format_version = 1\ncharge_matrix = []\n"),
            Err(CliError::Parse { .. })
        ));
        assert!(matches!(
            ProblemFile::parse("format_version = 1\ncharge_matrix = [[]]\n"),
            Err(CliError::Parse { .. })
        ));
        assert!(matches!(
            ProblemFile::parse(&FOOTBALL.replace("format_version = 1", "format_version = 2")),
            Err(CliError::Version(2))
        ));
        assert!(matches!(
            ProblemFile::parse(&format!("{FOOTBALL}[options]\ncolour = 3\n")),
            Err(CliError::Parse { .. })
        ));
        assert!(matches!(
            ProblemFile::parse(&format!("bogus = 1\n{FOOTBALL}")),
            Err(CliError::Parse { line: Some(1), .. })
        ));
        assert!(matches!(
            ProblemFile::parse("format_version = 1\ncharge_matrix = [[1, 2], [3]]\n"),
            Err(CliError::Parse { .. })
        ));
    }

    #[test]
    fn lift_appends_the_scaling_row() {
        let p = ProblemFile::parse(FOOTBALL).unwrap().lifted(1);
        assert_eq!(p.charge_matrix[2], vec![1, 1, 1]);
        assert_eq!(p.characters["theta_plus"], vec![4, 2, 1]);
    }
}
