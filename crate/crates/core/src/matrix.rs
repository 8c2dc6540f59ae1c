//! Coxeter matrices and their text input format.
//!
//! An input document is a mapping with the keys
//!
//! * `rank`: number of generators,
//! * `default`: label for every off-diagonal pair not listed (`"2"` or `"inf"`),
//! * `labels`: list of `[i, j, m]` triples, 0-based, `m` an integer `>= 2` or `"inf"`,
//! * `names` (optional): one display name per generator.
//!
//! Documents are accepted as TOML or JSON.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genset::{GeneratorSet, MAX_RANK};

/// Off-diagonal entry of a Coxeter matrix: the order of `s_i s_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Label::Finite(_))
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Label::Finite(m) if m % 2 == 1)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Label::Finite(m) => serializer.serialize_u32(*m),
            Label::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        RawLabel::deserialize(deserializer)?
            .resolve()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InputError {
    #[error("{format} syntax error at line {line}, column {column}: {message}")]
    Syntax {
        format: &'static str,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("rank {0} exceeds the supported maximum of {MAX_RANK}")]
    RankTooLarge(usize),
    #[error("default label must be \"2\" or \"inf\", got {0:?}")]
    BadDefault(String),
    #[error("invalid label {0:?}: expected an integer >= 2 or \"inf\"")]
    BadLabel(String),
    #[error("label triple [{i}, {j}, ..] refers to a generator outside 0..{rank}")]
    IndexOutOfRange { i: usize, j: usize, rank: usize },
    #[error("label triple [{0}, {0}, ..] is on the diagonal")]
    Diagonal(usize),
    #[error("pair ({i}, {j}) is labelled more than once")]
    Duplicate { i: usize, j: usize },
    #[error("pair ({i}, {j}) has asymmetric labels {first} and {second}")]
    Asymmetric {
        i: usize,
        j: usize,
        first: Label,
        second: Label,
    },
    #[error("off-diagonal label {m} for pair ({i}, {j}) is below 2")]
    LabelTooSmall { i: usize, j: usize, m: u64 },
    #[error("expected {expected} names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("generator name {0:?} is empty, repeated or contains whitespace")]
    BadName(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(untagged)]
enum RawLabel {
    Int(u64),
    Text(String),
}

impl RawLabel {
    fn resolve(&self) -> Result<Label, InputError> {
        match self {
            RawLabel::Int(m) => u32::try_from(*m)
                .map(Label::Finite)
                .map_err(|_| InputError::BadLabel(m.to_string())),
            RawLabel::Text(s) => {
                let t = s.trim();
                if t.eq_ignore_ascii_case("inf") || t == "∞" {
                    Ok(Label::Infinite)
                } else {
                    t.parse::<u32>()
                        .map(Label::Finite)
                        .map_err(|_| InputError::BadLabel(s.clone()))
                }
            }
        }
    }
}

/// The on-disk document shape.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CoxeterInput {
    pub rank: usize,
    pub default: DefaultLabel,
    #[serde(default)]
    pub labels: Vec<(usize, usize, Label)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// Allowed values of the `default` key.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefaultLabel {
    Two,
    Infinite,
}

impl DefaultLabel {
    pub fn label(self) -> Label {
        match self {
            DefaultLabel::Two => Label::Finite(2),
            DefaultLabel::Infinite => Label::Infinite,
        }
    }
}

impl Serialize for DefaultLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(match self {
            DefaultLabel::Two => "2",
            DefaultLabel::Infinite => "inf",
        })
    }
}

impl<'de> Deserialize<'de> for DefaultLabel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawLabel::deserialize(deserializer)?;
        match raw.resolve() {
            Ok(Label::Finite(2)) => Ok(DefaultLabel::Two),
            Ok(Label::Infinite) => Ok(DefaultLabel::Infinite),
            _ => Err(serde::de::Error::custom(
                InputError::BadDefault(match raw {
                    RawLabel::Int(m) => m.to_string(),
                    RawLabel::Text(s) => s,
                })
                .to_string(),
            )),
        }
    }
}

impl CoxeterInput {
    pub fn from_toml_str(text: &str) -> Result<Self, InputError> {
        toml::from_str(text).map_err(|e| {
            let (line, column) = e
                .span()
                .map(|span| line_col(text, span.start))
                .unwrap_or((0, 0));
            InputError::Syntax {
                format: "TOML",
                line,
                column,
                message: e.message().to_string(),
            }
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| InputError::Syntax {
            format: "JSON",
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Picks JSON when the first non-blank character is `{`, TOML otherwise.
    pub fn from_str_auto(text: &str) -> Result<Self, InputError> {
        if text.trim_start().starts_with('{') {
            Self::from_json_str(text)
        } else {
            Self::from_toml_str(text)
        }
    }

    pub fn validate(&self) -> Result<CoxeterMatrix, InputError> {
        let n = self.rank;
        if n == 0 {
            return Err(InputError::ZeroRank);
        }
        if n > MAX_RANK {
            return Err(InputError::RankTooLarge(n));
        }
        let mut explicit: Vec<Option<Label>> = vec![None; n * n];
        for &(i, j, label) in &self.labels {
            if i >= n || j >= n {
                return Err(InputError::IndexOutOfRange { i, j, rank: n });
            }
            if i == j {
                return Err(InputError::Diagonal(i));
            }
            if let Label::Finite(m) = label {
                if m < 2 {
                    return Err(InputError::LabelTooSmall { i, j, m: m as u64 });
                }
            }
            let (a, b) = (i.min(j), i.max(j));
            match explicit[a * n + b] {
                Some(prev) if prev == label => return Err(InputError::Duplicate { i: a, j: b }),
                Some(prev) => {
                    return Err(InputError::Asymmetric {
                        i: a,
                        j: b,
                        first: prev,
                        second: label,
                    })
                }
                None => explicit[a * n + b] = Some(label),
            }
        }
        let default = self.default.label();
        let names = match &self.names {
            Some(names) => {
                if names.len() != n {
                    return Err(InputError::NameCount {
                        expected: n,
                        got: names.len(),
                    });
                }
                for (k, name) in names.iter().enumerate() {
                    if name.is_empty()
                        || name.chars().any(char::is_whitespace)
                        || names[..k].contains(name)
                    {
                        return Err(InputError::BadName(name.clone()));
                    }
                }
                names.clone()
            }
            None => default_names(n),
        };
        Ok(CoxeterMatrix::from_fn(n, |a, b| explicit[a * n + b].unwrap_or(default)).with_names(names))
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn default_names(rank: usize) -> Vec<String> {
    (0..rank).map(|i| format!("s{i}")).collect()
}

/// Parses and validates an input document (TOML or JSON).
pub fn parse_coxeter_input(text: &str) -> Result<CoxeterMatrix, InputError> {
    CoxeterInput::from_str_auto(text)?.validate()
}

pub fn read_coxeter_file(path: &Path) -> Result<CoxeterMatrix, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_coxeter_input(&text)
}

/// Symmetric Coxeter matrix with generator names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<Label>,
    names: Vec<String>,
    // Per-generator neighbour masks: finite label, odd label, label other than 2.
    pub(crate) edges: Vec<GeneratorSet>,
    pub(crate) odd_edges: Vec<GeneratorSet>,
    pub(crate) non_commuting: Vec<GeneratorSet>,
}

impl CoxeterMatrix {
    /// Builds a matrix from a label function evaluated on pairs `i < j`.
    ///
    /// Panics if the function returns a finite label below 2 or the rank is
    /// out of range; use [`CoxeterInput::validate`] for untrusted data.
    pub fn from_fn(rank: usize, mut label: impl FnMut(usize, usize) -> Label) -> Self {
        assert!((1..=MAX_RANK).contains(&rank), "rank {rank} out of range");
        let mut entries = vec![Label::Finite(1); rank * rank];
        let mut edges = vec![GeneratorSet::EMPTY; rank];
        let mut odd_edges = vec![GeneratorSet::EMPTY; rank];
        let mut non_commuting = vec![GeneratorSet::EMPTY; rank];
        for i in 0..rank {
            for j in i + 1..rank {
                let l = label(i, j);
                assert!(!matches!(l, Label::Finite(m) if m < 2), "label below 2");
                entries[i * rank + j] = l;
                entries[j * rank + i] = l;
                if l.is_finite() {
                    edges[i].insert(j);
                    edges[j].insert(i);
                }
                if l.is_odd() {
                    odd_edges[i].insert(j);
                    odd_edges[j].insert(i);
                }
                if l != Label::Finite(2) {
                    non_commuting[i].insert(j);
                    non_commuting[j].insert(i);
                }
            }
        }
        CoxeterMatrix {
            rank,
            entries,
            names: default_names(rank),
            edges,
            odd_edges,
            non_commuting,
        }
    }

    /// Builds a matrix from a default label and explicit `(i, j, m)` triples.
    pub fn with_labels(rank: usize, default: Label, labels: &[(usize, usize, Label)]) -> Self {
        Self::from_fn(rank, |i, j| {
            labels
                .iter()
                .find(|&&(a, b, _)| (a, b) == (i, j) || (a, b) == (j, i))
                .map_or(default, |&(_, _, l)| l)
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.rank);
        self.names = names;
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> GeneratorSet {
        GeneratorSet::full(self.rank)
    }

    pub fn label(&self, i: usize, j: usize) -> Label {
        self.entries[i * self.rank + j]
    }

    /// `m(i, j)` as an integer, `None` for infinity.
    pub fn order(&self, i: usize, j: usize) -> Option<u32> {
        self.label(i, j).finite()
    }

    pub fn commute(&self, i: usize, j: usize) -> bool {
        i != j && self.label(i, j) == Label::Finite(2)
    }

    /// Edge of the Coxeter graph: distinct generators with a finite label.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.label(i, j).is_finite()
    }

    pub fn odd_adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.label(i, j).is_odd()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Canonical input document for this matrix, listing only labels that
    /// differ from `default`.
    pub fn to_input(&self, default: DefaultLabel) -> CoxeterInput {
        let d = default.label();
        let mut labels = Vec::new();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                if self.label(i, j) != d {
                    labels.push((i, j, self.label(i, j)));
                }
            }
        }
        CoxeterInput {
            rank: self.rank,
            default,
            labels,
            names: Some(self.names.clone()),
        }
    }

    /// Same group with generators reordered: new generator `k` is old `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> CoxeterMatrix {
        assert_eq!(perm.len(), self.rank);
        let mut m = Self::from_fn(self.rank, |i, j| self.label(perm[i], perm[j]));
        m.names = perm.iter().map(|&p| self.names[p].clone()).collect();
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinite_dihedral() {
        let m = parse_coxeter_input("rank = 2\ndefault = \"2\"\nlabels = [[0, 1, \"inf\"]]\n").unwrap();
        assert_eq!(m.label(0, 1), Label::Infinite);
        assert_eq!(m.label(1, 0), Label::Infinite);
        assert_eq!(m.label(0, 0), Label::Finite(1));
        assert!(!m.adjacent(0, 1));
    }

    #[test]
    fn default_fill() {
        let m = parse_coxeter_input(r#"{"rank": 3, "default": "inf", "labels": [[0,1,3],[1,2,3],[0,2,3]]}"#)
            .unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(m.order(i, j), Some(3));
                }
            }
        }
        let m = parse_coxeter_input("rank = 3\ndefault = 2\n").unwrap();
        assert!(m.commute(0, 2));
        assert_eq!(m.names(), &["s0", "s1", "s2"]);
    }

    #[test]
    fn rejects_bad_documents() {
        let cases = [
            ("rank = 0\ndefault = \"2\"\n", InputError::ZeroRank),
            (
                "rank = 2\ndefault = \"2\"\nlabels = [[0, 0, 3]]\n",
                InputError::Diagonal(0),
            ),
            (
                "rank = 2\ndefault = \"2\"\nlabels = [[0, 1, 3], [1, 0, 3]]\n",
                InputError::Duplicate { i: 0, j: 1 },
            ),
            (
                "rank = 2\ndefault = \"2\"\nlabels = [[0, 1, 3], [1, 0, 4]]\n",
                InputError::Asymmetric {
                    i: 0,
                    j: 1,
                    first: Label::Finite(3),
                    second: Label::Finite(4),
                },
            ),
            (
                "rank = 2\ndefault = \"2\"\nlabels = [[0, 1, 1]]\n",
                InputError::LabelTooSmall { i: 0, j: 1, m: 1 },
            ),
            (
                "rank = 2\ndefault = \"2\"\nlabels = [[0, 2, 3]]\n",
                InputError::IndexOutOfRange { i: 0, j: 2, rank: 2 },
            ),
            (
                "rank = 2\ndefault = \"2\"\nnames = [\"a\"]\n",
                InputError::NameCount { expected: 2, got: 1 },
            ),
            (
                "rank = 2\ndefault = \"2\"\nnames = [\"a\", \"a\"]\n",
                InputError::BadName("a".into()),
            ),
        ];
        for (text, want) in cases {
            assert_eq!(parse_coxeter_input(text).unwrap_err(), want, "{text}");
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_coxeter_input("rank = 2\ndefault = \"3\"\n").unwrap_err() {
            InputError::Syntax { line, .. } => assert_eq!(line, 2),
            e => panic!("unexpected {e:?}"),
        }
        match parse_coxeter_input("{\"rank\": 2,\n \"default\": }").unwrap_err() {
            InputError::Syntax { format, line, .. } => {
                assert_eq!(format, "JSON");
                assert_eq!(line, 2);
            }
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(
            parse_coxeter_input("rank = 2\ndefault = \"2\"\nlabels = [[0, 1, \"seven\"]]\n"),
            Err(InputError::Syntax { .. })
        ));
    }

    #[test]
    fn input_document_round_trip() {
        let m = CoxeterMatrix::with_labels(
            4,
            Label::Finite(2),
            &[(0, 1, Label::Finite(4)), (2, 3, Label::Infinite)],
        );
        let doc = m.to_input(DefaultLabel::Two);
        let text = toml::to_string(&doc).unwrap();
        assert_eq!(parse_coxeter_input(&text).unwrap(), m);
        let doc = m.to_input(DefaultLabel::Infinite);
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(parse_coxeter_input(&text).unwrap(), m);
    }
}
