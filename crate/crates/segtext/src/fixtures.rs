//! Golden-rule fixtures: one JSON record per line with `id`, `description`,
//! `input` and `expected`.

use std::collections::HashSet;
use std::path::Path;

use segtext_core::{ErrorKind, SegmenterError};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenRule {
    pub id: u32,
    pub description: String,
    pub input: String,
    pub expected: Vec<String>,
}

fn malformed(line: usize, msg: impl std::fmt::Display) -> SegmenterError {
    SegmenterError::new(ErrorKind::MalformedFixture, format!("line {line}: {msg}"))
}

/// Parses fixture text. Blank lines are skipped; ids must be unique.
pub fn parse_grs(src: &str) -> Result<Vec<GoldenRule>, SegmenterError> {
    let mut rules = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in src.lines().enumerate() {
        let n = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let rule: GoldenRule = serde_json::from_str(line).map_err(|e| malformed(n, e))?;
        if !seen.insert(rule.id) {
            return Err(malformed(n, format_args!("duplicate id {}", rule.id)));
        }
        if rule.expected.is_empty() && !rule.input.trim().is_empty() {
            return Err(malformed(
                n,
                format_args!("rule {} has input but no expected sentences", rule.id),
            ));
        }
        rules.push(rule);
    }
    Ok(rules)
}

pub fn load_grs(path: impl AsRef<Path>) -> Result<Vec<GoldenRule>> {
    let path = path.as_ref();
    let src = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_grs(&src)
        .map_err(|e| Error::Segmenter(SegmenterError::new(e.kind, format!("{}: {}", path.display(), e.detail))))
}

const EMBEDDED: &[(&str, &str)] = &[
    ("en", include_str!("../fixtures/grs/en.jsonl")),
    ("hi", include_str!("../fixtures/grs/hi.jsonl")),
    ("mr", include_str!("../fixtures/grs/mr.jsonl")),
    ("ar", include_str!("../fixtures/grs/ar.jsonl")),
    ("zh", include_str!("../fixtures/grs/zh.jsonl")),
];

/// The fixture shipped for `code`, if any.
pub fn embedded_fixture(code: &str) -> Option<Vec<GoldenRule>> {
    let (_, src) = EMBEDDED.iter().find(|(c, _)| *c == code)?;
    Some(parse_grs(src).expect("shipped fixtures parse"))
}

pub fn embedded_codes() -> impl Iterator<Item = &'static str> {
    EMBEDDED.iter().map(|(c, _)| *c)
}
