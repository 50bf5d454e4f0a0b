//! Gold corpora (one sentence per line) and generated benchmark text.

use std::path::Path;

use crate::fixtures::embedded_fixture;
use crate::{Error, Result};

/// Non-blank lines of `path`, trimmed.
pub fn load_gold(path: impl AsRef<Path>) -> Result<Vec<String>> {
    let path = path.as_ref();
    let src = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_gold(&src))
}

pub fn parse_gold(src: &str) -> Vec<String> {
    src.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect()
}

/// At least `words` whitespace-separated words made by cycling the English
/// fixture inputs, a blank line after every fifth one. Deterministic.
pub fn synthetic_corpus(words: usize) -> String {
    let inputs: Vec<String> = embedded_fixture("en")
        .expect("English fixture is shipped")
        .into_iter()
        .map(|r| r.input)
        .collect();
    let mut out = String::new();
    let mut count = 0;
    let mut i = 0;
    while count < words {
        let piece = &inputs[i % inputs.len()];
        count += piece.split_whitespace().count();
        out.push_str(piece);
        i += 1;
        out.push_str(if i % 5 == 0 { "\n\n" } else { " " });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_size() {
        let c = synthetic_corpus(1000);
        let n = c.split_whitespace().count();
        assert!((1000..1100).contains(&n), "{n}");
        assert_eq!(c, synthetic_corpus(1000));
        assert!(synthetic_corpus(0).is_empty());
    }

    #[test]
    fn gold_lines() {
        assert_eq!(parse_gold(" a.\n\n b. \n"), ["a.", "b."]);
    }
}
