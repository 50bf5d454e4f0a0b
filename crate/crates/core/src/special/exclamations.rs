//! Words that carry a '!' of their own ("Yahoo!").

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::pattern::{escape, Pattern};
use crate::placeholder;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExclamationWordSet {
    words: Vec<String>,
}

impl ExclamationWordSet {
    /// Every entry must contain a '!'.
    pub fn new<I, S>(words: I) -> Result<ExclamationWordSet, String>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut out = Vec::new();
        for w in words {
            let w = w.as_ref().trim();
            if w.is_empty() {
                continue;
            }
            if !w.contains('!') {
                return Err(alloc::format!("exclamation word '{w}' has no '!'"));
            }
            if !out.iter().any(|o: &String| o == w) {
                out.push(w.to_string());
            }
        }
        Ok(ExclamationWordSet { words: out })
    }

    /// One word per line, `#` comments.
    pub fn parse(src: &str) -> Result<ExclamationWordSet, String> {
        Self::new(
            src.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        )
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub(crate) fn pattern(&self) -> Option<Pattern> {
        if self.words.is_empty() {
            return None;
        }
        let alts: Vec<String> = self.words.iter().map(|w| escape(w)).collect();
        Some(Pattern::new(&alts.join("|")).expect("escaped words always compile"))
    }
}

pub(crate) fn mask_words(text: &mut [char], pattern: &Pattern) {
    let spans: Vec<_> = pattern.find_iter(text).map(|m| m.range()).collect();
    let bang = placeholder::lookup("word_bang").unwrap();
    for r in spans {
        for c in &mut text[r] {
            if *c == '!' {
                *c = bang;
            }
        }
    }
}

/// Masks the '!' inside every listed word.
pub fn replace_exclamation_words(text: &str, words: &ExclamationWordSet) -> String {
    let Some(pattern) = words.pattern() else {
        return text.to_string();
    };
    let mut chars: Vec<char> = text.chars().collect();
    mask_words(&mut chars, &pattern);
    chars.into_iter().collect()
}
