//! Mask, split, restore.
//!
//! Every built-in mask swaps one char for one placeholder, so offsets in the
//! masked text are offsets in the input and sentences are cut straight out
//! of the input. Only a custom rule that changes the length forces the
//! slower restore-then-search path.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::ops::Range;

use crate::cleaner;
use crate::config::{DocType, SegmenterConfig};
use crate::error::{ErrorKind, Result, SegmenterError};
use crate::languages::{self, LanguageProfile, LanguageRegistry, TerminalSpacing};
use crate::pattern::{is_line_break, is_space};
use crate::placeholder;
use crate::rules::LATE_RANK;
use crate::special::{exclamations, replace_list_items_chars};

/// A sentence and its char offsets (end exclusive) in the original text.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TextSpan {
    pub sent: String,
    pub start: usize,
    pub end: usize,
}

/// Closing marks that stay with the sentence they follow.
const CLOSERS: &[char] = &[
    '"', '\'', '”', '’', ')', ']', '}', '»', '›', '」', '』', '）', '》', '〉',
];

/// A configured segmenter. Immutable once built; share it freely.
#[derive(Debug, Clone)]
pub struct Segmenter {
    config: SegmenterConfig,
    profile: Arc<LanguageProfile>,
}

impl Segmenter {
    /// Uses the shipped languages.
    pub fn new(config: SegmenterConfig) -> Result<Segmenter> {
        Self::new_in(languages::builtin(), config)
    }

    pub fn new_in(registry: &LanguageRegistry, config: SegmenterConfig) -> Result<Segmenter> {
        let profile = registry.get(config.language()).cloned().ok_or_else(|| {
            SegmenterError::new(
                ErrorKind::UnknownLanguage,
                alloc::format!("no profile registered for '{}'", config.language()),
            )
        })?;
        Ok(Segmenter { config, profile })
    }

    /// Shorthand for a shipped language with default options.
    pub fn for_language(language: &str) -> Result<Segmenter> {
        Self::new(crate::config::make_config(language, false, false, "")?)
    }

    /// A segmenter over a profile that need not be registered anywhere.
    pub fn with_profile(profile: Arc<LanguageProfile>) -> Segmenter {
        Segmenter {
            config: SegmenterConfig::for_code(profile.code()),
            profile,
        }
    }

    pub fn config(&self) -> &SegmenterConfig {
        &self.config
    }

    pub fn profile(&self) -> &LanguageProfile {
        &self.profile
    }

    pub fn segment(&self, text: &str) -> Result<Vec<String>> {
        reject_reserved(text)?;
        if self.config.clean() {
            let cleaned = cleaner::clean(text, self.config.doc_type()).output;
            return Ok(self.spans_of(&cleaned).into_iter().map(|s| s.sent).collect());
        }
        Ok(self.spans_of(text).into_iter().map(|s| s.sent).collect())
    }

    /// Sentences with offsets into `text`. Fails on a cleaning config, since
    /// offsets into cleaned text would not point into the input.
    pub fn segment_spans(&self, text: &str) -> Result<Vec<TextSpan>> {
        if self.config.clean() {
            return Err(SegmenterError::new(
                ErrorKind::IncompatibleOptions,
                "spans are only defined over uncleaned text",
            ));
        }
        reject_reserved(text)?;
        Ok(self.spans_of(text))
    }

    fn spans_of(&self, text: &str) -> Vec<TextSpan> {
        let original: Vec<char> = text.chars().collect();
        let masked = mask(&self.profile, original.clone());
        if masked.len() == original.len() {
            return split_ranges(&masked, &self.profile)
                .into_iter()
                .flat_map(|r| split_quote_ends(&original, r))
                .map(|r| TextSpan {
                    sent: original[r.clone()].iter().collect(),
                    start: r.start,
                    end: r.end,
                })
                .collect();
        }
        // a custom rule changed the length: restore each piece and find it
        let mut sentences = Vec::new();
        for r in split_ranges(&masked, &self.profile) {
            let piece = placeholder::restored(&masked[r]);
            let whole = 0..piece.len();
            for q in split_quote_ends(&piece, whole) {
                let s: String = piece[q].iter().collect();
                let s = s.trim();
                if !s.is_empty() {
                    sentences.push(String::from(s));
                }
            }
        }
        map_spans(text, &sentences).expect("restored sentences come from the input")
    }
}

fn reject_reserved(text: &str) -> Result<()> {
    match placeholder::first_reserved(text) {
        Some((at, c)) => Err(SegmenterError::new(
            ErrorKind::ReservedCodepointInInput,
            alloc::format!("U+{:04X} at char {at} is reserved for internal masking", c as u32),
        )),
        None => Ok(()),
    }
}

/// Runs every masking stage in the fixed order.
pub fn mask(profile: &LanguageProfile, mut text: Vec<char>) -> Vec<char> {
    replace_list_items_chars(&mut text, profile.lists());
    profile.abbreviation_rules().apply_ranks(&mut text, ..LATE_RANK);
    profile.abbreviations().apply(&mut text);
    profile.abbreviation_rules().apply_ranks(&mut text, LATE_RANK..);
    profile.common().apply_ranks(&mut text, ..LATE_RANK);
    profile.pairs().apply(&mut text);
    if let Some(p) = profile.exclamation_pattern() {
        exclamations::mask_words(&mut text, p);
    }
    profile.common().apply_ranks(&mut text, LATE_RANK..);
    profile.standard().apply_chars(&mut text);
    text
}

/// Masked text for `text`, as a string. Mostly useful for debugging rules.
pub fn mask_text(profile: &LanguageProfile, text: &str) -> String {
    mask(profile, text.chars().collect()).into_iter().collect()
}

fn hard_break(c: char) -> bool {
    is_line_break(c) || placeholder::is_break(c)
}

fn trim(text: &[char], mut r: Range<usize>) -> Range<usize> {
    while r.start < r.end && is_space(text[r.start]) {
        r.start += 1;
    }
    while r.end > r.start && is_space(text[r.end - 1]) {
        r.end -= 1;
    }
    r
}

/// End of a sentence that opens with a quote or bracket and ends at its
/// closer, if the closer is followed by a capitalised word.
fn leading_pair_end(text: &[char], s: usize, profile: &LanguageProfile) -> Option<usize> {
    let &(_, close) = profile.quote_styles().iter().find(|(o, _)| *o == text[s])?;
    let mut k = s + 1;
    while k < text.len() && text[k] != close {
        if hard_break(text[k]) {
            return None;
        }
        k += 1;
    }
    if k >= text.len() || k - s - 1 < 2 || text[k - 1] == ',' {
        return None;
    }
    let mut n = k + 1;
    if n < text.len() && is_space(text[n]) && !hard_break(text[n]) {
        n += 1;
    } else if profile.spacing() == TerminalSpacing::Whitespace {
        return None;
    }
    (n < text.len() && text[n].is_uppercase()).then_some(k + 1)
}

/// Sentence ranges of masked text, trimmed and non-empty.
fn split_ranges(text: &[char], profile: &LanguageProfile) -> Vec<Range<usize>> {
    let n = text.len();
    let mut out = Vec::new();
    let mut push = |r: Range<usize>| {
        let r = trim(text, r);
        if !r.is_empty() {
            out.push(r);
        }
    };
    let mut start = 0;
    let mut i = 0;
    let mut fresh = true;
    while i < n {
        if fresh {
            while i < n && is_space(text[i]) && !hard_break(text[i]) {
                i += 1;
            }
            fresh = false;
            if i < n {
                if let Some(end) = leading_pair_end(text, i, profile) {
                    push(start..end);
                    start = end;
                    i = end;
                    fresh = true;
                    continue;
                }
            }
            continue;
        }
        let c = text[i];
        if hard_break(c) {
            push(start..i);
            start = i + 1;
            i += 1;
            fresh = true;
            continue;
        }
        if !profile.is_terminal(c) {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < n && profile.is_terminal(text[j]) {
            j += 1;
        }
        while j < n && CLOSERS.contains(&text[j]) {
            j += 1;
        }
        let spaced = j == n || is_space(text[j]);
        if spaced || profile.spacing() == TerminalSpacing::Any {
            push(start..j);
            start = j;
            fresh = true;
        }
        i = j;
    }
    push(start..n);
    out
}

/// Splits a sentence after a closing quote that follows a terminal, when a
/// capitalised word comes next.
fn split_quote_ends(text: &[char], r: Range<usize>) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = r.start;
    for p in r.start + 2..r.end.saturating_sub(1) {
        if is_space(text[p])
            && matches!(text[p - 2], '!' | '?' | '.' | '-')
            && matches!(text[p - 1], '"' | '\'' | '“' | '”')
            && text[p + 1].is_ascii_uppercase()
        {
            out.push(start..p);
            start = p + 1;
        }
    }
    out.push(start..r.end);
    out.into_iter()
        .map(|r| trim(text, r))
        .filter(|r| !r.is_empty())
        .collect()
}

/// Splits already-masked text on its unmasked terminals. Placeholders are
/// left in place.
pub fn split_on_boundaries(masked: &str, profile: &LanguageProfile) -> Vec<String> {
    let chars: Vec<char> = masked.chars().collect();
    split_ranges(&chars, profile)
        .into_iter()
        .map(|r| chars[r].iter().collect())
        .collect()
}

/// Locates each sentence in `original`, left to right, each search starting
/// where the previous match ended. `None` if some sentence is not found.
pub fn map_spans<S: AsRef<str>>(original: &str, sentences: &[S]) -> Option<Vec<TextSpan>> {
    let text: Vec<char> = original.chars().collect();
    let mut from = 0;
    let mut out = Vec::with_capacity(sentences.len());
    for s in sentences {
        let needle: Vec<char> = s.as_ref().chars().collect();
        if needle.is_empty() {
            return None;
        }
        let at = (from..=text.len().checked_sub(needle.len())?).find(|&i| text[i..i + needle.len()] == needle[..])?;
        out.push(TextSpan {
            sent: String::from(s.as_ref()),
            start: at,
            end: at + needle.len(),
        });
        from = at + needle.len();
    }
    Some(out)
}

/// Segments `text` with the shipped language named in `config`.
pub fn segment(config: &SegmenterConfig, text: &str) -> Result<Vec<String>> {
    Segmenter::new(*config)?.segment(text)
}

pub fn segment_spans(config: &SegmenterConfig, text: &str) -> Result<Vec<TextSpan>> {
    Segmenter::new(*config)?.segment_spans(text)
}

/// Cleans with the given document type and segments in one go.
pub fn clean_and_segment(language: &str, doc_type: DocType, text: &str) -> Result<Vec<String>> {
    Segmenter::new(crate::config::make_config(language, true, false, doc_type.as_str())?)?.segment(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn en() -> Segmenter {
        Segmenter::for_language("en").unwrap()
    }

    #[test]
    fn segment_examples() {
        assert_eq!(
            en().segment("Hello world. My name is Jonas.").unwrap(),
            vec!["Hello world.", "My name is Jonas."]
        );
        assert!(en().segment("").unwrap().is_empty());
        assert!(en().segment("   \n ").unwrap().is_empty());
    }

    #[test]
    fn span_examples() {
        let s = |t: &str| -> Vec<(String, usize, usize)> {
            en().segment_spans(t)
                .unwrap()
                .into_iter()
                .map(|s| (s.sent, s.start, s.end))
                .collect()
        };
        assert_eq!(s("Hi. Bye."), vec![("Hi.".into(), 0, 3), ("Bye.".into(), 4, 8)]);
        assert_eq!(s("One sentence"), vec![("One sentence".into(), 0, 12)]);
        assert_eq!(s("  Hi."), vec![("Hi.".into(), 2, 5)]);
    }

    #[test]
    fn reserved_input_is_rejected() {
        let e = en().segment("a\u{E001}b").unwrap_err();
        assert_eq!(e.kind, ErrorKind::ReservedCodepointInInput);
    }

    #[test]
    fn split_examples() {
        let en = languages::lookup("en").unwrap();
        assert_eq!(split_on_boundaries("A. B.", &en), vec!["A.", "B."]);
        assert_eq!(split_on_boundaries("A\u{E001} B.", &en), vec!["A\u{E001} B."]);
        let zh = languages::lookup("zh").unwrap();
        assert_eq!(split_on_boundaries("哦。好!", &zh), vec!["哦。", "好!"]);
    }

    #[test]
    fn map_spans_examples() {
        let r = map_spans("ab. cd.", &["ab.", "cd."]).unwrap();
        assert_eq!((r[0].start, r[0].end, r[1].start, r[1].end), (0, 3, 4, 7));
        let r = map_spans("Hi. Hi.", &["Hi.", "Hi."]).unwrap();
        assert_eq!((r[1].start, r[1].end), (4, 7));
        assert_eq!(map_spans("x", &["x"]).unwrap()[0].end, 1);
        assert!(map_spans("x", &["y"]).is_none());
    }

    #[test]
    fn clean_config_refuses_spans() {
        let seg = Segmenter::new(crate::config::make_config("en", true, false, "").unwrap()).unwrap();
        assert_eq!(seg.segment_spans("a").unwrap_err().kind, ErrorKind::IncompatibleOptions);
    }

    #[test]
    fn segmenter_is_send_sync() {
        fn check<T: Send + Sync>() {}
        check::<Segmenter>();
    }
}
