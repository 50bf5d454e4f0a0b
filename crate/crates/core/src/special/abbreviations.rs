//! Abbreviation masking driven by per-language word lists.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use hashbrown::HashSet;
use once_cell::race::OnceBox;

use crate::pattern::{escape, is_space, Pattern, PatternError};
use crate::placeholder::{self, ABBR_PERIOD};

/// A set of abbreviations stored without their trailing period. Lookups try
/// the exact spelling first and then a lowercased one.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Entries {
    exact: HashSet<String>,
    folded: HashSet<String>,
}

impl Entries {
    pub fn insert(&mut self, entry: &str) {
        let e = entry.trim().trim_end_matches('.');
        if e.is_empty() {
            return;
        }
        self.folded.insert(e.to_lowercase());
        self.exact.insert(e.to_string());
    }

    pub fn contains(&self, token: &str) -> bool {
        self.exact.contains(token) || self.folded.contains(&token.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.exact.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exact.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.exact.iter().map(String::as_str)
    }
}

impl<'a> FromIterator<&'a str> for Entries {
    fn from_iter<I: IntoIterator<Item = &'a str>>(iter: I) -> Self {
        let mut e = Entries::default();
        for s in iter {
            e.insert(s);
        }
        e
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbbreviationClass {
    /// Titles like "Mr": the period is never a boundary before a word.
    Prepositive,
    /// "No", "pp": not a boundary before a number.
    Number,
    /// Everything else: a boundary unless lowercase text, a digit or
    /// punctuation follows.
    General,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AbbreviationSet {
    pub prepositive: Entries,
    pub number: Entries,
    pub general: Entries,
    /// Words that open a sentence after an otherwise masked abbreviation.
    pub sentence_starters: Vec<String>,
    /// Abbreviations (dots included, e.g. "U.S") whose final period is
    /// unmasked again when a sentence starter follows.
    pub boundary_before_starter: Vec<String>,
}

impl AbbreviationSet {
    /// Parses the plain-text list format: one entry per line, `#` comments,
    /// and `[general]`, `[prepositive]`, `[number]`, `[sentence_starters]`,
    /// `[boundary_before_starter]` sections. Entries before any header are
    /// general.
    pub fn parse(src: &str) -> Result<AbbreviationSet, (usize, String)> {
        let mut set = AbbreviationSet::default();
        let mut section = "general";
        for (i, raw) in src.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                section = match name.trim() {
                    "general" => "general",
                    "prepositive" => "prepositive",
                    "number" => "number",
                    "sentence_starters" => "sentence_starters",
                    "boundary_before_starter" => "boundary_before_starter",
                    other => return Err((i + 1, alloc::format!("unknown section '{other}'"))),
                };
                continue;
            }
            match section {
                "general" => set.general.insert(line),
                "prepositive" => set.prepositive.insert(line),
                "number" => set.number.insert(line),
                "sentence_starters" => set
                    .sentence_starters
                    .extend(line.split_whitespace().map(str::to_string)),
                _ => set.boundary_before_starter.push(line.trim_end_matches('.').to_string()),
            }
        }
        Ok(set)
    }

    pub fn classify(&self, token: &str) -> Option<AbbreviationClass> {
        if self.prepositive.contains(token) {
            Some(AbbreviationClass::Prepositive)
        } else if self.number.contains(token) {
            Some(AbbreviationClass::Number)
        } else if self.general.contains(token) {
            Some(AbbreviationClass::General)
        } else {
            None
        }
    }
}

struct Followers {
    prepositive: Pattern,
    number: Pattern,
    general: Pattern,
    multi_period: Pattern,
}

fn followers() -> &'static Followers {
    static F: OnceBox<Followers> = OnceBox::new();
    F.get_or_init(|| {
        let p = |s: &str| Pattern::new(s).expect("built-in abbreviation pattern");
        Box::new(Followers {
            prepositive: p(r"\s|:\d"),
            number: p(r"\s\d|\s+\("),
            general: p(r"[.:\-?,]|\s(?:\p{Ll}|I\s|I'm|I'll|\d|\()"),
            multi_period: p(r"(?i)\b[a-z](?:\.[a-z])+\."),
        })
    })
}

const OPENERS: &[char] = &['(', '[', '{', '"', '\'', '“', '‘', '«', '‹', '¿', '¡'];

/// The word before the period at `p`, with masked periods read as '.' and
/// leading opening punctuation dropped.
fn token_before(text: &[char], p: usize) -> String {
    let mut start = p;
    while start > 0 && !is_space(text[start - 1]) {
        start -= 1;
    }
    while start < p && OPENERS.contains(&text[start]) {
        start += 1;
    }
    text[start..p]
        .iter()
        .map(|&c| match placeholder::original(c) {
            Some('.') => '.',
            _ => c,
        })
        .collect()
}

/// Compiled abbreviation handling for one profile.
#[derive(Debug, Clone)]
pub struct AbbreviationReplacer {
    set: AbbreviationSet,
    starter: Option<Pattern>,
}

impl AbbreviationReplacer {
    pub fn new(set: AbbreviationSet) -> Result<AbbreviationReplacer, PatternError> {
        let starter = if set.sentence_starters.is_empty() {
            None
        } else {
            let words: Vec<String> = set.sentence_starters.iter().map(|w| escape(w)).collect();
            Some(Pattern::new(&alloc::format!(r"\s(?:{})\s", words.join("|")))?)
        };
        Ok(AbbreviationReplacer { set, starter })
    }

    pub fn set(&self) -> &AbbreviationSet {
        &self.set
    }

    /// Masks list-based abbreviations, dotted acronyms, and then unmasks
    /// the periods that end a sentence before a sentence starter.
    pub fn apply(&self, text: &mut [char]) {
        let f = followers();
        for p in 0..text.len() {
            if text[p] != '.' {
                continue;
            }
            let token = token_before(text, p);
            if token.is_empty() {
                continue;
            }
            let follow = match self.set.classify(&token) {
                Some(AbbreviationClass::Prepositive) => &f.prepositive,
                Some(AbbreviationClass::Number) => &f.number,
                Some(AbbreviationClass::General) => &f.general,
                None => continue,
            };
            if follow.match_at(text, p + 1).is_some() {
                text[p] = ABBR_PERIOD;
                // dotted entries ("ph.d") hide their inner periods too
                let len = token.chars().count();
                for c in &mut text[p - len..p] {
                    if *c == '.' {
                        *c = ABBR_PERIOD;
                    }
                }
            }
        }

        let spans: Vec<_> = f.multi_period.find_iter(text).map(|m| m.range()).collect();
        for r in spans {
            for c in &mut text[r] {
                if *c == '.' {
                    *c = ABBR_PERIOD;
                }
            }
        }

        let Some(starter) = &self.starter else {
            return;
        };
        for p in 0..text.len() {
            if text[p] != ABBR_PERIOD {
                continue;
            }
            let token = token_before(text, p);
            if self.set.boundary_before_starter.contains(&token) && starter.match_at(text, p + 1).is_some() {
                text[p] = '.';
            }
        }
    }
}

/// Runs the list-driven abbreviation pass over `text`.
pub fn replace_abbreviations(text: &str, abbr: &AbbreviationSet) -> String {
    let replacer = AbbreviationReplacer::new(abbr.clone()).expect("escaped starters always compile");
    let mut chars: Vec<char> = text.chars().collect();
    replacer.apply(&mut chars);
    chars.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set() -> AbbreviationSet {
        AbbreviationSet::parse(
            "[general]\netc\nu.s\nco\n[prepositive]\nMr\ndr\n[number]\nno\n[sentence_starters]\nThe How\n[boundary_before_starter]\nU.S\nI\n",
        )
        .unwrap()
    }

    #[test]
    fn list_lookups() {
        assert_eq!(
            replace_abbreviations("Mr. Smith left.", &set()),
            "Mr\u{E001} Smith left."
        );
        assert_eq!(replace_abbreviations("see no. 5 here", &set()), "see no\u{E001} 5 here");
        assert_eq!(replace_abbreviations("tea etc. and", &set()), "tea etc\u{E001} and");
        assert_eq!(replace_abbreviations("tea etc. Then", &set()), "tea etc. Then");
        assert_eq!(replace_abbreviations("xyzzy plugh", &set()), "xyzzy plugh");
    }

    #[test]
    fn never_mid_word() {
        assert_eq!(replace_abbreviations("Tetc. and", &set()), "Tetc. and");
        assert_eq!(replace_abbreviations("(Dr. Who)", &set()), "(Dr\u{E001} Who)");
    }

    #[test]
    fn acronyms_and_starters() {
        assert_eq!(
            replace_abbreviations("the U.S.A. team", &set()),
            "the U\u{E001}S\u{E001}A\u{E001} team"
        );
        assert_eq!(
            replace_abbreviations("in the U.S. How are", &set()),
            "in the U\u{E001}S. How are"
        );
        assert_eq!(
            replace_abbreviations("in the U.S. Army", &set()),
            "in the U\u{E001}S\u{E001} Army"
        );
    }

    #[test]
    fn case_folded_fallback() {
        let s = set();
        assert_eq!(s.classify("MR"), Some(AbbreviationClass::Prepositive));
        assert_eq!(s.classify("Co"), Some(AbbreviationClass::General));
        assert_eq!(s.classify("zz"), None);
    }

    #[test]
    fn idempotent() {
        let once = replace_abbreviations("Mr. Smith of the U.S. Army, etc. and no. 4.", &set());
        assert_eq!(replace_abbreviations(&once, &set()), once);
    }
}
