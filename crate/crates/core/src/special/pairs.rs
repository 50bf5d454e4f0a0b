//! Masking of terminal punctuation between paired delimiters.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::pattern::{escape, Pattern};
use crate::placeholder;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairStyle {
    /// Any open/close pair on one line.
    Plain,
    /// Single-quote style: the opener must start a word and a closer
    /// followed by a letter is read as an apostrophe.
    Apostrophe,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSpec {
    pub open: String,
    pub close: String,
    /// Terminal chars masked between the delimiters.
    pub mask: Vec<char>,
    pub style: PairStyle,
}

impl PairSpec {
    pub fn new(open: &str, close: &str, mask: &[char], style: PairStyle) -> Result<PairSpec, String> {
        if open.is_empty() || close.is_empty() {
            return Err("pair delimiters must not be empty".to_string());
        }
        Ok(PairSpec {
            open: open.to_string(),
            close: close.to_string(),
            mask: mask.to_vec(),
            style,
        })
    }

    fn patterns(&self) -> (Pattern, Option<(Pattern, Pattern)>) {
        let (o, c) = (escape(&self.open), escape(&self.close));
        let line = r"\n\r\u{2028}\u{2029}@{break}@{break_tab}";
        let build = |s: &str| Pattern::new(s).expect("escaped delimiters always compile");
        match self.style {
            PairStyle::Plain => {
                let src = alloc::format!("{o}(?:(?!{o})(?!{c})[^{line}])+{c}");
                (build(&src), None)
            }
            PairStyle::Apostrophe => {
                let body = alloc::format!("(?:(?!{c})[^{line}]|{c}[a-zA-Z])*{c}");
                let main = build(&alloc::format!(r"(?:^|(?<=\s)){o}{body}"));
                let leading = build(&alloc::format!(r"(?:^|(?<=\s)){o}{body}\S"));
                let closing = build(&alloc::format!(r"{c}\s"));
                (main, Some((leading, closing)))
            }
        }
    }
}

/// Placeholder for a terminal masked inside a pair.
fn pair_mask(c: char) -> Option<char> {
    match c {
        '.' => placeholder::lookup("pair_period"),
        '!' => placeholder::lookup("pair_bang"),
        '?' => placeholder::lookup("pair_question"),
        _ => placeholder::generic_mask(c),
    }
}

// apostrophe pairs carry extra leading/closing checks
type CompiledPair = (PairSpec, Pattern, Option<(Pattern, Pattern)>);

/// Compiled pair patterns for one profile, applied in list order.
#[derive(Debug, Clone)]
pub struct PairMasker {
    pairs: Vec<CompiledPair>,
}

impl PairMasker {
    pub fn new(specs: &[PairSpec]) -> PairMasker {
        PairMasker {
            pairs: specs
                .iter()
                .map(|s| {
                    let (main, guard) = s.patterns();
                    (s.clone(), main, guard)
                })
                .collect(),
        }
    }

    pub fn specs(&self) -> impl Iterator<Item = &PairSpec> {
        self.pairs.iter().map(|p| &p.0)
    }

    pub fn apply(&self, text: &mut [char]) {
        for (spec, main, guard) in &self.pairs {
            if let Some((leading, closing)) = guard {
                // a quote glued to a following word with no closing quote
                // anywhere reads as an apostrophe, not a quotation
                if leading.is_match(text) && !closing.is_match(text) {
                    continue;
                }
            }
            let (ol, cl) = (spec.open.chars().count(), spec.close.chars().count());
            let spans: Vec<_> = main.find_iter(text).map(|m| m.range()).collect();
            for r in spans {
                for c in &mut text[r.start + ol..r.end - cl] {
                    if spec.mask.contains(c) {
                        if let Some(m) = pair_mask(*c) {
                            *c = m;
                        }
                    }
                }
            }
        }
    }
}

/// Masks terminals between each of `pairs` in turn.
pub fn mask_between_punctuation(text: &str, pairs: &[PairSpec]) -> String {
    let mut chars: Vec<char> = text.chars().collect();
    PairMasker::new(pairs).apply(&mut chars);
    chars.into_iter().collect()
}
