//! Reserved private-use codepoints that stand in for masked punctuation.
//!
//! Each placeholder restores to exactly one original char, so masking never
//! changes the char length of the text and sentence offsets computed on
//! masked text are valid offsets into the original.

use alloc::string::String;
use alloc::vec::Vec;

pub const RESERVED_FIRST: char = '\u{E000}';
pub const RESERVED_LAST: char = '\u{E07F}';

/// One registry entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placeholder {
    pub name: &'static str,
    pub code: char,
    pub original: char,
}

const fn p(name: &'static str, code: char, original: char) -> Placeholder {
    Placeholder { name, code, original }
}

pub const ABBR_PERIOD: char = '\u{E001}';
pub const NUMBER_PERIOD: char = '\u{E002}';
pub const INNER_PERIOD: char = '\u{E003}';
pub const LIST_PERIOD: char = '\u{E004}';
pub const LIST_OPEN: char = '\u{E00F}';
pub const BREAK_SPACE: char = '\u{E011}';
pub const BREAK_TAB: char = '\u{E012}';

const NAMED: &[Placeholder] = &[
    p("abbr", ABBR_PERIOD, '.'),
    p("num", NUMBER_PERIOD, '.'),
    p("inner", INNER_PERIOD, '.'),
    p("list", LIST_PERIOD, '.'),
    p("geo", '\u{E005}', '.'),
    p("ellipsis", '\u{E006}', '.'),
    p("pair_period", '\u{E007}', '.'),
    p("pair_bang", '\u{E008}', '!'),
    p("pair_question", '\u{E009}', '?'),
    p("word_bang", '\u{E00A}', '!'),
    p("mid_bang", '\u{E00B}', '!'),
    p("quote_question", '\u{E00C}', '?'),
    p("run_bang", '\u{E00D}', '!'),
    p("run_question", '\u{E00E}', '?'),
    p("list_open", LIST_OPEN, '('),
    p("list_close", '\u{E010}', ')'),
    p("break", BREAK_SPACE, ' '),
    p("break_tab", BREAK_TAB, '\t'),
];

/// Terminal-like chars that get a generic mask, addressed as `mask:X`.
const GENERIC: &[char] = &[
    '.', '!', '?', '。', '．', '！', '？', '｡', '।', '॥', '؟', '۔', '|', '…', '‼', '⁇', '⁈', '⁉', ':', ';', '؛', '։',
    '።', '፧', '՞', '︒', '﹒', '﹗', '﹖', '⸮', '¡', '¿',
];
const GENERIC_BASE: u32 = 0xE020;

/// Placeholder for `name`: a registry name like `abbr`, or `mask:X` for the
/// generic mask of char `X`.
pub fn lookup(name: &str) -> Option<char> {
    if let Some(rest) = name.strip_prefix("mask:") {
        let mut it = rest.chars();
        let c = it.next()?;
        if it.next().is_some() {
            return None;
        }
        return generic_mask(c);
    }
    NAMED.iter().find(|e| e.name == name).map(|e| e.code)
}

/// Generic mask codepoint for a terminal-like char.
pub fn generic_mask(c: char) -> Option<char> {
    let i = GENERIC.iter().position(|&g| g == c)?;
    char::from_u32(GENERIC_BASE + i as u32)
}

pub fn is_reserved(c: char) -> bool {
    (RESERVED_FIRST..=RESERVED_LAST).contains(&c)
}

pub(crate) fn is_break(c: char) -> bool {
    c == BREAK_SPACE || c == BREAK_TAB
}

/// Forced-break placeholder standing in for whitespace char `c`.
pub(crate) fn break_over(c: char) -> Option<char> {
    match c {
        ' ' => Some(BREAK_SPACE),
        '\t' => Some(BREAK_TAB),
        _ => None,
    }
}

/// Original char behind a placeholder, or `None` for anything else.
pub fn original(c: char) -> Option<char> {
    if !is_reserved(c) {
        return None;
    }
    if let Some(e) = NAMED.iter().find(|e| e.code == c) {
        return Some(e.original);
    }
    let i = (c as u32).checked_sub(GENERIC_BASE)? as usize;
    GENERIC.get(i).copied()
}

/// True iff `text` contains a reserved codepoint.
pub fn scan_reserved(text: &str) -> bool {
    text.chars().any(is_reserved)
}

/// Char offset and value of the first reserved codepoint.
pub fn first_reserved(text: &str) -> Option<(usize, char)> {
    text.chars().enumerate().find(|(_, c)| is_reserved(*c))
}

/// The bijection between placeholders and the chars they mask.
#[derive(Debug, Clone, Copy, Default)]
pub struct PlaceholderRegistry;

impl PlaceholderRegistry {
    pub fn entries(&self) -> impl Iterator<Item = Placeholder> {
        NAMED
            .iter()
            .copied()
            .chain(GENERIC.iter().enumerate().map(|(i, &c)| Placeholder {
                name: "mask",
                code: char::from_u32(GENERIC_BASE + i as u32).unwrap(),
                original: c,
            }))
    }

    pub fn restore_chars(&self, text: &mut [char]) {
        for c in text.iter_mut() {
            if let Some(o) = original(*c) {
                *c = o;
            }
        }
    }

    pub fn restore(&self, text: &str) -> String {
        text.chars().map(|c| original(c).unwrap_or(c)).collect()
    }
}

/// Replaces every placeholder in `text` by its original char.
pub fn restore_placeholders(text: &str, registry: &PlaceholderRegistry) -> String {
    registry.restore(text)
}

pub(crate) fn restored(text: &[char]) -> Vec<char> {
    text.iter().map(|&c| original(c).unwrap_or(c)).collect()
}
