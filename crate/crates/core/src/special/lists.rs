//! List-item detection: masks marker periods/parens of numbered and
//! lettered lists and turns the space before each item into a forced break.
//!
//! A marker only counts as a list item when a neighbouring marker continues
//! the sequence, so "He scored 4. Then he left." is left alone.

use alloc::vec::Vec;

use once_cell::race::OnceBox;

use crate::pattern::{digit_value, is_digit, is_line_break, is_space, Pattern};
use crate::placeholder::{self, LIST_OPEN, LIST_PERIOD};

/// Which list styles a profile detects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ListOptions {
    pub numbered: bool,
    pub alphabetical: bool,
    pub roman: bool,
}

impl Default for ListOptions {
    fn default() -> Self {
        ListOptions {
            numbered: true,
            alphabetical: true,
            roman: false,
        }
    }
}

const LATIN: &[&str] = &[
    "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n", "o", "p", "q", "r", "s", "t", "u", "v", "w",
    "x", "y", "z",
];
const ROMAN: &[&str] = &[
    "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii", "xiii", "xiv", "xv", "xvi", "xvii",
    "xviii", "xix", "xx",
];

struct Patterns {
    numbered_paren: Pattern,
    first_break: Pattern,
    second_break: Pattern,
    for_guard: Pattern,
}

fn patterns() -> &'static Patterns {
    static P: OnceBox<Patterns> = OnceBox::new();
    P.get_or_init(|| {
        let p = |s: &str| Pattern::new(s).expect("built-in list pattern");
        alloc::boxed::Box::new(Patterns {
            numbered_paren: p(r"\d{1,2}(?=\)\s)"),
            first_break: p(r"(?<=\S\S)\s(?=\S\s*\d+@{list})"),
            second_break: p(r"(?<=\S\S)\s(?=\d{1,2}@{list})"),
            for_guard: p(r"for\s\d{1,2}@{list}\s[a-z]"),
        })
    })
}

/// Masks list markers in place and inserts forced breaks before items.
pub fn replace_list_items_chars(text: &mut [char], opts: ListOptions) {
    if opts.alphabetical {
        letter_lists(text, LATIN);
    }
    if opts.roman {
        letter_lists(text, ROMAN);
    }
    if opts.numbered {
        numbered_with_periods(text);
        numbered_with_parens(text);
    }
}

/// Turns the whitespace char at `i` into a forced break when it is a plain
/// space or tab; real line breaks already separate.
fn force_break(text: &mut [char], i: usize) {
    if let Some(b) = placeholder::break_over(text[i]) {
        text[i] = b;
    }
}

fn number_value(digits: &[char]) -> Option<u32> {
    // "05" is not the same item as "5"
    if digits.len() > 1 && digit_value(digits[0]) == Some(0) {
        return None;
    }
    digits.iter().try_fold(0, |acc, &c| Some(acc * 10 + digit_value(c)?))
}

/// Indices of `values` that continue a numeric sequence with a neighbour.
fn sequence_members(values: &[u32]) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        let next = values.get(i + 1).is_some_and(|&n| v + 1 == n);
        let prev = i > 0 && {
            let p = values[i - 1];
            v.checked_sub(1) == Some(p) || (v == 0 && p == 9) || (v == 9 && p == 0)
        };
        if next || prev {
            out.push(i);
        }
    }
    out
}

/// True when two consecutive markers sit on different lines.
fn markers_span_lines(text: &[char], markers: &[usize]) -> bool {
    markers.windows(2).any(|w| {
        let (a, b) = (w[0], w[1]);
        if b <= a + 2 {
            return false;
        }
        let between = &text[a + 1..b];
        let newlines = between.iter().filter(|&&c| c == '\n').count();
        let other = between.iter().any(|&c| c != '\n' && is_line_break(c));
        let edge = is_line_break(between[0]) || is_line_break(between[between.len() - 1]);
        !edge && (newlines == 1 || (newlines == 0 && other))
    })
}

/// Numbered markers like "12." followed by whitespace or ')', as (digit
/// start, period). The number has one or two digits and opens a line,
/// follows whitespace, or follows a '-' / '⁃' bullet that does.
fn numbered_markers(text: &[char]) -> Vec<(usize, usize)> {
    let opens = |p: usize| p == 0 || is_space(text[p - 1]);
    let mut out = Vec::new();
    let mut i = 0;
    while i < text.len() {
        if !is_digit(text[i]) {
            i += 1;
            continue;
        }
        let j = i;
        while i < text.len() && is_digit(text[i]) {
            i += 1;
        }
        let followed = text.get(i) == Some(&'.') && text.get(i + 1).is_some_and(|&c| is_space(c) || c == ')');
        let led = opens(j) || (j > 0 && matches!(text[j - 1], '-' | '⁃') && opens(j - 1));
        if i - j <= 2 && followed && led {
            out.push((j, i));
        }
    }
    out
}

fn numbered_with_periods(text: &mut [char]) {
    let pats = patterns();
    let found: Vec<(usize, usize, u32)> = numbered_markers(text)
        .into_iter()
        .filter_map(|(s, p)| Some((s, p, number_value(&text[s..p])?)))
        .collect();
    let values: Vec<u32> = found.iter().map(|f| f.2).collect();
    let chosen: Vec<u32> = sequence_members(&values).into_iter().map(|i| values[i]).collect();
    if chosen.is_empty() {
        return;
    }
    let markers: Vec<usize> = found.iter().filter(|f| chosen.contains(&f.2)).map(|f| f.1).collect();
    if markers.is_empty() {
        return;
    }
    for &p in &markers {
        text[p] = LIST_PERIOD;
    }
    if markers_span_lines(text, &markers) || pats.for_guard.is_match(text) {
        return;
    }
    for pat in [&pats.first_break, &pats.second_break] {
        let hits: Vec<usize> = pat.find_iter(text).map(|m| m.start()).collect();
        for i in hits {
            force_break(text, i);
        }
    }
}

fn numbered_with_parens(text: &mut [char]) {
    let pats = patterns();
    // (digit start, marker position after the digits)
    let mut markers: Vec<(usize, usize)> = Vec::new();
    for _ in 0..2 {
        let found: Vec<(usize, usize, u32)> = pats
            .numbered_paren
            .find_iter(text)
            .filter(|m| !markers.iter().any(|&(s, _)| s == m.start()))
            .filter_map(|m| Some((m.start(), m.end(), number_value(&text[m.range()])?)))
            .collect();
        let values: Vec<u32> = found.iter().map(|f| f.2).collect();
        let chosen: Vec<u32> = sequence_members(&values).into_iter().map(|i| values[i]).collect();
        for &(s, e, v) in &found {
            if chosen.contains(&v) && !markers.contains(&(s, e)) {
                markers.push((s, e));
            }
        }
    }
    if markers.is_empty() {
        return;
    }
    markers.sort_unstable();
    let ends: Vec<usize> = markers.iter().map(|m| m.1).collect();
    if markers_span_lines(text, &ends) {
        return;
    }
    for &(s, _) in &markers {
        if s >= 3 && is_space(text[s - 1]) && !is_space(text[s - 2]) && !is_space(text[s - 3]) {
            force_break(text, s - 1);
        }
    }
}

fn letter_lists(text: &mut [char], alphabet: &[&str]) {
    letter_list(text, alphabet, false);
    letter_list(text, alphabet, true);
}

/// Letter markers as (marker start, body start, body end). With `parens`
/// the body is closed by ')' and may be opened by '('; otherwise it is a
/// single letter followed by '.'. Bodies not opened by '(' must start a
/// line or follow whitespace.
fn letter_markers(text: &[char], parens: bool, letter: fn(char) -> bool) -> Vec<(usize, usize, usize)> {
    let opens = |p: usize| p == 0 || is_space(text[p - 1]);
    let mut out = Vec::new();
    for (k, &c) in text.iter().enumerate() {
        if c != if parens { ')' } else { '.' } {
            continue;
        }
        let mut j = k;
        while j > 0 && letter(text[j - 1]) && (parens || j == k) {
            j -= 1;
        }
        if j == k {
            continue;
        }
        if parens && j > 0 && text[j - 1] == '(' {
            out.push((j - 1, j, k));
        } else if opens(j) {
            out.push((j, j, k));
        }
    }
    out
}

fn letter_list(text: &mut [char], alphabet: &[&str], parens: bool) {
    let index = |body: &[char]| {
        let s: alloc::string::String = body.iter().collect();
        alphabet.iter().position(|a| *a == s)
    };
    let items: Vec<usize> = letter_markers(text, parens, |c| c.is_ascii_lowercase())
        .into_iter()
        .filter_map(|(_, s, e)| index(&text[s..e]))
        .collect();
    let n = items.len();
    let mut chosen: Vec<usize> = Vec::new();
    for (i, &cur) in items.iter().enumerate() {
        // the previous item wraps around to the last one for i == 0
        let prev = items[(i + n - 1) % n];
        let near_prev = prev.abs_diff(cur) == 1;
        let keep = if i + 1 == n {
            near_prev
        } else {
            items[i + 1] == cur + 1 || near_prev
        };
        if keep && !chosen.contains(&cur) {
            chosen.push(cur);
        }
    }
    if chosen.is_empty() {
        return;
    }
    for (start, s, e) in letter_markers(text, parens, |c| c.is_ascii_alphabetic()) {
        if !index(&text[s..e]).is_some_and(|i| chosen.contains(&i)) {
            continue;
        }
        if parens {
            if start < s {
                text[start] = LIST_OPEN;
            }
        } else {
            text[e] = LIST_PERIOD;
        }
        if start > 0 && is_space(text[start - 1]) {
            force_break(text, start - 1);
        }
    }
}
