//! Optional destructive clean-up for noisy input.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use crate::config::DocType;
use crate::pattern::{Captures, Pattern};
use crate::placeholder;

/// Cleaned text plus how often each rule fired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleanReport {
    pub output: String,
    pub actions: Vec<(&'static str, usize)>,
}

impl CleanReport {
    pub fn count(&self, id: &str) -> usize {
        self.actions.iter().find(|(a, _)| *a == id).map_or(0, |a| a.1)
    }

    pub fn changed(&self) -> bool {
        self.actions.iter().any(|a| a.1 > 0)
    }
}

pub const ACTIONS: &[&str] = &[
    "normalize_newlines",
    "strip_reserved",
    "strip_html",
    "remove_toc",
    "join_lines",
    "insert_space",
];

struct Patterns {
    html: Pattern,
    url: Pattern,
    toc: Pattern,
    plain_newline: Pattern,
    pdf_newline: Pattern,
    missing_space: Pattern,
}

fn patterns() -> &'static Patterns {
    static P: OnceBox<Patterns> = OnceBox::new();
    P.get_or_init(|| {
        let p = |s: &str| Pattern::new(s).expect("built-in cleaner pattern");
        Box::new(Patterns {
            html: p(r"</?[A-Za-z!][^<>\n]*>"),
            url: p(r"(?i)\b(?:https?://|ftp://|www\.)[^\s<>]+"),
            toc: p(r"^[^\n]*\w[^\n]*?\.{5,}[ \t]*\d+[ \t]*(?:\n|\z)"),
            plain_newline: p(r"(?<=[^.!?\s])\n(?=[a-z])"),
            pdf_newline: p(r"(?<=[^.!?\s])\n(?=\S)"),
            missing_space: p(r"(?<=[a-z])[.!?](?=[A-Z])"),
        })
    })
}

/// Replaces every match and returns how many there were.
fn replace(p: &Pattern, text: &mut Vec<char>, mut f: impl FnMut(&Captures, &[char], &mut Vec<char>)) -> usize {
    let mut n = 0;
    if let Some(out) = p.replace_all_with(text, |c, src, out| {
        n += 1;
        f(c, src, out)
    }) {
        *text = out;
    }
    n
}

fn one_pass(text: &mut Vec<char>, doc_type: DocType, counts: &mut [usize; 6]) {
    let p = patterns();
    counts[2] += replace(&p.html, text, |_, _, _| {});

    // periods inside URLs are hidden from the rules below
    let spans: Vec<_> = p.url.find_iter(text).map(|m| m.range()).collect();
    for r in spans {
        for c in &mut text[r] {
            if let Some(m) = placeholder::generic_mask(*c) {
                *c = m;
            }
        }
    }

    counts[3] += replace(&p.toc, text, |_, _, _| {});
    let newline = match doc_type {
        DocType::Plain => &p.plain_newline,
        DocType::Pdf => &p.pdf_newline,
    };
    counts[4] += replace(newline, text, |_, _, out| out.push(' '));
    counts[5] += replace(&p.missing_space, text, |c, src, out| {
        out.push(src[c.start()]);
        out.push(' ');
    });

    for c in text.iter_mut() {
        if let Some(o) = placeholder::original(*c) {
            *c = o;
        }
    }
}

/// Cleans `text`: strips HTML tags, drops table-of-contents lines, joins
/// broken lines and adds the missing space in "end.Next". Runs to a fixpoint,
/// so cleaning the output again changes nothing.
pub fn clean(text: &str, doc_type: DocType) -> CleanReport {
    let mut counts = [0usize; 6];
    let mut chars: Vec<char> = Vec::with_capacity(text.len());
    let mut it = text.chars().peekable();
    while let Some(c) = it.next() {
        match c {
            '\r' => {
                if it.peek() == Some(&'\n') {
                    it.next();
                }
                counts[0] += 1;
                chars.push('\n');
            }
            c if placeholder::is_reserved(c) => counts[1] += 1,
            c => chars.push(c),
        }
    }

    for _ in 0..8 {
        let before = counts;
        one_pass(&mut chars, doc_type, &mut counts);
        if before[2..] == counts[2..] {
            break;
        }
    }

    CleanReport {
        output: chars.into_iter().collect(),
        actions: ACTIONS.iter().copied().zip(counts).collect(),
    }
}
