//! Backtracking pattern matcher over `char` slices.
//!
//! The syntax is a subset of the usual regex dialect:
//!
//! * literals, `.` (any char except a line break), `[...]` / `[^...]` classes
//!   with ranges, `\d \D \s \S \w \W`, and `\p{Ll} \p{Lu}` (negated with
//!   `\P`) for Unicode lower/upper case letters
//! * escapes `\t \n \r \f \v \0 \xHH \uHHHH \u{H...}`; any escaped
//!   non-alphanumeric char is literal
//! * `^ $` (line-aware), `\A \z \Z` (text), `\b \B`
//! * groups `(...)`, `(?:...)`, alternation `|`
//! * `* + ? {n} {n,} {n,m} {,m}`, each optionally lazy with a trailing `?`
//! * lookahead `(?=...)` `(?!...)` and fixed-width lookbehind `(?<=...)` `(?<!...)`
//! * a leading `(?i)` for ASCII/simple case folding
//! * `@{name}` for a placeholder codepoint (see [`crate::placeholder`])
//!
//! There are no backreferences. Every (instruction, position) pair is
//! explored at most once per scan, so a full left-to-right scan is
//! `O(pattern * text)`.
//!
//! Groups inside lookarounds are numbered but never capture.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use hashbrown::HashSet;

use crate::placeholder;

/// Compile error with the char offset into the pattern source.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("pattern error at {offset}: {message}")]
pub struct PatternError {
    pub offset: usize,
    pub message: String,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, PatternError> {
    Err(PatternError {
        offset,
        message: message.into(),
    })
}

// ---------------------------------------------------------------- chars

pub(crate) fn is_line_break(c: char) -> bool {
    matches!(c, '\n' | '\r' | '\u{2028}' | '\u{2029}') || placeholder::is_break(c)
}

pub(crate) fn is_space(c: char) -> bool {
    c.is_whitespace() || placeholder::is_break(c)
}

pub(crate) fn is_digit(c: char) -> bool {
    if c.is_ascii_digit() {
        return true;
    }
    let u = c as u32;
    // decimal digit blocks that show up in the shipped languages
    matches!(u,
        0x0660..=0x0669 | 0x06F0..=0x06F9 | 0x0966..=0x096F | 0x09E6..=0x09EF
        | 0x0A66..=0x0A6F | 0x0AE6..=0x0AEF | 0xFF10..=0xFF19)
}

/// Numeric value of a decimal digit accepted by `\d`.
pub(crate) fn digit_value(c: char) -> Option<u32> {
    if !is_digit(c) {
        return None;
    }
    let u = c as u32;
    let zero = [0x30, 0x0660, 0x06F0, 0x0966, 0x09E6, 0x0A66, 0x0AE6, 0xFF10]
        .into_iter()
        .filter(|&z| z <= u)
        .max()?;
    Some(u - zero)
}

pub(crate) fn is_word(c: char) -> bool {
    c == '_' || c.is_alphanumeric()
}

fn fold(c: char) -> char {
    if c.is_ascii() {
        return c.to_ascii_lowercase();
    }
    let mut it = c.to_lowercase();
    match (it.next(), it.next()) {
        (Some(l), None) => l,
        _ => c,
    }
}

fn upper(c: char) -> char {
    if c.is_ascii() {
        return c.to_ascii_uppercase();
    }
    let mut it = c.to_uppercase();
    match (it.next(), it.next()) {
        (Some(u), None) => u,
        _ => c,
    }
}

// ---------------------------------------------------------------- AST

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Assertion {
    LineStart,
    LineEnd,
    TextStart,
    TextEnd,
    WordBoundary,
    NotWordBoundary,
}

impl Assertion {
    fn holds(self, text: &[char], pos: usize) -> bool {
        let n = text.len();
        match self {
            Assertion::LineStart => pos == 0 || is_line_break(text[pos - 1]),
            Assertion::LineEnd => pos == n || is_line_break(text[pos]),
            Assertion::TextStart => pos == 0,
            Assertion::TextEnd => pos == n,
            Assertion::WordBoundary | Assertion::NotWordBoundary => {
                let before = pos > 0 && is_word(text[pos - 1]);
                let after = pos < n && is_word(text[pos]);
                (before != after) == (self == Assertion::WordBoundary)
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum ClassItem {
    Range(char, char),
    Digit(bool),
    Space(bool),
    Word(bool),
    Lower(bool),
    Upper(bool),
}

impl ClassItem {
    fn matches(self, c: char) -> bool {
        match self {
            ClassItem::Range(lo, hi) => lo <= c && c <= hi,
            ClassItem::Digit(neg) => is_digit(c) != neg,
            ClassItem::Space(neg) => is_space(c) != neg,
            ClassItem::Word(neg) => is_word(c) != neg,
            ClassItem::Lower(neg) => c.is_lowercase() != neg,
            ClassItem::Upper(neg) => c.is_uppercase() != neg,
        }
    }
}

#[derive(Debug, Clone)]
struct Class {
    negated: bool,
    items: Vec<ClassItem>,
}

impl Class {
    fn single(item: ClassItem) -> Class {
        Class {
            negated: false,
            items: vec![item],
        }
    }

    fn raw_matches(&self, c: char) -> bool {
        self.items.iter().any(|it| it.matches(c))
    }

    fn matches(&self, c: char, ci: bool) -> bool {
        let mut hit = self.raw_matches(c);
        if !hit && ci {
            let (l, u) = (fold(c), upper(c));
            hit = (l != c && self.raw_matches(l)) || (u != c && self.raw_matches(u));
        }
        hit != self.negated
    }
}

#[derive(Debug, Clone)]
enum Node {
    Empty,
    Literal(char),
    Any,
    Class(Class),
    Assert(Assertion),
    Group(Box<Node>, Option<usize>),
    Concat(Vec<Node>),
    Alt(Vec<Node>),
    Repeat {
        node: Box<Node>,
        min: u32,
        max: Option<u32>,
        greedy: bool,
    },
    Look {
        node: Box<Node>,
        behind: bool,
        negate: bool,
    },
}

impl Node {
    /// Fixed match width in chars, if there is one.
    fn width(&self) -> Option<usize> {
        match self {
            Node::Empty | Node::Assert(_) | Node::Look { .. } => Some(0),
            Node::Literal(_) | Node::Any | Node::Class(_) => Some(1),
            Node::Group(n, _) => n.width(),
            Node::Concat(ns) => ns.iter().try_fold(0, |acc, n| Some(acc + n.width()?)),
            Node::Alt(ns) => {
                let w = ns.first()?.width()?;
                ns.iter().all(|n| n.width() == Some(w)).then_some(w)
            }
            Node::Repeat { node, min, max, .. } => {
                if Some(*min) == *max {
                    Some(node.width()? * *min as usize)
                } else {
                    None
                }
            }
        }
    }

    fn nullable(&self) -> bool {
        match self {
            Node::Empty | Node::Assert(_) | Node::Look { .. } => true,
            Node::Literal(_) | Node::Any | Node::Class(_) => false,
            Node::Group(n, _) => n.nullable(),
            Node::Concat(ns) => ns.iter().all(Node::nullable),
            Node::Alt(ns) => ns.iter().any(Node::nullable),
            Node::Repeat { node, min, .. } => *min == 0 || node.nullable(),
        }
    }

    /// Classes that can match the first consumed char; `None` means anything.
    fn first(&self, out: &mut Vec<Class>) -> Option<()> {
        match self {
            Node::Empty | Node::Assert(_) | Node::Look { .. } => Some(()),
            Node::Literal(c) => {
                out.push(Class::single(ClassItem::Range(*c, *c)));
                Some(())
            }
            Node::Any => None,
            Node::Class(c) => {
                out.push(c.clone());
                Some(())
            }
            Node::Group(n, _) => n.first(out),
            Node::Concat(ns) => {
                for n in ns {
                    n.first(out)?;
                    if !n.nullable() {
                        break;
                    }
                }
                Some(())
            }
            Node::Alt(ns) => {
                for n in ns {
                    n.first(out)?;
                }
                Some(())
            }
            Node::Repeat { node, .. } => node.first(out),
        }
    }
}

// ---------------------------------------------------------------- parser

struct Parser<'a> {
    src: Vec<char>,
    pos: usize,
    groups: usize,
    resolve: &'a dyn Fn(&str) -> Option<char>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.src.get(self.pos + k).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        let n = s.chars().count();
        if self.src.len() >= self.pos + n && s.chars().eq(self.src[self.pos..self.pos + n].iter().copied()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn parse_alt(&mut self) -> Result<Node, PatternError> {
        let mut branches = vec![self.parse_concat()?];
        while self.eat('|') {
            branches.push(self.parse_concat()?);
        }
        Ok(if branches.len() == 1 {
            branches.pop().unwrap()
        } else {
            Node::Alt(branches)
        })
    }

    fn parse_concat(&mut self) -> Result<Node, PatternError> {
        let mut items = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            let atom = self.parse_atom()?;
            let atom = self.parse_quantifier(atom)?;
            items.push(atom);
        }
        Ok(match items.len() {
            0 => Node::Empty,
            1 => items.pop().unwrap(),
            _ => Node::Concat(items),
        })
    }

    /// Parses `{n}`, `{n,}`, `{n,m}`, `{,m}` at the cursor without
    /// consuming anything when the braces do not form a quantifier.
    fn try_braces(&mut self) -> Option<(u32, Option<u32>)> {
        let save = self.pos;
        if !self.eat('{') {
            return None;
        }
        let lo = self.number();
        let out = if self.eat(',') {
            let hi = self.number();
            if lo.is_none() && hi.is_none() {
                None
            } else {
                Some((lo.unwrap_or(0), hi))
            }
        } else {
            lo.map(|n| (n, Some(n)))
        };
        if out.is_some() && self.eat('}') {
            out
        } else {
            self.pos = save;
            None
        }
    }

    fn number(&mut self) -> Option<u32> {
        let start = self.pos;
        let mut n: u32 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            n = n.saturating_mul(10).saturating_add(d);
            self.pos += 1;
        }
        (self.pos > start).then_some(n)
    }

    fn parse_quantifier(&mut self, atom: Node) -> Result<Node, PatternError> {
        let at = self.pos;
        let (min, max) = match self.peek() {
            Some('*') => {
                self.pos += 1;
                (0, None)
            }
            Some('+') => {
                self.pos += 1;
                (1, None)
            }
            Some('?') => {
                self.pos += 1;
                (0, Some(1))
            }
            Some('{') => match self.try_braces() {
                Some(q) => q,
                None => return Ok(atom),
            },
            _ => return Ok(atom),
        };
        if let Some(hi) = max {
            if hi < min {
                return err(at, "repetition bounds out of order");
            }
        }
        if min > 1000 || max.is_some_and(|m| m > 1000) {
            return err(at, "repetition bound too large");
        }
        if matches!(atom, Node::Empty) {
            return err(at, "nothing to repeat");
        }
        let greedy = !self.eat('?');
        if matches!(self.peek(), Some('*' | '+' | '?')) {
            return err(self.pos, "multiple repeat");
        }
        Ok(Node::Repeat {
            node: Box::new(atom),
            min,
            max,
            greedy,
        })
    }

    fn parse_atom(&mut self) -> Result<Node, PatternError> {
        let at = self.pos;
        let c = self.peek().unwrap();
        match c {
            '(' => self.parse_group(),
            '[' => Ok(Node::Class(self.parse_class()?)),
            '.' => {
                self.pos += 1;
                Ok(Node::Any)
            }
            '^' => {
                self.pos += 1;
                Ok(Node::Assert(Assertion::LineStart))
            }
            '$' => {
                self.pos += 1;
                Ok(Node::Assert(Assertion::LineEnd))
            }
            '*' | '+' | '?' => err(at, "nothing to repeat"),
            '{' if self.try_braces().is_some() => err(at, "nothing to repeat"),
            '\\' => self.parse_escape(false).map(|e| match e {
                Escaped::Char(c) => Node::Literal(c),
                Escaped::Item(it) => Node::Class(Class::single(it)),
                Escaped::Assert(a) => Node::Assert(a),
            }),
            '@' if self.peek_at(1) == Some('{') => Ok(Node::Literal(self.parse_placeholder()?)),
            _ => {
                self.pos += 1;
                Ok(Node::Literal(c))
            }
        }
    }

    fn parse_placeholder(&mut self) -> Result<char, PatternError> {
        let at = self.pos;
        self.pos += 2;
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c == '}' {
                let name: String = self.src[start..self.pos].iter().collect();
                self.pos += 1;
                return (self.resolve)(&name)
                    .map_or_else(|| err(at, alloc::format!("unknown placeholder '{name}'")), Ok);
            }
            self.pos += 1;
        }
        err(at, "unterminated placeholder")
    }

    fn parse_group(&mut self) -> Result<Node, PatternError> {
        let at = self.pos;
        self.pos += 1;
        let node = if self.eat_str("?:") {
            Node::Group(Box::new(self.parse_alt()?), None)
        } else if self.eat_str("?=") || self.eat_str("?!") {
            let negate = self.src[self.pos - 1] == '!';
            Node::Look {
                node: Box::new(self.parse_alt()?),
                behind: false,
                negate,
            }
        } else if self.eat_str("?<=") || self.eat_str("?<!") {
            let negate = self.src[self.pos - 1] == '!';
            let inner = self.parse_alt()?;
            if inner.width().is_none() {
                return err(at, "lookbehind requires a fixed width");
            }
            Node::Look {
                node: Box::new(inner),
                behind: true,
                negate,
            }
        } else if self.peek() == Some('?') {
            return err(at, "unsupported group syntax");
        } else {
            self.groups += 1;
            let idx = self.groups;
            Node::Group(Box::new(self.parse_alt()?), Some(idx))
        };
        if !self.eat(')') {
            return err(at, "missing ')'");
        }
        Ok(node)
    }

    fn parse_class(&mut self) -> Result<Class, PatternError> {
        let at = self.pos;
        self.pos += 1;
        let negated = self.eat('^');
        let mut items = Vec::new();
        let mut first = true;
        loop {
            let Some(c) = self.peek() else {
                return err(at, "missing ']'");
            };
            if c == ']' && !first {
                self.pos += 1;
                break;
            }
            first = false;
            let lo = match self.class_atom()? {
                Escaped::Char(c) => c,
                Escaped::Item(it) => {
                    items.push(it);
                    continue;
                }
                Escaped::Assert(_) => return err(self.pos, "assertion inside class"),
            };
            if self.peek() == Some('-') && self.peek_at(1).is_some_and(|c| c != ']') {
                self.pos += 1;
                let hi = match self.class_atom()? {
                    Escaped::Char(c) => c,
                    _ => return err(self.pos, "bad range end"),
                };
                if hi < lo {
                    return err(self.pos, "range out of order");
                }
                items.push(ClassItem::Range(lo, hi));
            } else {
                items.push(ClassItem::Range(lo, lo));
            }
        }
        Ok(Class { negated, items })
    }

    fn class_atom(&mut self) -> Result<Escaped, PatternError> {
        match self.peek() {
            Some('\\') => self.parse_escape(true),
            Some('@') if self.peek_at(1) == Some('{') => Ok(Escaped::Char(self.parse_placeholder()?)),
            Some(c) => {
                self.pos += 1;
                Ok(Escaped::Char(c))
            }
            None => err(self.pos, "unexpected end"),
        }
    }

    fn parse_escape(&mut self, in_class: bool) -> Result<Escaped, PatternError> {
        let at = self.pos;
        self.pos += 1;
        let Some(c) = self.peek() else {
            return err(at, "trailing backslash");
        };
        self.pos += 1;
        let e = match c {
            'd' => Escaped::Item(ClassItem::Digit(false)),
            'D' => Escaped::Item(ClassItem::Digit(true)),
            's' => Escaped::Item(ClassItem::Space(false)),
            'S' => Escaped::Item(ClassItem::Space(true)),
            'w' => Escaped::Item(ClassItem::Word(false)),
            'W' => Escaped::Item(ClassItem::Word(true)),
            'p' | 'P' => {
                let neg = c == 'P';
                let item = if self.eat_str("{Ll}") {
                    ClassItem::Lower(neg)
                } else if self.eat_str("{Lu}") {
                    ClassItem::Upper(neg)
                } else {
                    return err(at, "only \\p{Ll} and \\p{Lu} are supported");
                };
                Escaped::Item(item)
            }
            'b' if !in_class => Escaped::Assert(Assertion::WordBoundary),
            'B' if !in_class => Escaped::Assert(Assertion::NotWordBoundary),
            'A' if !in_class => Escaped::Assert(Assertion::TextStart),
            'z' | 'Z' if !in_class => Escaped::Assert(Assertion::TextEnd),
            'n' => Escaped::Char('\n'),
            'r' => Escaped::Char('\r'),
            't' => Escaped::Char('\t'),
            'f' => Escaped::Char('\u{0C}'),
            'v' => Escaped::Char('\u{0B}'),
            '0' => Escaped::Char('\0'),
            'x' => Escaped::Char(self.hex(at, 2)?),
            'u' => {
                if self.eat('{') {
                    let start = self.pos;
                    while self.peek().is_some_and(|c| c.is_ascii_hexdigit()) {
                        self.pos += 1;
                    }
                    let digits: String = self.src[start..self.pos].iter().collect();
                    if !self.eat('}') || digits.is_empty() {
                        return err(at, "bad \\u{...} escape");
                    }
                    Escaped::Char(code_point(at, &digits)?)
                } else {
                    Escaped::Char(self.hex(at, 4)?)
                }
            }
            c if c.is_alphanumeric() => return err(at, alloc::format!("unknown escape '\\{c}'")),
            c => Escaped::Char(c),
        };
        Ok(e)
    }

    fn hex(&mut self, at: usize, n: usize) -> Result<char, PatternError> {
        if self.pos + n > self.src.len() {
            return err(at, "short hex escape");
        }
        let digits: String = self.src[self.pos..self.pos + n].iter().collect();
        self.pos += n;
        code_point(at, &digits)
    }
}

fn code_point(at: usize, digits: &str) -> Result<char, PatternError> {
    u32::from_str_radix(digits, 16)
        .ok()
        .and_then(char::from_u32)
        .map_or_else(|| err(at, "invalid code point"), Ok)
}

enum Escaped {
    Char(char),
    Item(ClassItem),
    Assert(Assertion),
}

// ---------------------------------------------------------------- program

#[derive(Debug, Clone, Copy)]
enum Inst {
    Char(char),
    CharFold(char),
    Any,
    Class(u32),
    Assert(Assertion),
    Look(u32),
    Split { x: u32, y: u32, slot: u32 },
    Jmp(u32),
    Save(u32),
    Match,
}

#[derive(Debug, Clone, Default)]
struct Program {
    insts: Vec<Inst>,
    splits: u32,
}

#[derive(Debug, Clone)]
struct LookProg {
    prog: Program,
    behind: Option<usize>,
    negate: bool,
}

struct Compiler {
    classes: Vec<Class>,
    looks: Vec<LookProg>,
    ci: bool,
}

impl Compiler {
    fn program(&mut self, node: &Node, capture: bool) -> Program {
        let mut p = Program::default();
        self.emit(&mut p, node, capture);
        p.insts.push(Inst::Match);
        p
    }

    fn split(p: &mut Program, x: usize, y: usize) -> Inst {
        p.splits += 1;
        Inst::Split {
            x: x as u32,
            y: y as u32,
            slot: p.splits - 1,
        }
    }

    fn emit(&mut self, p: &mut Program, node: &Node, capture: bool) {
        match node {
            Node::Empty => {}
            Node::Literal(c) => {
                let inst = if self.ci && (fold(*c) != *c || upper(*c) != *c) {
                    Inst::CharFold(fold(*c))
                } else {
                    Inst::Char(*c)
                };
                p.insts.push(inst);
            }
            Node::Any => p.insts.push(Inst::Any),
            Node::Class(c) => {
                self.classes.push(c.clone());
                p.insts.push(Inst::Class(self.classes.len() as u32 - 1));
            }
            Node::Assert(a) => p.insts.push(Inst::Assert(*a)),
            Node::Group(n, idx) => match idx {
                Some(i) if capture => {
                    p.insts.push(Inst::Save(*i as u32 * 2));
                    self.emit(p, n, capture);
                    p.insts.push(Inst::Save(*i as u32 * 2 + 1));
                }
                _ => self.emit(p, n, capture),
            },
            Node::Concat(ns) => {
                for n in ns {
                    self.emit(p, n, capture);
                }
            }
            Node::Alt(ns) => {
                let mut jumps = Vec::new();
                for (i, n) in ns.iter().enumerate() {
                    if i + 1 < ns.len() {
                        let at = p.insts.len();
                        p.insts.push(Inst::Match);
                        self.emit(p, n, capture);
                        jumps.push(p.insts.len());
                        p.insts.push(Inst::Jmp(0));
                        p.insts[at] = Self::split(p, at + 1, p.insts.len());
                    } else {
                        self.emit(p, n, capture);
                    }
                }
                let end = p.insts.len() as u32;
                for j in jumps {
                    p.insts[j] = Inst::Jmp(end);
                }
            }
            Node::Repeat { node, min, max, greedy } => {
                for _ in 0..*min {
                    self.emit(p, node, capture);
                }
                match max {
                    None => {
                        let at = p.insts.len();
                        p.insts.push(Inst::Match);
                        self.emit(p, node, capture);
                        p.insts.push(Inst::Jmp(at as u32));
                        let out = p.insts.len();
                        p.insts[at] = if *greedy {
                            Self::split(p, at + 1, out)
                        } else {
                            Self::split(p, out, at + 1)
                        };
                    }
                    Some(max) => {
                        let mut holes = Vec::new();
                        for _ in *min..*max {
                            holes.push(p.insts.len());
                            p.insts.push(Inst::Match);
                            self.emit(p, node, capture);
                        }
                        let out = p.insts.len();
                        for at in holes {
                            p.insts[at] = if *greedy {
                                Self::split(p, at + 1, out)
                            } else {
                                Self::split(p, out, at + 1)
                            };
                        }
                    }
                }
            }
            Node::Look { node, behind, negate } => {
                let prog = self.program(node, false);
                let behind = if *behind { node.width() } else { None };
                self.looks.push(LookProg {
                    prog,
                    behind,
                    negate: *negate,
                });
                p.insts.push(Inst::Look(self.looks.len() as u32 - 1));
            }
        }
    }
}

/// Cheap first-char filter for the scan loop.
#[derive(Debug, Clone)]
struct FirstSet {
    ascii: u128,
    classes: Vec<Class>,
}

impl FirstSet {
    fn new(classes: Vec<Class>, ci: bool) -> FirstSet {
        let mut ascii = 0u128;
        for b in 0u8..128 {
            let c = b as char;
            if classes.iter().any(|k| k.matches(c, ci)) {
                ascii |= 1 << b;
            }
        }
        FirstSet { ascii, classes }
    }

    fn contains(&self, c: char, ci: bool) -> bool {
        if c.is_ascii() {
            self.ascii & (1 << c as u32) != 0
        } else {
            self.classes.iter().any(|k| k.matches(c, ci))
        }
    }
}

// ---------------------------------------------------------------- matching

const NONE: usize = usize::MAX;

enum Frame {
    Try(u32, usize),
    Restore(u32, usize),
}

#[derive(Default)]
struct Level {
    stack: Vec<Frame>,
    memo: HashSet<u64>,
    log: Vec<u64>,
}

/// Scratch space reused across the attempts of one scan.
#[derive(Default)]
pub(crate) struct Cache {
    levels: Vec<Level>,
}

/// Capture positions of one match, as char offsets into the searched text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Captures {
    slots: Vec<usize>,
}

impl Captures {
    pub fn get(&self, group: usize) -> Option<Range<usize>> {
        let (s, e) = (*self.slots.get(group * 2)?, *self.slots.get(group * 2 + 1)?);
        (s != NONE && e != NONE).then_some(s..e)
    }

    pub fn start(&self) -> usize {
        self.slots[0]
    }

    pub fn end(&self) -> usize {
        self.slots[1]
    }

    pub fn range(&self) -> Range<usize> {
        self.start()..self.end()
    }
}

/// A compiled pattern.
#[derive(Clone)]
pub struct Pattern {
    source: String,
    prog: Program,
    classes: Vec<Class>,
    looks: Vec<LookProg>,
    ci: bool,
    groups: usize,
    first: Option<FirstSet>,
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Pattern").field(&self.source).finish()
    }
}

impl Pattern {
    /// Compiles `source`, resolving `@{name}` through the placeholder table.
    pub fn new(source: &str) -> Result<Pattern, PatternError> {
        Self::with_resolver(source, &placeholder::lookup)
    }

    pub fn with_resolver(source: &str, resolve: &dyn Fn(&str) -> Option<char>) -> Result<Pattern, PatternError> {
        let mut parser = Parser {
            src: source.chars().collect(),
            pos: 0,
            groups: 0,
            resolve,
        };
        let ci = parser.eat_str("(?i)");
        let ast = parser.parse_alt()?;
        if parser.pos < parser.src.len() {
            return err(parser.pos, "unbalanced ')'");
        }
        let mut compiler = Compiler {
            classes: Vec::new(),
            looks: Vec::new(),
            ci,
        };
        let prog = compiler.program(&ast, true);
        let first = if ast.nullable() {
            None
        } else {
            let mut classes = Vec::new();
            ast.first(&mut classes).map(|_| FirstSet::new(classes, ci))
        };
        Ok(Pattern {
            source: source.to_string(),
            prog,
            classes: compiler.classes,
            looks: compiler.looks,
            ci,
            groups: parser.groups,
            first,
        })
    }

    pub fn as_str(&self) -> &str {
        &self.source
    }

    /// Number of capture groups, not counting the implicit group 0.
    pub fn group_count(&self) -> usize {
        self.groups
    }

    fn empty_slots(&self) -> Vec<usize> {
        vec![NONE; (self.groups + 1) * 2]
    }

    /// Leftmost match starting at or after `start`.
    pub fn find_at(&self, text: &[char], start: usize) -> Option<Captures> {
        let mut cache = Cache::default();
        let mut slots = self.empty_slots();
        self.search(text, start, &mut cache, &mut slots)
            .then_some(Captures { slots })
    }

    pub fn find(&self, text: &[char]) -> Option<Captures> {
        self.find_at(text, 0)
    }

    pub fn is_match(&self, text: &[char]) -> bool {
        self.find(text).is_some()
    }

    /// Anchored match at exactly `pos`; returns the end offset.
    pub fn match_at(&self, text: &[char], pos: usize) -> Option<usize> {
        if pos > text.len() {
            return None;
        }
        let mut cache = Cache::default();
        let mut slots = self.empty_slots();
        self.run(&self.prog, text, pos, None, 0, &mut slots, &mut cache, false)
    }

    pub fn find_iter<'p, 't>(&'p self, text: &'t [char]) -> Matches<'p, 't> {
        Matches {
            pattern: self,
            text,
            next: Some(0),
            cache: Cache::default(),
        }
    }

    /// Replaces every non-overlapping match, letting `f` write the
    /// replacement. Returns `None` when nothing matched.
    pub fn replace_all_with<F>(&self, text: &[char], mut f: F) -> Option<Vec<char>>
    where
        F: FnMut(&Captures, &[char], &mut Vec<char>),
    {
        let mut out: Option<Vec<char>> = None;
        let mut last = 0;
        for caps in self.find_iter(text) {
            let buf = out.get_or_insert_with(|| Vec::with_capacity(text.len()));
            buf.extend_from_slice(&text[last..caps.start()]);
            f(&caps, text, buf);
            last = caps.end();
        }
        let mut buf = out?;
        buf.extend_from_slice(&text[last..]);
        Some(buf)
    }

    fn search(&self, text: &[char], from: usize, cache: &mut Cache, slots: &mut [usize]) -> bool {
        for s in from..=text.len() {
            if let Some(first) = &self.first {
                if s == text.len() || !first.contains(text[s], self.ci) {
                    continue;
                }
            }
            slots.fill(NONE);
            if let Some(e) = self.run(&self.prog, text, s, None, 0, slots, cache, true) {
                slots[0] = s;
                slots[1] = e;
                return true;
            }
        }
        false
    }

    /// Depth-first run of `prog` anchored at `start`. At level 0 with
    /// `keep_failures`, failed states stay memoized for later attempts of
    /// the same scan; everything visited by a successful attempt is
    /// forgotten since the match may have cut its exploration short.
    #[allow(clippy::too_many_arguments)]
    fn run(
        &self,
        prog: &Program,
        text: &[char],
        start: usize,
        target: Option<usize>,
        level: usize,
        slots: &mut [usize],
        cache: &mut Cache,
        keep_failures: bool,
    ) -> Option<usize> {
        if cache.levels.len() <= level {
            cache.levels.resize_with(level + 1, Level::default);
        }
        let mut lv = core::mem::take(&mut cache.levels[level]);
        lv.stack.clear();
        lv.log.clear();
        lv.stack.push(Frame::Try(0, start));
        let n = text.len();
        let result = 'outer: loop {
            let Some(frame) = lv.stack.pop() else {
                break None;
            };
            let (mut pc, mut pos) = match frame {
                Frame::Restore(s, v) => {
                    slots[s as usize] = v;
                    continue;
                }
                Frame::Try(pc, pos) => (pc as usize, pos),
            };
            loop {
                match prog.insts[pc] {
                    Inst::Match => {
                        if target.is_none_or(|t| t == pos) {
                            break 'outer Some(pos);
                        }
                        break;
                    }
                    Inst::Char(c) => {
                        if pos < n && text[pos] == c {
                            pc += 1;
                            pos += 1;
                        } else {
                            break;
                        }
                    }
                    Inst::CharFold(c) => {
                        if pos < n && fold(text[pos]) == c {
                            pc += 1;
                            pos += 1;
                        } else {
                            break;
                        }
                    }
                    Inst::Any => {
                        if pos < n && !is_line_break(text[pos]) {
                            pc += 1;
                            pos += 1;
                        } else {
                            break;
                        }
                    }
                    Inst::Class(i) => {
                        if pos < n && self.classes[i as usize].matches(text[pos], self.ci) {
                            pc += 1;
                            pos += 1;
                        } else {
                            break;
                        }
                    }
                    Inst::Assert(a) => {
                        if a.holds(text, pos) {
                            pc += 1;
                        } else {
                            break;
                        }
                    }
                    Inst::Look(i) => {
                        if self.look(i as usize, text, pos, level + 1, cache) {
                            pc += 1;
                        } else {
                            break;
                        }
                    }
                    Inst::Split { x, y, slot } => {
                        let key = ((slot as u64) << 32) | pos as u64;
                        if !lv.memo.insert(key) {
                            break;
                        }
                        lv.log.push(key);
                        lv.stack.push(Frame::Try(y, pos));
                        pc = x as usize;
                    }
                    Inst::Jmp(x) => pc = x as usize,
                    Inst::Save(s) => {
                        lv.stack.push(Frame::Restore(s, slots[s as usize]));
                        slots[s as usize] = pos;
                        pc += 1;
                    }
                }
            }
        };
        if result.is_some() || !keep_failures {
            for key in lv.log.drain(..) {
                lv.memo.remove(&key);
            }
        }
        cache.levels[level] = lv;
        result
    }

    fn look(&self, i: usize, text: &[char], pos: usize, level: usize, cache: &mut Cache) -> bool {
        let look = &self.looks[i];
        let hit = match look.behind {
            Some(w) => {
                pos >= w
                    && self
                        .run(&look.prog, text, pos - w, Some(pos), level, &mut [], cache, false)
                        .is_some()
            }
            None => self
                .run(&look.prog, text, pos, None, level, &mut [], cache, false)
                .is_some(),
        };
        hit != look.negate
    }
}

/// Iterator over non-overlapping matches.
pub struct Matches<'p, 't> {
    pattern: &'p Pattern,
    text: &'t [char],
    next: Option<usize>,
    cache: Cache,
}

impl Iterator for Matches<'_, '_> {
    type Item = Captures;

    fn next(&mut self) -> Option<Captures> {
        let from = self.next?;
        let mut slots = self.pattern.empty_slots();
        if !self.pattern.search(self.text, from, &mut self.cache, &mut slots) {
            self.next = None;
            return None;
        }
        let caps = Captures { slots };
        let (s, e) = (caps.start(), caps.end());
        self.next = if e > s {
            Some(e)
        } else if e < self.text.len() {
            Some(e + 1)
        } else {
            None
        };
        Some(caps)
    }
}

/// Escapes a literal string for use inside a pattern.
pub fn escape(literal: &str) -> String {
    let mut out = String::with_capacity(literal.len());
    for c in literal.chars() {
        if !c.is_alphanumeric() && !c.is_whitespace() && c != '_' && (c.is_ascii() || c == '@') {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

// ---------------------------------------------------------------- templates

#[derive(Debug, Clone, PartialEq, Eq)]
enum Part {
    Text(Vec<char>),
    Group(usize),
}

/// Replacement template: literal text, `$1`..`$9` / `${n}`, `$$`, `@{name}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    parts: Vec<Part>,
}

impl Template {
    pub fn parse(source: &str) -> Result<Template, PatternError> {
        let chars: Vec<char> = source.chars().collect();
        let mut parts = Vec::new();
        let mut lit = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match c {
                '$' if chars.get(i + 1) == Some(&'$') => {
                    lit.push('$');
                    i += 2;
                }
                '$' => {
                    let (group, next) = match chars.get(i + 1) {
                        Some(d) if d.is_ascii_digit() => (d.to_digit(10).unwrap() as usize, i + 2),
                        Some('{') => {
                            let close = chars[i..].iter().position(|&c| c == '}').map(|p| p + i);
                            let Some(close) = close else {
                                return err(i, "unterminated ${...}");
                            };
                            let digits: String = chars[i + 2..close].iter().collect();
                            match digits.parse() {
                                Ok(g) => (g, close + 1),
                                Err(_) => return err(i, "bad group reference"),
                            }
                        }
                        _ => return err(i, "'$' must start a group reference or be doubled"),
                    };
                    if !lit.is_empty() {
                        parts.push(Part::Text(core::mem::take(&mut lit)));
                    }
                    parts.push(Part::Group(group));
                    i = next;
                }
                '@' if chars.get(i + 1) == Some(&'{') => {
                    let close = chars[i..].iter().position(|&c| c == '}').map(|p| p + i);
                    let Some(close) = close else {
                        return err(i, "unterminated placeholder");
                    };
                    let name: String = chars[i + 2..close].iter().collect();
                    match placeholder::lookup(&name) {
                        Some(p) => lit.push(p),
                        None => return err(i, alloc::format!("unknown placeholder '{name}'")),
                    }
                    i = close + 1;
                }
                _ => {
                    lit.push(c);
                    i += 1;
                }
            }
        }
        if !lit.is_empty() {
            parts.push(Part::Text(lit));
        }
        Ok(Template { parts })
    }

    pub fn max_group(&self) -> usize {
        self.parts
            .iter()
            .filter_map(|p| match p {
                Part::Group(g) => Some(*g),
                Part::Text(_) => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn expand(&self, caps: &Captures, text: &[char], out: &mut Vec<char>) {
        for part in &self.parts {
            match part {
                Part::Text(t) => out.extend_from_slice(t),
                Part::Group(g) => {
                    if let Some(r) = caps.get(*g) {
                        out.extend_from_slice(&text[r]);
                    }
                }
            }
        }
    }
}
