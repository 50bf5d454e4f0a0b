//! Rules, rule groups and the tab-separated rule table format.
//!
//! A table is a sequence of `[group]` headers and rule lines
//! `id<TAB>rank<TAB>pattern<TAB>replacement`. Lines starting with `#` are
//! comments. In a language's delta table a rule whose id matches a base rule
//! replaces it, and a pattern of `-` deletes it.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeBounds;

use crate::pattern::{Pattern, PatternError, Template};

/// Ranks at or above this run in the late half of groups that are split in
/// two by the pipeline (Common around pair masking, Abbreviation around the
/// list lookup).
pub const LATE_RANK: i32 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupName {
    Common,
    Standard,
    ListItem,
    Abbreviation,
    ExclamationWords,
    BetweenPunctuation,
}

impl GroupName {
    pub const ALL: [GroupName; 6] = [
        GroupName::Common,
        GroupName::Standard,
        GroupName::ListItem,
        GroupName::Abbreviation,
        GroupName::ExclamationWords,
        GroupName::BetweenPunctuation,
    ];

    pub fn section(self) -> &'static str {
        match self {
            GroupName::Common => "common",
            GroupName::Standard => "standard",
            GroupName::ListItem => "list_item",
            GroupName::Abbreviation => "abbreviation",
            GroupName::ExclamationWords => "exclamation_words",
            GroupName::BetweenPunctuation => "between_punctuation",
        }
    }

    pub fn from_section(s: &str) -> Option<GroupName> {
        GroupName::ALL.into_iter().find(|g| g.section() == s)
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.section())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleError {
    #[error("rule '{id}': {source}")]
    Pattern { id: String, source: PatternError },
    #[error("rule '{id}': replacement uses group {group} but the pattern has {groups}")]
    MissingGroup { id: String, group: usize, groups: usize },
    #[error("group {group}: rank {rank} used by both '{first}' and '{second}'")]
    DuplicateRank {
        group: GroupName,
        rank: i32,
        first: String,
        second: String,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// A compiled match/replace rule.
#[derive(Debug, Clone)]
pub struct Rule {
    id: String,
    rank: i32,
    pattern: Pattern,
    replacement: Template,
}

impl Rule {
    pub fn new(id: &str, rank: i32, pattern: &str, replacement: &str) -> Result<Rule, RuleError> {
        let wrap = |source| RuleError::Pattern {
            id: id.to_string(),
            source,
        };
        let pattern = Pattern::new(pattern).map_err(wrap)?;
        let replacement = Template::parse(replacement).map_err(wrap)?;
        if replacement.max_group() > pattern.group_count() {
            return Err(RuleError::MissingGroup {
                id: id.to_string(),
                group: replacement.max_group(),
                groups: pattern.group_count(),
            });
        }
        Ok(Rule {
            id: id.to_string(),
            rank,
            pattern,
            replacement,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn rank(&self) -> i32 {
        self.rank
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    /// Applies the rule to every match; `None` when nothing matched.
    pub fn apply_chars(&self, text: &[char]) -> Option<Vec<char>> {
        self.pattern
            .replace_all_with(text, |caps, src, out| self.replacement.expand(caps, src, out))
    }

    pub fn apply(&self, text: &str) -> String {
        let chars: Vec<char> = text.chars().collect();
        match self.apply_chars(&chars) {
            Some(out) => out.into_iter().collect(),
            None => text.to_string(),
        }
    }
}

/// Rules of one group, kept sorted by rank.
#[derive(Debug, Clone)]
pub struct RuleGroup {
    name: GroupName,
    rules: Vec<Rule>,
}

impl RuleGroup {
    pub fn new(name: GroupName, mut rules: Vec<Rule>) -> Result<RuleGroup, RuleError> {
        rules.sort_by_key(|r| r.rank);
        for w in rules.windows(2) {
            if w[0].rank == w[1].rank {
                return Err(RuleError::DuplicateRank {
                    group: name,
                    rank: w[0].rank,
                    first: w[0].id.clone(),
                    second: w[1].id.clone(),
                });
            }
        }
        Ok(RuleGroup { name, rules })
    }

    pub fn empty(name: GroupName) -> RuleGroup {
        RuleGroup {
            name,
            rules: Vec::new(),
        }
    }

    pub fn name(&self) -> GroupName {
        self.name
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn get(&self, id: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.id == id)
    }

    pub fn apply_chars(&self, text: &mut Vec<char>) {
        self.apply_ranks(text, ..);
    }

    /// Applies the rules whose rank falls in `ranks`, in rank order.
    pub fn apply_ranks(&self, text: &mut Vec<char>, ranks: impl RangeBounds<i32>) {
        for rule in self.rules.iter().filter(|r| ranks.contains(&r.rank)) {
            if let Some(out) = rule.apply_chars(text) {
                *text = out;
            }
        }
    }
}

/// Applies every rule of `group` once, in rank order.
pub fn apply_group(text: &str, group: &RuleGroup) -> String {
    let mut chars: Vec<char> = text.chars().collect();
    group.apply_chars(&mut chars);
    chars.into_iter().collect()
}

/// One uncompiled line of a rule table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub line: usize,
    pub group: GroupName,
    pub id: String,
    pub rank: i32,
    pub pattern: String,
    pub replacement: String,
}

impl TableEntry {
    fn is_removal(&self) -> bool {
        self.pattern == "-"
    }
}

pub fn parse_rule_table(src: &str) -> Result<Vec<TableEntry>, RuleError> {
    let mut group = None;
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let syntax = |message: String| RuleError::Syntax { line, message };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(name) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            group = Some(
                GroupName::from_section(name.trim()).ok_or_else(|| syntax(alloc::format!("unknown group '{name}'")))?,
            );
            continue;
        }
        let group = group.ok_or_else(|| syntax("rule before any [group] header".to_string()))?;
        let fields: Vec<&str> = raw.trim_end_matches(['\r', '\n']).split('\t').collect();
        if !(3..=4).contains(&fields.len()) {
            return Err(syntax(alloc::format!(
                "expected 3 or 4 tab-separated fields, found {}",
                fields.len()
            )));
        }
        let rank = fields[1]
            .trim()
            .parse()
            .map_err(|_| syntax(alloc::format!("bad rank '{}'", fields[1])))?;
        out.push(TableEntry {
            line,
            group,
            id: fields[0].trim().to_string(),
            rank,
            pattern: fields[2].to_string(),
            replacement: fields.get(3).copied().unwrap_or("").to_string(),
        });
    }
    Ok(out)
}

/// Overlays `delta` on `base`: same (group, id) replaces, `-` removes.
pub fn merge_tables(base: &[TableEntry], delta: &[TableEntry]) -> Vec<TableEntry> {
    let mut out: Vec<TableEntry> = base.to_vec();
    for d in delta {
        let pos = out.iter().position(|e| e.group == d.group && e.id == d.id);
        match (pos, d.is_removal()) {
            (Some(p), true) => {
                out.remove(p);
            }
            (Some(p), false) => out[p] = d.clone(),
            (None, true) => {}
            (None, false) => out.push(d.clone()),
        }
    }
    out
}

pub fn build_group(name: GroupName, entries: &[TableEntry]) -> Result<RuleGroup, RuleError> {
    let rules = entries
        .iter()
        .filter(|e| e.group == name && !e.is_removal())
        .map(|e| Rule::new(&e.id, e.rank, &e.pattern, &e.replacement))
        .collect::<Result<Vec<_>, _>>()?;
    RuleGroup::new(name, rules)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE: &str = "# comment\n[common]\ndecimal\t10\t(?<=\\d)\\.(?=\\d)\t@{num}\nplain\t20\tx\ty\n\n[standard]\ndots\t5\t\\.\\.\\.\t@{ellipsis}@{ellipsis}@{ellipsis}\n";

    #[test]
    fn parses_and_applies() {
        let entries = parse_rule_table(TABLE).unwrap();
        assert_eq!(entries.len(), 3);
        let common = build_group(GroupName::Common, &entries).unwrap();
        assert_eq!(apply_group("3.14 is pi.", &common), "3\u{E002}14 is pi.");
        assert_eq!(apply_group("No punctuation here", &common), "No punctuation here");
    }

    #[test]
    fn delta_overrides_and_removes() {
        let base = parse_rule_table(TABLE).unwrap();
        let delta = parse_rule_table("[common]\nplain\t20\t-\t\ndecimal\t11\t(?<=\\d)\\.\t@{num}\n").unwrap();
        let merged = merge_tables(&base, &delta);
        let common = build_group(GroupName::Common, &merged).unwrap();
        assert_eq!(common.rules().len(), 1);
        assert_eq!(common.rules()[0].rank(), 11);
    }

    #[test]
    fn table_errors() {
        assert!(matches!(
            parse_rule_table("x\t1\ta\tb"),
            Err(RuleError::Syntax { line: 1, .. })
        ));
        assert!(matches!(parse_rule_table("[nope]"), Err(RuleError::Syntax { .. })));
        assert!(matches!(
            parse_rule_table("[common]\nx\tone\ta\tb"),
            Err(RuleError::Syntax { line: 2, .. })
        ));
        let dup = parse_rule_table("[common]\na\t1\tx\ty\nb\t1\tz\tw").unwrap();
        assert!(matches!(
            build_group(GroupName::Common, &dup),
            Err(RuleError::DuplicateRank { .. })
        ));
        assert!(matches!(
            Rule::new("g", 1, "a", "$1"),
            Err(RuleError::MissingGroup { .. })
        ));
        assert!(matches!(Rule::new("p", 1, "(", ""), Err(RuleError::Pattern { .. })));
    }
}
