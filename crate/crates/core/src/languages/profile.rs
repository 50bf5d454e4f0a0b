use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::config::LanguageCode;
use crate::error::{ErrorKind, Result, SegmenterError};
use crate::pattern::Pattern;
use crate::rules::{build_group, merge_tables, parse_rule_table, GroupName, RuleGroup};
use crate::special::{
    AbbreviationReplacer, AbbreviationSet, ExclamationWordSet, ListOptions, PairMasker, PairSpec, PairStyle,
};

/// What must follow an unmasked terminal for it to end a sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminalSpacing {
    /// Whitespace or end of text (space-delimited scripts).
    Whitespace,
    /// Nothing (scripts written without spaces between sentences).
    Any,
}

/// Raw text of the four data files that define a language.
#[derive(Debug, Clone, Copy, Default)]
pub struct ProfileSource<'a> {
    /// `key = value` lines.
    pub profile: &'a str,
    pub abbreviations: &'a str,
    /// Delta rule table merged over the shared base table.
    pub rules: &'a str,
    pub exclamations: &'a str,
}

/// Shared base rule table every profile inherits.
pub const BASE_RULES: &str = include_str!("../../languages/base/rules.tsv");

const DEFAULT_PAIR_MASK: &[char] = &['.', '!', '?', '。', '．', '！', '？'];

/// Everything the pipeline needs to segment one language.
#[derive(Debug, Clone)]
pub struct LanguageProfile {
    code: LanguageCode,
    name: String,
    terminals: Vec<char>,
    spacing: TerminalSpacing,
    abbreviation_rules: RuleGroup,
    common: RuleGroup,
    standard: RuleGroup,
    abbreviations: AbbreviationReplacer,
    exclamations: ExclamationWordSet,
    exclamation_pattern: Option<Pattern>,
    pairs: PairMasker,
    quote_styles: Vec<(char, char)>,
    lists: ListOptions,
}

fn invalid(code: &str, detail: impl core::fmt::Display) -> SegmenterError {
    SegmenterError::new(ErrorKind::InvalidProfile, format!("profile '{code}': {detail}"))
}

fn parse_bool(code: &str, key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "yes" | "on" => Ok(true),
        "false" | "no" | "off" => Ok(false),
        _ => Err(invalid(code, format!("{key} must be true or false, got '{v}'"))),
    }
}

fn single_char(code: &str, tok: &str) -> Result<char> {
    let mut it = tok.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(invalid(code, format!("'{tok}' is not a single character"))),
    }
}

/// Splits `OPEN…CLOSE` tokens.
fn parse_pairs(code: &str, v: &str) -> Result<Vec<(String, String)>> {
    v.split_whitespace()
        .map(|tok| match tok.split_once('…') {
            Some((o, c)) if !o.is_empty() && !c.is_empty() => Ok((o.to_string(), c.to_string())),
            _ => Err(invalid(code, format!("pair '{tok}' must look like OPEN…CLOSE"))),
        })
        .collect()
}

impl LanguageProfile {
    /// Builds a profile over the shared base rule table.
    pub fn from_sources(src: &ProfileSource<'_>) -> Result<LanguageProfile> {
        Self::from_sources_with_base(BASE_RULES, src)
    }

    pub fn from_sources_with_base(base_rules: &str, src: &ProfileSource<'_>) -> Result<LanguageProfile> {
        let mut code: Option<LanguageCode> = None;
        let mut name = String::new();
        let mut terminals: Vec<char> = Vec::new();
        let mut spacing = TerminalSpacing::Whitespace;
        let mut plain_pairs = Vec::new();
        let mut apostrophe_pairs = Vec::new();
        let mut leading = Vec::new();
        let mut pair_mask: Option<Vec<char>> = None;
        let mut lists = ListOptions::default();

        let mut label = String::from("?");
        for (i, raw) in src.profile.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(invalid(&label, format!("line {}: expected key = value", i + 1)));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "code" => {
                    let c = LanguageCode::parse(value).map_err(|e| invalid(value, e.detail))?;
                    label = c.as_str().to_string();
                    code = Some(c);
                }
                "name" => name = value.to_string(),
                "terminals" => {
                    terminals = value
                        .split_whitespace()
                        .map(|t| single_char(&label, t))
                        .collect::<Result<_>>()?;
                }
                "spacing" => {
                    spacing = match value {
                        "whitespace" => TerminalSpacing::Whitespace,
                        "none" => TerminalSpacing::Any,
                        _ => {
                            return Err(invalid(
                                &label,
                                format!("spacing must be whitespace or none, got '{value}'"),
                            ))
                        }
                    }
                }
                "pairs" => plain_pairs = parse_pairs(&label, value)?,
                "apostrophe_pairs" => apostrophe_pairs = parse_pairs(&label, value)?,
                "leading_pairs" => {
                    leading = parse_pairs(&label, value)?
                        .into_iter()
                        .map(|(o, c)| Ok((single_char(&label, &o)?, single_char(&label, &c)?)))
                        .collect::<Result<_>>()?;
                }
                "pair_masks" => {
                    pair_mask = Some(
                        value
                            .split_whitespace()
                            .map(|t| single_char(&label, t))
                            .collect::<Result<_>>()?,
                    );
                }
                "numbered_lists" => lists.numbered = parse_bool(&label, key, value)?,
                "alphabetical_lists" => lists.alphabetical = parse_bool(&label, key, value)?,
                "roman_numeral_lists" => lists.roman = parse_bool(&label, key, value)?,
                _ => return Err(invalid(&label, format!("unknown key '{key}'"))),
            }
        }
        let code = code.ok_or_else(|| invalid(&label, "missing 'code'"))?;
        if terminals.is_empty() {
            return Err(invalid(&label, "terminals must not be empty"));
        }
        if name.is_empty() {
            name = code.as_str().to_string();
        }

        let mask = pair_mask.unwrap_or_else(|| {
            let mut m = DEFAULT_PAIR_MASK.to_vec();
            m.extend(terminals.iter().filter(|t| !DEFAULT_PAIR_MASK.contains(t)));
            m
        });
        let mut specs = Vec::new();
        for (o, c) in &apostrophe_pairs {
            specs.push(PairSpec::new(o, c, &mask, PairStyle::Apostrophe).map_err(|e| invalid(&label, e))?);
        }
        for (o, c) in &plain_pairs {
            specs.push(PairSpec::new(o, c, &mask, PairStyle::Plain).map_err(|e| invalid(&label, e))?);
        }

        let base = parse_rule_table(base_rules).map_err(|e| invalid(&label, format!("base rules: {e}")))?;
        let delta = parse_rule_table(src.rules).map_err(|e| invalid(&label, format!("rules.tsv: {e}")))?;
        let table = merge_tables(&base, &delta);
        let group = |g| build_group(g, &table).map_err(|e| invalid(&label, e));
        for entry in &table {
            if !matches!(
                entry.group,
                GroupName::Common | GroupName::Standard | GroupName::Abbreviation
            ) {
                return Err(invalid(&label, format!("group [{}] has no table rules", entry.group)));
            }
        }

        let abbr = AbbreviationSet::parse(src.abbreviations)
            .map_err(|(line, msg)| invalid(&label, format!("abbreviations line {line}: {msg}")))?;
        let exclamations = ExclamationWordSet::parse(src.exclamations).map_err(|e| invalid(&label, e))?;

        Ok(LanguageProfile {
            code,
            name,
            terminals,
            spacing,
            abbreviation_rules: group(GroupName::Abbreviation)?,
            common: group(GroupName::Common)?,
            standard: group(GroupName::Standard)?,
            abbreviations: AbbreviationReplacer::new(abbr).map_err(|e| invalid(&label, e))?,
            exclamation_pattern: exclamations.pattern(),
            exclamations,
            pairs: PairMasker::new(&specs),
            quote_styles: leading,
            lists,
        })
    }

    pub fn code(&self) -> LanguageCode {
        self.code
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn terminals(&self) -> &[char] {
        &self.terminals
    }

    pub fn is_terminal(&self, c: char) -> bool {
        self.terminals.contains(&c)
    }

    pub fn spacing(&self) -> TerminalSpacing {
        self.spacing
    }

    pub fn common(&self) -> &RuleGroup {
        &self.common
    }

    pub fn standard(&self) -> &RuleGroup {
        &self.standard
    }

    pub fn abbreviation_rules(&self) -> &RuleGroup {
        &self.abbreviation_rules
    }

    pub fn abbreviations(&self) -> &AbbreviationReplacer {
        &self.abbreviations
    }

    pub fn exclamations(&self) -> &ExclamationWordSet {
        &self.exclamations
    }

    pub(crate) fn exclamation_pattern(&self) -> Option<&Pattern> {
        self.exclamation_pattern.as_ref()
    }

    pub fn pairs(&self) -> &PairMasker {
        &self.pairs
    }

    /// Single-char quote/bracket pairs that may close a sentence on their
    /// own when it opens with them.
    pub fn quote_styles(&self) -> &[(char, char)] {
        &self.quote_styles
    }

    pub fn lists(&self) -> ListOptions {
        self.lists
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn src(profile: &str) -> ProfileSource<'_> {
        ProfileSource {
            profile,
            ..Default::default()
        }
    }

    #[test]
    fn minimal_profile() {
        let p = LanguageProfile::from_sources(&src("code = XX\nterminals = . !")).unwrap();
        assert_eq!(p.code().as_str(), "xx");
        assert_eq!(p.terminals(), &['.', '!']);
        assert!(p.common().rules().len() > 3);
    }

    #[test]
    fn bad_profiles_are_rejected() {
        for bad in [
            "terminals = .",
            "code = xx",
            "code = xx\nterminals = .\nspacing = maybe",
            "code = xx\nterminals = ..",
            "code = xx\nterminals = .\ncolour = blue",
            "code = xx\nterminals = .\npairs = ((",
        ] {
            let e = LanguageProfile::from_sources(&src(bad)).unwrap_err();
            assert_eq!(e.kind, ErrorKind::InvalidProfile, "{bad}");
        }
        let e = LanguageProfile::from_sources(&ProfileSource {
            profile: "code = xx\nterminals = .",
            rules: "[common]\nbroken\t1\t(\tx",
            ..Default::default()
        })
        .unwrap_err();
        assert!(e.detail.contains("broken"), "{}", e.detail);
    }
}
