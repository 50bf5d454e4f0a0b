use super::profile::ProfileSource;

/// Data files of one shipped language.
#[derive(Debug, Clone, Copy)]
pub struct BuiltinLanguage {
    pub code: &'static str,
    pub profile: &'static str,
    pub abbreviations: &'static str,
    pub rules: &'static str,
    pub exclamations: &'static str,
}

impl BuiltinLanguage {
    pub fn source(&self) -> ProfileSource<'static> {
        ProfileSource {
            profile: self.profile,
            abbreviations: self.abbreviations,
            rules: self.rules,
            exclamations: self.exclamations,
        }
    }
}

macro_rules! builtin {
    ($code:literal) => {
        BuiltinLanguage {
            code: $code,
            profile: include_str!(concat!("../../languages/", $code, "/profile.txt")),
            abbreviations: include_str!(concat!("../../languages/", $code, "/abbreviations.txt")),
            rules: include_str!(concat!("../../languages/", $code, "/rules.tsv")),
            exclamations: include_str!(concat!("../../languages/", $code, "/exclamations.txt")),
        }
    };
}

static BUILTIN: &[BuiltinLanguage] = &[
    builtin!("en"),
    builtin!("hi"),
    builtin!("mr"),
    builtin!("ar"),
    builtin!("zh"),
];

pub fn builtin_sources() -> &'static [BuiltinLanguage] {
    BUILTIN
}
