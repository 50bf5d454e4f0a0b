//! Language profiles and the registry that maps codes to them.

mod builtin;
mod profile;

use alloc::boxed::Box;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use hashbrown::HashMap;
use once_cell::race::OnceBox;

use crate::config::LanguageCode;
use crate::error::{ErrorKind, Result, SegmenterError};

pub use builtin::{builtin_sources, BuiltinLanguage};
pub use profile::{LanguageProfile, ProfileSource, TerminalSpacing, BASE_RULES};

#[derive(Debug, Clone, Default)]
pub struct LanguageRegistry {
    profiles: HashMap<LanguageCode, Arc<LanguageProfile>>,
}

impl LanguageRegistry {
    pub fn new() -> LanguageRegistry {
        LanguageRegistry::default()
    }

    /// A registry holding every shipped language.
    pub fn with_builtin() -> Result<LanguageRegistry> {
        let mut reg = LanguageRegistry::new();
        for lang in builtin_sources() {
            reg.register(LanguageProfile::from_sources(&lang.source())?);
        }
        Ok(reg)
    }

    /// Adds a profile, replacing (with a warning) any earlier one for the
    /// same code.
    pub fn register(&mut self, profile: LanguageProfile) -> Option<Arc<LanguageProfile>> {
        let code = profile.code();
        let old = self.profiles.insert(code, Arc::new(profile));
        if old.is_some() {
            log::warn!("language profile '{code}' registered twice; keeping the newer one");
        }
        old
    }

    pub fn get(&self, code: LanguageCode) -> Option<&Arc<LanguageProfile>> {
        self.profiles.get(&code)
    }

    pub fn lookup(&self, code: &str) -> Result<Arc<LanguageProfile>> {
        let code = LanguageCode::parse(code)?;
        self.get(code).cloned().ok_or_else(|| {
            SegmenterError::new(
                ErrorKind::UnknownLanguage,
                format!("no profile registered for '{code}'"),
            )
        })
    }

    /// Registered codes in sorted order.
    pub fn codes(&self) -> Vec<LanguageCode> {
        let mut v: Vec<_> = self.profiles.keys().copied().collect();
        v.sort();
        v
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }
}

/// The shared registry of shipped languages, built on first use.
pub fn builtin() -> &'static LanguageRegistry {
    static REG: OnceBox<LanguageRegistry> = OnceBox::new();
    REG.get_or_init(|| Box::new(LanguageRegistry::with_builtin().expect("shipped language data builds")))
}

/// Looks a code up in the shipped registry.
pub fn lookup(code: &str) -> Result<Arc<LanguageProfile>> {
    builtin().lookup(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_examples() {
        assert_eq!(lookup("en").unwrap().code().as_str(), "en");
        let hi = lookup("hi").unwrap();
        assert!(hi.is_terminal('।'));
        assert_eq!(lookup("zz").unwrap_err().kind, ErrorKind::UnknownLanguage);
    }

    #[test]
    fn ships_four_script_families() {
        let reg = builtin();
        assert!(reg.len() >= 4);
        assert!(reg.codes().iter().any(|c| lookup(c.as_str()).unwrap().is_terminal('؟')));
        assert!(reg.codes().iter().any(|c| {
            let p = lookup(c.as_str()).unwrap();
            p.is_terminal('。') && p.spacing() == TerminalSpacing::Any
        }));
    }

    #[test]
    fn register_replaces() {
        let mut reg = LanguageRegistry::with_builtin().unwrap();
        let n = reg.len();
        let en = reg.lookup("en").unwrap();
        let replaced = reg.register((*en).clone());
        assert!(replaced.is_some());
        assert_eq!(reg.len(), n);
        let again = reg.register((*en).clone());
        assert!(again.is_some());
        assert_eq!(reg.len(), n);
    }
}
