//! Language profiles kept as a directory of data files.

use std::path::Path;

use segtext_core::{LanguageProfile, LanguageRegistry, ProfileSource};

use crate::{Error, Result};

fn read_optional(path: &Path) -> Result<String> {
    match std::fs::read_to_string(path) {
        Ok(s) => Ok(s),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(String::new()),
        Err(e) => Err(Error::io(path, e)),
    }
}

/// Builds a profile from `dir/profile.txt` plus the optional
/// `abbreviations.txt`, `rules.tsv` and `exclamations.txt`.
pub fn load_profile_dir(dir: impl AsRef<Path>) -> Result<LanguageProfile> {
    let dir = dir.as_ref();
    let profile_path = dir.join("profile.txt");
    let profile = std::fs::read_to_string(&profile_path).map_err(|e| Error::io(&profile_path, e))?;
    let abbreviations = read_optional(&dir.join("abbreviations.txt"))?;
    let rules = read_optional(&dir.join("rules.tsv"))?;
    let exclamations = read_optional(&dir.join("exclamations.txt"))?;
    let src = ProfileSource {
        profile: &profile,
        abbreviations: &abbreviations,
        rules: &rules,
        exclamations: &exclamations,
    };
    Ok(LanguageProfile::from_sources(&src)?)
}

/// The shipped languages plus one profile per directory; later entries win.
pub fn registry_with_dirs<P: AsRef<Path>>(dirs: &[P]) -> Result<LanguageRegistry> {
    let mut reg = LanguageRegistry::with_builtin()?;
    for d in dirs {
        reg.register(load_profile_dir(d)?);
    }
    Ok(reg)
}
