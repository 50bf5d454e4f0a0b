use alloc::format;
use core::fmt;
use core::str::FromStr;

use crate::error::{ErrorKind, Result, SegmenterError};
use crate::languages::{self, LanguageRegistry};

/// Two-letter lowercase ISO 639-1 code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LanguageCode([u8; 2]);

impl LanguageCode {
    /// Parses and lowercases a code; anything but two ASCII letters is
    /// rejected as an unknown language.
    pub fn parse(code: &str) -> Result<LanguageCode> {
        let b = code.trim().as_bytes();
        if b.len() == 2 && b.iter().all(u8::is_ascii_alphabetic) {
            Ok(LanguageCode([b[0].to_ascii_lowercase(), b[1].to_ascii_lowercase()]))
        } else {
            Err(SegmenterError::new(
                ErrorKind::UnknownLanguage,
                format!("'{code}' is not a two-letter ISO 639-1 code"),
            ))
        }
    }

    pub fn as_str(&self) -> &str {
        // always two ASCII letters
        core::str::from_utf8(&self.0).unwrap()
    }
}

impl fmt::Display for LanguageCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LanguageCode {
    type Err = SegmenterError;

    fn from_str(s: &str) -> Result<LanguageCode> {
        LanguageCode::parse(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DocType {
    #[default]
    Plain,
    Pdf,
}

impl DocType {
    pub fn as_str(self) -> &'static str {
        match self {
            DocType::Plain => "plain",
            DocType::Pdf => "pdf",
        }
    }
}

impl FromStr for DocType {
    type Err = SegmenterError;

    fn from_str(s: &str) -> Result<DocType> {
        match s.trim().to_ascii_lowercase().as_str() {
            "plain" => Ok(DocType::Plain),
            "pdf" => Ok(DocType::Pdf),
            _ => Err(SegmenterError::new(
                ErrorKind::InvalidOption,
                format!("unknown doc_type '{s}' (expected plain or pdf)"),
            )),
        }
    }
}

impl fmt::Display for DocType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Validated, immutable segmenter options.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SegmenterConfig {
    language: LanguageCode,
    clean: bool,
    char_span: bool,
    doc_type: DocType,
}

impl SegmenterConfig {
    /// Default options for a language known to `registry`.
    pub fn new_in(registry: &LanguageRegistry, language: &str) -> Result<SegmenterConfig> {
        Self::build(registry, language, false, false, DocType::Plain)
    }

    pub fn build(
        registry: &LanguageRegistry,
        language: &str,
        clean: bool,
        char_span: bool,
        doc_type: DocType,
    ) -> Result<SegmenterConfig> {
        let code = LanguageCode::parse(language)?;
        if registry.get(code).is_none() {
            return Err(SegmenterError::new(
                ErrorKind::UnknownLanguage,
                format!("no profile registered for '{code}'"),
            ));
        }
        if clean && char_span {
            return Err(SegmenterError::new(
                ErrorKind::IncompatibleOptions,
                "clean rewrites the text, so it cannot be combined with char_span",
            ));
        }
        Ok(SegmenterConfig {
            language: code,
            clean,
            char_span,
            doc_type,
        })
    }

    /// Default options without a registry check.
    pub(crate) fn for_code(language: LanguageCode) -> SegmenterConfig {
        SegmenterConfig {
            language,
            clean: false,
            char_span: false,
            doc_type: DocType::Plain,
        }
    }

    pub fn language(&self) -> LanguageCode {
        self.language
    }

    pub fn clean(&self) -> bool {
        self.clean
    }

    pub fn char_span(&self) -> bool {
        self.char_span
    }

    pub fn doc_type(&self) -> DocType {
        self.doc_type
    }
}

/// Builds a config against the built-in registry.
pub fn make_config(language: &str, clean: bool, char_span: bool, doc_type: &str) -> Result<SegmenterConfig> {
    make_config_in(languages::builtin(), language, clean, char_span, doc_type)
}

pub fn make_config_in(
    registry: &LanguageRegistry,
    language: &str,
    clean: bool,
    char_span: bool,
    doc_type: &str,
) -> Result<SegmenterConfig> {
    let doc_type = if doc_type.trim().is_empty() {
        DocType::Plain
    } else {
        doc_type.parse()?
    };
    SegmenterConfig::build(registry, language, clean, char_span, doc_type)
}
