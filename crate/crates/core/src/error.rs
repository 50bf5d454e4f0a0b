use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    UnknownLanguage,
    IncompatibleOptions,
    ReservedCodepointInInput,
    MalformedFixture,
    /// A language profile's data did not build (bad pattern, bad key, ...).
    InvalidProfile,
    /// An option value outside its closed set, e.g. doc_type "docx".
    InvalidOption,
}

impl ErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::UnknownLanguage => "UnknownLanguage",
            ErrorKind::IncompatibleOptions => "IncompatibleOptions",
            ErrorKind::ReservedCodepointInInput => "ReservedCodepointInInput",
            ErrorKind::MalformedFixture => "MalformedFixture",
            ErrorKind::InvalidProfile => "InvalidProfile",
            ErrorKind::InvalidOption => "InvalidOption",
        }
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind}: {detail}")]
pub struct SegmenterError {
    pub kind: ErrorKind,
    pub detail: String,
}

impl SegmenterError {
    pub fn new(kind: ErrorKind, detail: impl Into<String>) -> SegmenterError {
        SegmenterError {
            kind,
            detail: detail.into(),
        }
    }

    pub fn kind(&self) -> ErrorKind {
        self.kind
    }

    pub fn detail(&self) -> &str {
        &self.detail
    }
}

pub type Result<T, E = SegmenterError> = core::result::Result<T, E>;
