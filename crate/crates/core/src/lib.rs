//! Rule-based sentence segmentation.
//!
//! Text goes through three stages: punctuation that does not end a sentence
//! is swapped for private-use placeholders, the text is split after every
//! remaining terminal, and the placeholders are swapped back. Languages are
//! plain data (see [`languages`]), so adding one needs no code.
//!
//! ```
//! use segtext_core::Segmenter;
//!
//! let seg = Segmenter::for_language("en").unwrap();
//! let out = seg.segment("Mr. Smith arrived at 5 p.m. on Monday. He left.").unwrap();
//! assert_eq!(out, ["Mr. Smith arrived at 5 p.m. on Monday.", "He left."]);
//! ```

#![no_std]

extern crate alloc;

pub mod cleaner;
pub mod config;
pub mod error;
pub mod languages;
pub mod pattern;
pub mod placeholder;
pub mod processor;
pub mod rules;
pub mod special;

pub use cleaner::{clean, CleanReport};
pub use config::{make_config, make_config_in, DocType, LanguageCode, SegmenterConfig};
pub use error::{ErrorKind, Result, SegmenterError};
pub use languages::{LanguageProfile, LanguageRegistry, ProfileSource, TerminalSpacing};
pub use processor::{map_spans, segment, segment_spans, split_on_boundaries, Segmenter, TextSpan};
