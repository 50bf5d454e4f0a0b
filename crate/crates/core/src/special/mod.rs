//! The context-sensitive rule groups: list items, abbreviations,
//! exclamation words and punctuation between pairs.

pub mod abbreviations;
pub mod exclamations;
pub mod lists;
pub mod pairs;

use alloc::string::String;
use alloc::vec::Vec;

pub use abbreviations::{replace_abbreviations, AbbreviationClass, AbbreviationReplacer, AbbreviationSet, Entries};
pub use exclamations::{replace_exclamation_words, ExclamationWordSet};
pub use lists::{replace_list_items_chars, ListOptions};
pub use pairs::{mask_between_punctuation, PairMasker, PairSpec, PairStyle};

/// Masks list markers with the default list styles.
pub fn replace_list_items(text: &str) -> String {
    let mut chars: Vec<char> = text.chars().collect();
    replace_list_items_chars(&mut chars, ListOptions::default());
    chars.into_iter().collect()
}
