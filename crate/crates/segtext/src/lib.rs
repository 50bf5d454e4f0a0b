//! File formats, the golden-rule harness, benchmarks and the CLI around
//! `segtext-core`.

pub mod corpus;
pub mod fixtures;
pub mod harness;
pub mod profile_dir;

use std::path::PathBuf;

pub use segtext_core as core;
pub use segtext_core::{ErrorKind, SegmenterError};

pub use corpus::{load_gold, synthetic_corpus};
pub use fixtures::{embedded_fixture, load_grs, parse_grs, GoldenRule};
pub use harness::{
    bench, bench_with, eval_corpus, eval_corpus_with, naive_segment, run_grs, run_grs_with, BenchReport, GrsFailure,
    GrsReport,
};
pub use profile_dir::{load_profile_dir, registry_with_dirs};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Segmenter(#[from] SegmenterError),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Error {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Kind of a segmenter error; `None` for I/O failures.
    pub fn kind(&self) -> Option<ErrorKind> {
        match self {
            Error::Io { .. } => None,
            Error::Segmenter(e) => Some(e.kind),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
