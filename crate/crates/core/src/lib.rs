//! Block-sorting text compression.
//!
//! Four pipelines share one container format:
//!
//! * `BWCA`: BWT, move-to-front, run-length, Huffman
//! * `PROPOSED`: BWT, run-length, move-to-front, run-length, Huffman
//! * `DICT_BWCA` / `DICT_PROPOSED`: the same chains behind a word-dictionary
//!   transform of the whole input
//!
//! The BWT-rooted chain runs per block (100 bytes by default); a single
//! canonical Huffman code covers the concatenated block payloads.

pub mod bench;
pub mod dictionary;
pub mod error;
pub mod pipeline;
pub mod transforms;

pub use bench::{compression_ratio, run_corpus, CompressionRatio, CorpusFile, CorpusRun};
pub use dictionary::{build_dictionary, Dictionary, UnknownWordLog};
pub use error::{Error, Result};
pub use pipeline::{compress, decompress, Container, Method, PipelineSpec};
