//! The reversible block stages and the entropy coder.

pub mod bwt;
pub mod huffman;
pub mod mtf;
pub mod rle;

pub use bwt::{bwt_forward, bwt_inverse, BwtBlock};
pub use huffman::{huffman_decode, huffman_encode, Code, HuffmanCodeTable};
pub use mtf::{mtf_decode, mtf_encode, MtfState};
pub use rle::{rle_decode, rle_encode};
