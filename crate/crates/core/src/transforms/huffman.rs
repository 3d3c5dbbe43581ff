//! Canonical Huffman coding of a whole byte stream.
//!
//! Payload layout: 256 code-length bytes indexed by symbol, the decoded
//! symbol count as a little-endian `u64`, then the bitstream packed MSB-first
//! and zero-padded to a byte boundary.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{corrupt, Error, Result};

/// Longest code length accepted in a header.
///
/// Weights are tracked as `u128`, so a tree built from real counts stays far
/// below this depth.
pub const MAX_CODE_LEN: usize = 128;

pub const HEADER_LEN: usize = 256 + 8;

/// A canonical code word: the low `len` bits of `bits`, MSB first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Code {
    pub bits: u128,
    pub len: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HuffmanCodeTable {
    lengths: [u8; 256],
}

impl HuffmanCodeTable {
    /// Optimal code lengths for `freqs`.
    ///
    /// The two lightest subtrees are merged first; equal weights are broken by
    /// the smallest symbol each subtree contains. A lone symbol gets length 1.
    pub fn build(freqs: &[u64; 256]) -> Result<Self> {
        let present: Vec<usize> = (0..256).filter(|&s| freqs[s] > 0).collect();
        let mut lengths = [0u8; 256];
        match present.len() {
            0 => {
                return Err(Error::InvalidInput(
                    "frequency table has no symbols".into(),
                ))
            }
            1 => {
                lengths[present[0]] = 1;
                return Ok(HuffmanCodeTable { lengths });
            }
            _ => {}
        }

        // node ids 0..256 are leaves (by symbol), internal nodes follow
        let mut parent: Vec<usize> = vec![usize::MAX; 256];
        let mut heap = BinaryHeap::new();
        for &s in &present {
            heap.push(Reverse((u128::from(freqs[s]), s, s)));
        }
        while heap.len() > 1 {
            let Reverse((w1, min1, id1)) = heap.pop().unwrap();
            let Reverse((w2, min2, id2)) = heap.pop().unwrap();
            let id = parent.len();
            parent.push(usize::MAX);
            parent[id1] = id;
            parent[id2] = id;
            heap.push(Reverse((w1 + w2, min1.min(min2), id)));
        }

        for &s in &present {
            let mut depth = 0;
            let mut node = s;
            while parent[node] != usize::MAX {
                node = parent[node];
                depth += 1;
            }
            debug_assert!(depth <= MAX_CODE_LEN);
            lengths[s] = depth as u8;
        }
        Ok(HuffmanCodeTable { lengths })
    }

    /// Table from stored lengths; rejects over-subscribed length sets.
    pub fn from_lengths(lengths: [u8; 256]) -> Result<Self> {
        let counts = length_counts(&lengths)?;
        let mut left: i64 = 1;
        for &count in &counts[1..] {
            left = left * 2 - count as i64;
            if left < 0 {
                return Err(corrupt("code lengths violate the Kraft inequality"));
            }
            // more slack than symbols can ever use
            left = left.min(1 << 20);
        }
        Ok(HuffmanCodeTable { lengths })
    }

    pub fn lengths(&self) -> &[u8; 256] {
        &self.lengths
    }

    pub fn len_of(&self, symbol: u8) -> u8 {
        self.lengths[symbol as usize]
    }

    pub fn symbol_count(&self) -> usize {
        self.lengths.iter().filter(|&&l| l > 0).count()
    }

    /// Canonical codes, ordered by (length, symbol).
    pub fn codes(&self) -> [Option<Code>; 256] {
        let mut codes = [None; 256];
        let mut next: u128 = 0;
        let mut prev_len = 0u8;
        for (len, symbol) in self.canonical_order() {
            if prev_len != 0 {
                next = (next + 1) << (len - prev_len);
            }
            codes[symbol as usize] = Some(Code { bits: next, len });
            prev_len = len;
        }
        codes
    }

    fn canonical_order(&self) -> Vec<(u8, u8)> {
        let mut order: Vec<(u8, u8)> = (0..256)
            .filter(|&s| self.lengths[s] > 0)
            .map(|s| (self.lengths[s], s as u8))
            .collect();
        order.sort_unstable();
        order
    }
}

fn length_counts(lengths: &[u8; 256]) -> Result<[u32; MAX_CODE_LEN + 1]> {
    let mut counts = [0u32; MAX_CODE_LEN + 1];
    for &len in lengths {
        let len = len as usize;
        if len > MAX_CODE_LEN {
            return Err(corrupt(format!("code length {len} exceeds {MAX_CODE_LEN}")));
        }
        if len > 0 {
            counts[len] += 1;
        }
    }
    Ok(counts)
}

pub fn byte_frequencies(input: &[u8]) -> [u64; 256] {
    let mut freqs = [0u64; 256];
    for &b in input {
        freqs[b as usize] += 1;
    }
    freqs
}

struct BitWriter {
    out: Vec<u8>,
    acc: u8,
    used: u8,
}

impl BitWriter {
    fn new(out: Vec<u8>) -> Self {
        BitWriter { out, acc: 0, used: 0 }
    }

    fn put(&mut self, code: Code) {
        for shift in (0..code.len).rev() {
            let bit = ((code.bits >> shift) & 1) as u8;
            self.acc |= bit << (7 - self.used);
            self.used += 1;
            if self.used == 8 {
                self.out.push(self.acc);
                self.acc = 0;
                self.used = 0;
            }
        }
    }

    fn finish(mut self) -> Vec<u8> {
        if self.used > 0 {
            self.out.push(self.acc);
        }
        self.out
    }
}

struct BitReader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl BitReader<'_> {
    fn next_bit(&mut self) -> Option<u32> {
        let byte = *self.data.get(self.pos / 8)?;
        let bit = (byte >> (7 - (self.pos % 8))) & 1;
        self.pos += 1;
        Some(u32::from(bit))
    }
}

pub fn huffman_encode(input: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + input.len() / 2);
    if input.is_empty() {
        out.resize(HEADER_LEN, 0);
        return out;
    }
    let table = HuffmanCodeTable::build(&byte_frequencies(input))
        .expect("non-empty input has a symbol");
    out.extend_from_slice(table.lengths());
    out.extend_from_slice(&(input.len() as u64).to_le_bytes());

    let codes = table.codes();
    let mut writer = BitWriter::new(out);
    for &b in input {
        writer.put(codes[b as usize].expect("every input byte has a code"));
    }
    writer.finish()
}

/// Reads the decoded-count field of a payload without decoding it.
pub fn payload_decoded_len(payload: &[u8]) -> Result<u64> {
    if payload.len() < HEADER_LEN {
        return Err(corrupt("entropy payload shorter than its header"));
    }
    Ok(u64::from_le_bytes(payload[256..HEADER_LEN].try_into().unwrap()))
}

pub fn huffman_decode(payload: &[u8]) -> Result<Vec<u8>> {
    let total = payload_decoded_len(payload)?;
    let lengths: [u8; 256] = payload[..256].try_into().unwrap();
    let table = HuffmanCodeTable::from_lengths(lengths)?;
    if total == 0 {
        return Ok(Vec::new());
    }
    if table.symbol_count() == 0 {
        return Err(corrupt("empty code table with a non-zero symbol count"));
    }

    let counts = length_counts(&lengths)?;
    let symbols: Vec<u8> = table.canonical_order().into_iter().map(|(_, s)| s).collect();
    let max_len = counts.iter().rposition(|&c| c > 0).unwrap_or(0);

    let bits = &payload[HEADER_LEN..];
    if (total as u128) > (bits.len() as u128) * 8 {
        return Err(corrupt("bitstream too short for the declared symbol count"));
    }
    let mut reader = BitReader { data: bits, pos: 0 };
    let mut out = Vec::with_capacity(total as usize);
    while (out.len() as u64) < total {
        // offset of the code read so far from the first code of this length
        let mut offset: u64 = 0;
        let mut index: usize = 0;
        let mut symbol = None;
        for &count in &counts[1..=max_len] {
            let bit = reader
                .next_bit()
                .ok_or_else(|| corrupt("bitstream exhausted before all symbols decoded"))?;
            offset += u64::from(bit);
            let count = u64::from(count);
            if offset < count {
                symbol = Some(symbols[index + offset as usize]);
                break;
            }
            index += count as usize;
            offset = (offset - count) << 1;
            if offset > 1 << 20 {
                break;
            }
        }
        out.push(symbol.ok_or_else(|| corrupt("bit pattern matches no code"))?);
    }
    Ok(out)
}
