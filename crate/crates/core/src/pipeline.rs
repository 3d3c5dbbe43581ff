//! Stage composition, block framing and the container format.
//!
//! Container layout, all integers little-endian:
//!
//! ```text
//! "BWCA" | version u8 = 1 | method id u8 | block size u16
//! | dictionary fingerprint u64 (method ids 3 and 4 only)
//! | transformed length u64 | block count u32
//! | block count x (primary index u16, payload length u32)
//! | entropy payload (absent when there are no blocks)
//! ```

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::dictionary::{dict_decode, dict_encode, Dictionary};
use crate::error::{corrupt, format_err, Error, Result};
use crate::transforms::huffman::{self, HEADER_LEN as ENTROPY_HEADER_LEN};
use crate::transforms::{
    bwt_forward, bwt_inverse, huffman_decode, huffman_encode, mtf_decode, mtf_encode, rle_decode,
    rle_encode, BwtBlock,
};

pub const MAGIC: &[u8; 4] = b"BWCA";
pub const VERSION: u8 = 1;
pub const DEFAULT_BLOCK_SIZE: u16 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    Dictionary,
    Bwt,
    Mtf,
    Rle,
    Huffman,
}

impl Stage {
    /// File written for this stage by [`StageTrace::write_to`].
    pub fn dump_file_name(self) -> &'static str {
        match self {
            Stage::Dictionary => "DICTIONARY.txt",
            Stage::Bwt => "BWT.txt",
            Stage::Mtf => "MTF.txt",
            Stage::Rle => "RLE.txt",
            Stage::Huffman => "HUFFMAN.txt",
        }
    }
}

const BWCA_CHAIN: &[Stage] = &[Stage::Bwt, Stage::Mtf, Stage::Rle, Stage::Huffman];
const PROPOSED_CHAIN: &[Stage] = &[Stage::Bwt, Stage::Rle, Stage::Mtf, Stage::Rle, Stage::Huffman];
const DICT_BWCA_CHAIN: &[Stage] = &[
    Stage::Dictionary,
    Stage::Bwt,
    Stage::Mtf,
    Stage::Rle,
    Stage::Huffman,
];
const DICT_PROPOSED_CHAIN: &[Stage] = &[
    Stage::Dictionary,
    Stage::Bwt,
    Stage::Rle,
    Stage::Mtf,
    Stage::Rle,
    Stage::Huffman,
];

/// The four pipelines, numbered by their container id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Bwca = 1,
    Proposed = 2,
    DictBwca = 3,
    DictProposed = 4,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Bwca,
        Method::Proposed,
        Method::DictBwca,
        Method::DictProposed,
    ];

    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn from_id(id: u8) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.id() == id)
    }

    /// Report name, e.g. `DICT_BWCA`.
    pub fn name(self) -> &'static str {
        match self {
            Method::Bwca => "BWCA",
            Method::Proposed => "PROPOSED",
            Method::DictBwca => "DICT_BWCA",
            Method::DictProposed => "DICT_PROPOSED",
        }
    }

    /// Command-line name, e.g. `dict-bwca`.
    pub fn flag(self) -> &'static str {
        match self {
            Method::Bwca => "bwca",
            Method::Proposed => "proposed",
            Method::DictBwca => "dict-bwca",
            Method::DictProposed => "dict-proposed",
        }
    }

    pub fn uses_dictionary(self) -> bool {
        matches!(self, Method::DictBwca | Method::DictProposed)
    }

    pub fn stages(self) -> &'static [Stage] {
        match self {
            Method::Bwca => BWCA_CHAIN,
            Method::Proposed => PROPOSED_CHAIN,
            Method::DictBwca => DICT_BWCA_CHAIN,
            Method::DictProposed => DICT_PROPOSED_CHAIN,
        }
    }

    /// Stages applied to each block after the BWT.
    fn block_stages(self) -> &'static [Stage] {
        let stages = self.stages();
        let bwt = stages.iter().position(|&s| s == Stage::Bwt).unwrap();
        &stages[bwt + 1..stages.len() - 1]
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        Method::ALL
            .into_iter()
            .find(|m| s == m.flag() || s.eq_ignore_ascii_case(m.name()))
            .ok_or_else(|| Error::Config(format!("unknown method {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineSpec {
    pub method: Method,
    pub block_size: u16,
}

impl PipelineSpec {
    pub fn new(method: Method, block_size: u16) -> Result<Self> {
        if block_size == 0 {
            return Err(Error::Config("block size must be at least 1".into()));
        }
        Ok(PipelineSpec { method, block_size })
    }

    pub fn with_default_block(method: Method) -> Self {
        PipelineSpec {
            method,
            block_size: DEFAULT_BLOCK_SIZE,
        }
    }

    pub fn stages(&self) -> &'static [Stage] {
        self.method.stages()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockRecord {
    pub primary_index: u16,
    pub payload_len: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Container {
    pub spec: PipelineSpec,
    pub dict_fingerprint: Option<u64>,
    pub transformed_len: u64,
    pub blocks: Vec<BlockRecord>,
    pub payload: Vec<u8>,
}

fn block_count(transformed_len: u64, block_size: u16) -> u64 {
    transformed_len.div_ceil(u64::from(block_size))
}

fn block_len(transformed_len: u64, block_size: u16, index: usize) -> u64 {
    let start = index as u64 * u64::from(block_size);
    (transformed_len - start).min(u64::from(block_size))
}

impl Container {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(28 + self.blocks.len() * 6 + self.payload.len());
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.push(self.spec.method.id());
        out.extend_from_slice(&self.spec.block_size.to_le_bytes());
        if let Some(fp) = self.dict_fingerprint {
            out.extend_from_slice(&fp.to_le_bytes());
        }
        out.extend_from_slice(&self.transformed_len.to_le_bytes());
        out.extend_from_slice(&(self.blocks.len() as u32).to_le_bytes());
        for b in &self.blocks {
            out.extend_from_slice(&b.primary_index.to_le_bytes());
            out.extend_from_slice(&b.payload_len.to_le_bytes());
        }
        out.extend_from_slice(&self.payload);
        out
    }

    pub fn parse(bytes: &[u8]) -> Result<Container> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(4)? != MAGIC {
            return Err(format_err("bad magic"));
        }
        let version = r.u8()?;
        if version != VERSION {
            return Err(format_err(format!("unsupported container version {version}")));
        }
        let id = r.u8()?;
        let method =
            Method::from_id(id).ok_or_else(|| format_err(format!("unknown pipeline id {id}")))?;
        let block_size = r.u16()?;
        if block_size == 0 {
            return Err(format_err("block size of zero"));
        }
        let dict_fingerprint = if method.uses_dictionary() {
            Some(r.u64()?)
        } else {
            None
        };
        let transformed_len = r.u64()?;
        let count = r.u32()?;
        if u64::from(count) != block_count(transformed_len, block_size) {
            return Err(format_err(format!(
                "{count} blocks cannot hold {transformed_len} bytes in blocks of {block_size}"
            )));
        }
        if r.remaining() / 6 < count as usize {
            return Err(format_err("block table runs past the end of the file"));
        }

        let mut blocks = Vec::with_capacity(count as usize);
        for index in 0..count as usize {
            let primary_index = r.u16()?;
            let payload_len = r.u32()?;
            if u64::from(primary_index) >= block_len(transformed_len, block_size, index) {
                return Err(format_err(format!(
                    "block {index}: primary index {primary_index} out of range"
                )));
            }
            blocks.push(BlockRecord {
                primary_index,
                payload_len,
            });
        }

        let payload = r.rest().to_vec();
        if count == 0 {
            if !payload.is_empty() {
                return Err(format_err("trailing bytes after an empty block table"));
            }
        } else {
            check_payload(&payload, &blocks)?;
        }

        Ok(Container {
            spec: PipelineSpec { method, block_size },
            dict_fingerprint,
            transformed_len,
            blocks,
            payload,
        })
    }
}

fn check_payload(payload: &[u8], blocks: &[BlockRecord]) -> Result<()> {
    if payload.len() < ENTROPY_HEADER_LEN {
        return Err(format_err("entropy payload is truncated"));
    }
    let declared: u64 = blocks.iter().map(|b| u64::from(b.payload_len)).sum();
    let decoded = huffman::payload_decoded_len(payload)?;
    if decoded != declared {
        return Err(format_err(format!(
            "block table declares {declared} payload bytes, entropy stream holds {decoded}"
        )));
    }
    let min_len = payload[..256].iter().copied().filter(|&l| l > 0).min();
    let min_bits = u128::from(decoded) * u128::from(min_len.unwrap_or(1));
    let have_bits = (payload.len() - ENTROPY_HEADER_LEN) as u128 * 8;
    if have_bits < min_bits {
        return Err(format_err("entropy payload shorter than declared"));
    }
    Ok(())
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&end| end <= self.bytes.len())
            .ok_or_else(|| format_err("container is truncated"))?;
        let slice = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(slice)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn remaining(&self) -> usize {
        self.bytes.len() - self.pos
    }

    fn rest(&mut self) -> &'a [u8] {
        let slice = &self.bytes[self.pos..];
        self.pos = self.bytes.len();
        slice
    }
}

/// Runs one block through the BWT and the method's per-block stages.
///
/// Returns the primary index and the block payload that goes to the entropy
/// coder, plus the intermediate outputs when `trace` is set.
pub fn encode_block(
    block: &[u8],
    method: Method,
    mut trace: Option<&mut Vec<(Stage, Vec<u8>)>>,
) -> Result<(usize, Vec<u8>)> {
    let BwtBlock {
        data,
        primary_index,
    } = bwt_forward(block)?;
    if let Some(t) = trace.as_deref_mut() {
        t.push((Stage::Bwt, data.clone()));
    }
    let mut data = data;
    for &stage in method.block_stages() {
        data = match stage {
            Stage::Mtf => mtf_encode(&data),
            Stage::Rle => rle_encode(&data),
            _ => unreachable!("only MTF and RLE run per block"),
        };
        if let Some(t) = trace.as_deref_mut() {
            t.push((stage, data.clone()));
        }
    }
    Ok((primary_index, data))
}

/// Inverts [`encode_block`].
pub fn decode_block(payload: &[u8], primary_index: usize, method: Method) -> Result<Vec<u8>> {
    let mut data = payload.to_vec();
    for &stage in method.block_stages().iter().rev() {
        data = match stage {
            Stage::Mtf => mtf_decode(&data),
            Stage::Rle => rle_decode(&data)?,
            _ => unreachable!("only MTF and RLE run per block"),
        };
    }
    if data.is_empty() {
        return Err(corrupt("block decodes to nothing"));
    }
    bwt_inverse(&BwtBlock {
        data,
        primary_index,
    })
    .map_err(|e| match e {
        Error::InvalidInput(msg) => Error::CorruptStream(msg),
        other => other,
    })
}

/// Intermediate stage outputs of one compression run: the whole dictionary
/// stage output, the first block's chain, and the entropy payload.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StageTrace {
    pub outputs: Vec<(Stage, Vec<u8>)>,
}

impl StageTrace {
    /// Writes one file per stage into `dir`. A stage that runs twice keeps
    /// its later output.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        for (stage, data) in &self.outputs {
            fs::write(dir.join(stage.dump_file_name()), data)?;
        }
        Ok(())
    }
}

fn check_dictionary(method: Method, dict: Option<&Dictionary>) -> Result<()> {
    match (method.uses_dictionary(), dict.is_some()) {
        (true, false) => Err(Error::Config(format!("{method} needs a dictionary"))),
        (false, true) => Err(Error::Config(format!("{method} does not use a dictionary"))),
        _ => Ok(()),
    }
}

pub fn compress(input: &[u8], spec: &PipelineSpec, dict: Option<&Dictionary>) -> Result<Container> {
    compress_inner(input, spec, dict, None)
}

/// Like [`compress`], also returning the intermediate stage outputs.
pub fn compress_traced(
    input: &[u8],
    spec: &PipelineSpec,
    dict: Option<&Dictionary>,
) -> Result<(Container, StageTrace)> {
    let mut trace = StageTrace::default();
    let container = compress_inner(input, spec, dict, Some(&mut trace))?;
    Ok((container, trace))
}

fn compress_inner(
    input: &[u8],
    spec: &PipelineSpec,
    dict: Option<&Dictionary>,
    mut trace: Option<&mut StageTrace>,
) -> Result<Container> {
    if spec.block_size == 0 {
        return Err(Error::Config("block size must be at least 1".into()));
    }
    check_dictionary(spec.method, dict)?;

    let dict_output;
    let transformed: &[u8] = match dict {
        Some(d) => {
            dict_output = dict_encode(input, d).transformed;
            if let Some(t) = trace.as_deref_mut() {
                t.outputs.push((Stage::Dictionary, dict_output.clone()));
            }
            &dict_output
        }
        None => input,
    };

    let chunks: Vec<&[u8]> = transformed.chunks(spec.block_size as usize).collect();
    if let (Some(t), Some(first)) = (trace.as_deref_mut(), chunks.first()) {
        encode_block(first, spec.method, Some(&mut t.outputs))?;
    }
    let encoded: Vec<(usize, Vec<u8>)> = chunks
        .par_iter()
        .map(|block| encode_block(block, spec.method, None))
        .collect::<Result<_>>()?;

    let mut blocks = Vec::with_capacity(encoded.len());
    let mut joined = Vec::with_capacity(transformed.len());
    for (primary_index, data) in &encoded {
        blocks.push(BlockRecord {
            primary_index: *primary_index as u16,
            payload_len: data.len() as u32,
        });
        joined.extend_from_slice(data);
    }
    let payload = if blocks.is_empty() {
        Vec::new()
    } else {
        huffman_encode(&joined)
    };
    if let Some(t) = trace {
        t.outputs.push((Stage::Huffman, payload.clone()));
    }

    Ok(Container {
        spec: *spec,
        dict_fingerprint: dict.map(Dictionary::fingerprint),
        transformed_len: transformed.len() as u64,
        blocks,
        payload,
    })
}

pub fn decompress(container: &Container, dict: Option<&Dictionary>) -> Result<Vec<u8>> {
    let method = container.spec.method;
    let dict = if method.uses_dictionary() {
        let d = dict.ok_or_else(|| Error::Config(format!("{method} needs a dictionary")))?;
        let expected = container
            .dict_fingerprint
            .ok_or_else(|| format_err("dictionary container without a fingerprint"))?;
        if d.fingerprint() != expected {
            return Err(Error::WrongDictionary {
                expected,
                actual: d.fingerprint(),
            });
        }
        Some(d)
    } else {
        None
    };

    let expected_blocks = block_count(container.transformed_len, container.spec.block_size);
    if container.blocks.len() as u64 != expected_blocks {
        return Err(format_err("block count does not match the transformed length"));
    }
    let joined = if container.blocks.is_empty() {
        Vec::new()
    } else {
        huffman_decode(&container.payload)?
    };
    let declared: u64 = container.blocks.iter().map(|b| u64::from(b.payload_len)).sum();
    if joined.len() as u64 != declared {
        return Err(corrupt("entropy stream length disagrees with the block table"));
    }

    let mut offset = 0;
    let segments: Vec<(usize, &[u8], usize)> = container
        .blocks
        .iter()
        .enumerate()
        .map(|(index, b)| {
            let seg = &joined[offset..offset + b.payload_len as usize];
            offset += b.payload_len as usize;
            (index, seg, b.primary_index as usize)
        })
        .collect();
    let decoded: Vec<Vec<u8>> = segments
        .par_iter()
        .map(|&(index, seg, primary_index)| {
            let block = decode_block(seg, primary_index, method)?;
            let want = block_len(container.transformed_len, container.spec.block_size, index);
            if block.len() as u64 != want {
                return Err(corrupt(format!(
                    "block {index} decodes to {} bytes, expected {want}",
                    block.len()
                )));
            }
            Ok(block)
        })
        .collect::<Result<_>>()?;
    let transformed = decoded.concat();

    match dict {
        Some(d) => dict_decode(&transformed, d),
        None => Ok(transformed),
    }
}

/// Compresses, then checks that the container decodes back to `input`.
pub fn compress_verified(
    input: &[u8],
    spec: &PipelineSpec,
    dict: Option<&Dictionary>,
) -> Result<Container> {
    let container = compress(input, spec, dict)?;
    let reparsed = Container::parse(&container.to_bytes())?;
    if decompress(&reparsed, dict)? != input {
        return Err(Error::Verification {
            file: "<input>".into(),
            method: spec.method.name().into(),
        });
    }
    Ok(container)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dictionary::build_dictionary;

    fn dict() -> Dictionary {
        build_dictionary(&["the quick brown fox jumps over the lazy dog again and again"], 5000)
    }

    fn dict_for(method: Method, d: &Dictionary) -> Option<&Dictionary> {
        method.uses_dictionary().then_some(d)
    }

    #[test]
    fn stage_lists() {
        use Stage::*;
        assert_eq!(Method::Bwca.stages(), &[Bwt, Mtf, Rle, Huffman]);
        assert_eq!(Method::Proposed.stages(), &[Bwt, Rle, Mtf, Rle, Huffman]);
        assert_eq!(Method::DictBwca.stages()[0], Dictionary);
        assert_eq!(Method::DictProposed.stages()[1..], *Method::Proposed.stages());
        for m in Method::ALL {
            let s = m.stages();
            assert_eq!(s.last(), Some(&Huffman));
            assert_eq!(s.iter().filter(|&&x| x == Huffman).count(), 1);
            assert_eq!(Method::from_id(m.id()), Some(m));
            assert_eq!(m.flag().parse::<Method>().unwrap(), m);
        }
        assert!("lzw".parse::<Method>().is_err());
    }

    #[test]
    fn empty_input_has_no_blocks() {
        let d = dict();
        for m in Method::ALL {
            let spec = PipelineSpec::with_default_block(m);
            let c = compress(b"", &spec, dict_for(m, &d)).unwrap();
            assert!(c.blocks.is_empty());
            assert!(c.payload.is_empty());
            let bytes = c.to_bytes();
            let header = if m.uses_dictionary() { 28 } else { 20 };
            assert_eq!(bytes.len(), header);
            let parsed = Container::parse(&bytes).unwrap();
            assert_eq!(parsed, c);
            assert!(decompress(&parsed, dict_for(m, &d)).unwrap().is_empty());
        }
    }

    #[test]
    fn exact_block_size_gives_one_block() {
        let input = vec![b'x'; 100];
        let c = compress(&input, &PipelineSpec::with_default_block(Method::Bwca), None).unwrap();
        assert_eq!(c.blocks.len(), 1);
        let c = compress(&input[..99], &PipelineSpec::new(Method::Bwca, 33).unwrap(), None).unwrap();
        assert_eq!(c.blocks.len(), 3);
        let mut more = input.clone();
        more.push(b'y');
        let c = compress(&more, &PipelineSpec::with_default_block(Method::Bwca), None).unwrap();
        assert_eq!(c.blocks.len(), 2);
        assert_eq!(decompress(&c, None).unwrap(), more);
    }

    #[test]
    fn header_layout() {
        let d = dict();
        let spec = PipelineSpec::new(Method::DictProposed, 0x0102).unwrap();
        let c = compress(b"the lazy dog", &spec, Some(&d)).unwrap();
        let bytes = c.to_bytes();
        assert_eq!(&bytes[..4], b"BWCA");
        assert_eq!(bytes[4], 1);
        assert_eq!(bytes[5], 4);
        assert_eq!(&bytes[6..8], &[0x02, 0x01]);
        assert_eq!(&bytes[8..16], &d.fingerprint().to_le_bytes());
        assert_eq!(&bytes[16..24], &c.transformed_len.to_le_bytes());
        assert_eq!(&bytes[24..28], &1u32.to_le_bytes());
        assert_eq!(&bytes[28..30], &c.blocks[0].primary_index.to_le_bytes());
        assert_eq!(&bytes[30..34], &c.blocks[0].payload_len.to_le_bytes());
        assert_eq!(&bytes[34..], c.payload.as_slice());
    }

    #[test]
    fn dictionary_mismatch() {
        let d = dict();
        let other = build_dictionary(&["something entirely different"], 5000);
        let spec = PipelineSpec::with_default_block(Method::DictBwca);
        assert!(matches!(compress(b"x", &spec, None), Err(Error::Config(_))));
        let plain = PipelineSpec::with_default_block(Method::Bwca);
        assert!(matches!(compress(b"x", &plain, Some(&d)), Err(Error::Config(_))));

        let c = compress(b"the quick brown fox", &spec, Some(&d)).unwrap();
        assert!(matches!(
            decompress(&c, Some(&other)),
            Err(Error::WrongDictionary { .. })
        ));
        assert!(matches!(decompress(&c, None), Err(Error::Config(_))));
        assert_eq!(decompress(&c, Some(&d)).unwrap(), b"the quick brown fox");
    }

    #[test]
    fn parse_errors() {
        let input = b"abracadabra abracadabra abracadabra".repeat(10);
        let c = compress(&input, &PipelineSpec::with_default_block(Method::Bwca), None).unwrap();
        let bytes = c.to_bytes();

        let mut bad_magic = bytes.clone();
        bad_magic[0] = b'X';
        assert!(matches!(Container::parse(&bad_magic), Err(Error::Format(_))));

        let mut bad_version = bytes.clone();
        bad_version[4] = 9;
        assert!(matches!(Container::parse(&bad_version), Err(Error::Format(_))));

        let mut bad_id = bytes.clone();
        bad_id[5] = 7;
        assert!(matches!(Container::parse(&bad_id), Err(Error::Format(_))));

        let mut bad_count = bytes.clone();
        bad_count[16] = 0xff;
        assert!(matches!(Container::parse(&bad_count), Err(Error::Format(_))));

        for cut in [3, 10, 25, 40] {
            assert!(
                matches!(Container::parse(&bytes[..cut]), Err(Error::Format(_))),
                "cut at {cut}"
            );
        }
        let short = &bytes[..bytes.len() - c.payload.len() / 2];
        assert!(matches!(Container::parse(short), Err(Error::Format(_))));
    }

    #[test]
    fn serialize_roundtrip() {
        let input = vec![b'q'; 100];
        let c = compress(&input, &PipelineSpec::with_default_block(Method::Proposed), None).unwrap();
        assert_eq!(Container::parse(&c.to_bytes()).unwrap(), c);
    }

    #[test]
    fn block_independence() {
        let input: Vec<u8> = b"she sells sea shells by the sea shore; ".repeat(9);
        for m in [Method::Bwca, Method::Proposed] {
            let spec = PipelineSpec::new(m, 64).unwrap();
            let c = compress(&input, &spec, None).unwrap();
            let mut joined = Vec::new();
            for (chunk, rec) in input.chunks(64).zip(&c.blocks) {
                let (primary, data) = encode_block(chunk, m, None).unwrap();
                assert_eq!(primary, rec.primary_index as usize);
                assert_eq!(data.len(), rec.payload_len as usize);
                joined.extend(data);
            }
            assert_eq!(huffman_decode(&c.payload).unwrap(), joined);
        }
    }

    #[test]
    fn trace_covers_every_stage() {
        let d = dict();
        let spec = PipelineSpec::with_default_block(Method::DictProposed);
        let (c, trace) = compress_traced(b"the quick brown fox", &spec, Some(&d)).unwrap();
        let stages: Vec<Stage> = trace.outputs.iter().map(|(s, _)| *s).collect();
        assert_eq!(stages, Method::DictProposed.stages());
        assert_eq!(trace.outputs.last().unwrap().1, c.payload);
    }

    #[test]
    fn verified_compress() {
        let spec = PipelineSpec::with_default_block(Method::Proposed);
        assert!(compress_verified(b"mississippi", &spec, None).is_ok());
    }
}
