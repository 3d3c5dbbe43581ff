//! Word dictionary preprocessing.
//!
//! A dictionary holds the most frequent words of a corpus, ordered longest
//! first. Words of four or more letters get short letter codewords
//! (`a`..`z`, `A`..`Z`, `aa`, ...) and are replaced by them when encoding.
//! Any other word is written as `*word`, and literal `*` / `\` bytes are
//! escaped with `\`, which keeps the transform exactly reversible.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::error::{corrupt, format_err, Result};

pub const DEFAULT_CAPACITY: usize = 5000;

/// Words shorter than this never receive a codeword.
pub const MIN_CODED_LEN: usize = 4;

const DIGITS: &[u8; 52] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

const HEADER_TAG: &str = "BWCADICT";
const FORMAT_VERSION: u32 = 1;

const LITERAL: u8 = b'*';
const ESCAPE: u8 = b'\\';

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Word,
    Separator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token<'a> {
    pub kind: TokenKind,
    pub text: &'a [u8],
}

/// Splits `text` into maximal runs of ASCII letters and of everything else.
pub fn tokenize(text: &[u8]) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start = 0;
    while start < text.len() {
        let is_word = text[start].is_ascii_alphabetic();
        let len = text[start..]
            .iter()
            .take_while(|b| b.is_ascii_alphabetic() == is_word)
            .count();
        tokens.push(Token {
            kind: if is_word {
                TokenKind::Word
            } else {
                TokenKind::Separator
            },
            text: &text[start..start + len],
        });
        start += len;
    }
    tokens
}

/// Codeword for the `index`-th coded entry: bijective base-52 numbering,
/// most significant digit first.
pub fn codeword_for_index(index: usize) -> String {
    let mut rest = index;
    let mut width = 1;
    let mut span = DIGITS.len();
    while rest >= span {
        rest -= span;
        width += 1;
        span *= DIGITS.len();
    }
    let mut digits = vec![0u8; width];
    for slot in digits.iter_mut().rev() {
        *slot = DIGITS[rest % DIGITS.len()];
        rest /= DIGITS.len();
    }
    String::from_utf8(digits).expect("codeword digits are ASCII")
}

/// 64-bit FNV-1a.
fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub word: String,
    pub frequency: u64,
}

/// Canonical entry order: longer words first, then more frequent, then
/// lexicographic.
fn canonical_cmp(a: &Entry, b: &Entry) -> Ordering {
    b.word
        .len()
        .cmp(&a.word.len())
        .then(b.frequency.cmp(&a.frequency))
        .then(a.word.cmp(&b.word))
}

/// Selection order: most frequent first, ties lexicographic.
fn selection_cmp(a: &Entry, b: &Entry) -> Ordering {
    b.frequency.cmp(&a.frequency).then(a.word.cmp(&b.word))
}

/// An immutable word dictionary with codeword assignment.
///
/// Equality compares entries only; the capacity used for later updates is
/// not part of the serialized form.
#[derive(Debug, Clone)]
pub struct Dictionary {
    entries: Vec<Entry>,
    capacity: usize,
    known: HashSet<String>,
    codewords: HashMap<String, String>,
    words: HashMap<String, String>,
    fingerprint: u64,
}

impl PartialEq for Dictionary {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for Dictionary {}

impl Default for Dictionary {
    fn default() -> Self {
        Dictionary::from_counts(HashMap::new(), DEFAULT_CAPACITY)
    }
}

impl Dictionary {
    /// Keeps the `capacity` most frequent words of `counts` and assigns
    /// codewords.
    fn from_counts(counts: HashMap<String, u64>, capacity: usize) -> Self {
        let mut entries: Vec<Entry> = counts
            .into_iter()
            .filter(|(_, frequency)| *frequency > 0)
            .map(|(word, frequency)| Entry { word, frequency })
            .collect();
        entries.sort_by(selection_cmp);
        entries.truncate(capacity);
        entries.sort_by(canonical_cmp);
        Self::from_sorted(entries, capacity)
    }

    fn from_sorted(entries: Vec<Entry>, capacity: usize) -> Self {
        let mut codewords = HashMap::new();
        let mut words = HashMap::new();
        let coded = entries.iter().filter(|e| e.word.len() >= MIN_CODED_LEN);
        for (index, entry) in coded.enumerate() {
            let code = codeword_for_index(index);
            codewords.insert(entry.word.clone(), code.clone());
            words.insert(code, entry.word.clone());
        }
        let known = entries.iter().map(|e| e.word.clone()).collect();
        let mut dict = Dictionary {
            known,
            entries,
            capacity,
            codewords,
            words,
            fingerprint: 0,
        };
        dict.fingerprint = fnv1a(&dict.to_bytes());
        dict
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// A copy with a different capacity for future updates; entries are
    /// trimmed if they no longer fit.
    pub fn with_capacity(&self, capacity: usize) -> Self {
        if capacity >= self.entries.len() {
            let mut dict = self.clone();
            dict.capacity = capacity;
            return dict;
        }
        Self::from_counts(self.frequency_map(), capacity)
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn contains(&self, word: &str) -> bool {
        self.known.contains(word)
    }

    pub fn codeword(&self, word: &str) -> Option<&str> {
        self.codewords.get(word).map(String::as_str)
    }

    pub fn word_for_codeword(&self, codeword: &str) -> Option<&str> {
        self.words.get(codeword).map(String::as_str)
    }

    fn frequency_map(&self) -> HashMap<String, u64> {
        self.entries
            .iter()
            .map(|e| (e.word.clone(), e.frequency))
            .collect()
    }

    /// Canonical text serialization.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = format!("{HEADER_TAG} {FORMAT_VERSION} {}\n", self.entries.len());
        for e in &self.entries {
            let _ = writeln!(out, "{}\t{}", e.word, e.frequency);
        }
        out.into_bytes()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let text = std::str::from_utf8(bytes)
            .ok()
            .filter(|t| t.is_ascii())
            .ok_or_else(|| format_err("dictionary file is not ASCII"))?;
        let body = text
            .strip_suffix('\n')
            .ok_or_else(|| format_err("dictionary file must end with a newline"))?;
        let mut lines = body.split('\n');

        let header = lines.next().unwrap_or_default();
        let fields: Vec<&str> = header.split(' ').collect();
        let count: usize = match fields.as_slice() {
            [tag, version, count] if *tag == HEADER_TAG => {
                if version.parse::<u32>().ok() != Some(FORMAT_VERSION) {
                    return Err(format_err(format!("unsupported dictionary version {version}")));
                }
                count
                    .parse()
                    .map_err(|_| format_err(format!("bad entry count {count:?}")))?
            }
            _ => return Err(format_err(format!("bad dictionary header {header:?}"))),
        };

        let mut entries: Vec<Entry> = Vec::with_capacity(count);
        for (lineno, line) in lines.enumerate() {
            let entry = parse_entry(line).map_err(|msg| {
                format_err(format!("dictionary line {}: {msg}", lineno + 2))
            })?;
            if let Some(prev) = entries.last() {
                match canonical_cmp(prev, &entry) {
                    Ordering::Less => {}
                    Ordering::Equal => {
                        return Err(format_err(format!("duplicate word {:?}", entry.word)))
                    }
                    Ordering::Greater => {
                        return Err(format_err(format!(
                            "entry {:?} is out of canonical order",
                            entry.word
                        )))
                    }
                }
            }
            entries.push(entry);
        }
        if entries.len() != count {
            return Err(format_err(format!(
                "header declares {count} entries, found {}",
                entries.len()
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = entries.iter().find(|e| !seen.insert(e.word.as_str())) {
            return Err(format_err(format!("duplicate word {:?}", dup.word)));
        }

        let capacity = DEFAULT_CAPACITY.max(count);
        Ok(Self::from_sorted(entries, capacity))
    }
}

fn parse_entry(line: &str) -> std::result::Result<Entry, String> {
    let (word, frequency) = line
        .split_once('\t')
        .ok_or_else(|| "expected <word>\\t<frequency>".to_string())?;
    if word.is_empty() || !word.bytes().all(|b| b.is_ascii_alphabetic()) {
        return Err(format!("word {word:?} is not a run of ASCII letters"));
    }
    let frequency: u64 = frequency
        .parse()
        .ok()
        .filter(|&f| f > 0)
        .ok_or_else(|| format!("bad frequency {frequency:?}"))?;
    Ok(Entry {
        word: word.to_string(),
        frequency,
    })
}

fn count_words(text: &[u8], counts: &mut HashMap<String, u64>) {
    for token in tokenize(text) {
        if token.kind == TokenKind::Word {
            let word = std::str::from_utf8(token.text).expect("letters are ASCII");
            *counts.entry(word.to_string()).or_insert(0) += 1;
        }
    }
}

/// Builds a dictionary of the `capacity` most frequent words across
/// `corpora`.
pub fn build_dictionary<T: AsRef<[u8]>>(corpora: &[T], capacity: usize) -> Dictionary {
    let mut counts = HashMap::new();
    for text in corpora {
        count_words(text.as_ref(), &mut counts);
    }
    Dictionary::from_counts(counts, capacity)
}

/// Words seen during encoding that were not in the dictionary, in order of
/// first occurrence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UnknownWordLog {
    entries: Vec<(String, u64)>,
    index: HashMap<String, usize>,
}

impl UnknownWordLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, word: &str, count: u64) {
        if count == 0 {
            return;
        }
        match self.index.get(word) {
            Some(&i) => self.entries[i].1 += count,
            None => {
                self.index.insert(word.to_string(), self.entries.len());
                self.entries.push((word.to_string(), count));
            }
        }
    }

    pub fn entries(&self) -> &[(String, u64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count(&self, word: &str) -> Option<u64> {
        self.index.get(word).map(|&i| self.entries[i].1)
    }

    pub fn merge(&mut self, other: &UnknownWordLog) {
        for (word, count) in &other.entries {
            self.record(word, *count);
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = String::new();
        for (word, count) in &self.entries {
            let _ = writeln!(out, "{word}\t{count}");
        }
        out.into_bytes()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let text = std::str::from_utf8(bytes)
            .ok()
            .filter(|t| t.is_ascii())
            .ok_or_else(|| format_err("unknown-word log is not ASCII"))?;
        let mut log = UnknownWordLog::new();
        for (lineno, line) in text.lines().enumerate() {
            let entry = parse_entry(line)
                .map_err(|msg| format_err(format!("log line {}: {msg}", lineno + 1)))?;
            if log.count(&entry.word).is_some() {
                return Err(format_err(format!("duplicate word {:?} in log", entry.word)));
            }
            log.record(&entry.word, entry.frequency);
        }
        Ok(log)
    }
}

/// Output of [`dict_encode`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoded {
    pub transformed: Vec<u8>,
    pub unknown: UnknownWordLog,
}

pub fn dict_encode(text: &[u8], dict: &Dictionary) -> Encoded {
    let mut out = Vec::with_capacity(text.len());
    let mut unknown = UnknownWordLog::new();
    for token in tokenize(text) {
        match token.kind {
            TokenKind::Word => {
                let word = std::str::from_utf8(token.text).expect("letters are ASCII");
                if let Some(code) = dict.codeword(word) {
                    out.extend_from_slice(code.as_bytes());
                } else {
                    if !dict.contains(word) {
                        unknown.record(word, 1);
                    }
                    out.push(LITERAL);
                    out.extend_from_slice(token.text);
                }
            }
            TokenKind::Separator => {
                for &b in token.text {
                    if b == LITERAL || b == ESCAPE {
                        out.push(ESCAPE);
                    }
                    out.push(b);
                }
            }
        }
    }
    Encoded {
        transformed: out,
        unknown,
    }
}

pub fn dict_decode(transformed: &[u8], dict: &Dictionary) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(transformed.len() * 2);
    let mut i = 0;
    let letters_from = |start: usize| {
        transformed[start..]
            .iter()
            .take_while(|b| b.is_ascii_alphabetic())
            .count()
    };
    while i < transformed.len() {
        match transformed[i] {
            ESCAPE => {
                let b = *transformed
                    .get(i + 1)
                    .ok_or_else(|| corrupt("dangling escape at end of stream"))?;
                if b != LITERAL && b != ESCAPE {
                    return Err(corrupt(format!("invalid escape of byte {b:#04x} at offset {i}")));
                }
                out.push(b);
                i += 2;
            }
            LITERAL => {
                let len = letters_from(i + 1);
                if len == 0 {
                    return Err(corrupt(format!("literal marker without a word at offset {i}")));
                }
                out.extend_from_slice(&transformed[i + 1..i + 1 + len]);
                i += 1 + len;
            }
            b if b.is_ascii_alphabetic() => {
                let len = letters_from(i);
                let code = std::str::from_utf8(&transformed[i..i + len]).expect("ASCII");
                let word = dict
                    .word_for_codeword(code)
                    .ok_or_else(|| corrupt(format!("unknown codeword {code:?} at offset {i}")))?;
                out.extend_from_slice(word.as_bytes());
                i += len;
            }
            b => {
                out.push(b);
                i += 1;
            }
        }
    }
    Ok(out)
}

/// Merges logged unknown words into the dictionary counts and rebuilds it.
pub fn update_dictionary(dict: &Dictionary, log: &UnknownWordLog) -> Dictionary {
    if log.is_empty() {
        return dict.clone();
    }
    let mut counts = dict.frequency_map();
    for (word, count) in log.entries() {
        *counts.entry(word.clone()).or_insert(0) += count;
    }
    Dictionary::from_counts(counts, dict.capacity)
}
