#![allow(dead_code)]

use std::path::PathBuf;

use bwca::bench::{load_corpus_dir, CorpusFile};

pub fn corpus_dir() -> PathBuf {
    std::env::var_os("BWCA_CORPUS_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus"))
}

pub fn corpus() -> Vec<CorpusFile> {
    load_corpus_dir(&corpus_dir()).expect("corpus directory is readable")
}

/// Sorts every rotation explicitly and keeps the first of equal rows.
pub fn naive_bwt(block: &[u8]) -> (Vec<u8>, usize) {
    let n = block.len();
    let mut rows: Vec<(Vec<u8>, usize)> = (0..n)
        .map(|i| ([&block[i..], &block[..i]].concat(), i))
        .collect();
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    let primary = rows.iter().position(|(_, i)| *i == 0).unwrap();
    (rows.iter().map(|(r, _)| r[n - 1]).collect(), primary)
}

/// Every optimal length assignment for `freqs` (2..=4 symbols), found by
/// enumerating all length vectors that satisfy the Kraft inequality.
pub fn optimal_prefix_lengths(freqs: &[u64]) -> Vec<Vec<u8>> {
    let n = freqs.len();
    assert!((2..=4).contains(&n));
    let max_len = (n - 1) as u32;
    let mut best_cost = u128::MAX;
    let mut best = Vec::new();
    let mut lens = vec![1u8; n];
    loop {
        let kraft: u64 = lens.iter().map(|&l| 1u64 << (max_len - u32::from(l))).sum();
        if kraft <= 1u64 << max_len {
            let cost: u128 = lens
                .iter()
                .zip(freqs)
                .map(|(&l, &f)| u128::from(l) * u128::from(f))
                .sum();
            if cost < best_cost {
                best_cost = cost;
                best.clear();
            }
            if cost == best_cost {
                best.push(lens.clone());
            }
        }
        // odometer over 1..=max_len
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            if u32::from(lens[i]) < max_len {
                lens[i] += 1;
                break;
            }
            lens[i] = 1;
            i += 1;
        }
    }
}

/// All strings of exactly `len` symbols over `alphabet`.
pub fn all_strings(alphabet: &[u8], len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                alphabet.iter().map(move |&s| {
                    let mut next = prefix.clone();
                    next.push(s);
                    next
                })
            })
            .collect();
    }
    out
}
