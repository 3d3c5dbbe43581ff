//! Burrows-Wheeler transform over a single block.
//!
//! The forward direction sorts all cyclic rotations of the block (unsigned
//! byte order) and keeps the last column together with the row of the
//! original rotation. Equal rotations keep their original order, so the
//! primary index of a periodic block is the first of its equal rows.

use crate::error::{Error, Result};

/// Output of the forward transform for one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BwtBlock {
    pub data: Vec<u8>,
    pub primary_index: usize,
}

/// Rotation start offsets in sorted order.
///
/// Prefix doubling on cyclic ranks: after the pass with step `len`, ranks
/// order rotations by their first `2 * len` bytes. Once `len >= n` the ranks
/// order full rotations, and the final pass breaks ties by start offset.
fn sorted_rotations(data: &[u8]) -> Vec<usize> {
    let n = data.len();
    let mut rank: Vec<u32> = data.iter().map(|&b| u32::from(b)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut next = vec![0u32; n];

    let mut len = 1;
    while len < n {
        let key = |i: usize| (rank[i], rank[(i + len) % n]);
        order.sort_unstable_by_key(|&i| key(i));

        next[order[0]] = 0;
        for w in 1..n {
            let bump = u32::from(key(order[w]) != key(order[w - 1]));
            next[order[w]] = next[order[w - 1]] + bump;
        }
        std::mem::swap(&mut rank, &mut next);

        if rank[order[n - 1]] as usize == n - 1 {
            break;
        }
        len *= 2;
    }

    order.sort_unstable_by_key(|&i| (rank[i], i));
    order
}

/// Forward transform of one non-empty block.
pub fn bwt_forward(block: &[u8]) -> Result<BwtBlock> {
    if block.is_empty() {
        return Err(Error::InvalidInput("cannot transform an empty block".into()));
    }
    let n = block.len();
    let order = sorted_rotations(block);
    let primary_index = order
        .iter()
        .position(|&start| start == 0)
        .expect("rotation 0 is always present");
    let data = order.iter().map(|&start| block[(start + n - 1) % n]).collect();
    Ok(BwtBlock {
        data,
        primary_index,
    })
}

/// Inverse transform via the LF mapping.
pub fn bwt_inverse(block: &BwtBlock) -> Result<Vec<u8>> {
    let last = &block.data;
    let n = last.len();
    if block.primary_index >= n {
        return Err(Error::InvalidInput(format!(
            "primary index {} out of range for block of length {}",
            block.primary_index, n
        )));
    }

    let mut counts = [0usize; 256];
    for &b in last {
        counts[b as usize] += 1;
    }
    // first row of each symbol in the sorted first column
    let mut starts = [0usize; 256];
    let mut acc = 0;
    for (start, &count) in starts.iter_mut().zip(counts.iter()) {
        *start = acc;
        acc += count;
    }

    let mut seen = [0usize; 256];
    let lf: Vec<usize> = last
        .iter()
        .map(|&b| {
            let row = starts[b as usize] + seen[b as usize];
            seen[b as usize] += 1;
            row
        })
        .collect();

    let mut out = vec![0u8; n];
    let mut row = block.primary_index;
    for slot in out.iter_mut().rev() {
        *slot = last[row];
        row = lf[row];
    }
    Ok(out)
}
