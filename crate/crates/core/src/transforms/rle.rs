//! Pair-triggered run-length coding.
//!
//! A lone byte is copied through. Two equal bytes are always followed by a
//! count byte holding how many further copies follow (0..=255). Runs longer
//! than 257 are split into several such groups.

use crate::error::{corrupt, Result};

pub fn rle_encode(input: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(input.len());
    let mut i = 0;
    while i < input.len() {
        let b = input[i];
        let run = input[i..].iter().take_while(|&&x| x == b).count();
        i += run;

        let mut left = run;
        while left > 0 {
            if left == 1 {
                out.push(b);
                left = 0;
            } else {
                let extra = (left - 2).min(255);
                out.extend_from_slice(&[b, b, extra as u8]);
                left -= 2 + extra;
            }
        }
    }
    out
}

pub fn rle_decode(input: &[u8]) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(input.len() * 2);
    let mut i = 0;
    while i < input.len() {
        let b = input[i];
        if input.get(i + 1) == Some(&b) {
            let extra = *input
                .get(i + 2)
                .ok_or_else(|| corrupt(format!("run pair at offset {i} has no count byte")))?;
            out.resize(out.len() + 2 + extra as usize, b);
            i += 3;
        } else {
            out.push(b);
            i += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn examples() {
        assert_eq!(rle_encode(&[97, 97, 97, 97]), vec![97, 97, 2]);
        assert_eq!(rle_encode(&[97, 98]), vec![97, 98]);
        assert_eq!(rle_encode(&[97; 260]), vec![97, 97, 255, 97, 97, 1]);
        assert_eq!(rle_decode(&[97, 97, 2]).unwrap(), vec![97; 4]);
        assert_eq!(rle_decode(&[97, 98]).unwrap(), vec![97, 98]);
        assert!(matches!(rle_decode(&[97, 97]), Err(Error::CorruptStream(_))));
    }

    #[test]
    fn split_runs_leave_a_single_tail() {
        // 258 = 257 + 1: the tail byte stands alone before the next run
        let mut input = vec![7u8; 258];
        input.push(8);
        let enc = rle_encode(&input);
        assert_eq!(enc, vec![7, 7, 255, 7, 8]);
        assert_eq!(rle_decode(&enc).unwrap(), input);
    }

    #[test]
    fn count_byte_equal_to_next_symbol() {
        let input = [3u8, 3, 3, 3, 3, 2, 2];
        let enc = rle_encode(&input);
        assert_eq!(enc, vec![3, 3, 3, 2, 2, 0]);
        assert_eq!(rle_decode(&enc).unwrap(), input);
    }

    #[test]
    fn runs_of_three_or_more_never_grow() {
        for k in 3..600 {
            assert!(rle_encode(&vec![1u8; k]).len() <= k, "run of {k}");
        }
    }
}
