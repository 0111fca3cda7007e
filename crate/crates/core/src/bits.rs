// SPDX-License-Identifier: Apache-2.0

//! Word-level primitives over packed truth tables.
//!
//! A table on `n` variables is a slice of `u64` words; bit `x & 63` of word
//! `x >> 6` holds the entry at input index `x`. Tables with fewer than six
//! variables occupy the low `2^n` bits of a single word and keep the rest zero.

use crate::error::{Error, Result};

/// Lanes of a word whose in-word index has bit `i` set, for `i < 6`.
pub const LANE_MASKS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

#[inline]
pub fn word_count(arity: usize) -> usize {
    if arity < 6 {
        1
    } else {
        1 << (arity - 6)
    }
}

/// Mask of the bits that carry table entries in each word.
#[inline]
pub fn live_mask(arity: usize) -> u64 {
    if arity < 6 {
        (1u64 << (1u32 << arity)) - 1
    } else {
        u64::MAX
    }
}

#[inline]
pub fn get(words: &[u64], x: usize) -> bool {
    (words[x >> 6] >> (x & 63)) & 1 == 1
}

/// `out[x] = src[x ^ e_i]`.
pub fn flip_along(src: &[u64], arity: usize, i: usize) -> Vec<u64> {
    debug_assert!(i < arity);
    if i < 6 {
        let s = 1u32 << i;
        let m = LANE_MASKS[i];
        src.iter()
            .map(|&w| ((w & m) >> s) | ((w & !m) << s))
            .collect()
    } else {
        let stride = 1usize << (i - 6);
        (0..src.len()).map(|w| src[w ^ stride]).collect()
    }
}

/// In place: `words[B] |= words[C]` for every `C ⊆ B` (zeta transform over OR).
pub fn subset_or(words: &mut [u64], arity: usize) {
    for (i, &m) in LANE_MASKS.iter().enumerate().take(arity.min(6)) {
        let s = 1u32 << i;
        for w in words.iter_mut() {
            *w |= (*w << s) & m;
        }
    }
    for i in 6..arity {
        let stride = 1usize << (i - 6);
        for w in 0..words.len() {
            if w & stride != 0 {
                words[w] |= words[w ^ stride];
            }
        }
    }
}

/// In place: `words[B] = XOR over C ⊆ B of words[C]` (the GF(2) Möbius transform,
/// which is its own inverse).
pub fn subset_xor(words: &mut [u64], arity: usize) {
    for (i, &m) in LANE_MASKS.iter().enumerate().take(arity.min(6)) {
        let s = 1u32 << i;
        for w in words.iter_mut() {
            *w ^= (*w << s) & m;
        }
    }
    for i in 6..arity {
        let stride = 1usize << (i - 6);
        for w in 0..words.len() {
            if w & stride != 0 {
                words[w] ^= words[w ^ stride];
            }
        }
    }
}

/// `out[B] = OR over i in B of src[B ^ e_i]`.
pub fn one_down_or(src: &[u64], arity: usize) -> Vec<u64> {
    let mut out = vec![0u64; src.len()];
    for (i, &m) in LANE_MASKS.iter().enumerate().take(arity.min(6)) {
        let s = 1u32 << i;
        for (o, &w) in out.iter_mut().zip(src) {
            *o |= (w << s) & m;
        }
    }
    for i in 6..arity {
        let stride = 1usize << (i - 6);
        for w in 0..src.len() {
            if w & stride != 0 {
                out[w] |= src[w ^ stride];
            }
        }
    }
    out
}

/// Permutes the lanes of `word`: lane `j` of the result is lane `j ^ m` of the input.
#[inline]
pub fn xor_permute(mut word: u64, m: usize) -> u64 {
    for (t, &lm) in LANE_MASKS.iter().enumerate() {
        if m & (1 << t) != 0 {
            let s = 1u32 << t;
            word = ((word & lm) >> s) | ((word & !lm) << s);
        }
    }
    word
}

/// Renders a mask as a bit string, `x1` first.
pub fn format_bits(mask: usize, arity: usize) -> String {
    (0..arity)
        .map(|i| if mask >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parses a bit string written `x1` first.
pub fn parse_bits(text: &str, arity: usize) -> Result<usize> {
    let text = text.trim();
    if text.len() != arity {
        return Err(Error::parse(format!(
            "bit string {text:?} has length {}, expected {arity}",
            text.len()
        )));
    }
    text.chars().enumerate().try_fold(0usize, |acc, (i, c)| match c {
        '0' => Ok(acc),
        '1' => Ok(acc | 1 << i),
        _ => Err(Error::parse(format!("invalid bit {c:?} in {text:?}"))),
    })
}

/// Coordinates of a mask, numbered from 1.
pub fn coords(mask: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize + 1);
        m &= m - 1;
    }
    out
}

#[inline]
pub fn full_mask(arity: usize) -> usize {
    if arity == 0 {
        0
    } else {
        usize::MAX >> (usize::BITS as usize - arity)
    }
}
