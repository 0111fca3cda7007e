// SPDX-License-Identifier: Apache-2.0

//! Packed truth tables, points of the cube and restrictions.
//!
//! Input index convention: variable `x1` is the least-significant bit of the
//! index, so the entry for `x = (x1, ..., xn)` lives at `Σ x_i 2^(i-1)`. Every
//! format and witness in the crate uses this order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::affine::AffineMap;
use crate::bits::{self, live_mask, word_count};
use crate::error::{Error, Result};

/// Largest arity accepted by table-level operations (2^24 bits = 2 MiB).
pub const MAX_ARITY: usize = 24;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    arity: usize,
    words: Vec<u64>,
}

/// A point `a ∈ {0,1}^n`, stored as an index mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    arity: usize,
    bits: usize,
}

impl Point {
    pub fn new(arity: usize, bits: usize) -> Result<Self> {
        check_arity(arity, "point")?;
        if bits & !bits::full_mask(arity) != 0 {
            return Err(Error::InvalidParameter(format!(
                "point {bits:#x} has bits beyond arity {arity}"
            )));
        }
        Ok(Point { arity, bits })
    }

    pub fn zeros(arity: usize) -> Self {
        Point { arity, bits: 0 }
    }

    pub fn ones(arity: usize) -> Self {
        Point {
            arity,
            bits: bits::full_mask(arity),
        }
    }

    /// Parses a bit string written `x1` first, e.g. `"100"` is `x1 = 1`.
    pub fn parse(text: &str, arity: usize) -> Result<Self> {
        Point::new(arity, bits::parse_bits(text, arity)?)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bits::format_bits(self.bits, self.arity))
    }
}

/// A partial assignment: the variables in `fixed_mask` are pinned to the
/// corresponding bits of `fixed_values`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Restriction {
    fixed_mask: usize,
    fixed_values: usize,
}

impl Restriction {
    pub fn new(fixed_mask: usize, fixed_values: usize) -> Result<Self> {
        if fixed_values & !fixed_mask != 0 {
            return Err(Error::MalformedRestriction(format!(
                "values {fixed_values:#x} set outside mask {fixed_mask:#x}"
            )));
        }
        Ok(Restriction {
            fixed_mask,
            fixed_values,
        })
    }

    pub fn empty() -> Self {
        Restriction::default()
    }

    pub fn fixed_mask(&self) -> usize {
        self.fixed_mask
    }

    pub fn fixed_values(&self) -> usize {
        self.fixed_values
    }

    /// Adds `x_i = value`; the variable must not already be fixed.
    pub fn with(&self, i: usize, value: bool) -> Result<Self> {
        if self.fixed_mask >> i & 1 == 1 {
            return Err(Error::MalformedRestriction(format!("x{} fixed twice", i + 1)));
        }
        Restriction::new(
            self.fixed_mask | 1 << i,
            self.fixed_values | (value as usize) << i,
        )
    }
}

pub(crate) fn check_arity(arity: usize, what: &'static str) -> Result<()> {
    if arity > MAX_ARITY {
        Err(Error::ArityTooLarge {
            what,
            arity,
            max: MAX_ARITY,
        })
    } else {
        Ok(())
    }
}

impl TruthTable {
    pub fn constant(arity: usize, value: bool) -> Result<Self> {
        check_arity(arity, "truth table")?;
        let fill = if value { live_mask(arity) } else { 0 };
        Ok(TruthTable {
            arity,
            words: vec![fill; word_count(arity)],
        })
    }

    pub fn from_fn(arity: usize, mut f: impl FnMut(usize) -> bool) -> Result<Self> {
        check_arity(arity, "truth table")?;
        let size = 1usize << arity;
        let mut words = vec![0u64; word_count(arity)];
        for x in 0..size {
            if f(x) {
                words[x >> 6] |= 1 << (x & 63);
            }
        }
        Ok(TruthTable { arity, words })
    }

    pub fn from_words(arity: usize, words: Vec<u64>) -> Result<Self> {
        check_arity(arity, "truth table")?;
        if words.len() != word_count(arity) {
            return Err(Error::InvalidParameter(format!(
                "{} words for arity {arity}, expected {}",
                words.len(),
                word_count(arity)
            )));
        }
        if arity < 6 && words[0] & !live_mask(arity) != 0 {
            return Err(Error::InvalidParameter(format!(
                "bits beyond 2^{arity} entries are set"
            )));
        }
        Ok(TruthTable { arity, words })
    }

    /// The function whose table is the low `2^arity` bits of `code`; `arity <= 6`.
    pub fn from_index(arity: usize, code: u64) -> Result<Self> {
        if arity > 6 {
            return Err(Error::InvalidParameter(format!(
                "from_index supports arity <= 6, got {arity}"
            )));
        }
        TruthTable::from_words(arity, vec![code & live_mask(arity)])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of entries, `2^arity`.
    pub fn size(&self) -> usize {
        1 << self.arity
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, x: usize) -> bool {
        bits::get(&self.words, x)
    }

    /// The ±1 view `1 - 2 f(x)`.
    #[inline]
    pub fn chi(&self, x: usize) -> i32 {
        1 - 2 * self.get(x) as i32
    }

    pub fn evaluate(&self, x: &Point) -> Result<bool> {
        self.check_same(x.arity)?;
        Ok(self.get(x.bits))
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// `Some(v)` if the function is constantly `v`.
    pub fn constant_value(&self) -> Option<bool> {
        let live = live_mask(self.arity);
        if self.words.iter().all(|&w| w == 0) {
            Some(false)
        } else if self.words.iter().all(|&w| w == live) {
            Some(true)
        } else {
            None
        }
    }

    pub fn depends_on(&self, i: usize) -> bool {
        i < self.arity && bits::flip_along(&self.words, self.arity, i) != self.words
    }

    pub fn depends_on_all(&self) -> bool {
        (0..self.arity).all(|i| self.depends_on(i))
    }

    pub fn negate(&self) -> TruthTable {
        let live = live_mask(self.arity);
        TruthTable {
            arity: self.arity,
            words: self.words.iter().map(|w| !w & live).collect(),
        }
    }

    pub(crate) fn check_same(&self, arity: usize) -> Result<()> {
        if arity != self.arity {
            Err(Error::ArityMismatch {
                expected: self.arity,
                found: arity,
            })
        } else {
            Ok(())
        }
    }

    /// `f_b(x) = f(x ⊕ b)`.
    pub fn shift(&self, b: &Point) -> Result<TruthTable> {
        self.check_same(b.arity)?;
        Ok(self.shift_by(b.bits))
    }

    pub(crate) fn shift_by(&self, mask: usize) -> TruthTable {
        let mut words = self.words.clone();
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            words = bits::flip_along(&words, self.arity, i);
            m &= m - 1;
        }
        TruthTable {
            arity: self.arity,
            words,
        }
    }

    /// `g(x) = f(Mx ⊕ b)`.
    ///
    /// Walks `x` in increasing order; going from `x - 1` to `x` flips the bits
    /// `0..=tz(x)`, so `A(x)` is updated by one precomputed prefix XOR of columns.
    pub fn apply_affine(&self, map: &AffineMap) -> Result<TruthTable> {
        self.check_same(map.arity())?;
        let n = self.arity;
        let cols = map.columns();
        let mut prefix = Vec::with_capacity(n);
        let mut acc = 0usize;
        for &c in cols {
            acc ^= c;
            prefix.push(acc);
        }
        let mut words = vec![0u64; word_count(n)];
        let mut y = map.shift();
        if self.get(y) {
            words[0] |= 1;
        }
        for x in 1..self.size() {
            y ^= prefix[x.trailing_zeros() as usize];
            if self.get(y) {
                words[x >> 6] |= 1 << (x & 63);
            }
        }
        Ok(TruthTable { arity: n, words })
    }

    /// The subfunction on the unfixed variables (kept in increasing order).
    pub fn restrict(&self, rho: &Restriction) -> Result<TruthTable> {
        let n = self.arity;
        if rho.fixed_mask & !bits::full_mask(n) != 0 {
            return Err(Error::MalformedRestriction(format!(
                "mask {:#x} exceeds arity {n}",
                rho.fixed_mask
            )));
        }
        let free: Vec<usize> = (0..n).filter(|i| rho.fixed_mask >> i & 1 == 0).collect();
        TruthTable::from_fn(free.len(), |z| {
            let mut x = rho.fixed_values;
            for (t, &i) in free.iter().enumerate() {
                x |= (z >> t & 1) << i;
            }
            self.get(x)
        })
    }

    /// Serializes as `tt:<n>:<hex>`.
    ///
    /// Hex digit `k` (left to right) carries entries `4k..4k+3`, the lowest
    /// index in the digit's least-significant bit. Arity 0 and 1 use one digit.
    pub fn to_tt_string(&self) -> String {
        let digits = (self.size() / 4).max(1);
        let mut s = format!("tt:{}:", self.arity);
        for k in 0..digits {
            let nib = (self.words[k / 16] >> (4 * (k % 16))) & 0xF;
            s.push(char::from_digit(nib as u32, 16).unwrap());
        }
        s
    }

    /// Algebraic normal form over GF(2) as `anf:<n>:<poly>`.
    pub fn to_anf_string(&self) -> String {
        let mut coeffs = self.words.clone();
        bits::subset_xor(&mut coeffs, self.arity);
        let terms: Vec<String> = (0..self.size())
            .filter(|&m| bits::get(&coeffs, m))
            .map(|m| {
                if m == 0 {
                    "1".to_string()
                } else {
                    bits::coords(m)
                        .iter()
                        .map(|i| format!("x{i}"))
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        let poly = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        };
        format!("anf:{}:{poly}", self.arity)
    }

    fn parse_tt(arity: usize, hex: &str) -> Result<TruthTable> {
        check_arity(arity, "truth table")?;
        let hex = hex.trim();
        let digits = ((1usize << arity) / 4).max(1);
        if hex.len() != digits {
            return Err(Error::parse(format!(
                "bad hex length {} for arity {arity}, expected {digits}",
                hex.len()
            )));
        }
        let mut words = vec![0u64; word_count(arity)];
        for (k, c) in hex.chars().enumerate() {
            let nib = c
                .to_digit(16)
                .ok_or_else(|| Error::parse(format!("invalid hex digit {c:?}")))?;
            words[k / 16] |= (nib as u64) << (4 * (k % 16));
        }
        if arity < 2 && words[0] & !live_mask(arity) != 0 {
            return Err(Error::parse(format!(
                "hex digit sets entries beyond 2^{arity}"
            )));
        }
        Ok(TruthTable { arity, words })
    }

    fn parse_anf(arity: usize, poly: &str) -> Result<TruthTable> {
        check_arity(arity, "truth table")?;
        let mut coeffs = vec![0u64; word_count(arity)];
        let poly = poly.trim();
        if poly.is_empty() {
            return Err(Error::parse("empty ANF polynomial"));
        }
        for term in poly.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::parse(format!("empty term in {poly:?}")));
            }
            if term == "0" {
                continue;
            }
            let mut mono = 0usize;
            for factor in term.split(|c: char| c == '*' || c.is_whitespace()) {
                if factor.is_empty() || factor == "1" {
                    continue;
                }
                let idx = factor
                    .strip_prefix('x')
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| Error::parse(format!("unknown variable {factor:?}")))?;
                if idx == 0 || idx > arity {
                    return Err(Error::parse(format!(
                        "unknown variable {factor:?} for arity {arity}"
                    )));
                }
                mono |= 1 << (idx - 1);
            }
            coeffs[mono >> 6] ^= 1 << (mono & 63);
        }
        bits::subset_xor(&mut coeffs, arity);
        Ok(TruthTable {
            arity,
            words: coeffs,
        })
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    /// Accepts `tt:<n>:<hex>` and `anf:<n>:<poly>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut parts = s.splitn(3, ':');
        let kind = parts.next().unwrap_or_default();
        let arity = parts
            .next()
            .ok_or_else(|| Error::parse(format!("missing arity in {s:?}")))?;
        let body = parts
            .next()
            .ok_or_else(|| Error::parse(format!("missing body in {s:?}")))?;
        let arity: usize = arity
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad arity {arity:?}")))?;
        match kind {
            "tt" => TruthTable::parse_tt(arity, body),
            "anf" => TruthTable::parse_anf(arity, body),
            _ => Err(Error::parse(format!("unknown function format {kind:?}"))),
        }
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tt_string())
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable({})", self.to_tt_string())
    }
}

impl Serialize for TruthTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_tt_string())
    }
}

impl<'de> Deserialize<'de> for TruthTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
