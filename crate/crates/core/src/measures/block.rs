// SPDX-License-Identifier: Apache-2.0

//! Exact block sensitivity.
//!
//! Any sensitive block contains a minimal one, so `bs(f, a)` is the maximum
//! number of pairwise-disjoint minimal sensitive blocks. Minimal blocks come
//! from a subset-OR transform of the sensitivity table at `a`; the packing is a
//! memoized search over the mask of still-available coordinates.

use serde::Serialize;

use super::{ceiling, Limits};
use crate::bits;
use crate::error::Result;
use crate::par;
use crate::tt::{Point, TruthTable};

/// Pairwise-disjoint sensitive blocks at `point`, as coordinate masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockFamily {
    pub point: Point,
    pub blocks: Vec<usize>,
}

impl BlockFamily {
    pub fn value(&self) -> usize {
        self.blocks.len()
    }

    pub fn validate(&self, f: &TruthTable) -> bool {
        if self.point.arity() != f.arity() {
            return false;
        }
        let a = self.point.bits();
        let full = bits::full_mask(f.arity());
        let mut used = 0usize;
        for &b in &self.blocks {
            if b == 0 || b & !full != 0 || b & used != 0 || f.get(a ^ b) == f.get(a) {
                return false;
            }
            used |= b;
        }
        true
    }
}

impl Serialize for BlockFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BlockFamily", 2)?;
        st.serialize_field("point", &self.point.to_string())?;
        let blocks: Vec<Vec<usize>> = self.blocks.iter().map(|&b| bits::coords(b)).collect();
        st.serialize_field("blocks", &blocks)?;
        st.end()
    }
}

/// Minimal sensitive blocks at point `a`, in increasing mask order.
pub fn minimal_sensitive_blocks(f: &TruthTable, a: usize) -> Vec<usize> {
    let n = f.arity();
    let live = bits::live_mask(n);
    let fill = if f.get(a) { live } else { 0 };
    let sens: Vec<u64> = f.shift_by(a).words().iter().map(|w| (w ^ fill) & live).collect();
    let mut any = sens.clone();
    bits::subset_or(&mut any, n);
    let strict = bits::one_down_or(&any, n);
    let mut out = Vec::new();
    for (w, (&s, &t)) in sens.iter().zip(&strict).enumerate() {
        let mut m = s & !t;
        while m != 0 {
            out.push(w << 6 | m.trailing_zeros() as usize);
            m &= m - 1;
        }
    }
    out
}

struct Packer {
    by_min: Vec<Vec<usize>>,
    min_size: u32,
    memo: Vec<u8>,
}

const UNKNOWN: u8 = u8::MAX;

impl Packer {
    fn new(arity: usize, blocks: &[usize]) -> Self {
        let mut by_min = vec![Vec::new(); arity];
        for &b in blocks {
            by_min[b.trailing_zeros() as usize].push(b);
        }
        let min_size = blocks.iter().map(|b| b.count_ones()).min().unwrap_or(1);
        Packer {
            by_min,
            min_size,
            memo: vec![UNKNOWN; 1 << arity],
        }
    }

    fn pack(&mut self, avail: usize) -> u8 {
        if avail == 0 {
            return 0;
        }
        if self.memo[avail] != UNKNOWN {
            return self.memo[avail];
        }
        let j = avail.trailing_zeros() as usize;
        let bound = (avail.count_ones() / self.min_size) as u8;
        let mut best = self.pack(avail & !(1 << j));
        for k in 0..self.by_min[j].len() {
            if best >= bound {
                break;
            }
            let b = self.by_min[j][k];
            if b & !avail == 0 {
                best = best.max(1 + self.pack(avail & !b));
            }
        }
        self.memo[avail] = best;
        best
    }

    /// Lowest-first reconstruction: cover the lowest available coordinate when
    /// some optimum does, using the smallest such block.
    fn witness(&mut self, full: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut avail = full;
        while avail != 0 {
            let target = self.pack(avail);
            if target == 0 {
                break;
            }
            let j = avail.trailing_zeros() as usize;
            let mut chosen = None;
            for k in 0..self.by_min[j].len() {
                let b = self.by_min[j][k];
                if b & !avail == 0 && 1 + self.pack(avail & !b) == target {
                    chosen = Some(b);
                    break;
                }
            }
            match chosen {
                Some(b) => {
                    out.push(b);
                    avail &= !b;
                }
                None => avail &= !(1 << j),
            }
        }
        out
    }
}

fn family_at(f: &TruthTable, a: usize) -> BlockFamily {
    let blocks = minimal_sensitive_blocks(f, a);
    let mut packer = Packer::new(f.arity(), &blocks);
    BlockFamily {
        point: Point::new(f.arity(), a).expect("point within arity"),
        blocks: packer.witness(bits::full_mask(f.arity())),
    }
}

fn value_at(f: &TruthTable, a: usize) -> usize {
    let blocks = minimal_sensitive_blocks(f, a);
    Packer::new(f.arity(), &blocks).pack(bits::full_mask(f.arity())) as usize
}

/// `bs(f, a)` for every point `a`, in index order; no ceiling check.
pub fn block_values(f: &TruthTable) -> Vec<usize> {
    par::map_range(0..f.size(), |a| value_at(f, a))
}

/// `bs(f, a)` with a maximum block family; no ceiling check.
pub fn block_sensitivity_at(f: &TruthTable, a: &Point) -> Result<BlockFamily> {
    f.check_same(a.arity())?;
    Ok(family_at(f, a.bits()))
}

/// Pointwise at `at`, otherwise maximized over all points (lowest argmax).
pub fn block_sensitivity(f: &TruthTable, at: Option<&Point>, limits: &Limits) -> Result<BlockFamily> {
    ceiling("bs", f.arity(), limits.block_sensitivity)?;
    if let Some(a) = at {
        return block_sensitivity_at(f, a);
    }
    let (a, _) = par::argmax_by_key(0..f.size(), |a| value_at(f, a), |&v| v)
        .expect("cube is nonempty");
    Ok(family_at(f, a))
}
