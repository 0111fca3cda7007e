// SPDX-License-Identifier: Apache-2.0

//! Alternation along monotone chains, and its minimum over all shifts.

use serde::Serialize;

use super::{ceiling, Limits};
use crate::bits;
use crate::error::Result;
use crate::par;
use crate::tt::{Point, TruthTable};

/// A maximal chain `0 = x_0 < x_1 < ... < x_n = 1^n` and the number of value changes on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub points: Vec<usize>,
    pub alternations: usize,
}

impl Chain {
    pub fn validate(&self, f: &TruthTable) -> bool {
        let n = f.arity();
        if self.points.len() != n + 1
            || self.points[0] != 0
            || self.points[n] != bits::full_mask(n)
        {
            return false;
        }
        let mut changes = 0;
        for w in self.points.windows(2) {
            let step = w[1] ^ w[0];
            if w[0] & w[1] != w[0] || step.count_ones() != 1 {
                return false;
            }
            changes += (f.get(w[0]) != f.get(w[1])) as usize;
        }
        changes == self.alternations
    }

    fn to_strings(&self, arity: usize) -> Vec<String> {
        self.points.iter().map(|&x| bits::format_bits(x, arity)).collect()
    }
}

/// Shift-invariant alternation with the minimizing shift and an optimal chain of `f ⊕ shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Salt {
    pub value: usize,
    pub shift: Point,
    pub chain: Chain,
}

impl Serialize for Chain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let arity = self.points.len().saturating_sub(1);
        self.to_strings(arity).serialize(s)
    }
}

impl Serialize for Salt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Salt", 2)?;
        st.serialize_field("shift", &self.shift.to_string())?;
        st.serialize_field("chain", &self.chain)?;
        st.end()
    }
}

/// `alt(f ⊕ b)` by the forward chain DP, scalar.
pub fn alternation_value_shifted(f: &TruthTable, b: usize) -> usize {
    let size = f.size();
    let mut best = vec![0u8; size];
    for x in 1..size {
        let v = f.get(x ^ b);
        let mut acc = 0u8;
        let mut m = x;
        while m != 0 {
            let y = x & !(1 << m.trailing_zeros());
            acc = acc.max(best[y] + (f.get(y ^ b) != v) as u8);
            m &= m - 1;
        }
        best[x] = acc;
    }
    best[size - 1] as usize
}

pub fn alternation_value(f: &TruthTable) -> usize {
    alternation_value_shifted(f, 0)
}

/// Optimal chain of `f ⊕ b`: a suffix DP, then a forward pass taking the
/// lowest coordinate that stays optimal at each step.
fn chain_shifted(f: &TruthTable, b: usize) -> Chain {
    let n = f.arity();
    let full = bits::full_mask(n);
    let g = |x: usize| f.get(x ^ b);
    let mut rest = vec![0u8; f.size()];
    for x in (0..full).rev() {
        let v = g(x);
        let mut acc = 0u8;
        let mut m = full & !x;
        while m != 0 {
            let y = x | 1 << m.trailing_zeros();
            acc = acc.max(rest[y] + (g(y) != v) as u8);
            m &= m - 1;
        }
        rest[x] = acc;
    }
    let mut points = vec![0usize];
    let mut x = 0usize;
    while x != full {
        let v = g(x);
        let mut m = full & !x;
        loop {
            let y = x | 1 << m.trailing_zeros();
            if rest[y] + (g(y) != v) as u8 == rest[x] {
                x = y;
                break;
            }
            m &= m - 1;
        }
        points.push(x);
    }
    Chain {
        points,
        alternations: rest[0] as usize,
    }
}

/// Alternation with a lexicographically smallest optimal chain.
pub fn alternation(f: &TruthTable) -> Chain {
    chain_shifted(f, 0)
}

/// Bit-sliced counters: `PL` planes hold one small integer per lane.
type Planes<const PL: usize> = [u64; PL];

#[inline]
fn add_bit<const PL: usize>(mut a: Planes<PL>, mut carry: u64) -> Planes<PL> {
    for p in a.iter_mut() {
        let t = *p & carry;
        *p ^= carry;
        carry = t;
    }
    a
}

#[inline]
fn lane_max<const PL: usize>(a: &Planes<PL>, b: &Planes<PL>) -> Planes<PL> {
    let mut gt = 0u64;
    let mut eq = !0u64;
    for k in (0..PL).rev() {
        gt |= eq & a[k] & !b[k];
        eq &= !(a[k] ^ b[k]);
    }
    let mut out = [0u64; PL];
    for k in 0..PL {
        out[k] = (a[k] & gt) | (b[k] & !gt);
    }
    out
}

/// Alternation of all 64 shifts `b = hi·64 + j` at once; lane `j` tracks shift `b`.
/// `perm[w·64 + m]` holds table word `w` with lanes permuted by `j ↦ j ^ m`.
fn block_alts<const PL: usize>(perm: &[u64], arity: usize, hi: usize) -> [u8; 64] {
    let size = 1usize << arity;
    let g: Vec<u64> = (0..size)
        .map(|x| perm[((x >> 6) ^ hi) << 6 | (x & 63)])
        .collect();
    let mut best: Vec<Planes<PL>> = vec![[0u64; PL]; size];
    for x in 1..size {
        let gx = g[x];
        let mut acc = [0u64; PL];
        let mut m = x;
        while m != 0 {
            let y = x & !(1 << m.trailing_zeros());
            acc = lane_max(&acc, &add_bit(best[y], gx ^ g[y]));
            m &= m - 1;
        }
        best[x] = acc;
    }
    let top = &best[size - 1];
    let mut out = [0u8; 64];
    for (j, o) in out.iter_mut().enumerate() {
        *o = (0..PL).fold(0u8, |acc, k| acc | ((top[k] >> j & 1) as u8) << k);
    }
    out
}

/// `alt(f ⊕ b)` for every shift `b`, in index order.
pub fn salt_values(f: &TruthTable) -> Vec<u8> {
    let n = f.arity();
    if n < 6 {
        return (0..f.size())
            .map(|b| alternation_value_shifted(f, b) as u8)
            .collect();
    }
    let perm: Vec<u64> = f
        .words()
        .iter()
        .flat_map(|&w| (0..64).map(move |m| bits::xor_permute(w, m)))
        .collect();
    let blocks = par::map_range(0..f.size() >> 6, |hi| match n {
        0..=7 => block_alts::<3>(&perm, n, hi),
        8..=15 => block_alts::<4>(&perm, n, hi),
        _ => block_alts::<5>(&perm, n, hi),
    });
    blocks.into_iter().flatten().collect()
}

/// `salt(f) = min_b alt(f ⊕ b)`, lowest minimizing shift.
pub fn shift_invariant_alternation(f: &TruthTable, limits: &Limits) -> Result<Salt> {
    ceiling("salt", f.arity(), limits.salt)?;
    let values = salt_values(f);
    let (b, &v) = values
        .iter()
        .enumerate()
        .min_by_key(|&(b, &v)| (v, b))
        .expect("cube is nonempty");
    Ok(Salt {
        value: v as usize,
        shift: Point::new(f.arity(), b)?,
        chain: chain_shifted(f, b),
    })
}
