//! Brute-force reference implementations, written straight from the
//! definitions. Tables are `Vec<bool>` indexed with x1 as the low bit.
#![allow(dead_code)]

use std::collections::HashMap;

use boolfn::TruthTable;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn table(f: &TruthTable) -> Vec<bool> {
    (0..f.size()).map(|x| f.get(x)).collect()
}

pub fn arity(t: &[bool]) -> usize {
    t.len().trailing_zeros() as usize
}

pub fn random(n: usize, rng: &mut ChaCha8Rng) -> TruthTable {
    TruthTable::from_fn(n, |_| rng.random::<bool>()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn s_at(t: &[bool], x: usize) -> usize {
    (0..arity(t)).filter(|i| t[x] != t[x ^ (1 << i)]).count()
}

pub fn s(t: &[bool]) -> usize {
    (0..t.len()).map(|x| s_at(t, x)).max().unwrap()
}

/// Largest packing of pairwise disjoint sensitive blocks, by exhaustive search.
pub fn bs_at(t: &[bool], x: usize) -> usize {
    let blocks: Vec<usize> = (1..t.len()).filter(|&b| t[x] != t[x ^ b]).collect();
    fn pack(blocks: &[usize], used: usize, memo: &mut HashMap<(usize, usize), usize>, from: usize) -> usize {
        if let Some(&v) = memo.get(&(used, from)) {
            return v;
        }
        let mut best = 0;
        for (i, &b) in blocks.iter().enumerate().skip(from) {
            if b & used == 0 {
                best = best.max(1 + pack(blocks, used | b, memo, i + 1));
            }
        }
        memo.insert((used, from), best);
        best
    }
    pack(&blocks, 0, &mut HashMap::new(), 0)
}

pub fn bs(t: &[bool]) -> usize {
    (0..t.len()).map(|x| bs_at(t, x)).max().unwrap()
}

pub fn c_at(t: &[bool], x: usize) -> usize {
    let n = arity(t);
    (0..t.len())
        .filter(|&set| (0..t.len()).all(|y| (y ^ x) & set != 0 || t[y] == t[x]))
        .map(|set: usize| set.count_ones() as usize)
        .min()
        .unwrap_or(n)
}

pub fn c(t: &[bool]) -> usize {
    (0..t.len()).map(|x| c_at(t, x)).max().unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Maximum number of value changes along a maximal chain 0ⁿ → 1ⁿ; every
/// chain is a permutation of the coordinates.
pub fn alt(t: &[bool]) -> usize {
    let n = arity(t);
    permutations(n)
        .iter()
        .map(|p| {
            let mut x = 0;
            let mut changes = 0;
            for &i in p {
                let y = x | 1 << i;
                changes += (t[x] != t[y]) as usize;
                x = y;
            }
            changes
        })
        .max()
        .unwrap()
}

pub fn shifted(t: &[bool], b: usize) -> Vec<bool> {
    (0..t.len()).map(|x| t[x ^ b]).collect()
}

pub fn salt(t: &[bool]) -> usize {
    (0..t.len()).map(|b| alt(&shifted(t, b))).min().unwrap()
}

/// Coefficient of ∏_{i∈S} x_i in the real multilinear polynomial.
pub fn real_coeff(t: &[bool], set: usize) -> i64 {
    (0..t.len())
        .filter(|&y| y & !set == 0)
        .map(|y| {
            let sign = if (set.count_ones() - y.count_ones()).is_multiple_of(2) { 1 } else { -1 };
            sign * t[y] as i64
        })
        .sum()
}

pub fn deg(t: &[bool]) -> usize {
    (0..t.len())
        .filter(|&m| real_coeff(t, m) != 0)
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn deg_p(t: &[bool], p: i64) -> usize {
    (0..t.len())
        .filter(|&m| real_coeff(t, m).rem_euclid(p) != 0)
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn fourier(t: &[bool], set: usize) -> i64 {
    (0..t.len())
        .map(|x| if t[x] ^ ((x & set).count_ones() % 2 == 1) { -1 } else { 1 })
        .sum()
}

pub fn sparsity(t: &[bool]) -> usize {
    (0..t.len()).filter(|&m| fourier(t, m) != 0).count()
}

/// Minimax over restrictions, keyed by (fixed mask, fixed values).
pub fn dt(t: &[bool]) -> usize {
    fn go(t: &[bool], mask: usize, vals: usize, memo: &mut HashMap<(usize, usize), usize>) -> usize {
        if let Some(&v) = memo.get(&(mask, vals)) {
            return v;
        }
        let n = arity(t);
        let mut seen = [false; 2];
        for x in 0..t.len() {
            if x & mask == vals {
                seen[t[x] as usize] = true;
            }
        }
        let v = if !(seen[0] && seen[1]) {
            0
        } else {
            (0..n)
                .filter(|i| mask >> i & 1 == 0)
                .map(|i| {
                    let a = go(t, mask | 1 << i, vals, memo);
                    let b = go(t, mask | 1 << i, vals | 1 << i, memo);
                    1 + a.max(b)
                })
                .min()
                .unwrap()
        };
        memo.insert((mask, vals), v);
        v
    }
    go(t, 0, 0, &mut HashMap::new())
}
