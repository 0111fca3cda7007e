// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use crate::bits;
use crate::error::Result;
use crate::tt::{Point, TruthTable};

/// Sensitivity value with its witness point and the sensitive coordinates there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sensitivity {
    pub value: usize,
    pub point: Point,
    pub coords: usize,
}

impl Sensitivity {
    pub fn validate(&self, f: &TruthTable) -> bool {
        self.point.arity() == f.arity()
            && sensitive_coords_at(f, self.point.bits()) == self.coords
            && self.coords.count_ones() as usize == self.value
    }
}

impl Serialize for Sensitivity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Sensitivity", 2)?;
        st.serialize_field("point", &self.point.to_string())?;
        st.serialize_field("coords", &bits::coords(self.coords))?;
        st.end()
    }
}

pub fn sensitive_coords_at(f: &TruthTable, x: usize) -> usize {
    let v = f.get(x);
    (0..f.arity())
        .filter(|&i| f.get(x ^ 1 << i) != v)
        .fold(0, |m, i| m | 1 << i)
}

pub fn sensitivity_at(f: &TruthTable, x: usize) -> usize {
    sensitive_coords_at(f, x).count_ones() as usize
}

/// Pointwise at `at`, otherwise the maximum over all points (lowest argmax).
pub fn sensitivity(f: &TruthTable, at: Option<&Point>) -> Result<Sensitivity> {
    if let Some(a) = at {
        f.check_same(a.arity())?;
        let coords = sensitive_coords_at(f, a.bits());
        return Ok(Sensitivity {
            value: coords.count_ones() as usize,
            point: *a,
            coords,
        });
    }
    let x = argmax_point(f);
    let coords = sensitive_coords_at(f, x);
    Ok(Sensitivity {
        value: coords.count_ones() as usize,
        point: Point::new(f.arity(), x)?,
        coords,
    })
}

/// Bit-sliced per-point counts: for each word, five counter planes accumulate
/// the `f(x) ≠ f(x ⊕ e_i)` bits of all variables at once.
fn argmax_point(f: &TruthTable) -> usize {
    let n = f.arity();
    let words = f.words();
    let flips: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            bits::flip_along(words, n, i)
                .iter()
                .zip(words)
                .map(|(a, b)| a ^ b)
                .collect()
        })
        .collect();
    let lanes = 64.min(f.size());
    let mut best = (0usize, 0usize);
    for w in 0..words.len() {
        let mut planes = [0u64; 5];
        for d in &flips {
            let mut carry = d[w];
            for p in planes.iter_mut() {
                let t = *p & carry;
                *p ^= carry;
                carry = t;
            }
        }
        for j in 0..lanes {
            let v = planes
                .iter()
                .enumerate()
                .fold(0usize, |acc, (k, p)| acc | ((p >> j & 1) as usize) << k);
            if v > best.0 {
                best = (v, w << 6 | j);
            }
        }
    }
    best.1
}
