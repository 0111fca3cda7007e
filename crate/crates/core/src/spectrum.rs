// SPDX-License-Identifier: Apache-2.0

//! Exact Möbius (over ℤ and F_p) and Walsh–Hadamard spectra.
//!
//! Coefficients are indexed by subset masks `S ⊆ [n]`. All arithmetic is on
//! integers, so a zero coefficient is certified zero.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bits;
use crate::error::{Error, Result};
use crate::tt::TruthTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Multilinear coefficients over the integers.
    MoebiusZ,
    /// Multilinear coefficients reduced into `0..p`.
    MoebiusModP(u64),
    /// Unnormalized `Σ_x χ(x) (-1)^{S·x}` with `χ = 1 - 2f`.
    WalshHadamard,
}

impl Basis {
    pub fn name(&self) -> &'static str {
        match self {
            Basis::MoebiusZ => "moebius-z",
            Basis::MoebiusModP(_) => "moebius-mod-p",
            Basis::WalshHadamard => "walsh-hadamard-unnormalized",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumRep {
    arity: usize,
    basis: Basis,
    coeffs: Vec<i64>,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn table_values(f: &TruthTable) -> Vec<i64> {
    (0..f.size()).map(|x| f.get(x) as i64).collect()
}

/// In place `a[S] = Σ_{T⊆S} (-1)^{|S|-|T|} a[T]`.
fn moebius_in_place(a: &mut [i64], arity: usize) {
    for i in 0..arity {
        let bit = 1usize << i;
        for x in 0..a.len() {
            if x & bit != 0 {
                a[x] -= a[x ^ bit];
            }
        }
    }
}

fn zeta_in_place(a: &mut [i64], arity: usize) {
    for i in 0..arity {
        let bit = 1usize << i;
        for x in 0..a.len() {
            if x & bit != 0 {
                a[x] += a[x ^ bit];
            }
        }
    }
}

fn wht_in_place(a: &mut [i64]) {
    let mut h = 1;
    while h < a.len() {
        for block in a.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (u, v) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*u, *v);
                *u = x + y;
                *v = x - y;
            }
        }
        h *= 2;
    }
}

impl SpectrumRep {
    pub fn moebius(f: &TruthTable) -> SpectrumRep {
        let mut coeffs = table_values(f);
        moebius_in_place(&mut coeffs, f.arity());
        SpectrumRep {
            arity: f.arity(),
            basis: Basis::MoebiusZ,
            coeffs,
        }
    }

    /// Transform carried out in F_p directly (not by reducing the integer one).
    pub fn moebius_mod_p(f: &TruthTable, p: u64) -> Result<SpectrumRep> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let p = p as i64;
        let mut coeffs = table_values(f);
        for i in 0..f.arity() {
            let bit = 1usize << i;
            for x in 0..coeffs.len() {
                if x & bit != 0 {
                    coeffs[x] = (coeffs[x] - coeffs[x ^ bit]).rem_euclid(p);
                }
            }
        }
        Ok(SpectrumRep {
            arity: f.arity(),
            basis: Basis::MoebiusModP(p as u64),
            coeffs,
        })
    }

    pub fn walsh_hadamard(f: &TruthTable) -> SpectrumRep {
        let mut coeffs: Vec<i64> = (0..f.size()).map(|x| f.chi(x) as i64).collect();
        wht_in_place(&mut coeffs);
        SpectrumRep {
            arity: f.arity(),
            basis: Basis::WalshHadamard,
            coeffs,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, subset: usize) -> i64 {
        self.coeffs[subset]
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Largest `|S|` with a nonzero coefficient; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(s, _)| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Reconstructs the truth table; fails if the coefficients are not those of a Boolean function.
    pub fn inverse(&self) -> Result<TruthTable> {
        let mut v = self.coeffs.clone();
        match self.basis {
            Basis::MoebiusZ => zeta_in_place(&mut v, self.arity),
            Basis::MoebiusModP(p) => {
                zeta_in_place(&mut v, self.arity);
                for c in v.iter_mut() {
                    *c = c.rem_euclid(p as i64);
                }
            }
            Basis::WalshHadamard => {
                wht_in_place(&mut v);
                let size = 1i64 << self.arity;
                for c in v.iter_mut() {
                    if *c % size != 0 {
                        return Err(Error::Verification("non-integral inverse WHT".into()));
                    }
                    *c = (1 - *c / size) / 2;
                }
            }
        }
        if let Some(bad) = v.iter().find(|&&c| c != 0 && c != 1) {
            return Err(Error::Verification(format!(
                "inverse {} transform produced non-Boolean value {bad}",
                self.basis.name()
            )));
        }
        TruthTable::from_fn(self.arity, |x| v[x] == 1)
    }

    /// `Σ_S W(S)^2`; equals `4^n` for a Walsh–Hadamard spectrum.
    pub fn sum_of_squares(&self) -> i128 {
        self.coeffs.iter().map(|&c| (c as i128) * (c as i128)).sum()
    }
}

impl Serialize for SpectrumRep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SpectrumRep", 3)?;
        st.serialize_field("basis", self.basis.name())?;
        if let Basis::MoebiusModP(p) = self.basis {
            st.serialize_field("p", &p)?;
        }
        let nonzero: BTreeMap<String, i64> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (bits::format_bits(m, self.arity), c))
            .collect();
        st.serialize_field("coeffs", &nonzero)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn maj3() -> TruthTable {
        TruthTable::from_fn(3, |x| x.count_ones() >= 2).unwrap()
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn maj3_moebius() {
        // Maj3 = x1x2 + x1x3 + x2x3 - 2 x1x2x3
        let s = SpectrumRep::moebius(&maj3());
        assert_eq!(s.coeff(0b011), 1);
        assert_eq!(s.coeff(0b111), -2);
        assert_eq!(s.degree(), 3);
        let s2 = SpectrumRep::moebius_mod_p(&maj3(), 2).unwrap();
        assert_eq!(s2.degree(), 2);
        assert_eq!(s2.inverse().unwrap(), maj3());
        assert!(SpectrumRep::moebius_mod_p(&maj3(), 4).is_err());
    }

    #[test]
    fn and2_walsh() {
        let and2 = TruthTable::from_fn(2, |x| x == 3).unwrap();
        let w = SpectrumRep::walsh_hadamard(&and2);
        assert_eq!(w.coeffs(), &[2, 2, 2, -2]);
        assert_eq!(w.support_size(), 4);
        assert_eq!(w.sum_of_squares(), 16);
        assert_eq!(w.inverse().unwrap(), and2);
    }
}
