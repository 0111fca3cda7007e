// SPDX-License-Identifier: Apache-2.0

//! Affine maps `x ↦ Mx ⊕ b` over GF(2)^n.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bits;
use crate::error::{Error, Result};
use crate::tt::check_arity;

/// Column `i` is the image of `e_{i+1}`; bit `j` of a column is output coordinate `j + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    arity: usize,
    columns: Vec<usize>,
    shift: usize,
}

impl AffineMap {
    pub fn new(arity: usize, columns: Vec<usize>, shift: usize) -> Result<Self> {
        check_arity(arity, "affine map")?;
        if columns.len() != arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: columns.len(),
            });
        }
        let full = bits::full_mask(arity);
        if columns.iter().chain(std::iter::once(&shift)).any(|c| c & !full != 0) {
            return Err(Error::InvalidParameter(format!(
                "column or shift exceeds arity {arity}"
            )));
        }
        Ok(AffineMap {
            arity,
            columns,
            shift,
        })
    }

    pub fn identity(arity: usize) -> Self {
        AffineMap {
            arity,
            columns: (0..arity).map(|i| 1 << i).collect(),
            shift: 0,
        }
    }

    pub fn translation(arity: usize, shift: usize) -> Result<Self> {
        AffineMap::new(arity, (0..arity).map(|i| 1 << i).collect(), shift)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn linear_part(&self) -> AffineMap {
        AffineMap {
            shift: 0,
            ..self.clone()
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        let mut y = self.shift;
        let mut m = x;
        while m != 0 {
            y ^= self.columns[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        y
    }

    /// `self ∘ inner`, i.e. `x ↦ M(M'x ⊕ b') ⊕ b`.
    pub fn compose(&self, inner: &AffineMap) -> Result<AffineMap> {
        if inner.arity != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: inner.arity,
            });
        }
        let linear = self.linear_part();
        Ok(AffineMap {
            arity: self.arity,
            columns: inner.columns.iter().map(|&c| linear.apply(c)).collect(),
            shift: self.apply(inner.shift),
        })
    }

    /// Rank of the column matrix over GF(2).
    pub fn rank(&self) -> usize {
        let mut basis: Vec<usize> = Vec::with_capacity(self.arity);
        for &c in &self.columns {
            let mut v = c;
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        basis.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.arity
    }
}

impl Serialize for AffineMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AffineMap", 3)?;
        st.serialize_field("arity", &self.arity)?;
        let cols: Vec<String> = self.columns.iter().map(|c| format!("{c:x}")).collect();
        st.serialize_field("columns", &cols)?;
        st.serialize_field("shift", &format!("{:x}", self.shift))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invertibility_examples() {
        assert!(AffineMap::identity(5).is_invertible());
        assert!(!AffineMap::new(3, vec![1, 0, 4], 0).unwrap().is_invertible());
        // columns (1,1) and (0,1)
        assert!(AffineMap::new(2, vec![0b11, 0b10], 0).unwrap().is_invertible());
        assert!(!AffineMap::new(3, vec![0b011, 0b110, 0b101], 0)
            .unwrap()
            .is_invertible());
        assert!(AffineMap::identity(0).is_invertible());
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(AffineMap::new(2, vec![1], 0).is_err());
        assert!(AffineMap::new(2, vec![1, 4], 0).is_err());
        assert!(AffineMap::new(2, vec![1, 2], 4).is_err());
    }

    #[test]
    fn compose_matches_pointwise() {
        let a = AffineMap::new(3, vec![0b011, 0b100, 0b110], 0b101).unwrap();
        let b = AffineMap::new(3, vec![0b111, 0b001, 0b010], 0b010).unwrap();
        let ab = a.compose(&b).unwrap();
        for x in 0..8 {
            assert_eq!(ab.apply(x), a.apply(b.apply(x)));
        }
    }
}
