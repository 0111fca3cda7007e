// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use super::{ceiling, Limits};
use crate::bits;
use crate::error::Result;
use crate::par;
use crate::tt::{Point, TruthTable};

/// A set `S` such that fixing `x_S = point_S` forces `f` constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub point: Point,
    pub set: usize,
}

impl Certificate {
    pub fn value(&self) -> usize {
        self.set.count_ones() as usize
    }

    pub fn validate(&self, f: &TruthTable) -> bool {
        if self.point.arity() != f.arity() {
            return false;
        }
        let a = self.point.bits();
        let v = f.get(a);
        (0..f.size())
            .filter(|x| (x ^ a) & self.set == 0)
            .all(|x| f.get(x) == v)
    }
}

impl Serialize for Certificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Certificate", 2)?;
        st.serialize_field("point", &self.point.to_string())?;
        st.serialize_field("set", &bits::coords(self.set))?;
        st.end()
    }
}

/// Smallest certificate at `a`: the complement of the largest free set `U`
/// such that `f` is constant on `a ⊕ {z : z ⊆ U}`. Among those, the smallest
/// fixed set in mask order.
fn best_at(f: &TruthTable, a: usize) -> usize {
    let n = f.arity();
    let live = bits::live_mask(n);
    let fill = if f.get(a) { live } else { 0 };
    let mut bad: Vec<u64> = f.shift_by(a).words().iter().map(|w| (w ^ fill) & live).collect();
    bits::subset_or(&mut bad, n);
    let full = bits::full_mask(n);
    let mut best_u = 0usize;
    let mut best_dim = 0u32;
    for u in 0..f.size() {
        if !bits::get(&bad, u) {
            let dim = u.count_ones();
            if dim > best_dim || (dim == best_dim && u > best_u) {
                best_dim = dim;
                best_u = u;
            }
        }
    }
    full & !best_u
}

pub fn certificate_at(f: &TruthTable, a: &Point) -> Result<Certificate> {
    f.check_same(a.arity())?;
    Ok(Certificate {
        point: *a,
        set: best_at(f, a.bits()),
    })
}

/// Pointwise at `at`, otherwise maximized over all points (lowest argmax).
pub fn certificate(f: &TruthTable, at: Option<&Point>, limits: &Limits) -> Result<Certificate> {
    ceiling("C", f.arity(), limits.certificate)?;
    if let Some(a) = at {
        return certificate_at(f, a);
    }
    let (a, set) = par::argmax_by_key(0..f.size(), |a| best_at(f, a), |s| s.count_ones())
        .expect("cube is nonempty");
    Ok(Certificate {
        point: Point::new(f.arity(), a)?,
        set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let lim = Limits::default();
        for n in 1..6 {
            let and = TruthTable::from_fn(n, |x| x == (1 << n) - 1).unwrap();
            let c = certificate(&and, Some(&Point::ones(n)), &lim).unwrap();
            assert_eq!(c.value(), n);
        }
        let or3 = TruthTable::from_fn(3, |x| x != 0).unwrap();
        assert_eq!(certificate(&or3, Some(&Point::zeros(3)), &lim).unwrap().value(), 3);
        let maj3 = TruthTable::from_fn(3, |x| x.count_ones() >= 2).unwrap();
        let c = certificate(&maj3, Some(&Point::parse("110", 3).unwrap()), &lim).unwrap();
        assert_eq!((c.value(), c.set), (2, 0b011));
        assert!(c.validate(&maj3));
        assert_eq!(certificate(&maj3, None, &lim).unwrap().value(), 2);
    }

    #[test]
    fn constant_needs_nothing() {
        let c = TruthTable::constant(4, false).unwrap();
        let cert = certificate(&c, None, &Limits::default()).unwrap();
        assert_eq!(cert.value(), 0);
        assert!(cert.validate(&c));
    }
}
