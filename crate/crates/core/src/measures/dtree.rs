// SPDX-License-Identifier: Apache-2.0

//! Optimal decision trees by dynamic programming over all `3^n` subcubes.
//!
//! A subcube is a base-3 number: digit `i` is 0 or 1 when `x_{i+1}` is fixed to
//! that value and 2 when it is free. Its two children along a free `i` are
//! `s - 2·3^i` and `s - 3^i`, both smaller than `s`, so one increasing sweep
//! fills the table.

use serde::Serialize;

use super::{ceiling, Limits};
use crate::error::Result;
use crate::tt::TruthTable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecisionTree {
    Leaf(bool),
    /// Query 0-based variable `var`; follow `zero` or `one`.
    Node {
        var: usize,
        zero: Box<DecisionTree>,
        one: Box<DecisionTree>,
    },
}

impl DecisionTree {
    pub fn depth(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Node { zero, one, .. } => 1 + zero.depth().max(one.depth()),
        }
    }

    pub fn evaluate(&self, x: usize) -> bool {
        match self {
            DecisionTree::Leaf(v) => *v,
            DecisionTree::Node { var, zero, one } => {
                if x >> var & 1 == 1 {
                    one.evaluate(x)
                } else {
                    zero.evaluate(x)
                }
            }
        }
    }

    /// True if the tree computes `f` on every input.
    pub fn validate(&self, f: &TruthTable) -> bool {
        (0..f.size()).all(|x| self.evaluate(x) == f.get(x))
    }
}

impl Serialize for DecisionTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            DecisionTree::Leaf(v) => s.serialize_u8(*v as u8),
            DecisionTree::Node { var, zero, one } => {
                let mut m = s.serialize_map(Some(3))?;
                m.serialize_entry("x", &(var + 1))?;
                m.serialize_entry("0", zero)?;
                m.serialize_entry("1", one)?;
                m.end()
            }
        }
    }
}

const MIXED: u8 = 2;

struct Table {
    pow3: Vec<usize>,
    status: Vec<u8>,
    depth: Vec<u8>,
}

impl Table {
    fn build(f: &TruthTable) -> Table {
        let n = f.arity();
        let pow3: Vec<usize> = (0..=n).map(|i| 3usize.pow(i as u32)).collect();
        let states = pow3[n];
        let mut status = vec![0u8; states];
        let mut depth = vec![0u8; states];
        let mut digits = vec![0u8; n];
        let (mut free, mut vals) = (0usize, 0usize);
        for s in 0..states {
            if free == 0 {
                status[s] = f.get(vals) as u8;
            } else {
                let i = free.trailing_zeros() as usize;
                let (a, b) = (status[s - 2 * pow3[i]], status[s - pow3[i]]);
                status[s] = if a == b && a != MIXED { a } else { MIXED };
                if status[s] == MIXED {
                    let mut best = u8::MAX;
                    let mut m = free;
                    while m != 0 {
                        let i = m.trailing_zeros() as usize;
                        let d = depth[s - 2 * pow3[i]].max(depth[s - pow3[i]]);
                        best = best.min(d);
                        m &= m - 1;
                    }
                    depth[s] = best + 1;
                }
            }
            // odometer step, keeping `free` and `vals` in sync with the digits
            for (i, d) in digits.iter_mut().enumerate() {
                let bit = 1usize << i;
                match *d {
                    0 => {
                        *d = 1;
                        vals |= bit;
                        break;
                    }
                    1 => {
                        *d = 2;
                        vals &= !bit;
                        free |= bit;
                        break;
                    }
                    _ => {
                        *d = 0;
                        free &= !bit;
                    }
                }
            }
        }
        Table {
            pow3,
            status,
            depth,
        }
    }

    fn tree(&self, s: usize) -> DecisionTree {
        if self.status[s] != MIXED {
            return DecisionTree::Leaf(self.status[s] == 1);
        }
        let target = self.depth[s] - 1;
        for i in 0..self.pow3.len() - 1 {
            if s / self.pow3[i] % 3 != 2 {
                continue;
            }
            let (z, o) = (s - 2 * self.pow3[i], s - self.pow3[i]);
            if self.depth[z].max(self.depth[o]) == target {
                return DecisionTree::Node {
                    var: i,
                    zero: Box::new(self.tree(z)),
                    one: Box::new(self.tree(o)),
                };
            }
        }
        unreachable!("depth table is consistent")
    }
}

/// Minimum-depth decision tree; the root queries the lowest optimal variable,
/// and so on recursively.
pub fn dt_depth(f: &TruthTable, limits: &Limits) -> Result<DecisionTree> {
    ceiling("DT", f.arity(), limits.decision_tree)?;
    let t = Table::build(f);
    Ok(t.tree(t.pow3[f.arity()] - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn small_cases() {
        let and2 = TruthTable::from_fn(2, |x| x == 3).unwrap();
        let t = dt_depth(&and2, &lim()).unwrap();
        assert_eq!(t.depth(), 2);
        assert!(t.validate(&and2));
        let dict = TruthTable::from_fn(3, |x| if x & 1 == 1 { x & 4 != 0 } else { x & 2 != 0 }).unwrap();
        let t = dt_depth(&dict, &lim()).unwrap();
        assert_eq!(t.depth(), 2);
        assert!(matches!(t, DecisionTree::Node { var: 0, .. }));
        let c = TruthTable::constant(4, false).unwrap();
        assert_eq!(dt_depth(&c, &lim()).unwrap(), DecisionTree::Leaf(false));
    }

    #[test]
    fn parity_is_evasive() {
        let p = TruthTable::from_fn(6, |x| x.count_ones() % 2 == 1).unwrap();
        let t = dt_depth(&p, &lim()).unwrap();
        assert_eq!(t.depth(), 6);
        assert!(t.validate(&p));
    }

    #[test]
    fn serializes_as_nested_map() {
        let x1 = TruthTable::from_fn(1, |x| x == 1).unwrap();
        let t = dt_depth(&x1, &lim()).unwrap();
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"x":1,"0":0,"1":1}"#);
    }
}
