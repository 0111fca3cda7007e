// SPDX-License-Identifier: Apache-2.0

//! Named function families and the textual function sources used by the CLI.
//!
//! Source grammar:
//!
//! ```text
//! source  := "tt:" n ":" hex | "anf:" n ":" terms | "fam:" name [":" params] | path
//! params  := key "=" int ("," key "=" int)*
//! ```
//!
//! Families: `tree:k`, `row:n`, `rubinstein:m,n`, `gip:n,k`, `ip:n`, `maj:n`,
//! `parity:n`, `and:n`, `or:n`, `const:n,b`. A path names a file whose trimmed
//! contents are a `tt:`, `anf:` or `fam:` source.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::tt::{check_arity, TruthTable};

fn bits_of(x: usize, offset: usize, width: usize) -> usize {
    (x >> offset) & ((1usize << width) - 1)
}

/// Tree function of depth `k` on `2^k − 1` variables. Internal nodes are
/// numbered breadth-first from the root (`x1`); node `v` has children `2v`
/// (taken on 0) and `2v + 1` (taken on 1). The output is the last bit read.
pub fn tree_function(k: usize) -> Result<TruthTable> {
    if k == 0 {
        return Err(Error::InvalidParameter("tree depth k must be at least 1".into()));
    }
    let n = 1usize.checked_shl(k as u32).map_or(usize::MAX, |p| p - 1);
    check_arity(n, "tree function")?;
    TruthTable::from_fn(n, |x| {
        let mut v = 1usize;
        let mut last = 0;
        while v <= n {
            last = x >> (v - 1) & 1;
            v = 2 * v + last;
        }
        last == 1
    })
}

/// `h(a) = 1` iff `a` is exactly one pair `(a_{2i−1}, a_{2i}) = (1, 1)` and
/// zeros elsewhere. On odd `n` the last coordinate starts no pair.
pub fn rubinstein_row(n: usize) -> Result<TruthTable> {
    check_arity(n, "rubinstein row")?;
    TruthTable::from_fn(n, |x| {
        let p = x.trailing_zeros() as usize;
        x.count_ones() == 2 && p.is_multiple_of(2) && x == 0b11 << p
    })
}

/// OR of `m` variable-disjoint copies of the `n`-bit row function.
pub fn rubinstein(m: usize, n: usize) -> Result<TruthTable> {
    let row = rubinstein_row(n)?;
    or_compose(&vec![row; m])
}

/// `⋁ f_i(x⁽ⁱ⁾)` with `f_i` on the next `arity(f_i)` coordinates.
pub fn or_compose(fs: &[TruthTable]) -> Result<TruthTable> {
    let total: usize = fs.iter().map(TruthTable::arity).sum();
    check_arity(total, "OR composition")?;
    TruthTable::from_fn(total, |x| {
        let mut off = 0;
        fs.iter().any(|f| {
            let v = f.get(bits_of(x, off, f.arity()));
            off += f.arity();
            v
        })
    })
}

/// Inner function of generalized inner product: `⊕_{i≤n} ⋀_{j≤k} z_ij`,
/// with `z_ij` at coordinate `(i−1)k + j`.
pub fn gip(n: usize, k: usize) -> Result<TruthTable> {
    check_arity(n.saturating_mul(k), "gip")?;
    TruthTable::from_fn(n * k, |x| {
        (0..n).filter(|i| k > 0 && bits_of(x, i * k, k) == (1 << k) - 1).count() % 2 == 1
    })
}

/// `Σ x_i y_i mod 2`, `x_i` at coordinate `i` and `y_i` at `n + i`.
pub fn ip(n: usize) -> Result<TruthTable> {
    check_arity(n.saturating_mul(2), "ip")?;
    TruthTable::from_fn(2 * n, |x| (bits_of(x, 0, n) & bits_of(x, n, n)).count_ones() % 2 == 1)
}

/// `1` iff at least `⌈n/2⌉` inputs are 1.
pub fn maj(n: usize) -> Result<TruthTable> {
    TruthTable::from_fn(n, |x| x.count_ones() as usize >= n.div_ceil(2))
}

pub fn parity(n: usize) -> Result<TruthTable> {
    TruthTable::from_fn(n, |x| x.count_ones() % 2 == 1)
}

pub fn and(n: usize) -> Result<TruthTable> {
    TruthTable::from_fn(n, |x| x.count_ones() as usize == n)
}

pub fn or(n: usize) -> Result<TruthTable> {
    TruthTable::from_fn(n, |x| x != 0)
}

pub fn constant(n: usize, b: bool) -> Result<TruthTable> {
    TruthTable::constant(n, b)
}

/// A family name with integer parameters, e.g. `rubinstein:m=3,n=3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub params: BTreeMap<String, usize>,
}

const FAMILIES: &[(&str, &[&str])] = &[
    ("tree", &["k"]),
    ("row", &["n"]),
    ("rubinstein", &["m", "n"]),
    ("gip", &["n", "k"]),
    ("ip", &["n"]),
    ("maj", &["n"]),
    ("parity", &["n"]),
    ("and", &["n"]),
    ("or", &["n"]),
    ("const", &["n", "b"]),
];

impl FamilySpec {
    /// Parses `name[:k=v,...]` (without the `fam:` prefix).
    pub fn parse(text: &str) -> Result<FamilySpec> {
        let (name, rest) = text.split_once(':').unwrap_or((text, ""));
        let (_, keys) = FAMILIES
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| Error::parse(format!("unknown family {name:?}")))?;
        let mut params = BTreeMap::new();
        for kv in rest.split(',').filter(|s| !s.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("expected key=value, got {kv:?}")))?;
            if !keys.contains(&k) {
                return Err(Error::parse(format!("family {name} has no parameter {k:?}")));
            }
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("parameter {k} is not a number: {v:?}")))?;
            if params.insert(k.to_string(), v).is_some() {
                return Err(Error::parse(format!("parameter {k} given twice")));
            }
        }
        for k in keys.iter() {
            if !params.contains_key(*k) && !(name == "const" && *k == "b") {
                return Err(Error::parse(format!("family {name} needs parameter {k}")));
            }
        }
        Ok(FamilySpec {
            name: name.to_string(),
            params,
        })
    }

    fn p(&self, key: &str) -> usize {
        self.params.get(key).copied().unwrap_or(0)
    }

    /// Arity of the generated function (saturating on overflow).
    pub fn arity(&self) -> usize {
        match self.name.as_str() {
            "tree" => 1usize
                .checked_shl(self.p("k") as u32)
                .map_or(usize::MAX, |p| p.saturating_sub(1)),
            "rubinstein" => self.p("m").saturating_mul(self.p("n")),
            "gip" => self.p("n").saturating_mul(self.p("k")),
            "ip" => self.p("n").saturating_mul(2),
            _ => self.p("n"),
        }
    }

    pub fn build(&self) -> Result<TruthTable> {
        check_arity(self.arity(), "family")?;
        match self.name.as_str() {
            "tree" => tree_function(self.p("k")),
            "row" => rubinstein_row(self.p("n")),
            "rubinstein" => rubinstein(self.p("m"), self.p("n")),
            "gip" => gip(self.p("n"), self.p("k")),
            "ip" => ip(self.p("n")),
            "maj" => maj(self.p("n")),
            "parity" => parity(self.p("n")),
            "and" => and(self.p("n")),
            "or" => or(self.p("n")),
            "const" => match self.p("b") {
                0 => constant(self.p("n"), false),
                1 => constant(self.p("n"), true),
                b => Err(Error::parse(format!("const b must be 0 or 1, got {b}"))),
            },
            other => Err(Error::parse(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "fam:{}:{}", self.name, params.join(","))
    }
}

/// Parses a `tt:`, `anf:` or `fam:` source, or reads one from a file.
pub fn parse_source(text: &str) -> Result<TruthTable> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("fam:") {
        return FamilySpec::parse(rest)?.build();
    }
    if text.starts_with("tt:") || text.starts_with("anf:") {
        return text.parse();
    }
    let contents = std::fs::read_to_string(text)
        .map_err(|e| Error::parse(format!("{text:?} is not a function source or readable file: {e}")))?;
    let inner = contents.trim();
    if inner.starts_with("tt:") || inner.starts_with("anf:") || inner.starts_with("fam:") {
        parse_source(inner)
    } else {
        Err(Error::parse(format!("file {text:?} does not contain a function source")))
    }
}
