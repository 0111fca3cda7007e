// SPDX-License-Identifier: Apache-2.0

//! Constructive transforms `g = f ∘ A` that turn block sensitivity or
//! alternation of `f` into sensitivity of `g`.

use serde_json::{json, Value};

use crate::affine::AffineMap;
use crate::bits;
use crate::error::{Error, Result};
use crate::measures::{
    alternation, block_sensitivity, block_sensitivity_at, block_values, ceiling, sensitivity,
    sensitivity_at, BlockFamily, Chain, Limits,
};
use crate::tt::{Point, TruthTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformKind {
    BsToS,
    AltToS,
    Sherstov,
}

impl TransformKind {
    pub fn name(&self) -> &'static str {
        match self {
            TransformKind::BsToS => "bs2s",
            TransformKind::AltToS => "alt2s",
            TransformKind::Sherstov => "sherstov",
        }
    }
}

/// What each construction guarantees, with the witnesses it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransformCertificate {
    BsToS {
        family: BlockFamily,
        /// `s(g, 0ⁿ)`; the construction makes this equal to `bs(f, a)`.
        s_g_zero: usize,
    },
    AltToS {
        chain: Chain,
        s_g_zero: usize,
        s_g: usize,
        invertible: bool,
    },
    Sherstov {
        family: BlockFamily,
        /// Zero-valued parts `A_i` and one-valued parts `B_i` of each block at `z`.
        zero_parts: Vec<usize>,
        one_parts: Vec<usize>,
        /// Indices `i` (0-based) with both parts nonempty.
        split: Vec<usize>,
        s_g: usize,
        s_g_z: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformResult {
    pub kind: TransformKind,
    pub map: AffineMap,
    pub g: TruthTable,
    pub certificate: TransformCertificate,
}

impl TransformResult {
    /// Recomputes `g` from `f` and the map.
    pub fn verify(&self, f: &TruthTable) -> bool {
        f.apply_affine(&self.map).is_ok_and(|g| g == self.g)
    }

    /// The inequality the construction certifies, as `(statement, lhs, rhs, holds)`.
    pub fn inequality(&self) -> (String, usize, usize, bool) {
        match &self.certificate {
            TransformCertificate::BsToS { family, s_g_zero } => (
                "bs(f,a) = s(g,0)".into(),
                family.value(),
                *s_g_zero,
                family.value() == *s_g_zero,
            ),
            TransformCertificate::AltToS {
                chain,
                s_g,
                invertible,
                ..
            } => (
                "alt ≤ 2s(g)+1".into(),
                chain.alternations,
                2 * s_g + 1,
                *invertible && chain.alternations <= 2 * s_g + 1,
            ),
            TransformCertificate::Sherstov { family, s_g, .. } => (
                "bs(f) ≤ 4s(g)^2".into(),
                family.value(),
                4 * s_g * s_g,
                family.value() <= 4 * s_g * s_g,
            ),
        }
    }

    /// One line such as `alt ≤ 2s(g)+1: 4 ≤ 5 holds`.
    pub fn summary(&self) -> String {
        let (stmt, l, r, ok) = self.inequality();
        let rel = if matches!(self.kind, TransformKind::BsToS) { "=" } else { "≤" };
        let verdict = if ok { "holds" } else { "fails" };
        format!("{stmt}: {l} {rel} {r} {verdict}")
    }

    /// Output coordinate `j` of `A(x)` as a GF(2) expression: `x_i`, `x_i+1`, `0` or `1`.
    pub fn substitution(&self) -> Vec<String> {
        let n = self.map.arity();
        (0..n)
            .map(|j| {
                let c = self.map.shift() >> j & 1;
                let vars: Vec<String> = (0..n)
                    .filter(|&i| self.map.columns()[i] >> j & 1 == 1)
                    .map(|i| format!("x{}", i + 1))
                    .collect();
                match (vars.is_empty(), c) {
                    (true, c) => c.to_string(),
                    (false, 0) => vars.join("+"),
                    (false, _) => format!("{}+1", vars.join("+")),
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let n = self.g.arity();
        let cert = match &self.certificate {
            TransformCertificate::BsToS { family, s_g_zero } => json!({
                "bs_f_a": family.value(),
                "s_g_0": s_g_zero,
                "blocks": family,
                "substitution": self.substitution(),
            }),
            TransformCertificate::AltToS {
                chain,
                s_g_zero,
                s_g,
                invertible,
            } => json!({
                "alt_f": chain.alternations,
                "s_g": s_g,
                "s_g_0": s_g_zero,
                "invertible": invertible,
                "chain": chain,
            }),
            TransformCertificate::Sherstov {
                family,
                zero_parts,
                one_parts,
                split,
                s_g,
                s_g_z,
            } => json!({
                "bs_f": family.value(),
                "s_g": s_g,
                "s_g_z": s_g_z,
                "z": family.point.to_string(),
                "blocks": family,
                "A": zero_parts.iter().map(|&m| bits::coords(m)).collect::<Vec<_>>(),
                "B": one_parts.iter().map(|&m| bits::coords(m)).collect::<Vec<_>>(),
                "I": split.iter().map(|i| i + 1).collect::<Vec<_>>(),
            }),
        };
        let (stmt, l, r, ok) = self.inequality();
        json!({
            "transform": self.kind.name(),
            "arity": n,
            "map": self.map,
            "g": self.g.to_tt_string(),
            "certificate": cert,
            "inequality": {"statement": stmt, "lhs": l, "rhs": r, "holds": ok, "line": self.summary()},
        })
    }
}

/// Affine `A(x) = L(x) ⊕ a` with `L(e_i) = e_{B_i}` for a maximum block family
/// `B_1..B_k` at `a` and `L(e_i) = 0` for `i > k`.
pub fn bs_to_s_affine(f: &TruthTable, a: &Point, limits: &Limits) -> Result<TransformResult> {
    ceiling("bs", f.arity(), limits.block_sensitivity)?;
    let family = block_sensitivity_at(f, a)?;
    let n = f.arity();
    let mut columns = family.blocks.clone();
    columns.resize(n, 0);
    let map = AffineMap::new(n, columns, a.bits())?;
    let g = f.apply_affine(&map)?;
    let s_g_zero = sensitivity_at(&g, 0);
    Ok(TransformResult {
        kind: TransformKind::BsToS,
        map,
        g,
        certificate: TransformCertificate::BsToS { family, s_g_zero },
    })
}

/// Linear `L(e_i) = x⁽ⁱ⁾` along the smallest optimal chain of `f`.
pub fn alt_to_s_linear(f: &TruthTable) -> Result<TransformResult> {
    let chain = alternation(f);
    let n = f.arity();
    let map = AffineMap::new(n, chain.points[1..].to_vec(), 0)?;
    let invertible = map.is_invertible();
    if !invertible {
        return Err(Error::Verification("chain columns are not independent".into()));
    }
    let g = f.apply_affine(&map)?;
    Ok(TransformResult {
        kind: TransformKind::AltToS,
        certificate: TransformCertificate::AltToS {
            chain,
            s_g_zero: sensitivity_at(&g, 0),
            s_g: sensitivity(&g, None)?.value,
            invertible,
        },
        map,
        g,
    })
}

/// The point `z` used by [`sherstov_linear`]: the lowest point of maximum
/// block sensitivity with `f(z) = 0`, or the lowest maximizer if all have
/// `f(z) = 1` (negating `f` changes neither `bs` nor `s`).
pub fn sherstov_point(f: &TruthTable, limits: &Limits) -> Result<Point> {
    ceiling("bs", f.arity(), limits.block_sensitivity)?;
    let values = block_values(f);
    let best = values.iter().copied().max().unwrap_or(0);
    let mut maximizers = (0..f.size()).filter(|&x| values[x] == best);
    let first = maximizers.clone().next().unwrap_or(0);
    let z = maximizers.find(|&x| !f.get(x)).unwrap_or(first);
    Point::new(f.arity(), z)
}

/// Linear map from the block family at [`sherstov_point`]: coordinates outside
/// all blocks stay, the minimum of each nonempty `A_i` and `B_i` maps to that
/// part, every other block coordinate maps to zero.
pub fn sherstov_linear(f: &TruthTable, limits: &Limits) -> Result<TransformResult> {
    let z = sherstov_point(f, limits)?;
    let family = block_sensitivity(f, Some(&z), limits)?;
    let n = f.arity();
    let zb = z.bits();
    let zero_parts: Vec<usize> = family.blocks.iter().map(|&s| s & !zb).collect();
    let one_parts: Vec<usize> = family.blocks.iter().map(|&s| s & zb).collect();
    let split: Vec<usize> = (0..family.blocks.len())
        .filter(|&i| zero_parts[i] != 0 && one_parts[i] != 0)
        .collect();
    let covered = family.blocks.iter().fold(0, |m, b| m | b);
    let mut columns = vec![0usize; n];
    for (j, col) in columns.iter_mut().enumerate() {
        if covered >> j & 1 == 0 {
            *col = 1 << j;
        }
    }
    for part in zero_parts.iter().chain(&one_parts).filter(|&&p| p != 0) {
        columns[part.trailing_zeros() as usize] = *part;
    }
    let map = AffineMap::new(n, columns, 0)?;
    let g = f.apply_affine(&map)?;
    Ok(TransformResult {
        kind: TransformKind::Sherstov,
        certificate: TransformCertificate::Sherstov {
            s_g: sensitivity(&g, None)?.value,
            s_g_z: sensitivity_at(&g, zb),
            family,
            zero_parts,
            one_parts,
            split,
        },
        map,
        g,
    })
}
