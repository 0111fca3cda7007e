// SPDX-License-Identifier: Apache-2.0

//! The AND-matrix `F(x, y) = f(x ∧ y)` and the bound certificates around it.
//!
//! Nothing here computes a communication cost. The lower-bound side emits the
//! submatrix witness `(k, W, g)`; the upper-bound side is `2·DT(f)`.

use std::io::Write;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bits;
use crate::error::{Error, Result};
use crate::measures::{
    block_sensitivity, ceiling, dt_depth, modp_degree, real_degree, BlockFamily, Limits, Measured,
};
use crate::par;
use crate::transforms::bs_to_s_affine;
use crate::tt::{Point, TruthTable};

/// A `2ⁿ × 2ⁿ` bit matrix with rows packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    arity: usize,
    row_words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of rows (and columns).
    pub fn dim(&self) -> usize {
        1 << self.arity
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        bits::get(&self.data[x * self.row_words..(x + 1) * self.row_words], y)
    }

    pub fn row(&self, x: usize) -> &[u64] {
        &self.data[x * self.row_words..(x + 1) * self.row_words]
    }

    pub fn count_ones(&self) -> u64 {
        self.data.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Plain PBM: `P1`, the dimensions, then one line of `0`/`1` per row.
    pub fn write_pbm(&self, mut out: impl Write) -> std::io::Result<()> {
        let d = self.dim();
        writeln!(out, "P1\n{d} {d}")?;
        let mut line = Vec::with_capacity(d + 1);
        for x in 0..d {
            line.clear();
            line.extend((0..d).map(|y| if self.get(x, y) { b'1' } else { b'0' }));
            line.push(b'\n');
            out.write_all(&line)?;
        }
        Ok(())
    }

    /// Dimension as a little-endian `u64`, then each row's words little-endian.
    pub fn write_raw(&self, mut out: impl Write) -> std::io::Result<()> {
        out.write_all(&(self.dim() as u64).to_le_bytes())?;
        for w in &self.data {
            out.write_all(&w.to_le_bytes())?;
        }
        Ok(())
    }

    /// Reads back [`BitMatrix::write_raw`] output.
    pub fn read_raw(bytes: &[u8]) -> Result<BitMatrix> {
        let head: [u8; 8] = bytes
            .get(..8)
            .and_then(|b| b.try_into().ok())
            .ok_or_else(|| Error::parse("raw matrix shorter than its header"))?;
        let dim = u64::from_le_bytes(head) as usize;
        if !dim.is_power_of_two() {
            return Err(Error::parse(format!("raw matrix dimension {dim} is not a power of two")));
        }
        let arity = dim.trailing_zeros() as usize;
        let row_words = bits::word_count(arity);
        let body = &bytes[8..];
        if body.len() != dim * row_words * 8 {
            return Err(Error::parse("raw matrix body has the wrong length"));
        }
        let data = body
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().expect("chunk of 8")))
            .collect();
        Ok(BitMatrix {
            arity,
            row_words,
            data,
        })
    }

    /// Writes PBM for a `.pbm` extension and raw bytes otherwise.
    pub fn export(&self, path: &Path) -> std::io::Result<()> {
        let file = std::io::BufWriter::new(std::fs::File::create(path)?);
        if path.extension().is_some_and(|e| e == "pbm") {
            self.write_pbm(file)
        } else {
            self.write_raw(file)
        }
    }
}

/// `F(x, y) = f(x ∧ y)`, rows built in parallel.
pub fn and_matrix(f: &TruthTable, limits: &Limits) -> Result<BitMatrix> {
    ceiling("and_matrix", f.arity(), limits.and_matrix)?;
    let n = f.arity();
    let row_words = bits::word_count(n);
    let rows = par::map_range(0..f.size(), |x| {
        let mut row = vec![0u64; row_words];
        for y in 0..f.size() {
            if f.get(x & y) {
                row[y >> 6] |= 1 << (y & 63);
            }
        }
        row
    });
    Ok(BitMatrix {
        arity: n,
        row_words,
        data: rows.concat(),
    })
}

/// How the submatrix identity was checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum Verification {
    /// Both matrices built and compared on `W × W`.
    Materialized { pairs: u64 },
    /// Every pair of `W × W` checked on the truth tables directly.
    IndexLevel { pairs: u64 },
    /// Random pairs of `W × W` drawn with a seeded generator.
    Sampled { pairs: u64, seed: u64 },
}

/// Pairs of `W × W` above which the check switches to sampling.
pub const EXHAUSTIVE_PAIRS: u64 = 1 << 22;
const SAMPLED_PAIRS: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq)]
pub struct LowerBoundCertificate {
    /// `bs(f, 0ⁿ)`.
    pub k: usize,
    pub family: BlockFamily,
    /// `W = {⊕ a_j e_{B_j}}`, indexed by `a ∈ {0,1}ᵏ`.
    pub w: Vec<usize>,
    pub g: TruthTable,
    /// `√k`, the quantity the lower bound is stated in.
    pub bound: f64,
    pub verification: Verification,
}

impl LowerBoundCertificate {
    pub fn to_json(&self) -> Value {
        let n = self.g.arity();
        let w: Vec<String> = self.w.iter().map(|&u| bits::format_bits(u, n)).collect();
        json!({
            "k": self.k,
            "blocks": self.family,
            "W": w,
            "g": self.g.to_tt_string(),
            "bound_certificate": {"sqrt_k": self.bound},
            "verification": self.verification,
        })
    }
}

/// Builds `g` from a maximum block family at `0ⁿ`, forms `W` and checks
/// `F(u_a, u_b) = g(a ∧ b)` entrywise. A mismatch is a hard error.
pub fn submatrix_witness(f: &TruthTable, limits: &Limits, seed: u64) -> Result<LowerBoundCertificate> {
    let n = f.arity();
    let t = bs_to_s_affine(f, &Point::zeros(n), limits)?;
    let family = match t.certificate {
        crate::transforms::TransformCertificate::BsToS { family, .. } => family,
        _ => unreachable!("bs_to_s_affine returns a block certificate"),
    };
    let k = family.value();
    let w: Vec<usize> = (0..1usize << k).map(|a| t.map.apply(a)).collect();
    let g = t.g;
    let pairs = 1u64 << (2 * k);
    let mismatch = |a: usize, b: usize| {
        Error::Verification(format!(
            "F({}, {}) differs from g({}) for f = {f}",
            bits::format_bits(w[a], n),
            bits::format_bits(w[b], n),
            bits::format_bits(a & b, n)
        ))
    };
    let verification = if n <= limits.and_matrix.min(13) {
        let big_f = and_matrix(f, limits)?;
        let big_g = and_matrix(&g, limits)?;
        for a in 0..w.len() {
            for b in 0..w.len() {
                if big_f.get(w[a], w[b]) != big_g.get(a, b) {
                    return Err(mismatch(a, b));
                }
            }
        }
        Verification::Materialized { pairs }
    } else if pairs <= EXHAUSTIVE_PAIRS {
        let bad = par::map_range(0..w.len(), |a| {
            (0..w.len()).find(|&b| f.get(w[a] & w[b]) != g.get(a & b))
        });
        if let Some((a, Some(b))) = bad.into_iter().enumerate().find(|(_, b)| b.is_some()) {
            return Err(mismatch(a, b));
        }
        Verification::IndexLevel { pairs }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLED_PAIRS {
            let (a, b) = (rng.random_range(0..w.len()), rng.random_range(0..w.len()));
            if f.get(w[a] & w[b]) != g.get(a & b) {
                return Err(mismatch(a, b));
            }
        }
        Verification::Sampled {
            pairs: SAMPLED_PAIRS,
            seed,
        }
    };
    Ok(LowerBoundCertificate {
        k,
        family,
        w,
        g,
        bound: (k as f64).sqrt(),
        verification,
    })
}

/// `2·DT(f)`, an upper bound on deterministic communication for `F`.
pub fn det_upper_bound(f: &TruthTable, limits: &Limits) -> Result<usize> {
    Ok(2 * dt_depth(f, limits)?.depth())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrimeBounds {
    pub p: u64,
    pub deg_p: usize,
    /// `√DT / deg_p` (0 when `deg_p = 0`); `None` if DT was skipped.
    pub sqrt_dt_over_deg_p_certificate: Option<f64>,
    /// `DT ≤ bs(f,0ⁿ)·deg_p²`; `None` if a side was skipped.
    pub dt_le_bs0_deg_p_sq: Option<bool>,
    /// `deg · 2^{deg_p} ≥ n`; `None` unless `f` depends on every variable.
    pub deg_ge_n_over_2_pow_deg_p: Option<bool>,
}

/// `δ = log deg_q / log deg_p` and `ε = 1 − 2/δ`, when both are defined.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeGap {
    pub p: u64,
    pub q: u64,
    pub deg_p: usize,
    pub deg_q: usize,
    pub delta_certificate: Option<f64>,
    pub epsilon_certificate: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundSummary {
    pub arity: usize,
    pub bs0: Measured<usize>,
    pub dt: Measured<usize>,
    pub deg: usize,
    pub depends_on_all: bool,
    pub primes: Vec<PrimeBounds>,
    pub gaps: Vec<DegreeGap>,
}

impl BoundSummary {
    pub fn to_json(&self) -> Value {
        let val = |m: &Measured<usize>| match m {
            Measured::Computed(v) => json!(v),
            Measured::Skipped(_) => Value::Null,
        };
        let mut skipped = Vec::new();
        for (name, m) in [("bs0", &self.bs0), ("DT", &self.dt)] {
            if let Some(r) = m.skip_reason() {
                skipped.push(json!({"measure": name, "reason": r}));
            }
        }
        json!({
            "arity": self.arity,
            "bs0": val(&self.bs0),
            "sqrt_bs0_certificate": self.bs0.computed().map(|&b| (b as f64).sqrt()),
            "DT": val(&self.dt),
            "det_upper_bound": self.dt.computed().map(|d| 2 * d),
            "deg": self.deg,
            "depends_on_all": self.depends_on_all,
            "primes": self.primes,
            "degree_gaps": self.gaps,
            "skipped": skipped,
        })
    }
}

pub fn bound_summary(f: &TruthTable, primes: &[u64], limits: &Limits) -> Result<BoundSummary> {
    let n = f.arity();
    let bs0 = Measured::from_result(
        block_sensitivity(f, Some(&Point::zeros(n)), limits).map(|b| b.value()),
    )?;
    let dt = Measured::from_result(dt_depth(f, limits).map(|t| t.depth()))?;
    let deg = real_degree(f).0;
    let depends_on_all = f.depends_on_all();
    let degs = primes
        .iter()
        .map(|&p| modp_degree(f, p).map(|d| (p, d.0)))
        .collect::<Result<Vec<_>>>()?;
    let prime_bounds = degs
        .iter()
        .map(|&(p, dp)| PrimeBounds {
            p,
            deg_p: dp,
            sqrt_dt_over_deg_p_certificate: dt.computed().map(|&d| {
                if dp == 0 {
                    0.0
                } else {
                    (d as f64).sqrt() / dp as f64
                }
            }),
            dt_le_bs0_deg_p_sq: match (dt.computed(), bs0.computed()) {
                (Some(&d), Some(&b)) => Some(d <= b * dp * dp),
                _ => None,
            },
            deg_ge_n_over_2_pow_deg_p: depends_on_all
                .then(|| (deg as u64) << dp >= n as u64),
        })
        .collect();
    let mut gaps = Vec::new();
    for &(p, dp) in &degs {
        for &(q, dq) in &degs {
            if p == q {
                continue;
            }
            let delta = (dp > 1 && dq > 0).then(|| (dq as f64).ln() / (dp as f64).ln());
            gaps.push(DegreeGap {
                p,
                q,
                deg_p: dp,
                deg_q: dq,
                delta_certificate: delta,
                epsilon_certificate: delta.filter(|&d| d > 0.0).map(|d| 1.0 - 2.0 / d),
            });
        }
    }
    Ok(BoundSummary {
        arity: n,
        bs0,
        dt,
        deg,
        depends_on_all,
        primes: prime_bounds,
        gaps,
    })
}
