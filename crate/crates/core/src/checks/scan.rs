// SPDX-License-Identifier: Apache-2.0

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::suite::{suite_with_quantities, Quantities, SuiteConfig};
use super::{Check, CheckKind, CheckReport, Verdict};
use crate::bits;
use crate::error::{Error, Result};
use crate::measures::{
    block_sensitivity, shift_invariant_alternation, sensitivity, sparsity, Limits,
};
use crate::par;
use crate::transforms::{sherstov_linear, TransformCertificate};
use crate::tt::TruthTable;

/// A tracked ratio or gap. Functions where it is undefined (zero
/// denominator, skipped measure) are left out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Statistic {
    #[serde(rename = "salt-s")]
    SaltMinusS,
    #[serde(rename = "salt/s")]
    SaltOverS,
    #[serde(rename = "s/sqrt(sparsity)")]
    SOverSqrtSparsity,
    #[serde(rename = "bs/(salt^2*s)")]
    BsOverSalt2S,
    #[serde(rename = "bs/s(g)^2")]
    SherstovBsOverSg2,
}

impl Statistic {
    pub const ALL: [Statistic; 5] = [
        Statistic::SaltMinusS,
        Statistic::SaltOverS,
        Statistic::SOverSqrtSparsity,
        Statistic::BsOverSalt2S,
        Statistic::SherstovBsOverSg2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Statistic::SaltMinusS => "salt-s",
            Statistic::SaltOverS => "salt/s",
            Statistic::SOverSqrtSparsity => "s/sqrt(sparsity)",
            Statistic::BsOverSalt2S => "bs/(salt^2*s)",
            Statistic::SherstovBsOverSg2 => "bs/s(g)^2",
        }
    }

    pub fn parse(text: &str) -> Result<Statistic> {
        Statistic::ALL
            .into_iter()
            .find(|s| s.name() == text)
            .ok_or_else(|| {
                let names: Vec<&str> = Statistic::ALL.iter().map(Statistic::name).collect();
                Error::parse(format!("unknown statistic {text:?}; expected one of {names:?}"))
            })
    }

    fn needs_bs(&self) -> bool {
        matches!(self, Statistic::BsOverSalt2S | Statistic::SherstovBsOverSg2)
    }

    fn needs_salt(&self) -> bool {
        matches!(self, Statistic::SaltMinusS | Statistic::SaltOverS | Statistic::BsOverSalt2S)
    }

    pub(crate) fn of_quantities(&self, q: &Quantities) -> Option<f64> {
        let s = q.s as f64;
        match self {
            Statistic::SaltMinusS => q.salt.map(|t| t as f64 - s),
            Statistic::SaltOverS => q.salt.filter(|_| q.s > 0).map(|t| t as f64 / s),
            Statistic::SOverSqrtSparsity => Some(s / (q.sparsity as f64).sqrt()),
            Statistic::BsOverSalt2S => match (q.bs, q.salt) {
                (Some(b), Some(t)) if t > 0 && q.s > 0 => Some(b as f64 / (t * t * q.s) as f64),
                _ => None,
            },
            Statistic::SherstovBsOverSg2 => match (q.bs, q.sherstov_s_g) {
                (Some(b), Some(g)) if g > 0 => Some(b as f64 / (g * g) as f64),
                _ => None,
            },
        }
    }

    /// Computes only the measures this statistic needs.
    pub fn evaluate(&self, f: &TruthTable, limits: &Limits) -> Result<Option<f64>> {
        let skip = |r: Result<usize>| match r {
            Ok(v) => Ok(Some(v)),
            Err(Error::Skipped { .. }) => Ok(None),
            Err(e) => Err(e),
        };
        let mut q = Quantities {
            s: sensitivity(f, None)?.value,
            sparsity: sparsity(f).0,
            ..Quantities::default()
        };
        if self.needs_salt() {
            q.salt = skip(shift_invariant_alternation(f, limits).map(|s| s.value))?;
        }
        if self.needs_bs() {
            q.bs = skip(block_sensitivity(f, None, limits).map(|b| b.value()))?;
        }
        if *self == Statistic::SherstovBsOverSg2 {
            q.sherstov_s_g = skip(sherstov_linear(f, limits).map(|t| match t.certificate {
                TransformCertificate::Sherstov { s_g, .. } => s_g,
                _ => unreachable!("sherstov certificate"),
            }))?;
        }
        Ok(self.of_quantities(&q))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremalRecord {
    pub statistic: Statistic,
    pub value: f64,
    pub function: TruthTable,
    pub arity: usize,
    /// Table code in exhaustive mode, sample number in sampled mode.
    pub index: u64,
}

impl ExtremalRecord {
    /// Re-evaluates the statistic on the stored function.
    pub fn reproduces(&self, limits: &Limits) -> Result<bool> {
        Ok(self.statistic.evaluate(&self.function, limits)? == Some(self.value))
    }
}

/// Higher value first, then lower index.
fn rank(a: &ExtremalRecord, b: &ExtremalRecord) -> Ordering {
    b.value.total_cmp(&a.value).then(a.index.cmp(&b.index))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub kind: Option<CheckKind>,
    pub holds: u64,
    pub fails: u64,
    pub hypothesis_not_met: u64,
    pub skipped: u64,
}

impl Tally {
    fn add(&mut self, c: &Check) {
        self.kind = Some(c.kind);
        match c.verdict {
            Verdict::Holds => self.holds += 1,
            Verdict::Fails => self.fails += 1,
            Verdict::HypothesisNotMet => self.hypothesis_not_met += 1,
            Verdict::Skipped => self.skipped += 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanAggregate {
    pub arity: usize,
    pub functions: u64,
    pub checks: BTreeMap<String, Tally>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanResult {
    pub aggregate: ScanAggregate,
    /// The maximizing function for each statistic.
    pub extremal: Vec<ExtremalRecord>,
    /// First function (in table order) with a failing proven check; the scan stops there.
    pub abort: Option<CheckReport>,
    /// Failing empirical checks, first ones in table order.
    pub findings: Vec<(String, Check)>,
}

const MAX_FINDINGS: usize = 20;

impl ScanResult {
    pub fn has_proven_failure(&self) -> bool {
        self.abort.is_some()
    }

    pub fn to_json(&self) -> Value {
        json!(self)
    }

    pub fn to_text(&self) -> String {
        let a = &self.aggregate;
        let mut out = format!("exhaustive scan, n = {}, {} functions\n", a.arity, a.functions);
        let w = a.checks.keys().map(String::len).max().unwrap_or(0);
        let _ = writeln!(out, "  {:<w$}  {:>8} {:>6} {:>8} {:>8}", "check", "holds", "fails", "hyp-n/m", "skipped");
        for (name, t) in &a.checks {
            let _ = writeln!(
                out,
                "  {name:<w$}  {:>8} {:>6} {:>8} {:>8}",
                t.holds, t.fails, t.hypothesis_not_met, t.skipped
            );
        }
        for r in &self.extremal {
            let _ = writeln!(out, "  max {} = {} at {}", r.statistic.name(), r.value, r.function);
        }
        for (f, c) in &self.findings {
            let _ = writeln!(out, "  finding: {} fails for {f} [{} | {}]", c.name, c.lhs, c.rhs);
        }
        if let Some(r) = &self.abort {
            out += "ABORTED on a proven failure:\n";
            out += &r.to_text();
        }
        out
    }
}

struct Outcome {
    verdicts: Vec<Check>,
    quantities: Quantities,
    failed: Option<CheckReport>,
}

const CHUNK: usize = 1 << 11;

/// Runs [`inequality_suite`](super::inequality_suite) on every function of
/// arity `n ≤ 4`, merging in table order.
pub fn exhaustive_scan(n: usize, cfg: &SuiteConfig) -> Result<ScanResult> {
    if n > 4 {
        return Err(Error::InvalidParameter(format!(
            "exhaustive scans cover n ≤ 4, got {n}; use extremal_search to sample"
        )));
    }
    let total = 1usize << (1 << n);
    let mut result = ScanResult {
        aggregate: ScanAggregate {
            arity: n,
            ..ScanAggregate::default()
        },
        extremal: Vec::new(),
        abort: None,
        findings: Vec::new(),
    };
    let mut best: BTreeMap<Statistic, ExtremalRecord> = BTreeMap::new();
    'outer: for start in (0..total).step_by(CHUNK) {
        let end = (start + CHUNK).min(total);
        let outcomes = par::map_range(start..end, |code| -> Result<Outcome> {
            let f = TruthTable::from_index(n, code as u64)?;
            let (report, quantities) = suite_with_quantities(&f, cfg)?;
            let failed = report.has_proven_failure() || report.findings().next().is_some();
            let verdicts = report
                .checks
                .iter()
                .map(|c| {
                    let mut slim = Check::new(c.name.clone(), c.kind, String::new());
                    slim.verdict = c.verdict;
                    if c.is_finding() {
                        slim.lhs = c.lhs.clone();
                        slim.rhs = c.rhs.clone();
                    }
                    slim
                })
                .collect();
            Ok(Outcome {
                verdicts,
                quantities,
                failed: failed.then_some(report),
            })
        });
        for (i, o) in outcomes.into_iter().enumerate() {
            let o = o?;
            let code = (start + i) as u64;
            let agg = &mut result.aggregate;
            agg.functions += 1;
            for c in &o.verdicts {
                agg.checks.entry(c.name.clone()).or_default().add(c);
            }
            for stat in Statistic::ALL {
                if let Some(v) = stat.of_quantities(&o.quantities) {
                    if best.get(&stat).is_none_or(|r| v > r.value) {
                        best.insert(
                            stat,
                            ExtremalRecord {
                                statistic: stat,
                                value: v,
                                function: TruthTable::from_index(n, code)?,
                                arity: n,
                                index: code,
                            },
                        );
                    }
                }
            }
            if let Some(report) = o.failed {
                for c in report.findings() {
                    if result.findings.len() < MAX_FINDINGS {
                        result.findings.push((report.subject.clone(), c.clone()));
                    }
                }
                if report.has_proven_failure() {
                    result.abort = Some(report);
                    break 'outer;
                }
            }
        }
    }
    result.extremal = best.into_values().collect();
    Ok(result)
}

fn random_table(n: usize, rng: &mut ChaCha8Rng) -> Result<TruthTable> {
    let live = bits::live_mask(n);
    let words = (0..bits::word_count(n)).map(|_| rng.random::<u64>() & live).collect();
    TruthTable::from_words(n, words)
}

/// Top `top_k` functions of arity `n` by `statistic`. Exhaustive when all
/// `2^(2^n)` functions fit in `budget`, otherwise `budget` samples drawn
/// from a generator seeded with `seed`.
pub fn extremal_search(
    n: usize,
    statistic: Statistic,
    budget: u64,
    seed: u64,
    top_k: usize,
    limits: &Limits,
) -> Result<Vec<ExtremalRecord>> {
    let exhaustive = n <= 5 && (1u128 << (1u32 << n)) <= budget as u128;
    let total = if exhaustive { 1u64 << (1u32 << n) } else { budget };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Vec<ExtremalRecord> = Vec::new();
    let mut start = 0u64;
    while start < total {
        let end = (start + CHUNK as u64).min(total);
        let fs: Vec<TruthTable> = (start..end)
            .map(|i| {
                if exhaustive {
                    TruthTable::from_words(n, vec![i])
                } else {
                    random_table(n, &mut rng)
                }
            })
            .collect::<Result<_>>()?;
        let values = par::map_range(0..fs.len(), |i| statistic.evaluate(&fs[i], limits));
        for (i, (v, f)) in values.into_iter().zip(fs).enumerate() {
            if let Some(value) = v? {
                best.push(ExtremalRecord {
                    statistic,
                    value,
                    function: f,
                    arity: n,
                    index: start + i as u64,
                });
            }
        }
        best.sort_by(rank);
        best.truncate(top_k);
        start = end;
    }
    Ok(best)
}

/// [`extremal_search`] wrapped as a report: each record must reproduce its value.
pub fn search_suite(
    n: usize,
    statistic: Statistic,
    budget: u64,
    seed: u64,
    top_k: usize,
    limits: &Limits,
) -> Result<(CheckReport, Vec<ExtremalRecord>)> {
    let records = extremal_search(n, statistic, budget, seed, top_k, limits)?;
    let mut r = CheckReport::new(format!("search n={n} {} budget={budget} seed={seed}", statistic.name()));
    for (i, rec) in records.iter().enumerate() {
        let again = statistic.evaluate(&rec.function, limits)?;
        r.push(
            Check::new(format!("record{i}:reproduces"), CheckKind::Proven, "re-evaluating the statistic gives the stored value")
                .inputs(json!({"function": rec.function, "index": rec.index}))
                .sides(rec.value, again)
                .holds_if(again == Some(rec.value)),
        );
    }
    Ok((r, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn scan_n2() {
        let r = exhaustive_scan(2, &SuiteConfig::default()).unwrap();
        assert_eq!(r.aggregate.functions, 16);
        assert!(r.abort.is_none());
        assert!(r.aggregate.checks.values().all(|t| t.kind != Some(CheckKind::Proven) || t.fails == 0));
        assert_eq!(r.aggregate.checks["s<=bs"].holds, 16);
        assert!(exhaustive_scan(5, &SuiteConfig::default()).is_err());
    }

    #[test]
    fn search_small() {
        let lim = Limits::default();
        let top = extremal_search(3, Statistic::SaltMinusS, 1 << 20, 0, 5, &lim).unwrap();
        let p3 = Statistic::SaltMinusS.evaluate(&families::parity(3).unwrap(), &lim).unwrap();
        assert_eq!(p3, Some(0.0));
        assert!(top[0].value >= 0.0);
        assert!(top.iter().all(|r| r.reproduces(&lim).unwrap()));
        let a = extremal_search(6, Statistic::SOverSqrtSparsity, 50, 1, 3, &lim).unwrap();
        let b = extremal_search(6, Statistic::SOverSqrtSparsity, 50, 1, 3, &lim).unwrap();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0].value >= w[1].value));
    }
}
