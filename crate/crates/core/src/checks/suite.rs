// SPDX-License-Identifier: Apache-2.0

use serde_json::json;

use super::{Check, CheckKind, CheckReport, Verdict};
use crate::commlb::submatrix_witness;
use crate::error::Result;
use crate::measures::{measure_report, sparsity, Limits, MeasureReport};
use crate::transforms::{alt_to_s_linear, bs_to_s_affine, sherstov_linear, TransformCertificate};
use crate::tt::{Point, TruthTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub primes: Vec<u64>,
    pub limits: Limits,
    /// Largest arity at which the AND-submatrix identity is checked per function.
    pub submatrix_max_arity: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            primes: vec![2, 3],
            limits: Limits::default(),
            submatrix_max_arity: 10,
            seed: 0,
        }
    }
}

/// The raw quantities the extremal statistics are built from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Quantities {
    pub s: usize,
    pub bs: Option<usize>,
    pub salt: Option<usize>,
    pub sparsity: usize,
    pub sherstov_s_g: Option<usize>,
}

fn le(name: &str, kind: CheckKind, statement: &str, l: Option<usize>, r: Option<usize>) -> Check {
    let c = Check::new(name, kind, statement);
    match (l, r) {
        (Some(l), Some(r)) => c.sides(l, r).holds_if(l <= r),
        _ => c.skipped("a side was skipped at this arity"),
    }
}

/// Runs every per-function check. Composite primes are an error; ceilings
/// produce `skipped` verdicts.
pub fn inequality_suite(f: &TruthTable, cfg: &SuiteConfig) -> Result<CheckReport> {
    Ok(suite_with_quantities(f, cfg)?.0)
}

pub(crate) fn suite_with_quantities(
    f: &TruthTable,
    cfg: &SuiteConfig,
) -> Result<(CheckReport, Quantities)> {
    let lim = &cfg.limits;
    let m = measure_report(f, &cfg.primes, lim, None)?;
    let mut r = CheckReport::new(f.to_tt_string());
    let v = |name: &str| m.value(name);
    let n = f.arity();

    r.push(le("s<=bs", CheckKind::Proven, "s(f) ≤ bs(f)", v("s"), v("bs")));
    r.push(le("bs<=C", CheckKind::Proven, "bs(f) ≤ C(f)", v("bs"), v("C")));
    for &p in &cfg.primes {
        let name = format!("deg_{p}<=deg");
        r.push(le(&name, CheckKind::Proven, &format!("deg_{p}(f) ≤ deg(f)"), v(&format!("deg_{p}")), v("deg")).inputs(json!({"p": p})));
    }
    r.push(le("deg<=DT", CheckKind::Proven, "deg(f) ≤ DT(f)", v("deg"), v("DT")));
    r.push(le("DT<=bs^3", CheckKind::Proven, "DT(f) ≤ bs(f)³", v("DT"), v("bs").map(|b| b.pow(3))));
    r.push(le("bs<=2deg^2", CheckKind::Proven, "bs(f) ≤ 2·deg(f)²", v("bs"), v("deg").map(|d| 2 * d * d)));

    let bs0 = crate::measures::block_sensitivity(f, Some(&Point::zeros(n)), lim).ok();
    for &p in &cfg.primes {
        let dp = v(&format!("deg_{p}"));
        let rhs = bs0.as_ref().zip(dp).map(|(b, d)| b.value() * d * d);
        let c = le(
            &format!("DT<=bs0*deg_{p}^2"),
            CheckKind::Proven,
            &format!("DT(f) ≤ bs(f,0ⁿ)·deg_{p}(f)²"),
            v("DT"),
            rhs,
        );
        r.push(c.inputs(json!({"p": p})).witnesses(json!({"bs0": bs0})));
    }

    r.push(salt_ratio(&m));
    // bs ≥ s·salt/4 is only a theorem for particular families; here it is recorded.
    r.push(match (v("bs"), v("salt")) {
        (Some(bs), Some(salt)) => Check::new("4bs>=s*salt", CheckKind::Report, "4·bs(f) ≥ s(f)·salt(f)")
            .sides(4 * bs, m.s.value * salt)
            .holds_if(4 * bs >= m.s.value * salt),
        _ => Check::new("4bs>=s*salt", CheckKind::Report, "4·bs(f) ≥ s(f)·salt(f)").skipped("bs or salt skipped"),
    });

    let mut points = vec![("bs2s-equality@0", Point::zeros(n))];
    if let Some(b) = m.bs.computed() {
        points.push(("bs2s-equality@argmax", b.point));
    }
    for (name, a) in &points {
        let c = Check::new(*name, CheckKind::Proven, "s(g,0ⁿ) = bs(f,a) for g = f∘A").inputs(json!({"a": a.to_string()}));
        r.push(match bs_to_s_affine(f, a, lim) {
            Ok(t) => {
                let (_, l, rr, ok) = t.inequality();
                c.sides(l, rr).holds_if(ok && t.verify(f)).witnesses(t.to_json())
            }
            Err(crate::Error::Skipped { reason, .. }) => c.skipped(&reason),
            Err(e) => return Err(e),
        });
    }

    let t = alt_to_s_linear(f)?;
    let (_, alt, rhs, ok) = t.inequality();
    r.push(
        Check::new("alt<=2s(g)+1", CheckKind::Proven, "alt(f) ≤ 2·s(g)+1 with L invertible")
            .sides(alt, rhs)
            .holds_if(ok && t.verify(f))
            .witnesses(t.to_json()),
    );
    let sg = sparsity(&t.g).0;
    r.push(
        Check::new("sparsity-invariant", CheckKind::Proven, "sparsity(f∘L) = sparsity(f) for invertible L")
            .sides(m.sparsity, sg)
            .holds_if(m.sparsity == sg),
    );

    for (p, d) in &m.deg_p {
        let c = Check::new(
            format!("deg*2^deg_{p}>=n"),
            CheckKind::Proven,
            format!("deg(f)·2^deg_{p}(f) ≥ n when f depends on all variables"),
        )
        .inputs(json!({"p": p}));
        let lhs = (m.deg.value as u64) << d.value;
        r.push(if f.depends_on_all() {
            c.sides(lhs, n).holds_if(lhs >= n as u64)
        } else {
            c.sides(lhs, n).verdict(Verdict::HypothesisNotMet)
        });
    }

    let mut sherstov_s_g = None;
    let c = Check::new("sherstov:4s(g)^2>=bs", CheckKind::Empirical, "4·s(g)² ≥ bs(f) for the Sherstov map");
    r.push(match sherstov_linear(f, lim) {
        Ok(t) => {
            let (_, bs, rhs, ok) = t.inequality();
            if let TransformCertificate::Sherstov { s_g, .. } = t.certificate {
                sherstov_s_g = Some(s_g);
            }
            c.sides(bs, rhs).holds_if(ok && t.verify(f)).witnesses(t.to_json())
        }
        Err(crate::Error::Skipped { reason, .. }) => c.skipped(&reason),
        Err(e) => return Err(e),
    });

    r.push(witnesses_check(f, &m));

    if n <= cfg.submatrix_max_arity {
        let c = Check::new("submatrix-identity", CheckKind::Proven, "F(u,y) = g(u∧y) on W×W");
        r.push(match submatrix_witness(f, lim, cfg.seed) {
            Ok(cert) => c.sides(cert.k, cert.w.len()).verdict(Verdict::Holds).witnesses(cert.to_json()),
            Err(crate::Error::Skipped { reason, .. }) => c.skipped(&reason),
            Err(crate::Error::Verification(msg)) => c.verdict(Verdict::Fails).witnesses(json!({"diagnostic": msg})),
            Err(e) => return Err(e),
        });
    }

    let q = Quantities {
        s: m.s.value,
        bs: v("bs"),
        salt: v("salt"),
        sparsity: m.sparsity,
        sherstov_s_g,
    };
    Ok((r, q))
}

fn salt_ratio(m: &MeasureReport) -> Check {
    let c = Check::new("bs/(salt^2*s)", CheckKind::Report, "bs(f)/(salt(f)²·s(f)) recorded");
    match (m.value("bs"), m.value("salt")) {
        (Some(bs), Some(salt)) => {
            let den = salt * salt * m.s.value;
            if den == 0 {
                c.sides(bs, den).verdict(Verdict::HypothesisNotMet)
            } else {
                c.sides(bs, den)
                    .verdict(Verdict::Holds)
                    .witnesses(json!({"ratio": bs as f64 / den as f64}))
            }
        }
        _ => c.skipped("bs or salt skipped"),
    }
}

/// Every witness in the report re-validates against `f`.
fn witnesses_check(f: &TruthTable, m: &MeasureReport) -> Check {
    let mut bad = Vec::new();
    if !m.s.validate(f) {
        bad.push("s");
    }
    if m.bs.computed().is_some_and(|b| !b.validate(f)) {
        bad.push("bs");
    }
    if m.certificate.computed().is_some_and(|c| !c.validate(f)) {
        bad.push("C");
    }
    if !m.alt.validate(f) {
        bad.push("alt");
    }
    if let Some(s) = m.salt.computed() {
        let g = f.shift_by(s.shift.bits());
        if !s.chain.validate(&g) || s.chain.alternations != s.value {
            bad.push("salt");
        }
    }
    if m.dt.computed().is_some_and(|t| !t.validate(f)) {
        bad.push("DT");
    }
    Check::new("witnesses-validate", CheckKind::Proven, "every returned witness re-validates")
        .sides(bad.len(), 0)
        .holds_if(bad.is_empty())
        .witnesses(json!({"invalid": bad}))
}
