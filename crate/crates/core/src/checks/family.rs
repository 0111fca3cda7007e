// SPDX-License-Identifier: Apache-2.0

use serde_json::json;

use super::{Check, CheckKind, CheckReport, Verdict};
use crate::error::Result;
use crate::families::{and, or_compose, rubinstein, rubinstein_row, tree_function};
use crate::measures::{
    alternation, block_sensitivity_at, sensitivity, shift_invariant_alternation, sparsity, Limits,
};
use crate::transforms::{alt_to_s_linear, TransformCertificate};
use crate::tt::Point;

/// Family-specific statements. `long` adds the 15-variable tree-function salt check.
pub fn family_suite(limits: &Limits, long: bool) -> Result<CheckReport> {
    let mut r = CheckReport::new("families");
    let ks: &[usize] = if long { &[2, 3, 4] } else { &[2, 3] };
    for &k in ks {
        let f = tree_function(k)?;
        let need = 1usize << (k - 2);
        let c = Check::new(format!("tree{k}:salt>=2^(k-2)"), CheckKind::Proven, "salt(f_k) ≥ 2^(k−2)")
            .inputs(json!({"k": k}));
        r.push(match shift_invariant_alternation(&f, limits) {
            Ok(s) => c.sides(s.value, need).holds_if(s.value >= need).witnesses(json!(s)),
            Err(crate::Error::Skipped { reason, .. }) => c.skipped(&reason),
            Err(e) => return Err(e),
        });
        let s = sensitivity(&f, None)?;
        r.push(
            Check::new(format!("tree{k}:s<=k"), CheckKind::Proven, "s(f_k) ≤ k")
                .inputs(json!({"k": k}))
                .sides(s.value, k)
                .holds_if(s.value <= k)
                .witnesses(json!(s)),
        );
    }

    // 16 variables: bs only at the single point 0ⁿ, salt left out.
    let (m, n) = (4, 4);
    let f = rubinstein(m, n)?;
    let alt = alternation(&f);
    r.push(
        Check::new("rubinstein4x4:alt=2n", CheckKind::Proven, "alt(f_R) = alt(h)·n = 2n")
            .sides(alt.alternations, 2 * n)
            .holds_if(alt.alternations == 2 * n && alt.validate(&f))
            .witnesses(json!(alt)),
    );
    let bs0 = block_sensitivity_at(&f, &Point::zeros(m * n))?;
    r.push(
        Check::new("rubinstein4x4:bs0>=n^2/2", CheckKind::Proven, "2·bs(f_R,0ⁿ) ≥ n²")
            .sides(2 * bs0.value(), n * n)
            .holds_if(2 * bs0.value() >= n * n && bs0.validate(&f))
            .witnesses(json!(bs0)),
    );
    let s = sensitivity(&f, None)?;
    r.push(
        Check::new("rubinstein4x4:s<=n", CheckKind::Proven, "s(f_R) ≤ n")
            .sides(s.value, n)
            .holds_if(s.value <= n),
    );
    r.push(
        Check::new("rubinstein4x4:4bs>=s*alt", CheckKind::Proven, "4·bs(f_R) ≥ s(f_R)·alt(f_R)")
            .sides(4 * bs0.value(), s.value * alt.alternations)
            .holds_if(4 * bs0.value() >= s.value * alt.alternations),
    );

    let f = rubinstein(3, 3)?;
    let c = Check::new("rubinstein3x3:4bs>=s*salt", CheckKind::Proven, "4·bs(f_R) ≥ s(f_R)·salt(f_R)");
    let bs = crate::measures::block_sensitivity(&f, None, limits);
    let salt = shift_invariant_alternation(&f, limits);
    r.push(match (bs, salt) {
        (Ok(b), Ok(t)) => {
            let s = sensitivity(&f, None)?.value;
            c.sides(4 * b.value(), s * t.value)
                .holds_if(4 * b.value() >= s * t.value)
                .witnesses(json!({"bs": b, "salt": t, "s": s}))
        }
        _ => c.skipped("bs or salt skipped"),
    });

    let h3 = rubinstein_row(3)?;
    let two = or_compose(&[h3.clone(), h3.clone()])?;
    let lhs = alternation(&two).alternations;
    let rhs = 2 * alternation(&h3).alternations;
    r.push(
        Check::new("or-compose:h3+h3", CheckKind::Proven, "alt(OR∘f̄) = Σ alt(f_i) when f_i(0)=f_i(1)=0")
            .sides(lhs, rhs)
            .holds_if(lhs == rhs),
    );
    let a2 = and(2)?;
    let comp = or_compose(&[a2.clone(), a2.clone()])?;
    let lhs = alternation(&comp).alternations;
    let rhs = 2 * alternation(&a2).alternations;
    r.push(
        Check::new("or-compose:and2+and2", CheckKind::Proven, "alt(OR∘f̄) = Σ alt(f_i) when f_i(0)=f_i(1)=0")
            .sides(lhs, rhs)
            .verdict(Verdict::HypothesisNotMet)
            .witnesses(json!({"reason": "AND2(11) = 1"})),
    );
    r.push(
        Check::new("or-compose:and2+and2:le", CheckKind::Report, "alt(OR∘f̄) ≤ Σ alt(f_i)")
            .sides(lhs, rhs)
            .holds_if(lhs <= rhs),
    );

    for k in [2, 3, 4] {
        let f = tree_function(k)?;
        let t = alt_to_s_linear(&f)?;
        let (alt, s_g, invertible) = match &t.certificate {
            TransformCertificate::AltToS { chain, s_g, invertible, .. } => (chain.alternations, *s_g, *invertible),
            _ => unreachable!("alt2s certificate"),
        };
        let sp_f = sparsity(&f).0;
        let sp_g = sparsity(&t.g).0;
        let inputs = json!({"k": k});
        r.push(
            Check::new(format!("tree{k}:s(g)>=sqrt(sparsity)/2-1"), CheckKind::Proven, "4·(s(g)+1)² ≥ sparsity(g)")
                .inputs(inputs.clone())
                .sides(4 * (s_g + 1) * (s_g + 1), sp_g)
                .holds_if(4 * (s_g + 1) * (s_g + 1) >= sp_g && t.verify(&f))
                .witnesses(t.to_json()),
        );
        r.push(
            Check::new(format!("tree{k}:sparsity(g)=sparsity(f)"), CheckKind::Proven, "sparsity(g) = sparsity(f), L invertible")
                .inputs(inputs.clone())
                .sides(sp_g, sp_f)
                .holds_if(sp_g == sp_f && invertible),
        );
        r.push(
            Check::new(format!("tree{k}:alt+1>=sqrt(sparsity)"), CheckKind::Proven, "(alt(f_k)+1)² ≥ sparsity(f_k)")
                .inputs(inputs)
                .sides((alt + 1) * (alt + 1), sp_f)
                .holds_if((alt + 1) * (alt + 1) >= sp_f),
        );
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_suite_holds() {
        let r = family_suite(&Limits::default(), false).unwrap();
        assert!(r.ensure_proven().is_ok(), "{}", r.to_text());
        assert_eq!(r.get("tree3:salt>=2^(k-2)").unwrap().verdict, Verdict::Holds);
        assert_eq!(r.get("rubinstein4x4:alt=2n").unwrap().lhs, json!(8));
        assert_eq!(r.get("rubinstein4x4:bs0>=n^2/2").unwrap().lhs, json!(16));
        assert_eq!(r.get("or-compose:h3+h3").unwrap().lhs, json!(4));
        assert_eq!(r.get("or-compose:and2+and2").unwrap().lhs, json!(1));
    }
}
