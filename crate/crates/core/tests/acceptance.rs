//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

mod common;

use std::time::Instant;

use boolfn::checks::{exhaustive_scan, extremal_search, family_suite, ScanResult, Statistic, SuiteConfig};
use boolfn::commlb::{bound_summary, submatrix_witness};
use boolfn::families::{self, or_compose, parse_source};
use boolfn::measures::{
    alternation, block_sensitivity, block_sensitivity_at, salt_values, sensitivity, shift_invariant_alternation,
    sparsity, Limits,
};
use boolfn::transforms::{alt_to_s_linear, TransformCertificate};
use boolfn::{Point, TruthTable};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const PROVEN_AT_FOUR: [&str; 16] = [
    "s<=bs",
    "bs<=C",
    "deg_2<=deg",
    "deg_3<=deg",
    "deg<=DT",
    "DT<=bs^3",
    "bs<=2deg^2",
    "DT<=bs0*deg_2^2",
    "DT<=bs0*deg_3^2",
    "bs2s-equality@0",
    "bs2s-equality@argmax",
    "alt<=2s(g)+1",
    "sparsity-invariant",
    "deg*2^deg_2>=n",
    "deg*2^deg_3>=n",
    "witnesses-validate",
];

/// Functions on n variables that depend on every one of them, by inclusion–exclusion.
fn depending_on_all(n: u32) -> i64 {
    let binom = |n: u32, k: u32| (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64);
    (0..=n)
        .map(|k| {
            let sign = if (n - k).is_multiple_of(2) { 1 } else { -1 };
            sign * binom(n, k) * (1i64 << (1u32 << k))
        })
        .sum()
}

fn exhaustive(scan: &ScanResult) -> Outcome {
    ensure!(scan.abort.is_none(), "proven failure: {:?}", scan.abort.as_ref().map(|r| r.to_text()));
    let agg = &scan.aggregate;
    ensure!(agg.functions == 65_536, "scanned {} functions", agg.functions);
    for name in PROVEN_AT_FOUR {
        let t = agg.checks.get(name).ok_or(format!("check {name} missing"))?;
        ensure!(t.fails == 0 && t.skipped == 0, "{name}: {t:?}");
        ensure!(t.holds + t.hypothesis_not_met == 65_536, "{name}: {t:?}");
    }
    let all = depending_on_all(4);
    let hnm = agg.checks["deg*2^deg_2>=n"].hypothesis_not_met as i64;
    ensure!(hnm == 65_536 - all, "hypothesis-not-met {hnm}, expected {}", 65_536 - all);

    let lim = Limits::default();
    let mut small = 0;
    for n in 0..=3 {
        for code in 0..1u64 << (1 << n) {
            let f = TruthTable::from_index(n, code).map_err(|e| e.to_string())?;
            submatrix_witness(&f, &lim, 0).map_err(|e| e.to_string())?;
            small += 1;
        }
    }
    Ok(format!("65536 functions, 0 proven failures; submatrix identity on all {small} functions with n ≤ 3"))
}

fn tree_salt(long: bool) -> Outcome {
    let lim = Limits::default();
    let f3 = families::tree_function(3).map_err(|e| e.to_string())?;
    let shifts = salt_values(&f3);
    ensure!(shifts.len() == 128, "{} shifts", shifts.len());
    let salt3 = *shifts.iter().min().unwrap() as usize;
    ensure!(salt3 == common::salt(&common::table(&f3)), "salt(f3) = {salt3} disagrees with the oracle");
    ensure!(salt3 >= 2, "salt(f3) = {salt3}");
    let s3 = sensitivity(&f3, None).map_err(|e| e.to_string())?.value;
    ensure!(s3 <= 3, "s(f3) = {s3}");
    let mut line = format!("salt(f3) = {salt3} ≥ 2 over 128 shifts, s(f3) = {s3} ≤ 3");
    if long {
        let t = Instant::now();
        let f4 = families::tree_function(4).map_err(|e| e.to_string())?;
        let salt4 = shift_invariant_alternation(&f4, &lim).map_err(|e| e.to_string())?.value;
        ensure!(salt4 >= 4, "salt(f4) = {salt4}");
        let s4 = sensitivity(&f4, None).map_err(|e| e.to_string())?.value;
        ensure!(s4 <= 4, "s(f4) = {s4}");
        line += &format!("; salt(f4) = {salt4} ≥ 4 over 32768 shifts in {:.1?}", t.elapsed());
    }
    Ok(line)
}

fn rubinstein() -> Outcome {
    let err = |e: boolfn::Error| e.to_string();
    let f = families::rubinstein(4, 4).map_err(err)?;
    let alt = alternation(&f);
    ensure!(alt.alternations == 8 && alt.validate(&f), "alt(f_R) = {}", alt.alternations);
    let bs0 = block_sensitivity_at(&f, &Point::zeros(16)).map_err(err)?;
    ensure!(bs0.value() == 8 && bs0.validate(&f), "bs(f_R, 0) = {}", bs0.value());
    let s = sensitivity(&f, None).map_err(err)?.value;
    ensure!(s <= 4, "s(f_R) = {s}");
    ensure!(4 * bs0.value() >= s * alt.alternations, "4·{} < {s}·8", bs0.value());

    let lim = Limits::default();
    let g = families::rubinstein(3, 3).map_err(err)?;
    let bs = block_sensitivity(&g, None, &lim).map_err(err)?.value();
    let salt = shift_invariant_alternation(&g, &lim).map_err(err)?.value;
    let sg = sensitivity(&g, None).map_err(err)?.value;
    ensure!(4 * bs >= sg * salt, "3x3: 4·{bs} < {sg}·{salt}");
    Ok(format!("4x4: alt = 8, bs(0) = 8, s = {s}; 3x3: bs = {bs}, s = {sg}, salt = {salt}"))
}

fn or_composition() -> Outcome {
    let mut rng = common::rng(20);
    let mut checked_by_oracle = 0;
    for trial in 0..200 {
        let k = rng.random_range(1..=4);
        let mut budget: usize = 12;
        let mut parts = Vec::new();
        for i in 0..k {
            let left = k - i - 1;
            let hi = (budget - left).min(6);
            if hi < 1 {
                break;
            }
            let n = rng.random_range(1..=hi);
            budget -= n;
            let top = (1usize << n) - 1;
            let f = TruthTable::from_fn(n, |x| x != 0 && x != top && rng.random::<bool>()).map_err(|e| e.to_string())?;
            parts.push(f);
        }
        let g = or_compose(&parts).map_err(|e| e.to_string())?;
        ensure!(g.arity() <= 12, "arity {}", g.arity());
        let lhs = alternation(&g).alternations;
        let rhs: usize = parts.iter().map(|f| alternation(f).alternations).sum();
        ensure!(lhs == rhs, "trial {trial}: alt(OR∘f) = {lhs} ≠ {rhs} for {g}");
        if g.arity() <= 7 {
            ensure!(lhs == common::alt(&common::table(&g)), "trial {trial}: oracle disagrees");
            checked_by_oracle += 1;
        }
    }
    Ok(format!("200 tuples, equality every time ({checked_by_oracle} also by chain enumeration)"))
}

fn sparsity_pipeline() -> Outcome {
    let mut parts = Vec::new();
    for k in [2, 3, 4] {
        let f = families::tree_function(k).map_err(|e| e.to_string())?;
        let t = alt_to_s_linear(&f).map_err(|e| e.to_string())?;
        ensure!(t.verify(&f), "k={k}: transform does not verify");
        ensure!(t.map.is_invertible(), "k={k}: L not invertible");
        let (s_g, alt) = match &t.certificate {
            TransformCertificate::AltToS { s_g, chain, .. } => (*s_g, chain.alternations),
            _ => return Err("wrong certificate".into()),
        };
        let sp_f = sparsity(&f).0;
        let sp_g = sparsity(&t.g).0;
        ensure!(sp_f == sp_g, "k={k}: sparsity {sp_g} ≠ {sp_f}");
        ensure!(4 * (s_g + 1) * (s_g + 1) >= sp_g, "k={k}: s(g) = {s_g}, sparsity {sp_g}");
        ensure!((alt + 1) * (alt + 1) >= sp_f, "k={k}: alt = {alt}, sparsity {sp_f}");
        parts.push(format!("k={k}: s(g) = {s_g}, sparsity = {sp_g}"));
    }
    Ok(parts.join("; "))
}

fn commlb() -> Outcome {
    let lim = Limits::default();
    for code in 0..256 {
        let f = TruthTable::from_index(3, code).map_err(|e| e.to_string())?;
        submatrix_witness(&f, &lim, 0).map_err(|e| e.to_string())?;
    }
    let mut rng = common::rng(6);
    for i in 0..1000 {
        let n = 6 + i % 5;
        let f = common::random(n, &mut rng);
        let c = submatrix_witness(&f, &lim, i as u64).map_err(|e| e.to_string())?;
        ensure!(c.k == block_sensitivity_at(&f, &Point::zeros(n)).map_err(|e| e.to_string())?.value(), "k mismatch");
    }
    let gip = parse_source("fam:gip:n=2,k=2").map_err(|e| e.to_string())?;
    let s = bound_summary(&gip, &[2], &lim).map_err(|e| e.to_string())?;
    ensure!(s.primes[0].deg_p == 2, "deg_2 = {}", s.primes[0].deg_p);
    ensure!(s.primes[0].dt_le_bs0_deg_p_sq == Some(true), "DT ≤ bs0·deg_2² fails");
    let dt = *s.dt.computed().ok_or("DT skipped")?;
    let bs0 = *s.bs0.computed().ok_or("bs0 skipped")?;
    Ok(format!("n=3 exhaustive and 1000 random n ∈ 6..10 verified; gip(2,2): deg_2 = 2, DT = {dt} ≤ {bs0}·4"))
}

fn empirical(scan: &ScanResult) -> Outcome {
    let lim = Limits::default();
    let mut parts = Vec::new();
    for stat in [Statistic::BsOverSalt2S, Statistic::SherstovBsOverSg2] {
        let rec = scan
            .extremal
            .iter()
            .find(|r| r.statistic == stat)
            .ok_or(format!("no {} record", stat.name()))?;
        ensure!(rec.reproduces(&lim).map_err(|e| e.to_string())?, "{} does not reproduce", stat.name());
        let runs: Vec<_> = (0..2)
            .map(|_| extremal_search(6, stat, 400, 17, 3, &lim))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure!(runs[0] == runs[1], "{} sampled search differs between runs", stat.name());
        let sampled = runs[0].first().map_or(f64::NAN, |r| r.value);
        parts.push(format!(
            "max {} = {} at {} (n=4, exhaustive), {} (n=6, 400 samples)",
            stat.name(),
            rec.value,
            rec.function,
            sampled
        ));
    }
    Ok(parts.join("; "))
}

fn main() {
    let long = std::env::var_os("BOOLFN_SKIP_LONG").is_none();
    let start = Instant::now();
    let cfg = SuiteConfig {
        submatrix_max_arity: 3,
        ..SuiteConfig::default()
    };
    let scan = exhaustive_scan(4, &cfg).map_err(|e| e.to_string());
    let scan_time = start.elapsed();
    let family = family_suite(&Limits::default(), false).map_err(|e| e.to_string());

    let criteria: Vec<Criterion> = vec![
        ("exhaustive n ≤ 4 suite", Box::new(|| scan.clone().and_then(|s| exhaustive(&s)).map(|l| format!("{l} ({scan_time:.1?})")))),
        ("tree-function salt", Box::new(move || tree_salt(long))),
        ("Rubinstein grids", Box::new(rubinstein)),
        ("OR-composition equality", Box::new(or_composition)),
        ("alternation-to-sensitivity sparsity pipeline", Box::new(sparsity_pipeline)),
        ("communication certificates", Box::new(commlb)),
        ("empirical constants", Box::new(|| scan.clone().and_then(|s| empirical(&s)))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[PASS] criterion {}: {name}: {detail} [{:.1?}]", i + 1, t.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    match family {
        Ok(r) if !r.has_proven_failure() => println!("[PASS] family suite: {} checks", r.checks.len()),
        Ok(r) => {
            failed += 1;
            println!("[FAIL] family suite:\n{}", r.to_text());
        }
        Err(e) => {
            failed += 1;
            println!("[FAIL] family suite: {e}");
        }
    }
    println!("acceptance: {} failed, total {:.1?}", failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
