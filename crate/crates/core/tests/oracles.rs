mod common;

use boolfn::measures::*;
use boolfn::{Point, TruthTable};
use common::{alt, bs, bs_at, c, c_at, deg, deg_p, dt, random, rng, s, s_at, salt, shifted, table};

fn compare(f: &TruthTable) {
    let lim = Limits::default();
    let t = table(f);
    let n = f.arity();
    let sens = sensitivity(f, None).unwrap();
    assert_eq!(sens.value, s(&t), "s {f}");
    assert!(sens.validate(f));
    let b = block_sensitivity(f, None, &lim).unwrap();
    assert_eq!(b.value(), bs(&t), "bs {f}");
    assert!(b.validate(f));
    let cert = certificate(f, None, &lim).unwrap();
    assert_eq!(cert.value(), c(&t), "C {f}");
    assert!(cert.validate(f));
    let chain = alternation(f);
    assert_eq!(chain.alternations, alt(&t), "alt {f}");
    assert!(chain.validate(f));
    let sa = shift_invariant_alternation(f, &lim).unwrap();
    assert_eq!(sa.value, salt(&t), "salt {f}");
    assert_eq!(real_degree(f).0, deg(&t), "deg {f}");
    for p in [2, 3, 5] {
        assert_eq!(modp_degree(f, p).unwrap().0, deg_p(&t, p as i64), "deg_{p} {f}");
    }
    assert_eq!(boolfn::measures::sparsity(f).0, common::sparsity(&t), "sparsity {f}");
    let tree = dt_depth(f, &lim).unwrap();
    assert_eq!(tree.depth(), dt(&t), "DT {f}");
    assert!(tree.validate(f));

    for x in 0..f.size() {
        let a = Point::new(n, x).unwrap();
        assert_eq!(sensitivity(f, Some(&a)).unwrap().value, s_at(&t, x));
        assert_eq!(block_sensitivity_at(f, &a).unwrap().value(), bs_at(&t, x));
        assert_eq!(certificate_at(f, &a).unwrap().value(), c_at(&t, x));
    }
    let bv = block_values(f);
    assert!((0..f.size()).all(|x| bv[x] == bs_at(&t, x)));
    let sv = salt_values(f);
    assert!((0..f.size()).all(|b| sv[b] as usize == alt(&shifted(&t, b))));
}

#[test]
fn every_function_up_to_three_variables() {
    for n in 0..=3 {
        for code in 0..1u64 << (1 << n) {
            compare(&TruthTable::from_index(n, code).unwrap());
        }
    }
}

#[test]
fn random_functions_four_and_five_variables() {
    let mut r = rng(7);
    for n in [4, 5] {
        for _ in 0..60 {
            compare(&random(n, &mut r));
        }
    }
}

#[test]
fn sparse_functions_six_variables() {
    let mut r = rng(8);
    use rand::Rng;
    for _ in 0..8 {
        let ones: Vec<usize> = (0..3).map(|_| r.random_range(0..64)).collect();
        let f = TruthTable::from_fn(6, |x| ones.contains(&x)).unwrap();
        let t = table(&f);
        let lim = Limits::default();
        assert_eq!(block_sensitivity(&f, None, &lim).unwrap().value(), bs(&t));
        assert_eq!(alternation(&f).alternations, alt(&t));
        assert_eq!(shift_invariant_alternation(&f, &lim).unwrap().value, salt(&t));
        assert_eq!(dt_depth(&f, &lim).unwrap().depth(), dt(&t));
    }
}

#[test]
fn report_values_match_oracles() {
    let f = boolfn::families::parse_source("fam:maj:n=5").unwrap();
    let t = table(&f);
    let m = measure_report(&f, &[2, 3], &Limits::default(), None).unwrap();
    assert_eq!(m.value("s"), Some(s(&t)));
    assert_eq!(m.value("bs"), Some(bs(&t)));
    assert_eq!(m.value("C"), Some(c(&t)));
    assert_eq!(m.value("alt"), Some(1));
    assert_eq!(m.value("deg_3"), Some(deg_p(&t, 3)));
    assert_eq!(m.value("DT"), Some(dt(&t)));
}
