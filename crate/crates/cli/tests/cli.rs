use std::process::{Command, Output};

use serde_json::Value;

fn boolfn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boolfn"))
        .args(args)
        .env_remove("BOOLFN_WORKERS")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn measures_parity4() {
    let out = boolfn(&["measures", "fam:parity:n=4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["measures"]["s"], 4);
    assert_eq!(v["measures"]["deg_2"], 1);
    assert_eq!(v["measures"]["sparsity"], 1);
}

#[test]
fn measures_and2_and_csv() {
    let v = json_of(&boolfn(&["measures", "tt:2:8"]));
    assert_eq!(v["function"], "tt:2:8");
    assert_eq!(v["measures"]["bs"], 2);
    let out = boolfn(&["measures", "fam:maj:n=5", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("function,s,bs,C"));
    assert_eq!(lines[0].split(',').count(), lines[1].split(',').count());
}

#[test]
fn parse_errors_exit_2() {
    for args in [
        &["measures", "tt:2:zz"][..],
        &["measures", "fam:nope:n=2"],
        &["measures", "tt:2:8", "--at", "1"],
        &["transform", "bs2s", "tt:2:8"],
        &["check", "exhaustive:9"],
        &["check", "function"],
        &["measures", "tt:2:8", "--primes", "4"],
        &["measures", "tt:2:8", "--ceiling", "bs=20"],
        &["bogus"],
    ] {
        let out = boolfn(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn over_ceiling_skips_and_exits_0() {
    let out = boolfn(&["measures", "fam:or:n=14", "--ceiling", "DT=4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!(v["measures"]["DT"].is_null());
    assert!(v["measures"]["C"].is_null());
    assert_eq!(v["measures"]["s"], 14);
    let skipped: Vec<&str> = v["skipped"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["measure"].as_str().unwrap())
        .collect();
    assert!(skipped.contains(&"DT") && skipped.contains(&"C"));
    let out = boolfn(&["measures", "fam:or:n=14", "--ceiling", "C=14", "--override-ceilings", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn transforms() {
    let v = json_of(&boolfn(&["transform", "bs2s", "fam:or:n=3", "--at", "000"]));
    assert_eq!(v["inequality"]["lhs"], 3);
    assert_eq!(v["inequality"]["rhs"], 3);
    assert_eq!(v["g"], "tt:3:ef");

    let out = boolfn(&["transform", "alt2s", "fam:tree:k=3", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("alt ≤ 2s(g)+1: 7 ≤"), "{text}");

    let v = json_of(&boolfn(&["transform", "sherstov", "fam:and:n=2"]));
    assert_eq!(v["inequality"]["holds"], true);
}

#[test]
fn check_suites() {
    let out = boolfn(&["check", "exhaustive:3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["aggregate"]["functions"], 256);
    assert_eq!(v["aggregate"]["checks"]["submatrix-identity"]["holds"], 256);

    let out = boolfn(&["check", "function", "fam:rubinstein:m=3,n=3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let c = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "4bs>=s*salt").unwrap();
    assert_eq!(c["verdict"], "holds");

    let out = boolfn(&["check", "family", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("rubinstein4x4:alt=2n"));
}

#[test]
fn search_is_deterministic() {
    let args = ["search", "-n", "8", "--seed", "1", "--budget", "300", "--statistic", "s/sqrt(sparsity)", "--top", "3"];
    let a = boolfn(&args);
    let b = boolfn(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v.as_array().unwrap().len(), 3);
    let c = boolfn(&["--workers", "1", "search", "-n", "8", "--seed", "1", "--budget", "300", "--statistic", "s/sqrt(sparsity)", "--top", "3"]);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(boolfn(&["check", "search", "-n", "2", "--statistic", "s/sqrt(sparsity)"]).status.code(), Some(0));
}

#[test]
fn comm_certificates() {
    let v = json_of(&boolfn(&["comm", "fam:and:n=2"]));
    assert_eq!(v["certificate"]["k"], 1);
    assert_eq!(v["certificate"]["W"], serde_json::json!(["00", "11"]));
    let v = json_of(&boolfn(&["comm", "fam:or:n=3"]));
    assert_eq!(v["certificate"]["k"], 3);
    assert_eq!(v["certificate"]["g_equals_f"], true);
    let v = json_of(&boolfn(&["comm", "fam:gip:n=2,k=2", "--primes", "2"]));
    assert_eq!(v["bound_summary"]["primes"][0]["deg_p"], 2);
    assert_eq!(v["bound_summary"]["primes"][0]["dt_le_bs0_deg_p_sq"], true);
}

#[test]
fn matrix_export_and_config() {
    let dir = std::env::temp_dir().join(format!("boolfn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let pbm = dir.join("m.pbm");
    let out = boolfn(&["comm", "fam:and:n=2", "--export-matrix", pbm.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&pbm).unwrap();
    assert!(text.starts_with("P1\n4 4\n"));

    let cfg = dir.join("cfg.toml");
    std::fs::write(&cfg, "format = \"csv\"\nprimes = [2]\n[ceilings]\ndecision_tree = 2\n").unwrap();
    let out = boolfn(&["measures", "fam:and:n=3", "--config", cfg.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next().unwrap(), "function,s,bs,C,alt,salt,deg,deg_2,sparsity,DT");
    assert!(text.lines().nth(1).unwrap().ends_with(','), "{text}");
    let out = boolfn(&["measures", "fam:and:n=3", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    assert!(json_of(&out)["measures"]["DT"].is_null());

    std::fs::write(&cfg, "colour = 1\n").unwrap();
    assert_eq!(boolfn(&["measures", "tt:1:2", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}
