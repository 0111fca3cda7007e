// SPDX-License-Identifier: Apache-2.0

//! `boolfn`: measures, transforms, verification suites and communication
//! certificates for Boolean functions given as `tt:`, `anf:` or `fam:` sources.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use boolfn::checks::{self, CheckReport, Statistic, SuiteConfig};
use boolfn::commlb::{and_matrix, bound_summary, det_upper_bound, submatrix_witness};
use boolfn::families::parse_source;
use boolfn::measures::measure_report;
use boolfn::transforms::{alt_to_s_linear, bs_to_s_affine, sherstov_linear, TransformResult};
use boolfn::{Error, Limits, Point, TruthTable};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "boolfn", version, about = "Exact complexity measures and certificates for Boolean functions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format [default: json]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Primes for deg_p, comma separated [default: 2,3]
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Seed for sampled modes [default: 0]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads [default: available parallelism]
    #[arg(long, global = true, env = "BOOLFN_WORKERS")]
    workers: Option<usize>,
    /// Allow ceilings above the defaults
    #[arg(long, global = true)]
    override_ceilings: bool,
    /// Arity ceiling, e.g. `bs=16` (names: bs, C, salt, DT, matrix)
    #[arg(long = "ceiling", global = true, value_name = "NAME=VALUE")]
    ceilings: Vec<String>,
    /// TOML file with defaults for the flags above
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print every measure with witnesses
    Measures {
        source: String,
        /// Evaluate pointwise measures at this point (x1 first)
        #[arg(long)]
        at: Option<String>,
    },
    /// Build a transformed function g and its certificate
    Transform {
        #[arg(value_enum)]
        which: Which,
        source: String,
        /// Point a for bs2s (x1 first)
        #[arg(long)]
        at: Option<String>,
    },
    /// Run a verification suite: function, exhaustive:N, family or search
    Check {
        suite: String,
        /// Function source for the `function` suite
        source: Option<String>,
        /// Include the 15-variable tree function in the family suite
        #[arg(long)]
        long: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// AND-matrix certificates and bound summary
    Comm {
        source: String,
        /// Write the AND matrix (`.pbm` for text, anything else for packed binary)
        #[arg(long)]
        export_matrix: Option<PathBuf>,
    },
    /// Top functions by a tracked statistic
    Search {
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Arity to search
    #[arg(long, short = 'n', default_value_t = 3)]
    arity: usize,
    /// One of salt-s, salt/s, s/sqrt(sparsity), bs/(salt^2*s), bs/s(g)^2
    #[arg(long, default_value = "salt-s")]
    statistic: String,
    /// Number of functions to evaluate
    #[arg(long, default_value_t = 10_000)]
    budget: u64,
    /// Records to keep
    #[arg(long, default_value_t = 10)]
    top: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    Bs2s,
    Alt2s,
    Sherstov,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct FileConfig {
    format: Option<Format>,
    primes: Option<Vec<u64>>,
    seed: Option<u64>,
    workers: Option<usize>,
    override_ceilings: bool,
    ceilings: Option<Limits>,
}

struct Config {
    format: Format,
    primes: Vec<u64>,
    seed: u64,
    limits: Limits,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Verification(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn resolve(g: &Global) -> Result<Config, Failure> {
    let file = match &g.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            toml::from_str::<FileConfig>(&text)
                .map_err(|e| Failure::usage(format!("bad config {}: {e}", path.display())))?
        }
        None => FileConfig::default(),
    };
    let mut limits = file.ceilings.unwrap_or_default();
    for spec in &g.ceilings {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("--ceiling expects NAME=VALUE, got {spec:?}")))?;
        let value: usize = value
            .parse()
            .map_err(|_| Failure::usage(format!("bad ceiling value in {spec:?}")))?;
        limits.set(name, value)?;
    }
    if !limits.within_defaults() && !(g.override_ceilings || file.override_ceilings) {
        return Err(Failure::usage("ceilings above the defaults need --override-ceilings"));
    }
    if let Some(w) = g.workers.or(file.workers) {
        if w == 0 {
            return Err(Failure::usage("--workers must be positive"));
        }
        boolfn::par::set_global_workers(w);
    }
    Ok(Config {
        format: g.format.or(file.format).unwrap_or(Format::Json),
        primes: g.primes.clone().or(file.primes).unwrap_or_else(|| vec![2, 3]),
        seed: g.seed.or(file.seed).unwrap_or(0),
        limits,
    })
}

fn source(text: &str) -> Result<TruthTable, Failure> {
    Ok(parse_source(text)?)
}

fn point(text: &str, f: &TruthTable) -> Result<Point, Failure> {
    Ok(Point::parse(text, f.arity())?)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn csv_field(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => {
            let s = other.to_string();
            if s.contains(',') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s
            }
        }
    }
}

fn report_out(r: &CheckReport, format: Format) -> String {
    match format {
        Format::Json => pretty(&r.to_json()),
        Format::Text => r.to_text(),
        Format::Csv => {
            let mut out = String::from("subject,check,kind,verdict,lhs,rhs\n");
            for c in &r.checks {
                let kind = json!(c.kind);
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.subject,
                    c.name,
                    csv_field(&kind),
                    c.verdict.name(),
                    csv_field(&c.lhs),
                    csv_field(&c.rhs)
                );
            }
            out
        }
    }
}

fn cmd_measures(cfg: &Config, src: &str, at: Option<&str>) -> Outcome {
    let f = source(src)?;
    let at = at.map(|a| point(a, &f)).transpose()?;
    let m = measure_report(&f, &cfg.primes, &cfg.limits, at.as_ref())?;
    for (name, reason) in m.skips() {
        eprintln!("note: {name} skipped: {reason}");
    }
    let out = match cfg.format {
        Format::Json => pretty(&m.to_json()),
        Format::Csv => format!("{}\n{}\n", m.csv_header(), m.csv_row()),
        Format::Text => m.to_text(),
    };
    Ok((out, true))
}

fn transform_out(t: &TransformResult, format: Format) -> String {
    match format {
        Format::Json => pretty(&t.to_json()),
        Format::Text => {
            let mut out = format!("{} on {} variables\n", t.kind.name(), t.g.arity());
            for (i, s) in t.substitution().iter().enumerate() {
                let _ = writeln!(out, "  x{} <- {s}", i + 1);
            }
            let _ = writeln!(out, "g = {}", t.g);
            out + &t.summary() + "\n"
        }
        Format::Csv => {
            let (stmt, lhs, rhs, holds) = t.inequality();
            format!("transform,statement,lhs,rhs,holds,g\n{},{stmt},{lhs},{rhs},{holds},{}\n", t.kind.name(), t.g)
        }
    }
}

fn cmd_transform(cfg: &Config, which: Which, src: &str, at: Option<&str>) -> Outcome {
    let f = source(src)?;
    let made = match which {
        Which::Bs2s => {
            let at = at.ok_or_else(|| Failure::usage("transform bs2s needs --at"))?;
            bs_to_s_affine(&f, &point(at, &f)?, &cfg.limits)
        }
        Which::Alt2s => alt_to_s_linear(&f),
        Which::Sherstov => sherstov_linear(&f, &cfg.limits),
    };
    match made {
        Ok(t) => {
            if !t.verify(&f) {
                return Err(Failure { code: 1, message: format!("certificate does not verify: {}", t.summary()) });
            }
            let holds = t.inequality().3;
            Ok((transform_out(&t, cfg.format), holds || matches!(which, Which::Sherstov)))
        }
        Err(Error::Skipped { measure, reason }) => {
            eprintln!("note: {measure} skipped: {reason}");
            Ok((pretty(&json!({"skipped": {"measure": measure, "reason": reason}})), true))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_check(cfg: &Config, suite: &str, src: Option<&str>, long: bool, search: &SearchArgs) -> Outcome {
    let suite_cfg = SuiteConfig {
        primes: cfg.primes.clone(),
        limits: cfg.limits,
        seed: cfg.seed,
        ..SuiteConfig::default()
    };
    let report = match (suite, src) {
        ("function", Some(s)) => checks::inequality_suite(&source(s)?, &suite_cfg)?,
        ("function", None) => return Err(Failure::usage("check function needs a function source")),
        ("family", _) => checks::family_suite(&cfg.limits, long)?,
        ("search", _) => return cmd_search(cfg, search, true),
        (other, _) => {
            let n = other
                .strip_prefix("exhaustive:")
                .and_then(|n| n.parse::<usize>().ok())
                .ok_or_else(|| Failure::usage(format!("unknown suite {other:?}; expected function, exhaustive:N, family or search")))?;
            if n > 4 {
                return Err(Failure::usage("exhaustive scans cover n ≤ 4; use `search` for larger arities"));
            }
            let scan = checks::exhaustive_scan(n, &suite_cfg)?;
            let out = match cfg.format {
                Format::Json => pretty(&scan.to_json()),
                Format::Text => scan.to_text(),
                Format::Csv => {
                    let mut out = String::from("check,kind,holds,fails,hypothesis_not_met,skipped\n");
                    for (name, t) in &scan.aggregate.checks {
                        let kind = json!(t.kind);
                        let _ = writeln!(out, "{name},{},{},{},{},{}", csv_field(&kind), t.holds, t.fails, t.hypothesis_not_met, t.skipped);
                    }
                    out
                }
            };
            if let Some(r) = &scan.abort {
                if let Err(e) = r.ensure_proven() {
                    eprintln!("{e}");
                }
            }
            return Ok((out, !scan.has_proven_failure()));
        }
    };
    if let Err(e) = report.ensure_proven() {
        eprintln!("{e}");
    }
    for c in report.findings() {
        eprintln!("finding: {} fails [{} | {}]", c.name, c.lhs, c.rhs);
    }
    Ok((report_out(&report, cfg.format), !report.has_proven_failure()))
}

fn cmd_search(cfg: &Config, a: &SearchArgs, as_check: bool) -> Outcome {
    let stat = Statistic::parse(&a.statistic)?;
    let (report, records) = checks::search_suite(a.arity, stat, a.budget, cfg.seed, a.top, &cfg.limits)?;
    let ok = !report.has_proven_failure();
    if as_check {
        return Ok((report_out(&report, cfg.format), ok));
    }
    let out = match cfg.format {
        Format::Json => pretty(&json!(records)),
        Format::Csv => {
            let mut out = String::from("statistic,value,function,arity,index\n");
            for r in &records {
                let _ = writeln!(out, "{},{},{},{},{}", r.statistic.name(), r.value, r.function, r.arity, r.index);
            }
            out
        }
        Format::Text => {
            let mut out = format!("top {} by {} at n = {}\n", records.len(), stat.name(), a.arity);
            for r in &records {
                let _ = writeln!(out, "  {:>10.6}  {}  (#{})", r.value, r.function, r.index);
            }
            out
        }
    };
    Ok((out, ok))
}

fn cmd_comm(cfg: &Config, src: &str, export: Option<&PathBuf>) -> Outcome {
    let f = source(src)?;
    let skipped = |e: Error| match e {
        Error::Skipped { measure, reason } => {
            eprintln!("note: {measure} skipped: {reason}");
            Ok(json!({"skipped": reason}))
        }
        e => Err(Failure::from(e)),
    };
    let cert = submatrix_witness(&f, &cfg.limits, cfg.seed)
        .map(|c| {
            let mut v = c.to_json();
            v["g_equals_f"] = json!(c.g == f);
            v
        })
        .or_else(skipped)?;
    let det = det_upper_bound(&f, &cfg.limits).map(|d| json!(d)).or_else(skipped)?;
    let summary = bound_summary(&f, &cfg.primes, &cfg.limits)?;
    if let Some(path) = export {
        let m = and_matrix(&f, &cfg.limits)?;
        m.export(path)
            .map_err(|e| Failure { code: 2, message: format!("cannot write {}: {e}", path.display()) })?;
        eprintln!("wrote {}x{} matrix to {}", m.dim(), m.dim(), path.display());
    }
    let payload = json!({
        "function": f,
        "certificate": cert,
        "det_upper_bound": det,
        "bound_summary": summary.to_json(),
    });
    let out = match cfg.format {
        Format::Json | Format::Csv => pretty(&payload),
        Format::Text => {
            let mut out = format!("function {f}\n");
            let _ = writeln!(out, "certificate k = {}, |W| = {}", payload["certificate"]["k"], payload["certificate"]["W"].as_array().map_or(0, Vec::len));
            if payload["certificate"]["g_equals_f"] == json!(true) {
                out += "g = f: W is the whole cube, G = F\n";
            }
            let _ = writeln!(out, "det upper bound {det}");
            let _ = writeln!(out, "bound summary {}", payload["bound_summary"]);
            out
        }
    };
    Ok((out, true))
}

fn run(cli: &Cli) -> Outcome {
    let cfg = resolve(&cli.global)?;
    match &cli.command {
        Command::Measures { source, at } => cmd_measures(&cfg, source, at.as_deref()),
        Command::Transform { which, source, at } => cmd_transform(&cfg, *which, source, at.as_deref()),
        Command::Check { suite, source, long, search } => cmd_check(&cfg, suite, source.as_deref(), *long, search),
        Command::Comm { source, export_matrix } => cmd_comm(&cfg, source, export_matrix.as_ref()),
        Command::Search { search } => cmd_search(&cfg, search, false),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
