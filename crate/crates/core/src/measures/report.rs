// SPDX-License-Identifier: Apache-2.0

use serde_json::{json, Map, Value};

use super::{
    alternation, block_sensitivity, certificate, dt_depth, modp_degree, real_degree, sensitivity,
    shift_invariant_alternation, sparsity, BlockFamily, Certificate, Chain, DecisionTree, Limits,
    Salt, Sensitivity,
};
use crate::bits;
use crate::error::{Error, Result};
use crate::spectrum::SpectrumRep;
use crate::tt::{Point, TruthTable};

/// A measure value that was either computed or explicitly skipped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Measured<T> {
    Computed(T),
    Skipped(String),
}

impl<T> Measured<T> {
    /// Ceiling skips become `Skipped`; any other error is propagated.
    pub fn from_result(r: Result<T>) -> Result<Self> {
        match r {
            Ok(v) => Ok(Measured::Computed(v)),
            Err(Error::Skipped { reason, .. }) => Ok(Measured::Skipped(reason)),
            Err(e) => Err(e),
        }
    }

    pub fn computed(&self) -> Option<&T> {
        match self {
            Measured::Computed(v) => Some(v),
            Measured::Skipped(_) => None,
        }
    }

    pub fn skip_reason(&self) -> Option<&str> {
        match self {
            Measured::Computed(_) => None,
            Measured::Skipped(r) => Some(r),
        }
    }
}

/// Degree with its spectrum's highest-degree monomial (lowest mask).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degree {
    pub value: usize,
    pub monomial: usize,
    pub coeff: i64,
}

impl Degree {
    fn of(spec: &SpectrumRep) -> Degree {
        let value = spec.degree();
        let monomial = (0..spec.coeffs().len())
            .find(|&m| spec.coeff(m) != 0 && m.count_ones() as usize == value)
            .unwrap_or(0);
        Degree {
            value,
            monomial,
            coeff: spec.coeff(monomial),
        }
    }

    fn witness(&self) -> Value {
        json!({"monomial": bits::coords(self.monomial), "coeff": self.coeff})
    }
}

#[derive(Clone, Debug)]
pub struct MeasureReport {
    pub function: TruthTable,
    /// The point for `s`, `bs` and `C` when computed pointwise.
    pub at: Option<Point>,
    pub s: Sensitivity,
    pub bs: Measured<BlockFamily>,
    pub certificate: Measured<Certificate>,
    pub alt: Chain,
    pub salt: Measured<Salt>,
    pub deg: Degree,
    pub deg_p: Vec<(u64, Degree)>,
    pub sparsity: usize,
    pub dt: Measured<DecisionTree>,
}

/// Computes every measure within its ceiling. `s`, `bs` and `C` are pointwise
/// when `at` is given. Fails on arity mismatch or a composite prime.
pub fn measure_report(
    f: &TruthTable,
    primes: &[u64],
    limits: &Limits,
    at: Option<&Point>,
) -> Result<MeasureReport> {
    let deg_p = primes
        .iter()
        .map(|&p| modp_degree(f, p).map(|(_, s)| (p, Degree::of(&s))))
        .collect::<Result<Vec<_>>>()?;
    Ok(MeasureReport {
        function: f.clone(),
        at: at.copied(),
        s: sensitivity(f, at)?,
        bs: Measured::from_result(block_sensitivity(f, at, limits))?,
        certificate: Measured::from_result(certificate(f, at, limits))?,
        alt: alternation(f),
        salt: Measured::from_result(shift_invariant_alternation(f, limits))?,
        deg: Degree::of(&real_degree(f).1),
        deg_p,
        sparsity: sparsity(f).0,
        dt: Measured::from_result(dt_depth(f, limits))?,
    })
}

impl MeasureReport {
    /// Measure names in report order.
    pub fn names(&self) -> Vec<String> {
        let mut v: Vec<String> = ["s", "bs", "C", "alt", "salt", "deg"].map(String::from).to_vec();
        v.extend(self.deg_p.iter().map(|(p, _)| format!("deg_{p}")));
        v.extend(["sparsity", "DT"].map(String::from));
        v
    }

    /// Value by name; `None` if skipped or unknown.
    pub fn value(&self, name: &str) -> Option<usize> {
        match name {
            "s" => Some(self.s.value),
            "bs" => self.bs.computed().map(BlockFamily::value),
            "C" => self.certificate.computed().map(Certificate::value),
            "alt" => Some(self.alt.alternations),
            "salt" => self.salt.computed().map(|s| s.value),
            "deg" => Some(self.deg.value),
            "sparsity" => Some(self.sparsity),
            "DT" => self.dt.computed().map(DecisionTree::depth),
            _ => {
                let p: u64 = name.strip_prefix("deg_")?.parse().ok()?;
                self.deg_p.iter().find(|(q, _)| *q == p).map(|(_, d)| d.value)
            }
        }
    }

    pub fn skips(&self) -> Vec<(&'static str, &str)> {
        let mut out = Vec::new();
        for (name, reason) in [
            ("bs", self.bs.skip_reason()),
            ("C", self.certificate.skip_reason()),
            ("salt", self.salt.skip_reason()),
            ("DT", self.dt.skip_reason()),
        ] {
            if let Some(r) = reason {
                out.push((name, r));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut measures = Map::new();
        for name in self.names() {
            measures.insert(name.clone(), json!(self.value(&name)));
        }
        let mut w = Map::new();
        w.insert("s".into(), json!(self.s));
        if let Some(b) = self.bs.computed() {
            w.insert("bs".into(), json!(b));
        }
        if let Some(c) = self.certificate.computed() {
            w.insert("C".into(), json!(c));
        }
        w.insert("alt".into(), json!(self.alt));
        if let Some(s) = self.salt.computed() {
            w.insert("salt".into(), json!(s));
        }
        w.insert("deg".into(), self.deg.witness());
        for (p, d) in &self.deg_p {
            w.insert(format!("deg_{p}"), d.witness());
        }
        if let Some(t) = self.dt.computed() {
            w.insert("DT".into(), json!(t));
        }
        let skipped: Vec<Value> = self
            .skips()
            .into_iter()
            .map(|(m, r)| json!({"measure": m, "reason": r}))
            .collect();
        let mut top = Map::new();
        top.insert("function".into(), json!(self.function.to_tt_string()));
        if let Some(a) = &self.at {
            top.insert("at".into(), json!(a.to_string()));
        }
        top.insert("measures".into(), Value::Object(measures));
        top.insert("witnesses".into(), Value::Object(w));
        top.insert("skipped".into(), Value::Array(skipped));
        Value::Object(top)
    }

    pub fn csv_header(&self) -> String {
        let mut cols = vec!["function".to_string()];
        cols.extend(self.names());
        cols.join(",")
    }

    /// Skipped values are left empty.
    pub fn csv_row(&self) -> String {
        let mut cols = vec![self.function.to_tt_string()];
        cols.extend(
            self.names()
                .iter()
                .map(|n| self.value(n).map(|v| v.to_string()).unwrap_or_default()),
        );
        cols.join(",")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("function {}\n", self.function);
        if let Some(a) = &self.at {
            out += &format!("at {a}\n");
        }
        let skips = self.skips();
        for name in self.names() {
            match self.value(&name) {
                Some(v) => out += &format!("{name:>9} {v}\n"),
                None => {
                    let reason = skips.iter().find(|(m, _)| *m == name).map_or("", |(_, r)| r);
                    out += &format!("{name:>9} skipped ({reason})\n");
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity4() {
        let p = TruthTable::from_fn(4, |x| x.count_ones() % 2 == 1).unwrap();
        let r = measure_report(&p, &[2, 3], &Limits::default(), None).unwrap();
        let got: Vec<_> = r.names().iter().map(|n| r.value(n).unwrap()).collect();
        assert_eq!(got, vec![4, 4, 4, 4, 4, 4, 1, 4, 1, 4]);
        let j = r.to_json();
        assert_eq!(j["measures"]["deg_2"], 1);
        assert_eq!(j["function"], "tt:4:6996");
        assert_eq!(j["skipped"], json!([]));
    }

    #[test]
    fn skips_are_explicit() {
        let lim = Limits {
            decision_tree: 2,
            ..Limits::default()
        };
        let f = TruthTable::from_fn(3, |x| x.count_ones() >= 2).unwrap();
        let r = measure_report(&f, &[], &lim, None).unwrap();
        assert_eq!(r.value("DT"), None);
        assert_eq!(r.value("s"), Some(2));
        let j = r.to_json();
        assert_eq!(j["measures"]["DT"], Value::Null);
        assert_eq!(j["skipped"][0]["measure"], "DT");
        assert!(r.csv_row().ends_with(','));
        assert!(r.to_text().contains("skipped"));
    }

    #[test]
    fn composite_prime_is_an_error() {
        let f = TruthTable::constant(2, false).unwrap();
        assert!(measure_report(&f, &[4], &Limits::default(), None).is_err());
    }
}
