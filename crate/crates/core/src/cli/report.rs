//! Deterministic text and JSON renderings.

use serde::Serialize;

use crate::cube::{DegreeHomology, Snf};
use crate::cube::linalg::Matrix;
use crate::pair::{FrobeniusPair, Status, VerifyReport};
use crate::pair::verify::GroupSummary;
use crate::tensor::LinMap;
use num_bigint::BigInt;
use std::collections::BTreeMap;

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skip => "skip",
    }
}

pub fn text(r: &VerifyReport, manifest_version: Option<u32>) -> String {
    let mut s = format!("pair {}\n", r.pair);
    if let Some(v) = manifest_version {
        s.push_str(&format!("manifest version {v}\n"));
    }
    s.push('\n');
    for rec in &r.records {
        s.push_str(&format!("{:<5} {:<12} {} [{}]\n", status_word(rec.status), rec.group, rec.name, rec.provenance));
        if let Some(w) = &rec.witness {
            s.push_str(&format!("      at {}\n        lhs = {}\n        rhs = {}\n", w.input, w.lhs, w.rhs));
        }
        if !rec.missing.is_empty() {
            s.push_str(&format!("      missing {}\n", rec.missing.join(", ")));
        }
    }
    let labels: Vec<(String, &GroupSummary)> = r
        .summary
        .iter()
        .map(|(g, sum)| (if sum.scored { g.clone() } else { format!("{g} (unscored)") }, sum))
        .collect();
    let w = labels.iter().map(|(l, _)| l.len()).max().unwrap_or(0).max(5);
    s.push_str(&format!("\n{:<w$} {:>5} {:>5} {:>5}\n", "group", "pass", "fail", "skip"));
    for (label, sum) in &labels {
        s.push_str(&format!("{:<w$} {:>5} {:>5} {:>5}\n", label, sum.pass, sum.fail, sum.skip));
    }
    s.push_str(&format!("\nresult: {}\n", if r.passed() { "pass" } else { "FAIL" }));
    s
}

#[derive(Serialize)]
struct JsonReport<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    manifest_version: Option<u32>,
    pair: &'a str,
    passed: bool,
    records: &'a [crate::pair::Record],
    summary: &'a BTreeMap<String, GroupSummary>,
}

pub fn json(r: &VerifyReport, manifest_version: Option<u32>) -> String {
    let doc = JsonReport {
        manifest_version,
        pair: &r.pair,
        passed: r.passed(),
        records: &r.records,
        summary: &r.summary,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

/// A scalar when both words are empty, otherwise one line per nonzero
/// column.
pub fn linmap(pair: &FrobeniusPair, m: &LinMap) -> String {
    let spec = pair.spec();
    if m.domain().is_empty() && m.codomain().is_empty() {
        return format!("{}\n", m.entry(&[], &[]));
    }
    let mut s = format!("{} -> {}\n", m.domain(), m.codomain());
    for t in spec.basis_tuples(m.domain()) {
        let col = m.column(&t);
        if !col.is_zero() {
            s.push_str(&format!("{} |-> {}\n", spec.tuple_label(m.domain(), &t), col));
        }
    }
    s
}

pub fn homology(h: &[DegreeHomology]) -> String {
    let betti: Vec<String> = h.iter().map(|d| d.betti.to_string()).collect();
    let mut s = format!("d^2 = 0\nbetti {}\n", betti.join(" "));
    for d in h.iter().filter(|d| !d.torsion.is_empty()) {
        let t: Vec<String> = d.torsion.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!("torsion {} {}\n", d.degree, t.join(" ")));
    }
    s
}

fn matrix(name: &str, m: &Matrix<BigInt>) -> String {
    let mut s = format!("{name}\n");
    for row in &m.data {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!("{}\n", cells.join(" ")));
    }
    s
}

pub fn snf(r: &Snf) -> String {
    let diag: Vec<String> = r.diagonal().iter().map(|x| x.to_string()).collect();
    format!("diagonal {}\n{}{}{}", diag.join(" "), matrix("D", &r.d), matrix("U", &r.u), matrix("V", &r.v))
}
