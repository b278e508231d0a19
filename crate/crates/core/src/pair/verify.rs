use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::FrobeniusPair;
use crate::tensor::Equality;
use crate::theory::Equation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// First input basis tuple on which the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub name: String,
    pub group: String,
    pub provenance: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Absent generators that caused a skip.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub missing: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub scored: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub pair: String,
    pub records: Vec<Record>,
    pub summary: BTreeMap<String, GroupSummary>,
}

impl VerifyReport {
    /// No scored equation failed.
    pub fn passed(&self) -> bool {
        self.summary.values().all(|s| !s.scored || s.fail == 0)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn record(&self, name: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn group(&self, g: &str) -> GroupSummary {
        self.summary.get(g).cloned().unwrap_or_default()
    }
}

fn check(pair: &FrobeniusPair, eq: &Equation) -> Record {
    let mut missing: Vec<String> =
        eq.generators().filter(|g| !pair.has(*g)).map(|g| g.name().to_string()).collect();
    missing.sort();
    missing.dedup();
    let mut rec = Record {
        name: eq.name.clone(),
        group: eq.group.clone(),
        provenance: eq.provenance.as_str().into(),
        status: Status::Skip,
        witness: None,
        missing,
    };
    if !rec.missing.is_empty() {
        return rec;
    }
    let eval = |t: &crate::theory::Term| t.evaluate(pair.spec(), |g| pair.get(g));
    let outcome = eval(&eq.lhs).and_then(|l| Ok(l.equal(&eval(&eq.rhs)?)));
    match outcome {
        Ok(Equality::Equal) => rec.status = Status::Pass,
        Ok(Equality::Differ { input, lhs, rhs }) => {
            rec.status = Status::Fail;
            let (dom, _) = eq.words();
            rec.witness = Some(Witness {
                input: pair.spec().tuple_label(&dom, &input),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
        Ok(Equality::Shape { lhs, rhs }) => {
            rec.status = Status::Fail;
            rec.witness = Some(Witness {
                input: "shape".into(),
                lhs: format!("{}→{}", lhs.0, lhs.1),
                rhs: format!("{}→{}", rhs.0, rhs.1),
            });
        }
        Err(e) => {
            rec.status = Status::Fail;
            rec.witness = Some(Witness { input: "error".into(), lhs: e.to_string(), rhs: String::new() });
        }
    }
    rec
}

/// Checks every equation whose group is in `groups` (all when `None`).
/// Equations using an absent generator are skipped, never failed.
pub fn verify(pair: &FrobeniusPair, equations: &[Equation], groups: Option<&[String]>) -> VerifyReport {
    let selected: Vec<&Equation> = equations
        .iter()
        .filter(|e| groups.map_or(true, |gs| gs.iter().any(|g| g == &e.group)))
        .collect();
    let records: Vec<Record> = selected.par_iter().map(|e| check(pair, e)).collect();
    let mut summary: BTreeMap<String, GroupSummary> = BTreeMap::new();
    for (r, e) in records.iter().zip(&selected) {
        let s = summary.entry(r.group.clone()).or_default();
        s.scored = e.is_scored();
        match r.status {
            Status::Pass => s.pass += 1,
            Status::Fail => s.fail += 1,
            Status::Skip => s.skip += 1,
        }
    }
    VerifyReport { pair: pair.name().into(), records, summary }
}
