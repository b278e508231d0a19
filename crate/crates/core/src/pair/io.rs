//! JSON structure files.
//!
//! ```json
//! { "name": "aps",
//!   "ring": { "domain": "Z", "vars": [ { "name": "h", "invertible": false } ] },
//!   "basis": { "A": ["1", "X"], "E": ["Y", "Z"] },
//!   "maps": { "mu_A": [ { "in": ["X", "X"], "out": [ { "basis": ["X"], "coeff": "h" } ] } ] },
//!   "meta": {} }
//! ```
//!
//! Columns that are zero are omitted; a generator missing from `maps` is
//! absent from the pair. Keys are written in sorted order.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::FrobeniusPair;
use crate::error::{Error, Result};
use crate::ring::{Domain, Ring, RingElem, VarDecl};
use crate::tensor::{BasisSpec, LinMap, Sort};
use crate::theory::Gen;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VarFile {
    name: String,
    invertible: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingFile {
    domain: String,
    vars: Vec<VarFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisFile {
    #[serde(rename = "A")]
    a: Vec<String>,
    #[serde(rename = "E")]
    e: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermFile {
    basis: Vec<String>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColumnFile {
    #[serde(rename = "in")]
    input: Vec<String>,
    out: Vec<TermFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairFile {
    #[serde(default)]
    name: String,
    ring: RingFile,
    basis: BasisFile,
    maps: BTreeMap<String, Vec<ColumnFile>>,
    #[serde(default)]
    meta: BTreeMap<String, String>,
}

fn labels_of(spec: &BasisSpec, word: &crate::tensor::SortWord, t: &[u16]) -> Vec<String> {
    word.0.iter().zip(t).map(|(s, i)| spec.labels(*s)[*i as usize].clone()).collect()
}

pub fn to_json(pair: &FrobeniusPair) -> String {
    let spec = pair.spec();
    let ring = spec.ring();
    let mut maps = BTreeMap::new();
    for (g, m) in pair.stored() {
        let mut cols: Vec<ColumnFile> = Vec::new();
        for t in spec.basis_tuples(m.domain()) {
            let v = m.column(&t);
            if v.is_zero() {
                continue;
            }
            cols.push(ColumnFile {
                input: labels_of(spec, m.domain(), &t),
                out: v
                    .entries()
                    .iter()
                    .map(|(o, c)| TermFile { basis: labels_of(spec, m.codomain(), o), coeff: c.to_string() })
                    .collect(),
            });
        }
        maps.insert(g.name().to_string(), cols);
    }
    let file = PairFile {
        name: pair.name().into(),
        ring: RingFile {
            domain: ring.domain().tag().into(),
            vars: ring.vars().iter().map(|v| VarFile { name: v.name.clone(), invertible: v.invertible }).collect(),
        },
        basis: BasisFile { a: spec.labels(Sort::A).to_vec(), e: spec.labels(Sort::E).to_vec() },
        maps,
        meta: pair.meta().clone(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<FrobeniusPair> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: PairFile = serde_path_to_error::deserialize(de)
        .map_err(|e| Error::Input(format!("{}: {}", e.path(), e.inner())))?;
    let ring = Ring::new(
        Domain::from_tag(&file.ring.domain)?,
        file.ring.vars.into_iter().map(|v| VarDecl::new(&v.name, v.invertible)).collect(),
    )?;
    let spec = BasisSpec::new(ring.clone(), file.basis.a, file.basis.e)?;
    let mut maps = Vec::new();
    for (name, cols) in file.maps {
        let g = Gen::from_name(&name).ok_or_else(|| Error::Input(format!("maps.{name}: unknown generator")))?;
        let (dom, cod) = (g.domain(), g.codomain());
        let mut entries = Vec::new();
        for (k, col) in cols.into_iter().enumerate() {
            let at = |e: Error| match e {
                Error::Shape(_) => Error::Signature(name.clone()),
                Error::Parse(m) | Error::Ring(m) => Error::Input(format!("maps.{name}[{k}]: {m}")),
                other => other,
            };
            let input = spec.parse_tuple(&dom, &col.input).map_err(at)?;
            for term in col.out {
                let out = spec.parse_tuple(&cod, &term.basis).map_err(at)?;
                let c = RingElem::parse(&term.coeff, &ring).map_err(at)?;
                entries.push((out, input.clone(), c));
            }
        }
        maps.push((g, LinMap::from_entries(&spec, dom, cod, entries)?));
    }
    let mut pair = FrobeniusPair::new(&file.name, &spec, maps)?;
    for (k, v) in file.meta {
        pair = pair.with_meta(&k, v);
    }
    Ok(pair)
}

pub fn save_pair(pair: &FrobeniusPair, path: &Path) -> Result<()> {
    std::fs::write(path, to_json(pair)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_pair(path: &Path) -> Result<FrobeniusPair> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    from_json(&text)
}
