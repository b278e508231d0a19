//! Named pairs and their `key=value` parameters.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::pair::builders::{build_aps, build_it, build_it_strict, build_laurent_sqrt, build_tt, build_universal};
use crate::pair::double::{build_double, standard_algebra, Exponents};
use crate::pair::rank2::{build_rank2, Rank2Params};
use crate::pair::FrobeniusPair;
use crate::ring::{Domain, Ring, RingElem, VarDecl};

pub const BUILTINS: [&str; 8] = ["aps", "tt", "it", "it-strict", "rank2", "sqrt", "double", "universal"];

pub const RANK2_KEYS: [&str; 11] = ["a", "cYY", "cYZ", "cZZ", "dYY", "dYZ", "dZZ", "eY", "eZ", "fY", "fZ"];

pub const DOUBLE_KEYS: [&str; 6] = ["muAE", "muEEA", "muE", "nuAE", "nuEA", "nuEE"];

/// Splits `k=v` items; later keys override earlier ones.
pub fn parse_params(items: &[String]) -> Result<BTreeMap<String, String>> {
    items
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let (k, v) = s
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("parameter '{s}' is not of the form key=value")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn reject_unknown(params: &BTreeMap<String, String>, known: &[&str], what: &str) -> Result<()> {
    match params.keys().find(|k| !known.contains(&k.as_str())) {
        Some(k) => Err(Error::Input(format!("unknown parameter '{k}' for {what}; expected one of {}", known.join(", ")))),
        None => Ok(()),
    }
}

fn rank2(params: &BTreeMap<String, String>) -> Result<FrobeniusPair> {
    reject_unknown(params, &RANK2_KEYS, "rank2")?;
    let ring = Ring::constants(Domain::Integers);
    let defaults = [0, 0, 1, 0, 0, 1, 0, 1, 1, 1, 1];
    let v: Vec<RingElem> = RANK2_KEYS
        .iter()
        .zip(defaults)
        .map(|(k, d)| match params.get(*k) {
            Some(text) => RingElem::parse(text, &ring).map_err(|e| Error::Input(format!("{k}: {e}"))),
            None => Ok(RingElem::from_int(&ring, d)),
        })
        .collect::<Result<_>>()?;
    let p = Rank2Params {
        a: v[0].clone(),
        c: [v[1].clone(), v[2].clone(), v[3].clone()],
        d: [v[4].clone(), v[5].clone(), v[6].clone()],
        e: [v[7].clone(), v[8].clone()],
        f: [v[9].clone(), v[10].clone()],
    };
    build_rank2(&p)
}

fn double(params: &BTreeMap<String, String>) -> Result<FrobeniusPair> {
    reject_unknown(params, &DOUBLE_KEYS, "double")?;
    let mut ex: Exponents = [-1, -2, -2, 1, -1, 0];
    for (slot, k) in DOUBLE_KEYS.iter().enumerate() {
        if let Some(text) = params.get(*k) {
            ex[slot] = text.parse().map_err(|_| Error::Input(format!("{k}: '{text}' is not an integer")))?;
        }
    }
    let (alg, phi_inv) = standard_algebra();
    build_double(&alg, &phi_inv, &ex)
}

/// Substitutes `params` for ring variables; unassigned variables stay free.
pub fn specialize_params(pair: &FrobeniusPair, params: &BTreeMap<String, String>) -> Result<FrobeniusPair> {
    if params.is_empty() {
        return Ok(pair.clone());
    }
    let ring = pair.ring();
    let names: Vec<&str> = ring.vars().iter().map(|v| v.name.as_str()).collect();
    reject_unknown(params, &names, pair.name())?;
    let remaining: Vec<VarDecl> = ring.vars().iter().filter(|v| !params.contains_key(&v.name)).cloned().collect();
    let target = Ring::new(ring.domain(), remaining)?;
    let assignment = params
        .iter()
        .map(|(k, v)| Ok((k.clone(), RingElem::parse(v, &target).map_err(|e| Error::Input(format!("{k}: {e}")))?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    pair.specialize(&target, &assignment)
}

/// Builds a named pair. Construction parameters apply to `rank2` and
/// `double`; for the others they specialize ring variables.
pub fn build_builtin(name: &str, params: &BTreeMap<String, String>) -> Result<FrobeniusPair> {
    let fixed = match name {
        "rank2" => return rank2(params),
        "double" => return double(params),
        "aps" => build_aps(),
        "tt" => build_tt(),
        "it" => build_it(),
        "it-strict" => build_it_strict(),
        "sqrt" => build_laurent_sqrt(),
        "universal" => build_universal(),
        other => {
            return Err(Error::Input(format!("unknown builtin '{other}'; expected one of {}", BUILTINS.join(", "))))
        }
    }?;
    specialize_params(&fixed, params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank2_defaults_and_overrides() {
        let p = build_builtin("rank2", &parse_params(&["a=2".into()]).unwrap()).unwrap();
        assert_eq!(p.name(), "rank2");
        assert!(build_builtin("rank2", &parse_params(&["q=1".into()]).unwrap()).is_err());
    }

    #[test]
    fn specialization_of_variables() {
        let p = build_builtin("universal", &parse_params(&["h=0".into(), "t=0".into()]).unwrap()).unwrap();
        assert!(p.ring().vars().is_empty());
        let tt = build_builtin("tt", &parse_params(&["lambda=1".into()]).unwrap()).unwrap();
        assert_eq!(tt.ring().domain(), Domain::Mod2);
    }
}
