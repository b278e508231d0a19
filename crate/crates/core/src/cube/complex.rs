//! The chain complex of a cube: `C_i` is the sum of the vertex spaces of
//! weight `i`, and `d_i` sums the signed edge maps leaving them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::linalg::{rank_mod2, rank_rational, smith_normal_form, Matrix};
use super::{edge_key, flip, weight, StateCube};
use crate::error::{Error, Result};
use crate::pair::FrobeniusPair;
use crate::ring::{Domain, RingElem};
use crate::tensor::{LinMap, SortWord};

/// Which bits count toward the sign of an edge flipping bit `k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignRule {
    /// `(−1)^(ones before k)`
    #[default]
    Before,
    /// `(−1)^(ones after k)`
    After,
}

impl SignRule {
    fn negative(self, v: &str, k: usize) -> bool {
        let bits = match self {
            SignRule::Before => &v[..k],
            SignRule::After => &v[k + 1..],
        };
        weight(bits) % 2 == 1
    }
}

/// `d_i` as blocks keyed by `(target vertex, source vertex)`.
#[derive(Clone, Debug)]
pub struct BlockMap {
    pub degree: usize,
    pub sources: Vec<(String, SortWord)>,
    pub targets: Vec<(String, SortWord)>,
    pub blocks: BTreeMap<(String, String), LinMap>,
}

fn vertices_of_weight(cube: &StateCube, i: usize) -> Vec<(String, SortWord)> {
    cube.vertices().iter().filter(|(v, _)| weight(v) == i).map(|(v, w)| (v.clone(), w.clone())).collect()
}

impl BlockMap {
    /// Dense matrix of entries, rows then columns ordered by vertex and
    /// then basis tuple.
    pub fn to_dense(&self, pair: &FrobeniusPair) -> Vec<Vec<RingElem>> {
        let spec = pair.spec();
        let zero = RingElem::zero(pair.ring());
        let offsets = |side: &[(String, SortWord)]| {
            let mut at = BTreeMap::new();
            let mut total = 0;
            for (v, w) in side {
                at.insert(v.clone(), total);
                total += spec.word_rank(w);
            }
            (at, total)
        };
        let (row_at, rows) = offsets(&self.targets);
        let (col_at, cols) = offsets(&self.sources);
        let index = |w: &SortWord| -> BTreeMap<Vec<u16>, usize> {
            spec.basis_tuples(w).into_iter().enumerate().map(|(k, t)| (t, k)).collect()
        };
        let mut out = vec![vec![zero; cols]; rows];
        for ((tv, sv), m) in &self.blocks {
            let (ti, si) = (index(m.codomain()), index(m.domain()));
            for (o, i, c) in m.entries() {
                out[row_at[tv] + ti[o]][col_at[sv] + si[i]] = c.clone();
            }
        }
        out
    }

    pub fn shape(&self, pair: &FrobeniusPair) -> (usize, usize) {
        let rank = |side: &[(String, SortWord)]| side.iter().map(|(_, w)| pair.spec().word_rank(w)).sum();
        (rank(&self.targets), rank(&self.sources))
    }
}

/// `d_i`; zero when `i ≥ n`.
pub fn differential(cube: &StateCube, pair: &FrobeniusPair, i: usize, rule: SignRule) -> Result<BlockMap> {
    let sources = vertices_of_weight(cube, i);
    let targets = vertices_of_weight(cube, i + 1);
    let n = cube.n();
    let edges: Vec<(String, usize)> = sources
        .iter()
        .flat_map(|(v, _)| (0..n).filter(|&k| v.as_bytes()[k] == b'0').map(move |k| (v.clone(), k)))
        .collect();
    let blocks = edges
        .par_iter()
        .map(|(v, k)| {
            let m = cube.edges()[&edge_key(v, *k)].realize(pair, cube.vertex(v))?;
            let m = if rule.negative(v, *k) { m.neg() } else { m };
            Ok(((flip(v, *k), v.clone()), m))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(BlockMap { degree: i, sources, targets, blocks })
}

/// First nonzero entry of some `d_{i+1} ∘ d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareWitness {
    pub degree: usize,
    pub source: String,
    pub target: String,
    pub input: String,
    pub value: String,
}

/// `Ok(None)` when every `d_{i+1} ∘ d_i` vanishes.
pub fn check_d_squared(cube: &StateCube, pair: &FrobeniusPair, rule: SignRule) -> Result<Option<SquareWitness>> {
    let n = cube.n();
    let ds = (0..n).map(|i| differential(cube, pair, i, rule)).collect::<Result<Vec<_>>>()?;
    for i in 0..n.saturating_sub(1) {
        let (d0, d1) = (&ds[i], &ds[i + 1]);
        for (sv, sw) in &d0.sources {
            for (tv, _) in &d1.targets {
                let mut sum: Option<LinMap> = None;
                for ((mid, from), first) in d0.blocks.iter().filter(|((_, from), _)| from == sv) {
                    debug_assert_eq!(from, sv);
                    if let Some(second) = d1.blocks.get(&(tv.clone(), mid.clone())) {
                        let c = second.compose(first)?;
                        sum = Some(match sum {
                            None => c,
                            Some(s) => s.add(&c)?,
                        });
                    }
                }
                let Some(sum) = sum else { continue };
                let first = sum.entries().next().map(|(o, i, c)| (o.clone(), i.clone(), c.clone()));
                if let Some((o, inp, c)) = first {
                    let spec = pair.spec();
                    return Ok(Some(SquareWitness {
                        degree: i,
                        source: sv.clone(),
                        target: tv.clone(),
                        input: spec.tuple_label(sw, &inp),
                        value: format!("{c} at {}", spec.tuple_label(sum.codomain(), &o)),
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coefficients {
    Rationals,
    IntegersMod2,
    Integers,
}

impl Coefficients {
    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "Q" | "rationals" => Ok(Coefficients::Rationals),
            "Z2" | "integers-mod-2" => Ok(Coefficients::IntegersMod2),
            "Z" | "integers" => Ok(Coefficients::Integers),
            other => Err(Error::Input(format!("unknown coefficients '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub degree: usize,
    pub betti: usize,
    #[serde(serialize_with = "as_strings")]
    pub torsion: Vec<BigInt>,
}

fn as_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn constants(dense: &[Vec<RingElem>]) -> Result<Vec<Vec<BigRational>>> {
    dense
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| c.as_constant().ok_or_else(|| Error::Input(format!("entry {c} has free parameters; specialize first"))))
                .collect()
        })
        .collect()
}

fn to_mod2(x: &BigRational) -> Result<bool> {
    if x.denom().is_even() {
        return Err(Error::Input(format!("{x} has no image in Z/2")));
    }
    Ok(x.numer().is_odd())
}

fn to_int(x: &BigRational) -> Result<BigInt> {
    if !x.is_integer() {
        return Err(Error::Input(format!("{x} is not an integer")));
    }
    Ok(x.numer().clone())
}

/// Betti numbers and torsion in every degree `0..=n`.
pub fn homology(cube: &StateCube, pair: &FrobeniusPair, coefficients: Coefficients) -> Result<Vec<DegreeHomology>> {
    let domain = pair.ring().domain();
    if domain == Domain::Mod2 && coefficients != Coefficients::IntegersMod2 {
        return Err(Error::Input("a Z/2 pair only admits integers-mod-2 coefficients".into()));
    }
    for (_, m) in pair.stored() {
        if let Some((_, _, c)) = m.entries().find(|(_, _, c)| c.as_constant().is_none()) {
            return Err(Error::Input(format!("entry {c} has free parameters; specialize first")));
        }
    }
    let n = cube.n();
    let dims: Vec<usize> =
        (0..=n).map(|i| vertices_of_weight(cube, i).iter().map(|(_, w)| pair.spec().word_rank(w)).sum()).collect();
    // ranks[i] and torsion[i] describe d_i: C_i → C_{i+1}
    let per_degree = (0..n)
        .into_par_iter()
        .map(|i| {
            let d = differential(cube, pair, i, SignRule::Before)?;
            let (rows, cols) = d.shape(pair);
            let q = constants(&d.to_dense(pair))?;
            Ok(match coefficients {
                Coefficients::Rationals => (rank_rational(&Matrix { rows, cols, data: q }), Vec::new()),
                Coefficients::IntegersMod2 => {
                    let data = q.iter().map(|r| r.iter().map(to_mod2).collect()).collect::<Result<_>>()?;
                    (rank_mod2(&Matrix { rows, cols, data }), Vec::new())
                }
                Coefficients::Integers => {
                    let data = q.iter().map(|r| r.iter().map(to_int).collect()).collect::<Result<_>>()?;
                    let snf = smith_normal_form(&Matrix { rows, cols, data });
                    (snf.rank(), snf.torsion())
                }
            })
        })
        .collect::<Result<Vec<(usize, Vec<BigInt>)>>>()?;
    Ok((0..=n)
        .map(|i| {
            let out_rank = if i < n { per_degree[i].0 } else { 0 };
            let (in_rank, torsion) = if i > 0 { per_degree[i - 1].clone() } else { (0, Vec::new()) };
            DegreeHomology { degree: i, betti: dims[i] - out_rank - in_rank, torsion }
        })
        .collect())
}

/// `Σ (−1)^i dim C_i`.
pub fn euler_characteristic(cube: &StateCube, pair: &FrobeniusPair) -> i64 {
    cube.vertices()
        .iter()
        .map(|(v, w)| {
            let r = pair.spec().word_rank(w) as i64;
            if weight(v) % 2 == 0 {
                r
            } else {
                -r
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::super::tests::{MERGE, SPLIT, SQUARE};
    use super::*;
    use crate::cube::cube_from_json;
    use crate::pair::builders::{build_aps, build_it};

    #[test]
    fn split_differential_is_the_coproduct() {
        let aps = build_aps().unwrap();
        let c = cube_from_json(SPLIT).unwrap();
        let d = differential(&c, &aps, 0, SignRule::Before).unwrap();
        let dense: Vec<Vec<String>> = d.to_dense(&aps).iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        // rows 1⊗1, 1⊗X, X⊗1, X⊗X; columns 1, X
        assert_eq!(dense, vec![vec!["0", "0"], vec!["1", "0"], vec!["1", "0"], vec!["0", "1"]]);
        assert!(differential(&c, &aps, 1, SignRule::Before).unwrap().blocks.is_empty());
        assert!(differential(&c, &aps, 5, SignRule::Before).unwrap().blocks.is_empty());
    }

    #[test]
    fn homology_examples() {
        let aps = build_aps().unwrap();
        let betti = |text: &str, k| -> Vec<usize> {
            homology(&cube_from_json(text).unwrap(), &aps, k).unwrap().iter().map(|h| h.betti).collect()
        };
        assert_eq!(betti(MERGE, Coefficients::IntegersMod2), vec![2, 0]);
        // Δ_A is injective from rank 2 into rank 4.
        assert_eq!(betti(SPLIT, Coefficients::Rationals), vec![0, 2]);
        let empty = r#"{"n":0,"vertices":{"":["A"]},"edges":{}}"#;
        assert_eq!(betti(empty, Coefficients::Integers), vec![2]);
    }

    #[test]
    fn square_cube() {
        let c = cube_from_json(SQUARE).unwrap();
        let aps = build_aps().unwrap();
        assert_eq!(check_d_squared(&c, &aps, SignRule::Before).unwrap(), None);
        assert!(check_d_squared(&c, &build_it().unwrap(), SignRule::Before).unwrap().is_some());
    }
}
