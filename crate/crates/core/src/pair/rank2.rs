//! Pairs with `A = k[X]/(X − a)²` and a rank-two `E = ⟨Y, Z⟩`.

use super::algebra::{AElem, RankTwo};
use super::FrobeniusPair;
use crate::error::{Error, Result};
use crate::ring::{RingElem, RingRef};
use crate::tensor::{BasisSpec, LinMap, SortWord, SpecRef};
use crate::theory::Gen;

/// Symmetric `C` and `D` are stored as `(YY, YZ, ZZ)`; `e`, `f` as `(Y, Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Params {
    pub a: RingElem,
    pub c: [RingElem; 3],
    pub d: [RingElem; 3],
    pub e: [RingElem; 2],
    pub f: [RingElem; 2],
}

impl Rank2Params {
    pub fn from_ints(ring: &RingRef, a: i64, c: [i64; 3], d: [i64; 3], e: [i64; 2], f: [i64; 2]) -> Self {
        let r = |n: i64| RingElem::from_int(ring, n);
        Rank2Params {
            a: r(a),
            c: c.map(r),
            d: d.map(r),
            e: e.map(r),
            f: f.map(r),
        }
    }

    pub fn ring(&self) -> &RingRef {
        self.a.ring()
    }

    fn c_at(&self, i: u16, j: u16) -> &RingElem {
        &self.c[(i + j) as usize]
    }

    fn d_at(&self, i: u16, j: u16) -> &RingElem {
        &self.d[(i + j) as usize]
    }

    pub fn algebra(&self) -> RankTwo {
        let two = RingElem::from_int(self.ring(), 2);
        RankTwo::new(&two * &self.a, (&self.a * &self.a).neg()).expect("one ring")
    }
}

/// Names of violated constraints; empty means admissible.
pub fn check_rank2_constraints(p: &Rank2Params) -> Vec<String> {
    let mut out = Vec::new();
    let cf = [
        &(&p.c[0] * &p.f[0]) + &(&p.c[1] * &p.f[1]),
        &(&p.c[1] * &p.f[0]) + &(&p.c[2] * &p.f[1]),
    ];
    if cf != p.e {
        out.push("Cf=e".to_string());
    }
    let two = RingElem::from_int(p.ring(), 2);
    if &(&p.e[0] * &p.f[0]) + &(&p.e[1] * &p.f[1]) != two {
        out.push("e.f=2".to_string());
    }
    let cd = &(&(&p.c[0] * &p.d[0]) + &(&(&two * &p.c[1]) * &p.d[1])) + &(&p.c[2] * &p.d[2]);
    if cd != two {
        out.push("c.d=2".to_string());
    }
    out
}

/// Residuals of `X(Xv) = X²v` for `XY = a0 Y + a1 Z`, `XZ = b0 Y + b1 Z` in
/// `k[X]/(X² − hX − t)`.
pub fn lemma_first_conditions(
    a0: &RingElem,
    a1: &RingElem,
    b0: &RingElem,
    b1: &RingElem,
    h: &RingElem,
    t: &RingElem,
) -> [RingElem; 4] {
    let trace_gap = &(a0 + b1) - h;
    [
        &(&(&(a0 * a0) + &(a1 * b0)) - &(a0 * h)) - t,
        &trace_gap * a1,
        &(&(&(a1 * b0) + &(b1 * b1)) - &(h * b1)) - t,
        &trace_gap * b0,
    ]
}

fn w(s: &str) -> SortWord {
    SortWord::parse(s).expect("static word")
}

pub fn build_rank2(p: &Rank2Params) -> Result<FrobeniusPair> {
    let ring = p.ring().clone();
    for x in p.c.iter().chain(&p.d).chain(&p.e).chain(&p.f) {
        if x.ring() != &ring {
            return Err(Error::Ring("rank-two parameters must share one ring".into()));
        }
    }
    let alg = p.algebra();
    let spec: SpecRef = BasisSpec::new(
        ring.clone(),
        vec!["1".into(), "X".into()],
        vec!["Y".into(), "Z".into()],
    )?;
    let one = RingElem::one(&ring);
    let a = &p.a;
    // X − a
    let x_minus_a = AElem::new(a.neg(), one.clone());
    let x_factor = |i: u16| if i == 0 { one.clone() } else { a.clone() };

    let mu_ae = LinMap::from_entries(
        &spec,
        w("AE"),
        w("E"),
        (0..2u16).flat_map(|i| (0..2u16).map(move |v| (vec![v], vec![i, v]))).map(|(o, inp)| {
            let c = x_factor(inp[0]);
            (o, inp, c)
        }),
    )?;
    let mu_ea = LinMap::transposition(&spec, &w("EA"), 1)?;
    let mu_ea = mu_ae.compose(&mu_ea)?;

    let mut delta_ae = Vec::new();
    for v in 0..2u16 {
        delta_ae.push((vec![1, v], vec![v], one.clone()));
        delta_ae.push((vec![0, v], vec![v], a.neg()));
    }
    let delta_ae = LinMap::from_entries(&spec, w("E"), w("AE"), delta_ae)?;
    let delta_ea = LinMap::transposition(&spec, &w("AE"), 1)?.compose(&delta_ae)?;

    let mu_eea = LinMap::from_fn(&spec, w("EE"), w("A"), |t| {
        Ok(x_minus_a.scale(p.c_at(t[0], t[1])).to_vector(&spec))
    })?;
    let mut delta_aee = Vec::new();
    for i in 0..2u16 {
        for j in 0..2u16 {
            let dij = p.d_at(i, j);
            delta_aee.push((vec![i, j], vec![0], dij.clone()));
            delta_aee.push((vec![i, j], vec![1], a * dij));
        }
    }
    let delta_aee = LinMap::from_entries(&spec, w("A"), w("EE"), delta_aee)?;

    let mut nu_ae = Vec::new();
    for v in 0..2u16 {
        nu_ae.push((vec![v], vec![0], p.f[v as usize].clone()));
        nu_ae.push((vec![v], vec![1], a * &p.f[v as usize]));
    }
    let nu_ae = LinMap::from_entries(&spec, w("A"), w("E"), nu_ae)?;
    let nu_ea = LinMap::from_fn(&spec, w("E"), w("A"), |t| {
        Ok(x_minus_a.scale(&p.e[t[0] as usize]).to_vector(&spec))
    })?;

    let maps = vec![
        (Gen::MuA, alg.mu(&spec)),
        (Gen::Eta, alg.eta(&spec)),
        (Gen::Eps, alg.eps(&spec)),
        (Gen::DeltaA, alg.delta(&spec)),
        (Gen::MuAE, mu_ae),
        (Gen::MuEA, mu_ea),
        (Gen::DeltaAE, delta_ae),
        (Gen::DeltaEA, delta_ea),
        (Gen::MuEEA, mu_eea),
        (Gen::DeltaAEE, delta_aee),
        (Gen::MuE, LinMap::zero(&spec, w("EE"), w("E"))),
        (Gen::DeltaE, LinMap::zero(&spec, w("E"), w("EE"))),
        (Gen::NuAE, nu_ae),
        (Gen::NuEA, nu_ea),
        (Gen::NuEE, LinMap::zero(&spec, w("E"), w("E"))),
    ];
    Ok(FrobeniusPair::new("rank2", &spec, maps)?.with_meta("nu_EA", "e_v (X - a)"))
}
