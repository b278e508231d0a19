//! Pairs with `E = A ⊗ A` whose structure maps carry powers of the handle
//! element `φ`.

use std::collections::{BTreeSet, HashMap};
use std::ops::RangeInclusive;

use rayon::prelude::*;

use super::algebra::{AElem, RankTwo};
use super::FrobeniusPair;
use crate::error::{Error, Result};
use crate::ring::{Domain, Ring, RingElem};
use crate::tensor::{BasisSpec, LinMap, Sort, SortWord, SpecRef};
use crate::theory::{Equation, Gen};

/// Exponents `(e0, e1, e2, ν0, ν1, ν2)` of `φ` on
/// `μ_AE`/`μ_EA`, `μ_EEA`, `μ_E`, `ν_AE`, `ν_EA`, `ν_EE`.
pub type Exponents = [i32; 6];

fn w(s: &str) -> SortWord {
    SortWord::parse(s).expect("static word")
}

/// `Q[X]/(X² − 1)` with `φ = 2X` and `φ⁻¹ = X/2`.
pub fn standard_algebra() -> (RankTwo, AElem) {
    let r = Ring::constants(Domain::Rationals);
    let alg = RankTwo::new(RingElem::zero(&r), RingElem::one(&r)).expect("one ring");
    let half = RingElem::parse("1/2", &r).expect("rational literal");
    let phi_inv = AElem::new(RingElem::zero(&r), half);
    (alg, phi_inv)
}

/// Which exponent slot a generator depends on.
fn slot(g: Gen) -> Option<usize> {
    match g {
        Gen::MuAE | Gen::MuEA => Some(0),
        Gen::MuEEA => Some(1),
        Gen::MuE => Some(2),
        Gen::NuAE => Some(3),
        Gen::NuEA => Some(4),
        Gen::NuEE => Some(5),
        _ => None,
    }
}

/// Reinterprets tuples of `m` on words where each `E` is two `A` factors,
/// packed as `2i + j`.
fn regroup(spec: &SpecRef, m: &LinMap, domain: &str, codomain: &str) -> Result<LinMap> {
    let pack = |word: &SortWord, t: &[u16]| -> Vec<u16> {
        let mut out = Vec::with_capacity(word.len());
        let mut k = 0;
        for s in &word.0 {
            match s {
                Sort::A => {
                    out.push(t[k]);
                    k += 1;
                }
                Sort::E => {
                    out.push(2 * t[k] + t[k + 1]);
                    k += 2;
                }
            }
        }
        out
    };
    let (d, c) = (w(domain), w(codomain));
    let items: Vec<_> = m.entries().map(|(o, i, x)| (pack(&c, o), pack(&d, i), x.clone())).collect();
    LinMap::from_entries(spec, d, c, items)
}

struct Parts {
    spec: SpecRef,
    alg: RankTwo,
    phi: AElem,
    phi_inv: AElem,
}

impl Parts {
    fn new(alg: &RankTwo, phi_inv: &AElem) -> Result<Parts> {
        let phi = alg.handle();
        if alg.mul(phi_inv, &phi) != alg.one() {
            return Err(Error::Construction("φ_inv is not an inverse".into()));
        }
        let a: Vec<String> = vec!["1".into(), "X".into()];
        let e: Vec<String> = a.iter().flat_map(|i| a.iter().map(move |j| format!("{i}|{j}"))).collect();
        let spec = BasisSpec::new(alg.ring.clone(), a, e)?;
        Ok(Parts { spec, alg: alg.clone(), phi, phi_inv: phi_inv.clone() })
    }

    fn id(&self) -> LinMap {
        LinMap::identity(&self.spec, w("A"))
    }

    fn mu(&self) -> LinMap {
        self.alg.mu(&self.spec)
    }

    fn delta(&self) -> LinMap {
        self.alg.delta(&self.spec)
    }

    fn phi_pow(&self, n: i32) -> LinMap {
        let base = if n >= 0 { &self.phi } else { &self.phi_inv };
        self.alg.times(&self.spec, &self.alg.pow(base, n.unsigned_abs()))
    }

    fn middle_swap(&self) -> Result<LinMap> {
        LinMap::permutation(&self.spec, &w("AAAA"), &[0, 2, 1, 3])
    }

    /// `μ(μ⊗μ)(|⊗τ⊗|)`: AAAA → A.
    fn mu4(&self) -> Result<LinMap> {
        self.mu().compose(&self.mu().tensor(&self.mu())?)?.compose(&self.middle_swap()?)
    }

    /// `(|⊗τ⊗|)(Δ⊗Δ)Δ`: A → AAAA.
    fn delta4(&self) -> Result<LinMap> {
        self.middle_swap()?.compose(&self.delta().tensor(&self.delta())?)?.compose(&self.delta())
    }

    fn map(&self, g: Gen, n: i32) -> Result<LinMap> {
        let (mu, delta, id) = (self.mu(), self.delta(), self.id());
        let dmu = delta.compose(&self.phi_pow(n))?.compose(&mu)?;
        let dmu_plain = delta.compose(&mu)?;
        match g {
            Gen::MuAE => regroup(&self.spec, &dmu.compose(&id.tensor(&mu)?)?, "AE", "E"),
            Gen::MuEA => regroup(&self.spec, &dmu.compose(&mu.tensor(&id)?)?, "EA", "E"),
            Gen::MuEEA => regroup(&self.spec, &self.phi_pow(n).compose(&self.mu4()?)?, "EE", "A"),
            Gen::MuE => regroup(
                &self.spec,
                &delta.compose(&self.phi_pow(n))?.compose(&self.mu4()?)?,
                "EE",
                "E",
            ),
            Gen::NuAE => regroup(&self.spec, &delta.compose(&self.phi_pow(n))?, "A", "E"),
            Gen::NuEA => regroup(&self.spec, &self.phi_pow(n).compose(&mu)?, "E", "A"),
            Gen::NuEE => regroup(&self.spec, &dmu, "E", "E"),
            Gen::DeltaAE => regroup(&self.spec, &id.tensor(&delta)?.compose(&dmu_plain)?, "E", "AE"),
            Gen::DeltaEA => regroup(&self.spec, &delta.tensor(&id)?.compose(&dmu_plain)?, "E", "EA"),
            Gen::DeltaAEE => regroup(&self.spec, &self.delta4()?, "A", "EE"),
            Gen::DeltaE => regroup(&self.spec, &self.delta4()?.compose(&mu)?, "E", "EE"),
            Gen::MuA => Ok(mu),
            Gen::DeltaA => Ok(delta),
            Gen::Eta => Ok(self.alg.eta(&self.spec)),
            Gen::Eps => Ok(self.alg.eps(&self.spec)),
            Gen::Beta | Gen::Gamma => unreachable!("derived generators are not built"),
        }
    }

    fn pair(&self, ex: &Exponents) -> Result<FrobeniusPair> {
        let maps = Gen::ALL
            .into_iter()
            .filter(|g| !g.is_derived())
            .map(|g| Ok((g, self.map(g, slot(g).map_or(0, |s| ex[s]))?)))
            .collect::<Result<Vec<_>>>()?;
        let ex_text = ex.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",");
        Ok(FrobeniusPair::new("double", &self.spec, maps)?.with_meta("exponents", ex_text))
    }
}

pub fn build_double(alg: &RankTwo, phi_inv: &AElem, ex: &Exponents) -> Result<FrobeniusPair> {
    Parts::new(alg, phi_inv)?.pair(ex)
}

fn slots_of(eq: &Equation) -> Vec<usize> {
    let s: BTreeSet<usize> = eq.generators().filter_map(slot).collect();
    s.into_iter().collect()
}

/// Every exponent tuple in `range⁶` for which all scored `equations` hold.
///
/// Each equation only sees the exponents of the generators it mentions, so
/// it is decided once per assignment of those slots.
pub fn search_double_exponents(
    alg: &RankTwo,
    phi_inv: &AElem,
    range: RangeInclusive<i32>,
    equations: &[Equation],
) -> Result<Vec<Exponents>> {
    let parts = Parts::new(alg, phi_inv)?;
    let values: Vec<i32> = range.collect();
    let scored: Vec<&Equation> = equations.iter().filter(|e| e.is_scored()).collect();

    let mut tables: Vec<(Vec<usize>, HashMap<Vec<i32>, bool>)> = Vec::new();
    for eq in &scored {
        let slots = slots_of(eq);
        let mut assignments: Vec<Vec<i32>> = vec![vec![]];
        for _ in &slots {
            assignments = assignments
                .into_iter()
                .flat_map(|a| values.iter().map(move |v| [a.clone(), vec![*v]].concat()))
                .collect();
        }
        let results: Vec<(Vec<i32>, bool)> = assignments
            .into_par_iter()
            .map(|asg| {
                let mut ex = [0; 6];
                for (s, v) in slots.iter().zip(&asg) {
                    ex[*s] = *v;
                }
                let pair = parts.pair(&ex)?;
                let ok = super::verify::verify(&pair, std::slice::from_ref(*eq), None).passed();
                Ok((asg, ok))
            })
            .collect::<Result<_>>()?;
        if results.iter().all(|(_, ok)| !ok) {
            return Ok(Vec::new());
        }
        tables.push((slots, results.into_iter().collect()));
    }

    let mut out = Vec::new();
    let n = values.len();
    for idx in 0..n.pow(6) {
        let mut ex = [0; 6];
        let mut k = idx;
        for s in (0..6).rev() {
            ex[s] = values[k % n];
            k /= n;
        }
        let ok = tables.iter().all(|(slots, table)| {
            let key: Vec<i32> = slots.iter().map(|s| ex[*s]).collect();
            table[&key]
        });
        if ok {
            out.push(ex);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Vector;

    #[test]
    fn inverse_precondition() {
        let (alg, _) = standard_algebra();
        let err = build_double(&alg, &alg.one(), &[0; 6]).unwrap_err();
        assert!(err.to_string().contains("φ_inv is not an inverse"), "{err}");
    }

    #[test]
    fn coproduct_into_two_e_factors() {
        let (alg, phi_inv) = standard_algebra();
        let p = build_double(&alg, &phi_inv, &[0; 6]).unwrap();
        let img = p.get(Gen::DeltaAEE).unwrap().column(&[0]);
        // (|⊗τ⊗|)(Δ⊗Δ)Δ(1) with Δ(1) = 1⊗X + X⊗1 and Δ(X) = X⊗X + 1⊗1
        let s = p.spec();
        let mut expected = Vector::zero(s, w("EE"));
        for t in [[0, 1, 1, 1], [0, 1, 0, 0], [1, 0, 1, 1], [1, 0, 0, 0], [1, 1, 0, 1], [1, 1, 1, 0], [0, 0, 0, 1], [0, 0, 1, 0]] {
            // (p, q, r, s) in A⊗A⊗A⊗A after the middle swap is (p|r) ⊗ (q|s)
            let e = vec![2 * t[0] + t[2], 2 * t[1] + t[3]];
            expected = expected.add(&Vector::basis(s, w("EE"), e).unwrap()).unwrap();
        }
        assert_eq!(img, expected);
        assert_eq!(img.entries().len(), 8);
    }
}
