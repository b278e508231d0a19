//! Frobenius pairs: a generator table over a basis spec, its verifier, the
//! known constructions, and file IO.

pub mod algebra;
pub mod builders;
pub mod double;
pub mod io;
pub mod rank2;
pub mod verify;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ring::{RingElem, RingRef};
use crate::tensor::{BasisSpec, LinMap, SortWord, SpecRef, Vector};
use crate::theory::Gen;

pub use verify::{verify, Record, Status, VerifyReport, Witness};

/// A generator table. `beta` and `gamma` are never supplied: they are
/// derived as `eps ∘ mu_A` and `Delta_A ∘ eta` whenever their inputs exist.
/// Any other generator may be absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusPair {
    name: String,
    spec: SpecRef,
    maps: BTreeMap<Gen, LinMap>,
    meta: BTreeMap<String, String>,
}

impl FrobeniusPair {
    pub fn new(
        name: &str,
        spec: &SpecRef,
        maps: impl IntoIterator<Item = (Gen, LinMap)>,
    ) -> Result<Self> {
        let mut table = BTreeMap::new();
        for (g, m) in maps {
            if g.is_derived() {
                return Err(Error::Construction(format!("{g} is derived and cannot be supplied")));
            }
            if m.domain() != &g.domain() || m.codomain() != &g.codomain() {
                return Err(Error::Signature(g.name().into()));
            }
            let m = if m.spec() == spec { m } else { m.rebase(spec)? };
            if table.insert(g, m).is_some() {
                return Err(Error::Construction(format!("{g} given twice")));
            }
        }
        if let Some(eta) = table.get(&Gen::Eta) {
            let unit = eta.column(&[]);
            if unit != Vector::basis(spec, SortWord::parse("A")?, vec![0])? {
                return Err(Error::Construction(format!(
                    "eta(1) must be the unit label {}, got {unit}",
                    spec.labels(crate::tensor::Sort::A)[0]
                )));
            }
        }
        if let (Some(mu), Some(eps)) = (table.get(&Gen::MuA), table.get(&Gen::Eps)) {
            let beta = eps.compose(mu)?;
            table.insert(Gen::Beta, beta);
        }
        if let (Some(delta), Some(eta)) = (table.get(&Gen::DeltaA), table.get(&Gen::Eta)) {
            let gamma = delta.compose(eta)?;
            table.insert(Gen::Gamma, gamma);
        }
        Ok(FrobeniusPair { name: name.into(), spec: spec.clone(), maps: table, meta: BTreeMap::new() })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spec(&self) -> &SpecRef {
        &self.spec
    }

    pub fn ring(&self) -> &RingRef {
        self.spec.ring()
    }

    pub fn get(&self, g: Gen) -> Option<&LinMap> {
        self.maps.get(&g)
    }

    pub fn has(&self, g: Gen) -> bool {
        self.maps.contains_key(&g)
    }

    /// Supplied generators, in signature order.
    pub fn stored(&self) -> impl Iterator<Item = (Gen, &LinMap)> {
        self.maps.iter().filter(|(g, _)| !g.is_derived()).map(|(g, m)| (*g, m))
    }

    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<String>) -> Self {
        self.meta.insert(key.into(), value.into());
        self
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }

    /// The same table without the listed generators.
    pub fn without(&self, gens: &[Gen]) -> Result<Self> {
        let maps = self.stored().filter(|(g, _)| !gens.contains(g)).map(|(g, m)| (g, m.clone()));
        let mut p = FrobeniusPair::new(&self.name, &self.spec, maps)?;
        p.meta = self.meta.clone();
        Ok(p)
    }

    /// `μ_A(Δ_A(η(1)))`.
    pub fn handle_element(&self) -> Result<Vector> {
        let need = |g: Gen| self.get(g).ok_or_else(|| Error::MissingGenerator(g.name().into()));
        let m = need(Gen::MuA)?.compose(need(Gen::DeltaA)?)?.compose(need(Gen::Eta)?)?;
        Ok(m.column(&[]))
    }

    /// Substitutes base-ring variables in every coefficient.
    pub fn specialize(&self, target: &RingRef, assignment: &BTreeMap<String, RingElem>) -> Result<Self> {
        let spec = BasisSpec::new(
            target.clone(),
            self.spec.labels(crate::tensor::Sort::A).to_vec(),
            self.spec.labels(crate::tensor::Sort::E).to_vec(),
        )?;
        let maps = self
            .stored()
            .map(|(g, m)| Ok((g, m.map_coeffs(&spec, |c| c.specialize(target, assignment))?)))
            .collect::<Result<Vec<_>>>()?;
        let mut p = FrobeniusPair::new(&self.name, &spec, maps)?;
        p.meta = self.meta.clone();
        Ok(p)
    }
}
