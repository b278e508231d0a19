//! Concrete pairs.

use super::algebra::{AElem, RankTwo};
use super::FrobeniusPair;
use crate::error::{Error, Result};
use crate::ring::{Domain, Ring, RingElem, VarDecl};
use crate::tensor::{BasisSpec, LinMap, SortWord, SpecRef};
use crate::theory::Gen;

fn labels(l: &[&str]) -> Vec<String> {
    l.iter().map(|s| s.to_string()).collect()
}

fn w(s: &str) -> SortWord {
    SortWord::parse(s).expect("static word")
}

/// Reads `m` on other words of the same shape; used when `E` shares the
/// basis of `A`.
fn retype(spec: &SpecRef, m: &LinMap, domain: &str, codomain: &str) -> LinMap {
    let items = m.entries().map(|(o, i, c)| (o.clone(), i.clone(), c.clone()));
    LinMap::from_entries(spec, w(domain), w(codomain), items).expect("E basis equals A basis")
}

/// `A = R[X]/(X² − hX − t)` with its Frobenius structure.
pub fn universal_algebra(h: RingElem, t: RingElem) -> Result<RankTwo> {
    RankTwo::new(h, t)
}

fn algebra_maps(spec: &SpecRef, alg: &RankTwo) -> Vec<(Gen, LinMap)> {
    vec![
        (Gen::MuA, alg.mu(spec)),
        (Gen::Eta, alg.eta(spec)),
        (Gen::Eps, alg.eps(spec)),
        (Gen::DeltaA, alg.delta(spec)),
    ]
}

/// The algebra part alone, over `Z[h, t]`.
pub fn build_universal() -> Result<FrobeniusPair> {
    let r = Ring::new(Domain::Integers, vec![VarDecl::new("h", false), VarDecl::new("t", false)])?;
    let alg = universal_algebra(RingElem::var(&r, "h")?, RingElem::var(&r, "t")?)?;
    let spec = BasisSpec::new(r, labels(&["1", "X"]), labels(&["Y", "Z"]))?;
    FrobeniusPair::new("universal", &spec, algebra_maps(&spec, &alg))
}

/// Truncated polynomials `Z[X]/(X²)` with a rank-two `E = ⟨Y, Z⟩`, `YZ = X`.
pub fn build_aps() -> Result<FrobeniusPair> {
    let r = Ring::constants(Domain::Integers);
    let z = RingElem::zero(&r);
    let alg = universal_algebra(z.clone(), z)?;
    let spec = BasisSpec::new(r.clone(), labels(&["1", "X"]), labels(&["Y", "Z"]))?;
    let one = || RingElem::one(&r);
    let e = |items: Vec<(Vec<u16>, Vec<u16>)>, d: &str, c: &str| {
        LinMap::from_entries(&spec, w(d), w(c), items.into_iter().map(|(o, i)| (o, i, one())))
    };
    let mut maps = algebra_maps(&spec, &alg);
    maps.extend([
        (Gen::MuAE, e(vec![(vec![0], vec![0, 0]), (vec![1], vec![0, 1])], "AE", "E")?),
        (Gen::MuEA, e(vec![(vec![0], vec![0, 0]), (vec![1], vec![1, 0])], "EA", "E")?),
        (Gen::DeltaAE, e(vec![(vec![1, 0], vec![0]), (vec![1, 1], vec![1])], "E", "AE")?),
        (Gen::DeltaEA, e(vec![(vec![0, 1], vec![0]), (vec![1, 1], vec![1])], "E", "EA")?),
        (Gen::MuEEA, e(vec![(vec![1], vec![0, 1]), (vec![1], vec![1, 0])], "EE", "A")?),
        (Gen::DeltaAEE, e(vec![(vec![0, 1], vec![0]), (vec![1, 0], vec![0])], "A", "EE")?),
        (Gen::MuE, LinMap::zero(&spec, w("EE"), w("E"))),
        (Gen::DeltaE, LinMap::zero(&spec, w("E"), w("EE"))),
        (Gen::NuAE, e(vec![(vec![0], vec![0]), (vec![1], vec![0])], "A", "E")?),
        (Gen::NuEA, e(vec![(vec![1], vec![0]), (vec![1], vec![1])], "E", "A")?),
        (Gen::NuEE, LinMap::zero(&spec, w("E"), w("E"))),
    ]);
    FrobeniusPair::new("aps", &spec, maps)
}

/// `E = A` with every structure map taken from `A` and every Möbius map
/// multiplication by `ξ`. Requires `ξ² = φ`.
pub fn build_sqrt(name: &str, alg: &RankTwo, xi: &AElem) -> Result<FrobeniusPair> {
    let sq = alg.mul(xi, xi);
    let phi = alg.handle();
    if sq != phi {
        return Err(Error::Construction(format!("ξ²≠φ: ξ² = {sq}, φ = {phi}")));
    }
    let spec = BasisSpec::new(alg.ring.clone(), labels(&["1", "X"]), labels(&["1", "X"]))?;
    let mu = alg.mu(&spec);
    let delta = alg.delta(&spec);
    let nu = alg.times(&spec, xi);
    let mut maps = algebra_maps(&spec, alg);
    maps.extend([
        (Gen::MuAE, retype(&spec, &mu, "AE", "E")),
        (Gen::MuEA, retype(&spec, &mu, "EA", "E")),
        (Gen::MuE, retype(&spec, &mu, "EE", "E")),
        (Gen::MuEEA, retype(&spec, &mu, "EE", "A")),
        (Gen::DeltaAE, retype(&spec, &delta, "E", "AE")),
        (Gen::DeltaEA, retype(&spec, &delta, "E", "EA")),
        (Gen::DeltaE, retype(&spec, &delta, "E", "EE")),
        (Gen::DeltaAEE, retype(&spec, &delta, "A", "EE")),
        (Gen::NuAE, retype(&spec, &nu, "A", "E")),
        (Gen::NuEA, retype(&spec, &nu, "E", "A")),
        (Gen::NuEE, retype(&spec, &nu, "E", "E")),
    ]);
    Ok(FrobeniusPair::new(name, &spec, maps)?.with_meta("xi", xi.to_string()))
}

/// `Z/2[λ^±1][X]/(X² − λ²X)` with Möbius maps multiplication by `λ`.
pub fn build_tt() -> Result<FrobeniusPair> {
    let r = Ring::new(Domain::Mod2, vec![VarDecl::new("lambda", true)])?;
    let l = RingElem::var(&r, "lambda")?;
    let alg = universal_algebra(&l * &l, RingElem::zero(&r))?;
    build_sqrt("tt", &alg, &alg.constant(l))
}

/// Elements `(h, t, ξ)` over `Z[a^±1, b^±1]` with `ξ = a + bX` and `ξ² = 2X − h`.
pub fn laurent_sqrt_data() -> Result<(RankTwo, AElem)> {
    let r = Ring::new(Domain::Integers, vec![VarDecl::new("a", true), VarDecl::new("b", true)])?;
    let h = RingElem::parse("-2*a*b^-1 + 2*b^-2", &r)?;
    let a2 = RingElem::parse("a^2", &r)?;
    let t = (&RingElem::parse("b^-2", &r)? * &(&a2 + &h)).neg();
    let xi = AElem::new(RingElem::var(&r, "a")?, RingElem::var(&r, "b")?);
    Ok((universal_algebra(h, t)?, xi))
}

pub fn build_laurent_sqrt() -> Result<FrobeniusPair> {
    let (alg, xi) = laurent_sqrt_data()?;
    build_sqrt("laurent-sqrt", &alg, &xi)
}

fn it_parts() -> Result<(SpecRef, RankTwo, Vec<(Gen, LinMap)>, LinMap)> {
    let r = Ring::new(Domain::Rationals, vec![VarDecl::new("t", true)])?;
    let alg = universal_algebra(RingElem::zero(&r), RingElem::var(&r, "t")?)?;
    let spec = BasisSpec::new(r, labels(&["1", "X"]), labels(&["1", "X"]))?;
    let phi = alg.handle();
    let phi_inv = alg.invert(&phi)?;
    let mu = alg.mu(&spec);
    let delta = alg.delta(&spec);
    let times_phi = alg.times(&spec, &phi);
    let mu_scaled = alg.times(&spec, &phi_inv).compose(&mu)?;
    let id = LinMap::identity(&spec, w("A"));
    let mut maps = algebra_maps(&spec, &alg);
    maps.extend([
        (Gen::MuAE, retype(&spec, &mu, "AE", "E")),
        (Gen::MuEA, retype(&spec, &mu, "EA", "E")),
        (Gen::DeltaAE, retype(&spec, &delta, "E", "AE")),
        (Gen::DeltaEA, retype(&spec, &delta, "E", "EA")),
        (Gen::MuEEA, retype(&spec, &mu_scaled, "EE", "A")),
        (Gen::DeltaAEE, retype(&spec, &delta.compose(&times_phi)?, "A", "EE")),
        (Gen::NuAE, retype(&spec, &times_phi, "A", "E")),
        (Gen::NuEA, retype(&spec, &id, "E", "A")),
        (Gen::NuEE, retype(&spec, &id, "E", "E")),
    ]);
    Ok((spec, alg, maps, mu_scaled))
}

/// `Q[t^±1][X]/(X² − t)`, `φ = 2X`, with `E = A` and the products on `E`
/// filled in as `μ_E = φ⁻¹μ_A`, `Δ_E = Δ_A`.
pub fn build_it() -> Result<FrobeniusPair> {
    let (spec, alg, mut maps, mu_scaled) = it_parts()?;
    maps.push((Gen::MuE, retype(&spec, &mu_scaled, "EE", "E")));
    maps.push((Gen::DeltaE, retype(&spec, &alg.delta(&spec), "E", "EE")));
    FrobeniusPair::new("it", &spec, maps)
}

/// As [`build_it`] but with `μ_E` and `Δ_E` absent.
pub fn build_it_strict() -> Result<FrobeniusPair> {
    let (spec, _, maps, _) = it_parts()?;
    FrobeniusPair::new("it-strict", &spec, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Vector;

    fn vec_a(p: &FrobeniusPair, c0: i64, c1: i64) -> Vector {
        let r = p.ring();
        AElem::new(RingElem::from_int(r, c0), RingElem::from_int(r, c1)).to_vector(p.spec())
    }

    #[test]
    fn handle_elements() {
        let u = build_universal().unwrap();
        assert_eq!(u.handle_element().unwrap().to_string(), "-h + 2*X");
        let aps = build_aps().unwrap();
        assert_eq!(aps.handle_element().unwrap(), vec_a(&aps, 0, 2));
        let tt = build_tt().unwrap();
        assert_eq!(tt.handle_element().unwrap().to_string(), "lambda^2");
    }

    #[test]
    fn aps_values() {
        let p = build_aps().unwrap();
        let s = p.spec();
        let b = |word: &str, t: Vec<u16>| Vector::basis(s, w(word), t).unwrap();
        assert_eq!(p.get(Gen::MuEEA).unwrap().apply(&b("EE", vec![0, 1])).unwrap(), b("A", vec![1]));
        assert_eq!(p.get(Gen::DeltaAE).unwrap().apply(&b("E", vec![0])).unwrap(), b("AE", vec![1, 0]));
        assert_eq!(p.get(Gen::NuAE).unwrap().column(&[0]).to_string(), "Y + Z");
        assert_eq!(p.get(Gen::MuA).unwrap().apply(&b("AA", vec![0, 1])).unwrap(), b("A", vec![1]));
        // Δ(1) then μ: the handle operator sends 1 to 2X
        let gamma_mu = p.get(Gen::MuA).unwrap().compose(p.get(Gen::Gamma).unwrap()).unwrap();
        assert_eq!(gamma_mu.column(&[]), vec_a(&p, 0, 2));
        let eps_eta = p.get(Gen::Eps).unwrap().compose(p.get(Gen::Eta).unwrap()).unwrap();
        assert!(eps_eta.is_zero());
    }

    #[test]
    fn tt_values() {
        let p = build_tt().unwrap();
        assert_eq!(p.get(Gen::MuA).unwrap().column(&[1, 1]).to_string(), "lambda^2*X");
        assert_eq!(p.get(Gen::NuEE).unwrap().column(&[1]).to_string(), "lambda*X");
    }

    #[test]
    fn it_values() {
        let p = build_it().unwrap();
        assert_eq!(p.get(Gen::MuEEA).unwrap().column(&[1, 1]).to_string(), "1/2*X");
        assert_eq!(p.get(Gen::NuAE).unwrap().column(&[0]).to_string(), "2*X");
        assert!(!build_it_strict().unwrap().has(Gen::MuE));
    }

    #[test]
    fn sqrt_precondition() {
        let u = build_universal().unwrap();
        let r = u.ring().clone();
        let alg = universal_algebra(RingElem::var(&r, "h").unwrap(), RingElem::var(&r, "t").unwrap()).unwrap();
        let err = build_sqrt("x", &alg, &alg.one()).unwrap_err();
        assert!(err.to_string().contains("ξ²≠φ"), "{err}");
    }

    #[test]
    fn laurent_square_root() {
        let (alg, xi) = laurent_sqrt_data().unwrap();
        assert_eq!(alg.mul(&xi, &xi), alg.handle());
    }
}
