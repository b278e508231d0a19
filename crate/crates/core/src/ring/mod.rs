//! Exact multivariate Laurent polynomials over Z, Q or Z/2.
//!
//! A [`Ring`] is a declaration: a coefficient domain plus a list of named
//! variables, some of which are invertible. Elements are stored in normal
//! form, as a sparse map from exponent vectors to nonzero coefficients, so
//! structural equality is mathematical equality.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient domain of a ring declaration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    Integers,
    Rationals,
    Mod2,
}

impl Domain {
    pub fn tag(self) -> &'static str {
        match self {
            Domain::Integers => "Z",
            Domain::Rationals => "Q",
            Domain::Mod2 => "Z2",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Domain> {
        match tag {
            "Z" | "integers" => Ok(Domain::Integers),
            "Q" | "rationals" => Ok(Domain::Rationals),
            "Z2" | "integers-mod-2" => Ok(Domain::Mod2),
            other => Err(Error::Parse(format!("unknown coefficient domain '{other}'"))),
        }
    }

    /// Brings a rational into canonical form for this domain.
    fn normalize(self, c: BigRational) -> Result<BigRational> {
        match self {
            Domain::Rationals => Ok(c),
            Domain::Integers => {
                if c.is_integer() {
                    Ok(c)
                } else {
                    Err(Error::Ring(format!("{c} is not an integer")))
                }
            }
            Domain::Mod2 => {
                let denom = c.denom();
                if denom.is_even() {
                    return Err(Error::Ring(format!("{c} has no image in Z/2")));
                }
                let numer = c.numer();
                Ok(BigRational::from_integer(if numer.is_odd() {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarDecl {
    pub name: String,
    pub invertible: bool,
}

impl VarDecl {
    pub fn new(name: &str, invertible: bool) -> Self {
        VarDecl { name: name.to_string(), invertible }
    }
}

/// A ring declaration. Variables are kept sorted by name; that order is the
/// monomial order used for printing and iteration.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    domain: Domain,
    vars: Vec<VarDecl>,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(domain: Domain, vars: Vec<VarDecl>) -> Result<RingRef> {
        let mut vars = vars;
        vars.sort_by(|a, b| a.name.cmp(&b.name));
        for w in vars.windows(2) {
            if w[0].name == w[1].name {
                return Err(Error::Ring(format!("duplicate variable '{}'", w[0].name)));
            }
        }
        for v in &vars {
            if !is_identifier(&v.name) {
                return Err(Error::Ring(format!("invalid variable name '{}'", v.name)));
            }
        }
        Ok(Arc::new(Ring { domain, vars }))
    }

    /// Ring without variables.
    pub fn constants(domain: Domain) -> RingRef {
        Arc::new(Ring { domain, vars: Vec::new() })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn vars(&self) -> &[VarDecl] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector aligned with the ring's (sorted) variable list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug)]
pub struct RingElem {
    ring: RingRef,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for RingElem {}

impl RingElem {
    pub fn zero(ring: &RingRef) -> Self {
        RingElem { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::from_int(ring, 1)
    }

    pub fn from_int(ring: &RingRef, n: i64) -> Self {
        Self::from_rational(ring, BigRational::from_integer(BigInt::from(n)))
            .expect("integers embed in every domain")
    }

    pub fn from_rational(ring: &RingRef, c: BigRational) -> Result<Self> {
        let c = ring.domain.normalize(c)?;
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ring.vars.len()), c);
        }
        Ok(RingElem { ring: ring.clone(), terms })
    }

    /// The variable `name` raised to `exp`.
    pub fn var_pow(ring: &RingRef, name: &str, exp: i32) -> Result<Self> {
        let idx = ring
            .var_index(name)
            .ok_or_else(|| Error::Ring(format!("unknown variable {name}")))?;
        if exp < 0 && !ring.vars[idx].invertible {
            return Err(Error::Ring(format!(
                "negative exponent on non-invertible variable {name}"
            )));
        }
        let mut m = Monomial::one(ring.vars.len());
        m.0[idx] = exp;
        let mut terms = BTreeMap::new();
        terms.insert(m, BigRational::one());
        Ok(RingElem { ring: ring.clone(), terms })
    }

    pub fn var(ring: &RingRef, name: &str) -> Result<Self> {
        Self::var_pow(ring, name, 1)
    }

    pub fn parse(text: &str, ring: &RingRef) -> Result<Self> {
        parse::parse(text, ring)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    /// The value if this element has no variable part.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check(&self, other: &RingElem) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::Ring("ring mismatch".into()))
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                let c = self.ring.domain.normalize(c).expect("closed under +");
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let sum = self.ring.domain.normalize(o.get() + c).expect("closed under +");
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn try_add(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &RingElem) -> Result<RingElem> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        let mut out = RingElem::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> RingElem {
        let mut out = RingElem::zero(&self.ring);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn add_assign_ref(&mut self, other: &RingElem) {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// Adds `a * b` in place.
    pub fn add_product(&mut self, a: &RingElem, b: &RingElem) {
        assert!(
            same_ring(&self.ring, &a.ring) && same_ring(&self.ring, &b.ring),
            "ring mismatch"
        );
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                self.add_term(m1.mul(m2), c1 * c2);
            }
        }
    }

    /// Non-negative powers always; negative powers only for units.
    pub fn pow(&self, exp: i64) -> Result<RingElem> {
        let base = if exp < 0 { self.unit_invert()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = RingElem::one(&self.ring);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Inverse of a unit: a single monomial in invertible variables whose
    /// coefficient is a unit of the domain.
    pub fn unit_invert(&self) -> Result<RingElem> {
        let not_unit = || Error::Ring(format!("not a unit: {self}"));
        if self.terms.len() != 1 {
            return Err(not_unit());
        }
        let (m, c) = self.terms.iter().next().unwrap();
        for (v, &e) in self.ring.vars.iter().zip(&m.0) {
            if e != 0 && !v.invertible {
                return Err(not_unit());
            }
        }
        let inv_c = match self.ring.domain {
            Domain::Rationals => c.recip(),
            Domain::Integers | Domain::Mod2 => {
                if c.abs().is_one() {
                    c.clone()
                } else {
                    return Err(not_unit());
                }
            }
        };
        let inv_m = Monomial(m.0.iter().map(|e| -e).collect());
        let mut terms = BTreeMap::new();
        terms.insert(inv_m, inv_c);
        Ok(RingElem { ring: self.ring.clone(), terms })
    }

    /// Substitutes variables and re-expresses the result in `target`.
    ///
    /// Variables without an assignment are mapped to the variable of the same
    /// name in `target`, which must declare it.
    pub fn specialize(
        &self,
        target: &RingRef,
        assignment: &BTreeMap<String, RingElem>,
    ) -> Result<RingElem> {
        let images = variable_images(&self.ring, target, assignment)?;
        let mut out = RingElem::zero(target);
        for (m, c) in &self.terms {
            let coeff = target.domain.normalize(convert_coeff(self.ring.domain, target.domain, c)?)?;
            let mut term = RingElem::from_rational(target, coeff)?;
            for (img, &e) in images.iter().zip(&m.0) {
                if e != 0 {
                    term = &term * &img.pow(e as i64)?;
                }
            }
            out.add_assign_ref(&term);
        }
        Ok(out)
    }
}

fn convert_coeff(from: Domain, to: Domain, c: &BigRational) -> Result<BigRational> {
    match (from, to) {
        (Domain::Mod2, Domain::Integers) | (Domain::Mod2, Domain::Rationals) => Err(Error::Ring(
            "cannot lift Z/2 coefficients to characteristic zero".into(),
        )),
        _ => Ok(c.clone()),
    }
}

fn variable_images(
    source: &RingRef,
    target: &RingRef,
    assignment: &BTreeMap<String, RingElem>,
) -> Result<Vec<RingElem>> {
    for name in assignment.keys() {
        if source.var_index(name).is_none() {
            return Err(Error::Ring(format!("unknown variable {name}")));
        }
    }
    source
        .vars
        .iter()
        .map(|v| match assignment.get(&v.name) {
            Some(img) => {
                if !same_ring(img.ring(), target) {
                    return Err(Error::Ring("ring mismatch".into()));
                }
                if v.invertible && img.unit_invert().is_err() {
                    return Err(Error::Ring(format!(
                        "invertible variable {} must be assigned a unit, got {img}",
                        v.name
                    )));
                }
                Ok(img.clone())
            }
            None => {
                let idx = target.var_index(&v.name).ok_or_else(|| {
                    Error::Ring(format!("variable {} is neither assigned nor in the target ring", v.name))
                })?;
                if v.invertible && !target.vars[idx].invertible {
                    return Err(Error::Ring(format!(
                        "variable {} is invertible in the source but not in the target",
                        v.name
                    )));
                }
                RingElem::var(target, &v.name)
            }
        })
        .collect()
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl std::ops::$tr<&RingElem> for &RingElem {
            type Output = RingElem;
            fn $method(self, rhs: &RingElem) -> RingElem {
                self.$inner(rhs).expect("ring mismatch")
            }
        }
        impl std::ops::$tr<RingElem> for RingElem {
            type Output = RingElem;
            fn $method(self, rhs: RingElem) -> RingElem {
                self.$inner(&rhs).expect("ring mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem::neg(self)
    }
}

impl std::ops::Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem::neg(&self)
    }
}

impl fmt::Display for RingElem {
    /// Terms in descending monomial order; `parse` reads this format back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            for (v, &e) in self.ring.vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(v.name.clone()),
                    _ => factors.push(format!("{}^{}", v.name, e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
