//! Rank-two Frobenius algebras `k[X]/(X² − hX − t)` with basis `{1, X}`,
//! counit `ε(1) = 0, ε(X) = 1`.

use crate::error::{Error, Result};
use crate::ring::{RingElem, RingRef};
use crate::tensor::{LinMap, SortWord, SpecRef, Vector};

/// An element `c0 + c1·X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AElem(pub [RingElem; 2]);

impl AElem {
    pub fn new(c0: RingElem, c1: RingElem) -> Self {
        AElem([c0, c1])
    }

    pub fn coeff(&self, i: usize) -> &RingElem {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(RingElem::is_zero)
    }

    pub fn add(&self, o: &AElem) -> AElem {
        AElem([&self.0[0] + &o.0[0], &self.0[1] + &o.0[1]])
    }

    pub fn scale(&self, s: &RingElem) -> AElem {
        AElem([&self.0[0] * s, &self.0[1] * s])
    }

    pub fn to_vector(&self, spec: &SpecRef) -> Vector {
        Vector::from_entries(
            spec,
            SortWord::parse("A").unwrap(),
            [(vec![0], self.0[0].clone()), (vec![1], self.0[1].clone())],
        )
        .expect("rank-two A basis")
    }

    pub fn from_vector(v: &Vector) -> AElem {
        AElem([v.coeff(&[0]), v.coeff(&[1])])
    }
}

impl std::fmt::Display for AElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [c0, c1] = &self.0;
        match (c0.is_zero(), c1.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{c0}"),
            (true, false) if c1.is_one() => write!(f, "X"),
            (true, false) => write!(f, "({c1})*X"),
            (false, false) if c1.is_one() => write!(f, "{c0} + X"),
            (false, false) => write!(f, "{c0} + ({c1})*X"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTwo {
    pub ring: RingRef,
    pub h: RingElem,
    pub t: RingElem,
}

impl RankTwo {
    pub fn new(h: RingElem, t: RingElem) -> Result<Self> {
        if h.ring() != t.ring() {
            return Err(Error::Ring("h and t live in different rings".into()));
        }
        Ok(RankTwo { ring: h.ring().clone(), h, t })
    }

    pub fn zero(&self) -> AElem {
        AElem::new(RingElem::zero(&self.ring), RingElem::zero(&self.ring))
    }

    pub fn one(&self) -> AElem {
        AElem::new(RingElem::one(&self.ring), RingElem::zero(&self.ring))
    }

    pub fn x(&self) -> AElem {
        AElem::new(RingElem::zero(&self.ring), RingElem::one(&self.ring))
    }

    pub fn basis(&self, i: u16) -> AElem {
        if i == 0 {
            self.one()
        } else {
            self.x()
        }
    }

    pub fn constant(&self, c: RingElem) -> AElem {
        AElem::new(c, RingElem::zero(&self.ring))
    }

    pub fn mul(&self, a: &AElem, b: &AElem) -> AElem {
        let [a0, a1] = &a.0;
        let [b0, b1] = &b.0;
        let top = a1 * b1;
        AElem::new(&(a0 * b0) + &(&self.t * &top), &(&(a0 * b1) + &(a1 * b0)) + &(&self.h * &top))
    }

    pub fn pow(&self, a: &AElem, n: u32) -> AElem {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// `μΔ(1) = 2X − h`.
    pub fn handle(&self) -> AElem {
        AElem::new(self.h.neg(), RingElem::from_int(&self.ring, 2))
    }

    pub fn mu(&self, spec: &SpecRef) -> LinMap {
        let w = |s: &str| SortWord::parse(s).unwrap();
        LinMap::from_fn(spec, w("AA"), w("A"), |t| {
            Ok(self.mul(&self.basis(t[0]), &self.basis(t[1])).to_vector(spec))
        })
        .expect("rank-two A basis")
    }

    pub fn eta(&self, spec: &SpecRef) -> LinMap {
        LinMap::from_fn(spec, SortWord::empty(), SortWord::parse("A").unwrap(), |_| {
            Ok(self.one().to_vector(spec))
        })
        .expect("rank-two A basis")
    }

    pub fn eps(&self, spec: &SpecRef) -> LinMap {
        let one = RingElem::one(&self.ring);
        LinMap::from_entries(spec, SortWord::parse("A").unwrap(), SortWord::empty(), [(vec![], vec![1], one)])
            .expect("rank-two A basis")
    }

    /// `Δ(1) = 1⊗X + X⊗1 − h·1⊗1`, `Δ(X) = X⊗X + t·1⊗1`.
    pub fn delta(&self, spec: &SpecRef) -> LinMap {
        let one = RingElem::one(&self.ring);
        LinMap::from_entries(
            spec,
            SortWord::parse("A").unwrap(),
            SortWord::parse("AA").unwrap(),
            [
                (vec![0, 1], vec![0], one.clone()),
                (vec![1, 0], vec![0], one.clone()),
                (vec![0, 0], vec![0], self.h.neg()),
                (vec![1, 1], vec![1], one),
                (vec![0, 0], vec![1], self.t.clone()),
            ],
        )
        .expect("rank-two A basis")
    }

    /// Multiplication by `a` as a map `A → A`.
    pub fn times(&self, spec: &SpecRef, a: &AElem) -> LinMap {
        let w = SortWord::parse("A").unwrap();
        LinMap::from_fn(spec, w.clone(), w, |t| Ok(self.mul(a, &self.basis(t[0])).to_vector(spec)))
            .expect("rank-two A basis")
    }

    /// Inverse of `a`, when the norm `a·ā` is a unit of the base ring.
    pub fn invert(&self, a: &AElem) -> Result<AElem> {
        // conjugate of c0 + c1 X is (c0 + h c1) − c1 X
        let conj = AElem::new(&a.0[0] + &(&self.h * &a.0[1]), a.0[1].neg());
        let norm = self.mul(a, &conj);
        debug_assert!(norm.0[1].is_zero());
        let inv = norm.0[0]
            .pow(-1)
            .map_err(|_| Error::Construction(format!("{a} is not invertible in A")))?;
        Ok(conj.scale(&inv))
    }
}
