//! Sorted free modules and exact linear maps between tensor words.
//!
//! There are two sorts, `A` and `E`, each with a finite ordered basis. A
//! [`SortWord`] names a tensor product of copies of them; the empty word is
//! the ground ring. Basis tuples of a word are index vectors, ordered
//! lexicographically by per-sort label order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{RingElem, RingRef};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    A,
    E,
}

impl Sort {
    pub fn from_char(c: char) -> Option<Sort> {
        match c {
            'A' => Some(Sort::A),
            'E' => Some(Sort::E),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sort::A => 'A',
            Sort::E => 'E',
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SortWord(pub Vec<Sort>);

impl SortWord {
    pub fn empty() -> Self {
        SortWord(Vec::new())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "()" || s.is_empty() {
            return Ok(SortWord::empty());
        }
        s.chars()
            .map(|c| Sort::from_char(c).ok_or_else(|| Error::Parse(format!("bad sort '{c}' in word {s}"))))
            .collect::<Result<Vec<_>>>()
            .map(SortWord)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &SortWord) -> SortWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SortWord(v)
    }
}

impl fmt::Display for SortWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl From<&[Sort]> for SortWord {
    fn from(s: &[Sort]) -> Self {
        SortWord(s.to_vec())
    }
}

/// Ordered basis labels for both sorts, over a common ring.
#[derive(Debug, PartialEq, Eq)]
pub struct BasisSpec {
    ring: RingRef,
    basis_a: Vec<String>,
    basis_e: Vec<String>,
}

pub type SpecRef = Arc<BasisSpec>;

impl BasisSpec {
    pub fn new(ring: RingRef, basis_a: Vec<String>, basis_e: Vec<String>) -> Result<SpecRef> {
        for (sort, labels) in [("A", &basis_a), ("E", &basis_e)] {
            if labels.is_empty() {
                return Err(Error::Shape(format!("basis of {sort} is empty")));
            }
            for (i, l) in labels.iter().enumerate() {
                if labels[..i].contains(l) {
                    return Err(Error::Shape(format!("duplicate label {l} in basis of {sort}")));
                }
            }
        }
        Ok(Arc::new(BasisSpec { ring, basis_a, basis_e }))
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn labels(&self, sort: Sort) -> &[String] {
        match sort {
            Sort::A => &self.basis_a,
            Sort::E => &self.basis_e,
        }
    }

    pub fn rank(&self, sort: Sort) -> usize {
        self.labels(sort).len()
    }

    pub fn word_rank(&self, word: &SortWord) -> usize {
        word.0.iter().map(|&s| self.rank(s)).product()
    }

    pub fn label_index(&self, sort: Sort, label: &str) -> Option<u16> {
        self.labels(sort).iter().position(|l| l == label).map(|i| i as u16)
    }

    /// All basis tuples of `word`, lexicographically ordered.
    pub fn basis_tuples(&self, word: &SortWord) -> Vec<Tuple> {
        let mut out = vec![Vec::with_capacity(word.len())];
        for &s in &word.0 {
            let r = self.rank(s) as u16;
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..r).map(move |i| {
                        let mut t = t.clone();
                        t.push(i);
                        t
                    })
                })
                .collect();
        }
        out
    }

    pub fn check_tuple(&self, word: &SortWord, t: &[u16]) -> Result<()> {
        if t.len() != word.len() || word.0.iter().zip(t).any(|(&s, &i)| i as usize >= self.rank(s)) {
            return Err(Error::Shape(format!("basis tuple {t:?} does not fit word {word}")));
        }
        Ok(())
    }

    pub fn tuple_label(&self, word: &SortWord, t: &[u16]) -> String {
        if t.is_empty() {
            return "1".into();
        }
        word.0
            .iter()
            .zip(t)
            .map(|(&s, &i)| self.labels(s)[i as usize].as_str())
            .collect::<Vec<_>>()
            .join("⊗")
    }

    pub fn parse_tuple(&self, word: &SortWord, labels: &[String]) -> Result<Tuple> {
        if labels.len() != word.len() {
            return Err(Error::Shape(format!(
                "expected {} labels for word {word}, got {}",
                word.len(),
                labels.len()
            )));
        }
        word.0
            .iter()
            .zip(labels)
            .map(|(&s, l)| {
                self.label_index(s, l)
                    .ok_or_else(|| Error::Shape(format!("unknown {s} label {l}")))
            })
            .collect()
    }
}

fn same_spec(a: &SpecRef, b: &SpecRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub type Tuple = Vec<u16>;

/// An element of the free module on a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    spec: SpecRef,
    word: SortWord,
    entries: BTreeMap<Tuple, RingElem>,
}

impl Vector {
    pub fn zero(spec: &SpecRef, word: SortWord) -> Self {
        Vector { spec: spec.clone(), word, entries: BTreeMap::new() }
    }

    pub fn basis(spec: &SpecRef, word: SortWord, t: Tuple) -> Result<Self> {
        spec.check_tuple(&word, &t)?;
        let mut entries = BTreeMap::new();
        entries.insert(t, RingElem::one(spec.ring()));
        Ok(Vector { spec: spec.clone(), word, entries })
    }

    pub fn from_entries(
        spec: &SpecRef,
        word: SortWord,
        items: impl IntoIterator<Item = (Tuple, RingElem)>,
    ) -> Result<Self> {
        let mut v = Vector::zero(spec, word);
        for (t, c) in items {
            spec.check_tuple(&v.word, &t)?;
            v.add_at(t, &c);
        }
        Ok(v)
    }

    pub fn word(&self) -> &SortWord {
        &self.word
    }

    pub fn spec(&self) -> &SpecRef {
        &self.spec
    }

    pub fn entries(&self) -> &BTreeMap<Tuple, RingElem> {
        &self.entries
    }

    pub fn coeff(&self, t: &[u16]) -> RingElem {
        self.entries.get(t).cloned().unwrap_or_else(|| RingElem::zero(self.spec.ring()))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn add_at(&mut self, t: Tuple, c: &RingElem) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&t) {
            Some(e) => {
                e.add_assign_ref(c);
                if e.is_zero() {
                    self.entries.remove(&t);
                }
            }
            None => {
                self.entries.insert(t, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        if self.word != other.word || !same_spec(&self.spec, &other.spec) {
            return Err(Error::Shape("vector shape mismatch".into()));
        }
        let mut out = self.clone();
        for (t, c) in &other.entries {
            out.add_at(t.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &RingElem) -> Vector {
        let mut out = Vector::zero(&self.spec, self.word.clone());
        for (t, c) in &self.entries {
            out.add_at(t.clone(), &(c * s));
        }
        out
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(t, c)| {
                if t.is_empty() {
                    c.to_string()
                } else {
                    let label = self.spec.tuple_label(&self.word, t);
                    if label == "1" {
                        if c.num_terms() > 1 {
                            format!("({c})")
                        } else {
                            c.to_string()
                        }
                    } else if c.is_one() {
                        label
                    } else if c.num_terms() == 1 && !c.to_string().contains(' ') {
                        format!("{c}*{label}")
                    } else {
                        format!("({c})*{label}")
                    }
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A sparse matrix from the free module on `domain` to that on `codomain`,
/// stored column by column. Absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    spec: SpecRef,
    domain: SortWord,
    codomain: SortWord,
    cols: BTreeMap<Tuple, BTreeMap<Tuple, RingElem>>,
}

/// Outcome of comparing two maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equality {
    Equal,
    Shape { lhs: (SortWord, SortWord), rhs: (SortWord, SortWord) },
    Differ { input: Tuple, lhs: Vector, rhs: Vector },
}

impl Equality {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equality::Equal)
    }
}

impl LinMap {
    pub fn zero(spec: &SpecRef, domain: SortWord, codomain: SortWord) -> Self {
        LinMap { spec: spec.clone(), domain, codomain, cols: BTreeMap::new() }
    }

    pub fn identity(spec: &SpecRef, word: SortWord) -> Self {
        let mut m = LinMap::zero(spec, word.clone(), word.clone());
        let one = RingElem::one(spec.ring());
        for t in spec.basis_tuples(&word) {
            m.cols.entry(t.clone()).or_default().insert(t, one.clone());
        }
        m
    }

    /// Builds a map from `(output tuple, input tuple, coefficient)` triples;
    /// repeated positions accumulate.
    pub fn from_entries(
        spec: &SpecRef,
        domain: SortWord,
        codomain: SortWord,
        items: impl IntoIterator<Item = (Tuple, Tuple, RingElem)>,
    ) -> Result<Self> {
        let mut m = LinMap::zero(spec, domain, codomain);
        for (out, inp, c) in items {
            spec.check_tuple(&m.codomain, &out)?;
            spec.check_tuple(&m.domain, &inp)?;
            m.add_entry(inp, out, &c);
        }
        Ok(m)
    }

    /// Builds a map column by column from the image of each basis tuple.
    pub fn from_fn(
        spec: &SpecRef,
        domain: SortWord,
        codomain: SortWord,
        mut f: impl FnMut(&Tuple) -> Result<Vector>,
    ) -> Result<Self> {
        let mut m = LinMap::zero(spec, domain.clone(), codomain);
        for t in spec.basis_tuples(&domain) {
            let v = f(&t)?;
            if v.word != m.codomain {
                return Err(Error::Shape(format!(
                    "column image has word {}, expected {}",
                    v.word, m.codomain
                )));
            }
            if !v.entries.is_empty() {
                m.cols.insert(t, v.entries);
            }
        }
        Ok(m)
    }

    fn add_entry(&mut self, inp: Tuple, out: Tuple, c: &RingElem) {
        if c.is_zero() {
            return;
        }
        let col = self.cols.entry(inp.clone()).or_default();
        match col.get_mut(&out) {
            Some(e) => {
                e.add_assign_ref(c);
                if e.is_zero() {
                    col.remove(&out);
                }
            }
            None => {
                col.insert(out, c.clone());
            }
        }
        if col.is_empty() {
            self.cols.remove(&inp);
        }
    }

    pub fn spec(&self) -> &SpecRef {
        &self.spec
    }

    pub fn domain(&self) -> &SortWord {
        &self.domain
    }

    pub fn codomain(&self) -> &SortWord {
        &self.codomain
    }

    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn entry(&self, out: &[u16], inp: &[u16]) -> RingElem {
        self.cols
            .get(inp)
            .and_then(|c| c.get(out))
            .cloned()
            .unwrap_or_else(|| RingElem::zero(self.spec.ring()))
    }

    /// Nonzero entries as `(output, input, coefficient)`, ordered by input then output.
    pub fn entries(&self) -> impl Iterator<Item = (&Tuple, &Tuple, &RingElem)> {
        self.cols.iter().flat_map(|(i, col)| col.iter().map(move |(o, c)| (o, i, c)))
    }

    pub fn column(&self, inp: &[u16]) -> Vector {
        Vector {
            spec: self.spec.clone(),
            word: self.codomain.clone(),
            entries: self.cols.get(inp).cloned().unwrap_or_default(),
        }
    }

    fn check_spec(&self, other: &LinMap) -> Result<()> {
        if same_spec(&self.spec, &other.spec) {
            Ok(())
        } else {
            Err(Error::Shape("basis-spec mismatch".into()))
        }
    }

    /// `self ∘ f`: first `f`, then `self`.
    pub fn compose(&self, f: &LinMap) -> Result<LinMap> {
        self.check_spec(f)?;
        if f.codomain != self.domain {
            return Err(Error::Shape(format!(
                "cannot compose: codomain {} does not match domain {}",
                f.codomain, self.domain
            )));
        }
        let mut out = LinMap::zero(&self.spec, f.domain.clone(), self.codomain.clone());
        for (inp, col) in &f.cols {
            let mut acc: BTreeMap<Tuple, RingElem> = BTreeMap::new();
            for (mid, c) in col {
                if let Some(gcol) = self.cols.get(mid) {
                    for (o, d) in gcol {
                        match acc.get_mut(o) {
                            Some(e) => e.add_product(d, c),
                            None => {
                                acc.insert(o.clone(), d * c);
                            }
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            if !acc.is_empty() {
                out.cols.insert(inp.clone(), acc);
            }
        }
        Ok(out)
    }

    /// Kronecker product on concatenated words.
    pub fn tensor(&self, g: &LinMap) -> Result<LinMap> {
        self.check_spec(g)?;
        let mut out = LinMap::zero(
            &self.spec,
            self.domain.concat(&g.domain),
            self.codomain.concat(&g.codomain),
        );
        for (i1, c1) in &self.cols {
            for (i2, c2) in &g.cols {
                let inp: Tuple = i1.iter().chain(i2).copied().collect();
                let mut col = BTreeMap::new();
                for (o1, x) in c1 {
                    for (o2, y) in c2 {
                        let o: Tuple = o1.iter().chain(o2).copied().collect();
                        col.insert(o, x * y);
                    }
                }
                col.retain(|_, v: &mut RingElem| !v.is_zero());
                if !col.is_empty() {
                    out.cols.insert(inp, col);
                }
            }
        }
        Ok(out)
    }

    /// Swaps tensor factors `i` and `i+1` (1-based) of `word`.
    pub fn transposition(spec: &SpecRef, word: &SortWord, i: usize) -> Result<LinMap> {
        if i == 0 || i >= word.len() {
            return Err(Error::Shape(format!(
                "transposition index {i} out of range for word {word}"
            )));
        }
        let mut perm: Vec<usize> = (0..word.len()).collect();
        perm.swap(i - 1, i);
        LinMap::permutation(spec, word, &perm)
    }

    /// The map sending factor `perm[k]` of `word` to output position `k`.
    pub fn permutation(spec: &SpecRef, word: &SortWord, perm: &[usize]) -> Result<LinMap> {
        let mut seen = vec![false; word.len()];
        if perm.len() != word.len() || perm.iter().any(|&p| p >= word.len() || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Shape(format!("{perm:?} is not a permutation of {} factors", word.len())));
        }
        let codomain = SortWord(perm.iter().map(|&p| word.0[p]).collect());
        let mut m = LinMap::zero(spec, word.clone(), codomain);
        let one = RingElem::one(spec.ring());
        for t in spec.basis_tuples(word) {
            let o: Tuple = perm.iter().map(|&p| t[p]).collect();
            m.cols.entry(t).or_default().insert(o, one.clone());
        }
        Ok(m)
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        if !same_spec(&self.spec, &v.spec) || v.word != self.domain {
            return Err(Error::Shape(format!(
                "cannot apply map on {} to vector on {}",
                self.domain, v.word
            )));
        }
        let mut out = Vector::zero(&self.spec, self.codomain.clone());
        for (t, c) in &v.entries {
            if let Some(col) = self.cols.get(t) {
                for (o, d) in col {
                    out.add_at(o.clone(), &(d * c));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &LinMap) -> Result<LinMap> {
        self.check_spec(other)?;
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::Shape("cannot add maps of different shapes".into()));
        }
        let mut out = self.clone();
        for (inp, col) in &other.cols {
            for (o, c) in col {
                out.add_entry(inp.clone(), o.clone(), c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &RingElem) -> LinMap {
        let mut out = LinMap::zero(&self.spec, self.domain.clone(), self.codomain.clone());
        for (inp, col) in &self.cols {
            for (o, c) in col {
                out.add_entry(inp.clone(), o.clone(), &(c * s));
            }
        }
        out
    }

    pub fn neg(&self) -> LinMap {
        self.scale(&RingElem::from_int(self.spec.ring(), -1))
    }

    /// Exact comparison. On mismatch, reports the lexicographically first
    /// input basis tuple whose images differ.
    pub fn equal(&self, other: &LinMap) -> Equality {
        if self.domain != other.domain
            || self.codomain != other.codomain
            || !same_spec(&self.spec, &other.spec)
        {
            return Equality::Shape {
                lhs: (self.domain.clone(), self.codomain.clone()),
                rhs: (other.domain.clone(), other.codomain.clone()),
            };
        }
        let empty = BTreeMap::new();
        let mut keys: Vec<&Tuple> = self.cols.keys().chain(other.cols.keys()).collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            let a = self.cols.get(k).unwrap_or(&empty);
            let b = other.cols.get(k).unwrap_or(&empty);
            if a != b {
                return Equality::Differ {
                    input: k.clone(),
                    lhs: self.column(k),
                    rhs: other.column(k),
                };
            }
        }
        Equality::Equal
    }

    /// Moves the map to another basis spec with the same ring and the same
    /// labels on every sort the map touches.
    pub fn rebase(&self, spec: &SpecRef) -> Result<LinMap> {
        if self.spec.ring() != spec.ring() && **self.spec.ring() != **spec.ring() {
            return Err(Error::Shape("cannot rebase across rings".into()));
        }
        for s in self.domain.0.iter().chain(&self.codomain.0) {
            if self.spec.labels(*s) != spec.labels(*s) {
                return Err(Error::Shape(format!("labels of sort {s} differ; cannot rebase")));
            }
        }
        Ok(LinMap { spec: spec.clone(), ..self.clone() })
    }

    /// Applies `f` to every coefficient; the result lives on `spec`.
    pub fn map_coeffs(
        &self,
        spec: &SpecRef,
        mut f: impl FnMut(&RingElem) -> Result<RingElem>,
    ) -> Result<LinMap> {
        let mut out = LinMap::zero(spec, self.domain.clone(), self.codomain.clone());
        for (inp, col) in &self.cols {
            for (o, c) in col {
                out.add_entry(inp.clone(), o.clone(), &f(c)?);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} -> {}", self.domain, self.codomain)?;
        for t in self.spec.basis_tuples(&self.domain) {
            writeln!(f, "  {} |-> {}", self.spec.tuple_label(&self.domain, &t), self.column(&t))?;
        }
        Ok(())
    }
}
