//! State cubes: `n` crossings, a word of labeled circles at each vertex of
//! `{0,1}ⁿ`, and a merge or split along every edge.
//!
//! Vertices are bit strings; an edge is its source with the flipped bit
//! written as `*`, so `0*1` runs from `001` to `011`.

mod complex;
pub mod linalg;
mod random;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pair::FrobeniusPair;
use crate::ring::{RingElem, RingRef};
use crate::tensor::{LinMap, Sort, SortWord, SpecRef};
use crate::theory::Gen;

pub use complex::{check_d_squared, differential, euler_characteristic, homology, BlockMap, Coefficients, DegreeHomology, SignRule, SquareWitness};
pub use linalg::{smith_normal_form, Snf};
pub use random::random_cube;

/// Positions are 1-based: `i`, `j` in the source word, `out` in the target.
/// Circles not named keep their relative order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeMove {
    Merge { i: usize, j: usize, out: usize, sort: Sort },
    Split { i: usize, out: [usize; 2], sorts: [Sort; 2] },
}

fn gen_for(dom: &[Sort], cod: &[Sort]) -> Result<Gen> {
    Gen::ALL
        .into_iter()
        .filter(|g| !g.is_derived() && g.domain().len() + g.codomain().len() == 3)
        .find(|g| g.domain().0 == dom && g.codomain().0 == cod)
        .ok_or_else(|| Error::Cube(format!("no generator for {}→{}", SortWord(dom.to_vec()), SortWord(cod.to_vec()))))
}

impl EdgeMove {
    fn check_positions(&self, source: usize) -> Result<()> {
        let target = match self {
            EdgeMove::Merge { .. } => source.checked_sub(1),
            EdgeMove::Split { .. } => Some(source + 1),
        };
        let ok = match (*self, target) {
            (_, None) => false,
            (EdgeMove::Merge { i, j, out, .. }, Some(t)) => {
                i != j && (1..=source).contains(&i) && (1..=source).contains(&j) && (1..=t).contains(&out)
            }
            (EdgeMove::Split { i, out, .. }, Some(t)) => {
                out[0] != out[1] && (1..=source).contains(&i) && out.iter().all(|p| (1..=t).contains(p))
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Cube(format!("{self:?} does not fit a word of {source} circles")))
        }
    }

    /// The generator used on `source`.
    pub fn generator(&self, source: &SortWord) -> Result<Gen> {
        self.check_positions(source.len())?;
        match *self {
            EdgeMove::Merge { i, j, sort, .. } => gen_for(&[source.0[i - 1], source.0[j - 1]], &[sort]),
            EdgeMove::Split { i, sorts, .. } => gen_for(&[source.0[i - 1]], &sorts),
        }
    }

    /// Untouched source positions, in order.
    fn rest(&self, n: usize) -> Vec<usize> {
        (0..n)
            .filter(|&k| match *self {
                EdgeMove::Merge { i, j, .. } => k != i - 1 && k != j - 1,
                EdgeMove::Split { i, .. } => k != i - 1,
            })
            .collect()
    }

    /// Target positions of the circles the move creates, 0-based.
    fn created(&self) -> Vec<usize> {
        match *self {
            EdgeMove::Merge { out, .. } => vec![out - 1],
            EdgeMove::Split { out, .. } => vec![out[0] - 1, out[1] - 1],
        }
    }

    /// For each target position, where it comes from: `Err(k)` is the
    /// `k`-th created circle, `Ok(p)` an untouched source position.
    fn provenance(&self, n: usize) -> Vec<std::result::Result<usize, usize>> {
        let created = self.created();
        let rest = self.rest(n);
        let len = rest.len() + created.len();
        let mut untouched = rest.into_iter();
        (0..len)
            .map(|t| match created.iter().position(|&c| c == t) {
                Some(k) => Err(k),
                None => Ok(untouched.next().expect("counts agree")),
            })
            .collect()
    }

    pub fn apply(&self, source: &SortWord) -> Result<SortWord> {
        let g = self.generator(source)?;
        let made = g.codomain().0;
        Ok(SortWord(
            self.provenance(source.len())
                .into_iter()
                .map(|p| match p {
                    Ok(s) => source.0[s],
                    Err(k) => made[k],
                })
                .collect(),
        ))
    }

    /// Pairs `(source, target)` of circles joined by the saddle cobordism.
    fn links(&self, n: usize) -> Vec<(usize, usize)> {
        let touched: Vec<usize> = match *self {
            EdgeMove::Merge { i, j, .. } => vec![i - 1, j - 1],
            EdgeMove::Split { i, .. } => vec![i - 1],
        };
        self.provenance(n)
            .into_iter()
            .enumerate()
            .flat_map(|(t, p)| match p {
                Ok(s) => vec![(s, t)],
                Err(_) => touched.iter().map(|&s| (s, t)).collect(),
            })
            .collect()
    }

    /// The linear map on `source`: bring the touched circles to the front,
    /// apply the generator, then move the new circles into place.
    pub fn realize(&self, pair: &FrobeniusPair, source: &SortWord) -> Result<LinMap> {
        let spec = pair.spec();
        let g = self.generator(source)?;
        let gm = pair.get(g).ok_or_else(|| Error::MissingGenerator(g.name().into()))?;
        let touched = g.domain().len();
        let mut front: Vec<usize> = match *self {
            EdgeMove::Merge { i, j, .. } => vec![i - 1, j - 1],
            EdgeMove::Split { i, .. } => vec![i - 1],
        };
        let rest = self.rest(source.len());
        front.extend(&rest);
        let gather = LinMap::permutation(spec, source, &front)?;
        let rest_word = SortWord(rest.iter().map(|&k| source.0[k]).collect());
        let local = gm.tensor(&LinMap::identity(spec, rest_word.clone()))?;
        let made = g.codomain().len();
        let mut rest_k = made;
        let place: Vec<usize> = self
            .provenance(source.len())
            .into_iter()
            .map(|p| match p {
                Err(k) => k,
                Ok(_) => {
                    rest_k += 1;
                    rest_k - 1
                }
            })
            .collect();
        debug_assert_eq!(touched + rest_word.len(), source.len());
        let mid = g.codomain().concat(&rest_word);
        let scatter = LinMap::permutation(spec, &mid, &place)?;
        scatter.compose(&local)?.compose(&gather)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateCube {
    n: usize,
    vertices: BTreeMap<String, SortWord>,
    edges: BTreeMap<String, EdgeMove>,
}

/// Largest crossing count accepted.
pub const MAX_CROSSINGS: usize = 12;

fn bit_strings(n: usize) -> impl Iterator<Item = String> {
    (0..1u32 << n).map(move |b| (0..n).map(|k| if b >> (n - 1 - k) & 1 == 1 { '1' } else { '0' }).collect())
}

pub fn weight(v: &str) -> usize {
    v.bytes().filter(|&b| b == b'1').count()
}

fn flip(v: &str, k: usize) -> String {
    let mut b = v.as_bytes().to_vec();
    b[k] = if b[k] == b'0' { b'1' } else { b'0' };
    String::from_utf8(b).expect("ascii")
}

/// Source vertex, target vertex, and flipped index of an edge key.
pub fn edge_ends(key: &str) -> Option<(String, String, usize)> {
    let k = key.find('*')?;
    if key.matches('*').count() != 1 || key.bytes().any(|b| !matches!(b, b'0' | b'1' | b'*')) {
        return None;
    }
    Some((key.replacen('*', "0", 1), key.replacen('*', "1", 1), k))
}

fn edge_key(v: &str, k: usize) -> String {
    let mut b = v.as_bytes().to_vec();
    b[k] = b'*';
    String::from_utf8(b).expect("ascii")
}

fn find_root(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

impl StateCube {
    /// Builds and validates a cube.
    pub fn new(n: usize, vertices: BTreeMap<String, SortWord>, edges: BTreeMap<String, EdgeMove>) -> Result<Self> {
        let cube = StateCube { n, vertices, edges };
        cube.validate()?;
        Ok(cube)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex(&self, v: &str) -> &SortWord {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &BTreeMap<String, SortWord> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<String, EdgeMove> {
        &self.edges
    }

    pub fn edge(&self, v: &str, k: usize) -> &EdgeMove {
        &self.edges[&edge_key(v, k)]
    }

    fn validate(&self) -> Result<()> {
        if self.n > MAX_CROSSINGS {
            return Err(Error::Cube(format!("{} crossings exceeds the limit of {MAX_CROSSINGS}", self.n)));
        }
        let expected: BTreeSet<String> = bit_strings(self.n).collect();
        let got: BTreeSet<String> = self.vertices.keys().cloned().collect();
        if let Some(v) = expected.symmetric_difference(&got).next() {
            let what = if got.contains(v) { "unexpected" } else { "missing" };
            return Err(Error::Cube(format!("{what} vertex '{v}'")));
        }
        for key in self.edges.keys() {
            if key.len() != self.n || edge_ends(key).is_none() {
                return Err(Error::Cube(format!("malformed edge key '{key}'")));
            }
        }
        for v in &expected {
            for k in (0..self.n).filter(|&k| v.as_bytes()[k] == b'0') {
                let key = edge_key(v, k);
                let m = self.edges.get(&key).ok_or_else(|| Error::Cube(format!("missing edge '{key}'")))?;
                let at = |e: Error| {
                    let inner = match e {
                        Error::Cube(m) => m,
                        other => other.to_string(),
                    };
                    Error::Cube(format!("edge {key}: {inner}"))
                };
                let produced = m.apply(&self.vertices[v]).map_err(at)?;
                let target = &self.vertices[&flip(v, k)];
                if &produced != target {
                    return Err(at(Error::Cube(format!("move produces {produced} but the target vertex is {target}"))));
                }
            }
        }
        for v in &expected {
            let zeros: Vec<usize> = (0..self.n).filter(|&k| v.as_bytes()[k] == b'0').collect();
            for (a, &k) in zeros.iter().enumerate() {
                for &l in &zeros[a + 1..] {
                    if self.square_components(v, k, l, true) != self.square_components(v, k, l, false) {
                        return Err(Error::Cube(format!(
                            "square at {v} over crossings {} and {}: the two paths connect circles differently",
                            k + 1,
                            l + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Partition of source and target circles of the square into connected
    /// components along one path, as sorted lists of tagged circles.
    fn square_components(&self, v: &str, k: usize, l: usize, k_first: bool) -> BTreeSet<Vec<(u8, usize)>> {
        let (first, second) = if k_first { (k, l) } else { (l, k) };
        let mid = flip(v, first);
        let top = flip(&mid, second);
        let (n0, n1, n2) = (self.vertices[v].len(), self.vertices[&mid].len(), self.vertices[&top].len());
        let mut parent: Vec<usize> = (0..n0 + n1 + n2).collect();
        let mut union = |a: usize, b: usize| {
            let (ra, rb) = (find_root(&mut parent, a), find_root(&mut parent, b));
            parent[ra] = rb;
        };
        for (s, t) in self.edge(v, first).links(n0) {
            union(s, n0 + t);
        }
        for (s, t) in self.edge(&mid, second).links(n1) {
            union(n0 + s, n0 + n1 + t);
        }
        let mut groups: BTreeMap<usize, Vec<(u8, usize)>> = BTreeMap::new();
        for x in (0..n0).chain(n0 + n1..n0 + n1 + n2) {
            let tag = if x < n0 { (0, x) } else { (1, x - n0 - n1) };
            groups.entry(find_root(&mut parent, x)).or_default().push(tag);
        }
        groups.into_values().collect()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum MoveFile {
    Merge { i: usize, j: usize, out: usize, sort: String },
    Split { i: usize, out: [usize; 2], sorts: [String; 2] },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CubeFile {
    n: usize,
    vertices: BTreeMap<String, Vec<String>>,
    edges: BTreeMap<String, MoveFile>,
}

fn sort_of(s: &str) -> Result<Sort> {
    let mut cs = s.chars();
    match (cs.next().and_then(Sort::from_char), cs.next()) {
        (Some(x), None) => Ok(x),
        _ => Err(Error::Input(format!("expected sort A or E, got '{s}'"))),
    }
}

pub fn cube_from_json(text: &str) -> Result<StateCube> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: CubeFile =
        serde_path_to_error::deserialize(de).map_err(|e| Error::Input(format!("{}: {}", e.path(), e.inner())))?;
    let vertices = file
        .vertices
        .into_iter()
        .map(|(k, w)| Ok((k, SortWord(w.iter().map(|s| sort_of(s)).collect::<Result<_>>()?))))
        .collect::<Result<_>>()?;
    let edges = file
        .edges
        .into_iter()
        .map(|(k, m)| {
            let m = match m {
                MoveFile::Merge { i, j, out, sort } => EdgeMove::Merge { i, j, out, sort: sort_of(&sort)? },
                MoveFile::Split { i, out, sorts } => {
                    EdgeMove::Split { i, out, sorts: [sort_of(&sorts[0])?, sort_of(&sorts[1])?] }
                }
            };
            Ok((k, m))
        })
        .collect::<Result<_>>()?;
    StateCube::new(file.n, vertices, edges)
}

pub fn cube_to_json(cube: &StateCube) -> String {
    let s = |x: Sort| x.as_char().to_string();
    let file = CubeFile {
        n: cube.n,
        vertices: cube.vertices.iter().map(|(k, w)| (k.clone(), w.0.iter().map(|&x| s(x)).collect())).collect(),
        edges: cube
            .edges
            .iter()
            .map(|(k, m)| {
                let m = match *m {
                    EdgeMove::Merge { i, j, out, sort } => MoveFile::Merge { i, j, out, sort: s(sort) },
                    EdgeMove::Split { i, out, sorts } => MoveFile::Split { i, out, sorts: sorts.map(s) },
                };
                (k.clone(), m)
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn load_cube(path: &Path) -> Result<StateCube> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    cube_from_json(&text)
}

/// Specializes the base ring of `pair`; signatures are unchanged.
pub fn specialize_pair(
    pair: &FrobeniusPair,
    target: &RingRef,
    assignment: &BTreeMap<String, RingElem>,
) -> Result<FrobeniusPair> {
    pair.specialize(target, assignment)
}

/// The module of a vertex word.
pub fn vertex_rank(spec: &SpecRef, word: &SortWord) -> usize {
    spec.word_rank(word)
}
