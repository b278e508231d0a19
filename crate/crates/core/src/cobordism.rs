//! Cobordism words: a row of labeled circles evolving through births,
//! deaths, saddles, Möbius bands, and crossings, evaluated through a pair.
//!
//! ```text
//! input A E
//! merge 1 E
//! split 1 A E
//! mobius 2 A
//! ```
//!
//! Positions are 1-based and refer to the row just before the event.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pair::{FrobeniusPair, Record, Status, VerifyReport, Witness};
use crate::tensor::{Equality, LinMap, Sort, SortWord};
use crate::theory::Gen;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    Birth(usize),
    Death(usize),
    Merge(usize, Sort),
    Split(usize, Sort, Sort),
    Mobius(usize, Sort),
    Swap(usize),
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::Birth(p) => write!(f, "birth {p}"),
            Event::Death(p) => write!(f, "death {p}"),
            Event::Merge(p, s) => write!(f, "merge {p} {s}"),
            Event::Split(p, s, t) => write!(f, "split {p} {s} {t}"),
            Event::Mobius(p, s) => write!(f, "mobius {p} {s}"),
            Event::Swap(p) => write!(f, "swap {p}"),
        }
    }
}

const MERGES: [Gen; 5] = [Gen::MuA, Gen::MuAE, Gen::MuEA, Gen::MuEEA, Gen::MuE];
const SPLITS: [Gen; 5] = [Gen::DeltaA, Gen::DeltaAE, Gen::DeltaEA, Gen::DeltaAEE, Gen::DeltaE];
const MOBIUS: [Gen; 3] = [Gen::NuAE, Gen::NuEA, Gen::NuEE];

fn find(table: &[Gen], dom: &[Sort], cod: &[Sort]) -> Result<Gen> {
    table
        .iter()
        .copied()
        .find(|g| g.domain().0 == dom && g.codomain().0 == cod)
        .ok_or_else(|| {
            Error::Type(format!("no generator for {}→{}", SortWord(dom.to_vec()), SortWord(cod.to_vec())))
        })
}

/// The piece of an event acting on its strands, and the strand count it
/// replaces.
enum Local {
    Gen(Gen),
    Swap(Sort, Sort),
}

impl Event {
    pub fn position(self) -> usize {
        match self {
            Event::Birth(p)
            | Event::Death(p)
            | Event::Merge(p, _)
            | Event::Split(p, ..)
            | Event::Mobius(p, _)
            | Event::Swap(p) => p,
        }
    }

    /// Checks the event against `row`; returns the local piece, the index of
    /// its first strand, and how many strands it consumes.
    fn resolve(self, row: &SortWord) -> Result<(Local, usize, usize)> {
        let p = self.position();
        let n = row.len();
        // a birth consumes nothing, so p = n + 1 appends
        let consumed = match self {
            Event::Birth(_) => 0,
            Event::Death(_) | Event::Mobius(..) | Event::Split(..) => 1,
            Event::Merge(..) | Event::Swap(_) => 2,
        };
        if p == 0 || p - 1 + consumed > n {
            return Err(Error::Shape(format!("{self}: position out of range for row {row}")));
        }
        let at = &row.0[p - 1..p - 1 + consumed];
        let local = match self {
            Event::Birth(_) => Local::Gen(Gen::Eta),
            Event::Death(_) => {
                if at[0] != Sort::A {
                    return Err(Error::Type(format!("{self}: only A circles die")));
                }
                Local::Gen(Gen::Eps)
            }
            Event::Merge(_, s) => Local::Gen(find(&MERGES, at, &[s])?),
            Event::Split(_, s, t) => Local::Gen(find(&SPLITS, at, &[s, t])?),
            Event::Mobius(_, s) => Local::Gen(find(&MOBIUS, at, &[s])?),
            Event::Swap(_) => Local::Swap(at[0], at[1]),
        };
        Ok((local, p - 1, consumed))
    }

    fn apply(self, row: &SortWord) -> Result<SortWord> {
        let (local, start, consumed) = self.resolve(row)?;
        let produced = match local {
            Local::Gen(g) => g.codomain().0,
            Local::Swap(x, y) => vec![y, x],
        };
        let mut out = row.0[..start].to_vec();
        out.extend(produced);
        out.extend_from_slice(&row.0[start + consumed..]);
        Ok(SortWord(out))
    }
}

/// A validated word; `rows[k]` is the row before event `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobordismWord {
    rows: Vec<SortWord>,
    events: Vec<Event>,
}

impl CobordismWord {
    pub fn new(input: SortWord, events: Vec<Event>) -> Result<Self> {
        let mut rows = vec![input];
        for e in &events {
            let next = e.apply(rows.last().unwrap())?;
            rows.push(next);
        }
        Ok(CobordismWord { rows, events })
    }

    pub fn input(&self) -> &SortWord {
        &self.rows[0]
    }

    pub fn output(&self) -> &SortWord {
        self.rows.last().unwrap()
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    /// Intermediate rows, input first and output last.
    pub fn rows(&self) -> &[SortWord] {
        &self.rows
    }

    pub fn then(&self, next: &CobordismWord) -> Result<Self> {
        if next.input() != self.output() {
            return Err(Error::Shape(format!(
                "cannot glue output {} to input {}",
                self.output(),
                next.input()
            )));
        }
        let mut events = self.events.clone();
        events.extend_from_slice(&next.events);
        CobordismWord::new(self.input().clone(), events)
    }

    pub fn evaluate(&self, pair: &FrobeniusPair) -> Result<LinMap> {
        let spec = pair.spec();
        let mut acc = LinMap::identity(spec, self.input().clone());
        for (row, e) in self.rows.iter().zip(&self.events) {
            let (local, start, consumed) = e.resolve(row)?;
            let piece = match local {
                Local::Gen(g) => pair
                    .get(g)
                    .ok_or_else(|| Error::MissingGenerator(g.name().into()))?
                    .clone(),
                Local::Swap(x, y) => LinMap::transposition(spec, &SortWord(vec![x, y]), 1)?,
            };
            let left = LinMap::identity(spec, SortWord(row.0[..start].to_vec()));
            let right = LinMap::identity(spec, SortWord(row.0[start + consumed..].to_vec()));
            let layer = left.tensor(&piece)?.tensor(&right)?;
            acc = layer.compose(&acc)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for CobordismWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "input")?;
        for s in &self.input().0 {
            write!(f, " {s}")?;
        }
        for e in &self.events {
            write!(f, "\n{e}")?;
        }
        Ok(())
    }
}

fn parse_sort(tok: &str) -> Result<Sort> {
    match tok {
        "A" => Ok(Sort::A),
        "E" => Ok(Sort::E),
        _ => Err(Error::Parse(format!("expected sort A or E, got '{tok}'"))),
    }
}

fn parse_event(line: &str) -> Result<Event> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    let pos = |k: usize| -> Result<usize> {
        toks.get(k)
            .ok_or_else(|| Error::Parse(format!("'{line}': missing position")))?
            .parse()
            .map_err(|_| Error::Parse(format!("'{line}': bad position")))
    };
    let sort = |k: usize| -> Result<Sort> {
        parse_sort(toks.get(k).ok_or_else(|| Error::Parse(format!("'{line}': missing sort")))?)
    };
    let (event, arity) = match toks[0] {
        "birth" => (Event::Birth(pos(1)?), 2),
        "death" => (Event::Death(pos(1)?), 2),
        "merge" => (Event::Merge(pos(1)?, sort(2)?), 3),
        "split" => (Event::Split(pos(1)?, sort(2)?, sort(3)?), 4),
        "mobius" => (Event::Mobius(pos(1)?, sort(2)?), 3),
        "swap" => (Event::Swap(pos(1)?), 2),
        other => return Err(Error::Parse(format!("unknown event '{other}'"))),
    };
    if toks.len() != arity {
        return Err(Error::Parse(format!("'{line}': expected {} fields", arity)));
    }
    Ok(event)
}

/// Parses the text format; `#` starts a comment.
pub fn parse_cobordism(text: &str) -> Result<CobordismWord> {
    let mut input = None;
    let mut events = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let at = |e: Error| match e {
            Error::Parse(m) => Error::Parse(format!("line {}: {m}", n + 1)),
            other => other,
        };
        if let Some(rest) = line.strip_prefix("input") {
            if input.is_some() || !events.is_empty() {
                return Err(at(Error::Parse("'input' must come first, once".into())));
            }
            let sorts = rest.split_whitespace().map(parse_sort).collect::<Result<Vec<_>>>().map_err(at)?;
            input = Some(SortWord(sorts));
            continue;
        }
        if input.is_none() {
            return Err(at(Error::Parse("word must start with 'input'".into())));
        }
        events.push(parse_event(line).map_err(at)?);
    }
    let input = input.ok_or_else(|| Error::Parse("missing 'input' line".into()))?;
    CobordismWord::new(input, events)
}

/// An event without its output sorts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Merge(usize),
    Split(usize),
    Mobius(usize),
}

/// Two orderings of a pair of critical points on `circles` input circles.
#[derive(Clone, Debug)]
pub struct Diamond {
    pub name: &'static str,
    pub circles: usize,
    pub left: Vec<Shape>,
    pub right: Vec<Shape>,
}

/// The critical-point exchanges checked by [`diamond_suite`].
pub fn diamonds() -> Vec<Diamond> {
    use Shape::*;
    let d = |name, circles, left: &[Shape], right: &[Shape]| Diamond {
        name,
        circles,
        left: left.to_vec(),
        right: right.to_vec(),
    };
    vec![
        d("split-merge", 1, &[Split(1), Merge(1)], &[Split(1), Merge(1)]),
        d("merge-split", 2, &[Merge(1), Split(1)], &[Merge(1), Split(1)]),
        d("frobenius-left", 2, &[Merge(1), Split(1)], &[Split(2), Merge(1)]),
        d("frobenius-right", 2, &[Merge(1), Split(1)], &[Split(1), Merge(2)]),
        d("associativity", 3, &[Merge(1), Merge(1)], &[Merge(2), Merge(1)]),
        d("coassociativity", 1, &[Split(1), Split(1)], &[Split(1), Split(2)]),
        d("mobius-pair", 1, &[Mobius(1), Mobius(1)], &[Split(1), Merge(1)]),
        d("mobius-merge-first", 2, &[Mobius(1), Merge(1)], &[Merge(1), Mobius(1)]),
        d("mobius-merge-second", 2, &[Mobius(2), Merge(1)], &[Merge(1), Mobius(1)]),
        d("split-mobius-first", 1, &[Split(1), Mobius(1)], &[Mobius(1), Split(1)]),
        d("split-mobius-second", 1, &[Split(1), Mobius(2)], &[Mobius(1), Split(1)]),
        d("distant-merges", 4, &[Merge(1), Merge(2)], &[Merge(3), Merge(1)]),
        d("distant-split-merge", 3, &[Split(1), Merge(3)], &[Merge(2), Split(1)]),
    ]
}

const SORTS: [Sort; 2] = [Sort::A, Sort::E];

/// Every sort assignment of the shapes that is legal from `input`.
pub fn labelings(input: &SortWord, shapes: &[Shape]) -> Vec<CobordismWord> {
    let mut partial: Vec<Vec<Event>> = vec![vec![]];
    for shape in shapes {
        let candidates: Vec<Event> = match *shape {
            Shape::Merge(p) => SORTS.iter().map(|&s| Event::Merge(p, s)).collect(),
            Shape::Mobius(p) => SORTS.iter().map(|&s| Event::Mobius(p, s)).collect(),
            Shape::Split(p) => SORTS
                .iter()
                .flat_map(|&s| SORTS.iter().map(move |&t| Event::Split(p, s, t)))
                .collect(),
        };
        partial = partial
            .into_iter()
            .flat_map(|evs| {
                candidates.iter().filter_map(move |c| {
                    let mut next = evs.clone();
                    next.push(*c);
                    CobordismWord::new(input.clone(), next.clone()).ok().map(|_| next)
                })
            })
            .collect();
    }
    partial
        .into_iter()
        .map(|evs| CobordismWord::new(input.clone(), evs).expect("filtered legal"))
        .collect()
}

fn all_words(n: usize) -> Vec<SortWord> {
    (0..1u32 << n)
        .map(|bits| SortWord((0..n).map(|i| if bits >> (n - 1 - i) & 1 == 1 { Sort::E } else { Sort::A }).collect()))
        .collect()
}

fn describe(w: &CobordismWord) -> String {
    w.events().iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
}

fn check_diamond(pair: &FrobeniusPair, d: &Diamond) -> Vec<Record> {
    let mut out = Vec::new();
    for input in all_words(d.circles) {
        let left = labelings(&input, &d.left);
        let right = labelings(&input, &d.right);
        let mut outputs: Vec<SortWord> = left.iter().chain(&right).map(|w| w.output().clone()).collect();
        outputs.sort();
        outputs.dedup();
        for output in outputs {
            let pick = |ws: &[CobordismWord]| -> Vec<(CobordismWord, LinMap)> {
                ws.iter()
                    .filter(|w| w.output() == &output)
                    .filter_map(|w| w.evaluate(pair).ok().map(|m| (w.clone(), m)))
                    .collect()
            };
            let l = pick(&left);
            let r = pick(&right);
            let mut rec = Record {
                name: format!("{}[{}->{}]", d.name, input, output),
                group: d.name.into(),
                provenance: "diamond".into(),
                status: Status::Skip,
                witness: None,
                missing: Vec::new(),
            };
            if l.is_empty() || r.is_empty() {
                out.push(rec);
                continue;
            }
            rec.status = Status::Pass;
            let (base_w, base_m) = &l[0];
            for (w, m) in l.iter().chain(&r).skip(1) {
                if let Equality::Differ { input: t, lhs, rhs } = base_m.equal(m) {
                    rec.status = Status::Fail;
                    rec.witness = Some(Witness {
                        input: pair.spec().tuple_label(&input, &t),
                        lhs: format!("{} ({})", lhs, describe(base_w)),
                        rhs: format!("{} ({})", rhs, describe(w)),
                    });
                    break;
                }
            }
            out.push(rec);
        }
    }
    out
}

/// Evaluates both orderings of every diamond under every labeling. All
/// legal labelings with the same boundary must give the same map; a
/// boundary reachable along only one ordering is skipped.
pub fn diamond_suite(pair: &FrobeniusPair) -> VerifyReport {
    let cases = diamonds();
    let records: Vec<Record> = cases.par_iter().flat_map(|d| check_diamond(pair, d)).collect();
    let mut summary = std::collections::BTreeMap::new();
    for r in &records {
        let s: &mut crate::pair::verify::GroupSummary = summary.entry(r.group.clone()).or_default();
        s.scored = true;
        match r.status {
            Status::Pass => s.pass += 1,
            Status::Fail => s.fail += 1,
            Status::Skip => s.skip += 1,
        }
    }
    VerifyReport { pair: pair.name().into(), records, summary }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair::builders::build_universal;
    use crate::ring::RingElem;

    #[test]
    fn parse_examples() {
        let w = parse_cobordism("input A\ndeath 1").unwrap();
        assert!(w.output().is_empty());
        assert!(parse_cobordism("input E E\nmerge 1 E").is_ok());
        assert!(parse_cobordism("input E E\nmerge 1 A").is_ok());
        let err = parse_cobordism("input A A\nmerge 1 E").unwrap_err();
        assert!(err.to_string().contains("no generator for AA→E"), "{err}");
        assert!(parse_cobordism("input A\nmerge 1 A").is_err());
        assert!(parse_cobordism("input A\nbirth 3").is_err());
        assert!(parse_cobordism("input\nmerge 1 A").is_err());
        assert!(parse_cobordism("input\nswap 1").is_err());
        assert!(parse_cobordism("input A\nbirth 2").is_ok());
    }

    #[test]
    fn closed_surfaces_over_universal_algebra() {
        let u = build_universal().unwrap();
        let cyl = parse_cobordism("input A").unwrap().evaluate(&u).unwrap();
        assert_eq!(cyl, LinMap::identity(u.spec(), SortWord::parse("A").unwrap()));
        let sphere = parse_cobordism("input\nbirth 1\ndeath 1").unwrap().evaluate(&u).unwrap();
        assert!(sphere.is_zero());
        let torus = parse_cobordism("input\nbirth 1\nsplit 1 A A\nmerge 1 A\ndeath 1").unwrap();
        let v = torus.evaluate(&u).unwrap().entry(&[], &[]);
        assert_eq!(v, RingElem::from_int(u.ring(), 2));
    }

    #[test]
    fn thirteen_cases() {
        assert_eq!(diamonds().len(), 13);
    }
}
