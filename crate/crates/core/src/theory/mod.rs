//! String-diagram terms over the fixed generator signature.
//!
//! A term is a list of layers read bottom to top; each layer is a
//! horizontal tensor of items. Text form joins layers with ` ; ` and items
//! with ` (x) `.

pub mod manifest;
mod parse;

use std::fmt;

use crate::error::{Error, Result};
use crate::tensor::{LinMap, Sort, SortWord, SpecRef};

pub use parse::{parse_term, parse_theory, Theory, DEFAULT_GROUP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    MuA,
    Eta,
    Eps,
    DeltaA,
    Beta,
    Gamma,
    MuAE,
    MuEA,
    DeltaAE,
    DeltaEA,
    MuE,
    DeltaE,
    MuEEA,
    DeltaAEE,
    NuAE,
    NuEA,
    NuEE,
}

use Gen::*;

impl Gen {
    pub const ALL: [Gen; 17] = [
        MuA, Eta, Eps, DeltaA, Beta, Gamma, MuAE, MuEA, DeltaAE, DeltaEA, MuE, DeltaE, MuEEA,
        DeltaAEE, NuAE, NuEA, NuEE,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MuA => "mu_A",
            Eta => "eta",
            Eps => "eps",
            DeltaA => "Delta_A",
            Beta => "beta",
            Gamma => "gamma",
            MuAE => "mu_AE",
            MuEA => "mu_EA",
            DeltaAE => "Delta_AE",
            DeltaEA => "Delta_EA",
            MuE => "mu_E",
            DeltaE => "Delta_E",
            MuEEA => "mu_EEA",
            DeltaAEE => "Delta_AEE",
            NuAE => "nu_AE",
            NuEA => "nu_EA",
            NuEE => "nu_EE",
        }
    }

    pub fn from_name(s: &str) -> Option<Gen> {
        Gen::ALL.into_iter().find(|g| g.name() == s)
    }

    fn words(self) -> (&'static str, &'static str) {
        match self {
            MuA => ("AA", "A"),
            Eta => ("", "A"),
            Eps => ("A", ""),
            DeltaA => ("A", "AA"),
            Beta => ("AA", ""),
            Gamma => ("", "AA"),
            MuAE => ("AE", "E"),
            MuEA => ("EA", "E"),
            DeltaAE => ("E", "AE"),
            DeltaEA => ("E", "EA"),
            MuE => ("EE", "E"),
            DeltaE => ("E", "EE"),
            MuEEA => ("EE", "A"),
            DeltaAEE => ("A", "EE"),
            NuAE => ("A", "E"),
            NuEA => ("E", "A"),
            NuEE => ("E", "E"),
        }
    }

    pub fn domain(self) -> SortWord {
        SortWord::parse(self.words().0).expect("static word")
    }

    pub fn codomain(self) -> SortWord {
        SortWord::parse(self.words().1).expect("static word")
    }

    /// Partner under turning diagrams upside down.
    pub fn dagger(self) -> Gen {
        match self {
            MuA => DeltaA,
            DeltaA => MuA,
            Eta => Eps,
            Eps => Eta,
            Beta => Gamma,
            Gamma => Beta,
            MuAE => DeltaAE,
            DeltaAE => MuAE,
            MuEA => DeltaEA,
            DeltaEA => MuEA,
            MuE => DeltaE,
            DeltaE => MuE,
            MuEEA => DeltaAEE,
            DeltaAEE => MuEEA,
            NuAE => NuEA,
            NuEA => NuAE,
            NuEE => NuEE,
        }
    }

    /// Partner under left-right reflection.
    pub fn mirror(self) -> Gen {
        match self {
            MuAE => MuEA,
            MuEA => MuAE,
            DeltaAE => DeltaEA,
            DeltaEA => DeltaAE,
            g => g,
        }
    }

    /// Generators that are derived from the others rather than stored.
    pub fn is_derived(self) -> bool {
        matches!(self, Beta | Gamma)
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Item {
    Gen(Gen),
    Id(Sort),
    /// Crossing from `XY` to `YX`.
    Swap(Sort, Sort),
}

impl Item {
    pub fn domain(self) -> SortWord {
        match self {
            Item::Gen(g) => g.domain(),
            Item::Id(s) => SortWord(vec![s]),
            Item::Swap(x, y) => SortWord(vec![x, y]),
        }
    }

    pub fn codomain(self) -> SortWord {
        match self {
            Item::Gen(g) => g.codomain(),
            Item::Id(s) => SortWord(vec![s]),
            Item::Swap(x, y) => SortWord(vec![y, x]),
        }
    }

    fn dagger(self) -> Item {
        match self {
            Item::Gen(g) => Item::Gen(g.dagger()),
            Item::Id(s) => Item::Id(s),
            Item::Swap(x, y) => Item::Swap(y, x),
        }
    }

    fn mirror(self) -> Item {
        match self {
            Item::Gen(g) => Item::Gen(g.mirror()),
            Item::Id(s) => Item::Id(s),
            Item::Swap(x, y) => Item::Swap(y, x),
        }
    }

    pub fn generator(self) -> Option<Gen> {
        match self {
            Item::Gen(g) => Some(g),
            _ => None,
        }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Gen(g) => write!(f, "{g}"),
            Item::Id(s) => write!(f, "id_{s}"),
            Item::Swap(x, y) => write!(f, "swap_{x}{y}"),
        }
    }
}

/// Layers bottom to top; never empty, and no layer is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    layers: Vec<Vec<Item>>,
}

impl Term {
    pub fn new(layers: Vec<Vec<Item>>) -> Result<Term> {
        if layers.is_empty() || layers.iter().any(|l| l.is_empty()) {
            return Err(Error::Parse("empty term or layer".into()));
        }
        Ok(Term { layers })
    }

    pub fn gen(g: Gen) -> Term {
        Term { layers: vec![vec![Item::Gen(g)]] }
    }

    pub fn layers(&self) -> &[Vec<Item>] {
        &self.layers
    }

    /// Diagram order: `self` first, then `next` on top.
    pub fn then(&self, next: &Term) -> Term {
        let mut layers = self.layers.clone();
        layers.extend(next.layers.iter().cloned());
        Term { layers }
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> + '_ {
        self.layers.iter().flatten().filter_map(|i| i.generator())
    }

    pub fn dagger(&self) -> Term {
        Term {
            layers: self
                .layers
                .iter()
                .rev()
                .map(|l| l.iter().map(|i| i.dagger()).collect())
                .collect(),
        }
    }

    pub fn mirror(&self) -> Term {
        Term {
            layers: self
                .layers
                .iter()
                .map(|l| l.iter().rev().map(|i| i.mirror()).collect())
                .collect(),
        }
    }

    pub fn typecheck(&self) -> Result<(SortWord, SortWord)> {
        let layer_words = |l: &[Item]| {
            let dom = SortWord(l.iter().flat_map(|i| i.domain().0).collect());
            let cod = SortWord(l.iter().flat_map(|i| i.codomain().0).collect());
            (dom, cod)
        };
        let (domain, mut current) = layer_words(&self.layers[0]);
        for (k, l) in self.layers.iter().enumerate().skip(1) {
            let (d, c) = layer_words(l);
            if d != current {
                return Err(Error::Type(format!(
                    "layer {} expects {d} but layer {k} produces {current}",
                    k + 1
                )));
            }
            current = c;
        }
        Ok((domain, current))
    }

    /// Folds the layers into a map; `lookup` supplies each generator.
    pub fn evaluate<'a>(
        &self,
        spec: &SpecRef,
        lookup: impl Fn(Gen) -> Option<&'a LinMap>,
    ) -> Result<LinMap> {
        self.typecheck()?;
        let mut acc: Option<LinMap> = None;
        for layer in &self.layers {
            let mut m: Option<LinMap> = None;
            for item in layer {
                let f = match *item {
                    Item::Gen(g) => lookup(g)
                        .ok_or_else(|| Error::MissingGenerator(g.name().into()))?
                        .clone(),
                    Item::Id(s) => LinMap::identity(spec, SortWord(vec![s])),
                    Item::Swap(x, y) => LinMap::transposition(spec, &SortWord(vec![x, y]), 1)?,
                };
                m = Some(match m {
                    None => f,
                    Some(m) => m.tensor(&f)?,
                });
            }
            let m = m.expect("layers are nonempty");
            acc = Some(match acc {
                None => m,
                Some(prev) => m.compose(&prev)?,
            });
        }
        Ok(acc.expect("terms are nonempty"))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let layers: Vec<String> = self
            .layers
            .iter()
            .map(|l| {
                let items: Vec<String> = l.iter().map(|i| i.to_string()).collect();
                if items.len() == 1 {
                    items[0].clone()
                } else {
                    format!("({})", items.join(" (x) "))
                }
            })
            .collect();
        f.write_str(&layers.join(" ; "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Stated,
    Corrected,
    Generated,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Stated => "stated",
            Provenance::Corrected => "corrected",
            Provenance::Generated => "generated",
        }
    }

    pub fn from_str(s: &str) -> Option<Provenance> {
        match s {
            "stated" => Some(Provenance::Stated),
            "corrected" => Some(Provenance::Corrected),
            "generated" => Some(Provenance::Generated),
            _ => None,
        }
    }
}

/// Groups excluded from pass/fail scoring.
pub const UNSCORED_GROUPS: [&str; 1] = ["quarantine"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub group: String,
    pub provenance: Provenance,
    pub lhs: Term,
    pub rhs: Term,
    /// Free-text note carried from `# original:` lines.
    pub original: Option<String>,
}

impl Equation {
    /// Typechecks both sides and requires identical words.
    pub fn new(
        name: &str,
        group: &str,
        provenance: Provenance,
        lhs: Term,
        rhs: Term,
    ) -> Result<Equation> {
        let l = lhs.typecheck()?;
        let r = rhs.typecheck()?;
        if l != r {
            return Err(Error::Type(format!(
                "equation {name}: lhs is {}→{} but rhs is {}→{}",
                l.0, l.1, r.0, r.1
            )));
        }
        Ok(Equation {
            name: name.into(),
            group: group.into(),
            provenance,
            lhs,
            rhs,
            original: None,
        })
    }

    pub fn words(&self) -> (SortWord, SortWord) {
        self.lhs.typecheck().expect("equations are typechecked on construction")
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> + '_ {
        self.lhs.generators().chain(self.rhs.generators())
    }

    pub fn is_scored(&self) -> bool {
        !UNSCORED_GROUPS.contains(&self.group.as_str())
    }

    /// Same equation up to exchanging sides.
    pub fn same_as(&self, other: &Equation) -> bool {
        (self.lhs == other.lhs && self.rhs == other.rhs)
            || (self.lhs == other.rhs && self.rhs == other.lhs)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(o) = &self.original {
            writeln!(f, "# original: {o}")?;
        }
        write!(f, "eq {} [{}", self.name, self.group)?;
        if self.provenance != Provenance::Stated {
            write!(f, ", {}", self.provenance.as_str())?;
        }
        write!(f, "]: {} == {}", self.lhs, self.rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dagger_and_mirror_are_involutions_on_generators() {
        for g in Gen::ALL {
            assert_eq!(g.dagger().dagger(), g);
            assert_eq!(g.mirror().mirror(), g);
            assert_eq!(g.dagger().domain(), g.codomain());
            assert_eq!(g.mirror().domain().0.iter().rev().copied().collect::<Vec<_>>(), g.domain().0);
            assert_eq!(Gen::from_name(g.name()), Some(g));
        }
    }

    #[test]
    fn typecheck_examples() {
        let t = parse_term("nu_AE").unwrap();
        assert_eq!(t.typecheck().unwrap(), (SortWord::parse("A").unwrap(), SortWord::parse("E").unwrap()));
        let t = parse_term("eta ; Delta_AEE").unwrap();
        assert_eq!(t.typecheck().unwrap(), (SortWord::empty(), SortWord::parse("EE").unwrap()));
        let err = parse_term("mu_E ; eps").unwrap().typecheck().unwrap_err();
        assert!(matches!(err, Error::Type(_)), "{err}");
    }

    #[test]
    fn mirror_example() {
        let t = parse_term("(Delta_A (x) id_E) ; (id_A (x) mu_AE)").unwrap();
        assert_eq!(t.mirror().to_string(), "(id_E (x) Delta_A) ; (mu_EA (x) id_A)");
        assert_eq!(parse_term("mu_A").unwrap().dagger().to_string(), "Delta_A");
    }
}
