use std::collections::BTreeSet;

use super::{Equation, Gen, Item, Provenance, Term};
use crate::error::{Error, Result};
use crate::tensor::{Sort, SortWord};

/// A parsed equation file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    pub version: u32,
    pub equations: Vec<Equation>,
}

/// Group given to equations written without one.
pub const DEFAULT_GROUP: &str = "user";

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Semi,
    Tensor,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if b[i..].starts_with(b"(x)") {
            out.push(Tok::Tensor);
            i += 3;
        } else if c == b'(' {
            out.push(Tok::LParen);
            i += 1;
        } else if c == b')' {
            out.push(Tok::RParen);
            i += 1;
        } else if c == b';' {
            out.push(Tok::Semi);
            i += 1;
        } else if c.is_ascii_alphanumeric() || c == b'_' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push(Tok::Ident(s[start..i].to_string()));
        } else {
            return Err(Error::Parse(format!("unexpected character '{}' at position {i}", c as char)));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug)]
enum Raw {
    Item(Item),
    BareSwap,
}

fn item_from_name(name: &str) -> Result<Raw> {
    if let Some(g) = Gen::from_name(name) {
        return Ok(Raw::Item(Item::Gen(g)));
    }
    if name == "swap" {
        return Ok(Raw::BareSwap);
    }
    let sorts = |rest: &str| -> Option<Vec<Sort>> { rest.chars().map(Sort::from_char).collect() };
    if let Some(rest) = name.strip_prefix("id_") {
        if let Some(s) = sorts(rest).filter(|s| s.len() == 1) {
            return Ok(Raw::Item(Item::Id(s[0])));
        }
    }
    if let Some(rest) = name.strip_prefix("swap_") {
        if let Some(s) = sorts(rest).filter(|s| s.len() == 2) {
            return Ok(Raw::Item(Item::Swap(s[0], s[1])));
        }
    }
    Err(Error::Parse(format!("unknown generator {name}")))
}

struct TermParser {
    toks: Vec<Tok>,
    pos: usize,
}

impl TermParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {t:?}, found {:?}", self.peek())))
        }
    }

    fn layers(&mut self) -> Result<Vec<Vec<Raw>>> {
        let mut out = vec![self.layer()?];
        while self.peek() == Some(&Tok::Semi) {
            self.pos += 1;
            out.push(self.layer()?);
        }
        Ok(out)
    }

    // layer := item ('(x)' item)* ; item := NAME | '(' layer ')'
    fn layer(&mut self) -> Result<Vec<Raw>> {
        let mut out = self.item()?;
        while self.peek() == Some(&Tok::Tensor) {
            self.pos += 1;
            out.extend(self.item()?);
        }
        Ok(out)
    }

    fn item(&mut self) -> Result<Vec<Raw>> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(vec![item_from_name(&name)?])
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.layer()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            other => Err(Error::Parse(format!("expected a generator, found {other:?}"))),
        }
    }
}

/// Replaces each bare `swap` by the crossing of the two strands it meets.
fn resolve(raw: Vec<Vec<Raw>>) -> Result<Term> {
    let mut layers: Vec<Vec<Item>> = Vec::with_capacity(raw.len());
    let mut below: Option<SortWord> = None;
    for (k, layer) in raw.into_iter().enumerate() {
        let mut offset = 0;
        let mut items = Vec::with_capacity(layer.len());
        for r in layer {
            let item = match r {
                Raw::Item(i) => i,
                Raw::BareSwap => {
                    let w = below.as_ref().ok_or_else(|| {
                        Error::Parse("bare swap in the first layer; write swap_XY".into())
                    })?;
                    match (w.0.get(offset), w.0.get(offset + 1)) {
                        (Some(&x), Some(&y)) => Item::Swap(x, y),
                        _ => {
                            return Err(Error::Type(format!(
                                "swap in layer {} has no two strands to cross",
                                k + 1
                            )))
                        }
                    }
                }
            };
            offset += item.domain().len();
            items.push(item);
        }
        let cod = SortWord(items.iter().flat_map(|i| i.codomain().0).collect());
        below = Some(cod);
        layers.push(items);
    }
    Term::new(layers)
}

pub fn parse_term(s: &str) -> Result<Term> {
    let mut p = TermParser { toks: tokenize(s)?, pos: 0 };
    let raw = p.layers()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in term '{}'", s.trim())));
    }
    resolve(raw)
}

fn parse_equation(line: &str) -> Result<Equation> {
    let rest = line.strip_prefix("eq").filter(|r| r.starts_with(char::is_whitespace));
    let rest = rest.ok_or_else(|| Error::Parse("expected 'eq'".into()))?.trim_start();
    let colon = rest.find(':').ok_or_else(|| Error::Parse("missing ':'".into()))?;
    let (head, body) = (&rest[..colon], &rest[colon + 1..]);
    let (name, attrs) = match head.find('[') {
        Some(open) => {
            let close = head.rfind(']').filter(|&c| c > open);
            let close = close.ok_or_else(|| Error::Parse("unclosed '['".into()))?;
            (head[..open].trim(), Some(&head[open + 1..close]))
        }
        None => (head.trim(), None),
    };
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(Error::Parse(format!("bad equation name '{name}'")));
    }
    let mut group = DEFAULT_GROUP.to_string();
    let mut provenance = Provenance::Stated;
    if let Some(attrs) = attrs {
        let parts: Vec<&str> = attrs.split(',').map(str::trim).collect();
        group = parts[0].to_string();
        if group.is_empty() {
            return Err(Error::Parse(format!("equation {name}: empty group")));
        }
        match parts.len() {
            1 => {}
            2 => {
                provenance = Provenance::from_str(parts[1]).ok_or_else(|| {
                    Error::Parse(format!("equation {name}: unknown provenance '{}'", parts[1]))
                })?
            }
            _ => return Err(Error::Parse(format!("equation {name}: too many attributes"))),
        }
    }
    let mut sides = body.split("==");
    let (lhs, rhs) = match (sides.next(), sides.next(), sides.next()) {
        (Some(l), Some(r), None) => (l, r),
        _ => return Err(Error::Parse(format!("equation {name}: expected exactly one '=='"))),
    };
    Equation::new(name, &group, provenance, parse_term(lhs)?, parse_term(rhs)?)
}

/// Parses an equation file. Each equation is typechecked.
pub fn parse_theory(text: &str) -> Result<Theory> {
    let mut version = None;
    let mut equations: Vec<Equation> = Vec::new();
    let mut names = BTreeSet::new();
    let mut pending_original: Option<String> = None;
    for (n, raw) in text.lines().enumerate() {
        let at = |e: Error| match e {
            Error::Parse(m) => Error::Parse(format!("line {}: {m}", n + 1)),
            Error::Type(m) => Error::Type(format!("line {}: {m}", n + 1)),
            other => other,
        };
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            if let Some(o) = c.trim().strip_prefix("original:") {
                pending_original = Some(o.trim().to_string());
            }
            continue;
        }
        if let Some(v) = line.strip_prefix("version") {
            if version.is_some() || !equations.is_empty() {
                return Err(at(Error::Parse("version must come first, once".into())));
            }
            let v: u32 = v.trim().parse().map_err(|_| at(Error::Parse("bad version".into())))?;
            if v != 1 {
                return Err(at(Error::Parse(format!("unsupported version {v}"))));
            }
            version = Some(v);
            continue;
        }
        let mut eq = parse_equation(line).map_err(at)?;
        if !names.insert(eq.name.clone()) {
            return Err(at(Error::Parse(format!("duplicate equation name {}", eq.name))));
        }
        eq.original = pending_original.take();
        equations.push(eq);
    }
    Ok(Theory { version: version.unwrap_or(1), equations })
}
