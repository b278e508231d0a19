//! Pole degree of circles on a Möbius-band surface.
//!
//! A circle is recorded as the cyclic word of sides (`+` left, `-` right)
//! on which it crosses the pole. Adjacent equal letters cancel, including
//! across the seam; the degree is half the reduced length.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn from_char(c: char) -> Option<Side> {
        match c {
            '+' | 'L' => Some(Side::Left),
            '-' | 'R' => Some(Side::Right),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Side::Left => '+',
            Side::Right => '-',
        }
    }
}

/// Parses `+-+-`; `L`/`R` are accepted as synonyms. The empty word is `0` or
/// the empty string.
pub fn parse_sides(text: &str) -> Result<Vec<Side>> {
    let text = text.trim();
    if text == "0" {
        return Ok(Vec::new());
    }
    text.chars()
        .map(|c| Side::from_char(c).ok_or_else(|| Error::Parse(format!("bad pole side '{c}'; use + or -"))))
        .collect()
}

pub fn format_sides(sides: &[Side]) -> String {
    if sides.is_empty() {
        return "0".into();
    }
    sides.iter().map(|s| s.as_char()).collect()
}

/// Cyclically reduced form; alternating, of even length.
pub fn reduce(sides: &[Side]) -> Result<Vec<Side>> {
    if sides.len() % 2 == 1 {
        return Err(Error::Input(format!("pole count must be even, got {}", sides.len())));
    }
    let mut stack: Vec<Side> = Vec::with_capacity(sides.len());
    for &s in sides {
        if stack.last() == Some(&s) {
            stack.pop();
        } else {
            stack.push(s);
        }
    }
    let (mut lo, mut hi) = (0, stack.len());
    while hi - lo >= 2 && stack[lo] == stack[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    Ok(stack[lo..hi].to_vec())
}

pub fn pole_degree(sides: &[Side]) -> Result<usize> {
    Ok(reduce(sides)?.len() / 2)
}

pub fn total_degree(components: &[Vec<Side>]) -> Result<usize> {
    components.iter().map(|c| pole_degree(c)).sum()
}

/// A collection is essential when its total degree is positive.
pub fn is_essential(components: &[Vec<Side>]) -> Result<bool> {
    Ok(total_degree(components)? > 0)
}

/// Per-component degrees with the total and the classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub degrees: Vec<usize>,
    pub total: usize,
    pub essential: bool,
}

pub fn degree_report(components: &[Vec<Side>]) -> Result<DegreeReport> {
    let degrees = components.iter().map(|c| pole_degree(c)).collect::<Result<Vec<_>>>()?;
    let total = degrees.iter().sum();
    Ok(DegreeReport { degrees, total, essential: total > 0 })
}

impl fmt::Display for DegreeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.degrees {
            write!(f, "{d} ")?;
        }
        write!(f, "total={} {}", self.total, if self.essential { "essential" } else { "inessential" })
    }
}
