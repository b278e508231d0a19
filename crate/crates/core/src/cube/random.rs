//! Random cubes assembled side by side from single saddles, idle circles,
//! and the squares of the diamond table.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{bit_strings, EdgeMove, StateCube};
use crate::cobordism::{diamonds, labelings, Event, Shape};
use crate::tensor::{Sort, SortWord};

struct Block {
    n: usize,
    words: BTreeMap<String, SortWord>,
    moves: BTreeMap<String, EdgeMove>,
}

fn to_move(e: &Event) -> EdgeMove {
    match *e {
        Event::Merge(p, sort) => EdgeMove::Merge { i: p, j: p + 1, out: p, sort },
        Event::Split(p, s, t) => EdgeMove::Split { i: p, out: [p, p + 1], sorts: [s, t] },
        other => unreachable!("cube edges are saddles, got {other}"),
    }
}

fn random_word<R: Rng>(rng: &mut R, n: usize) -> SortWord {
    SortWord((0..n).map(|_| if rng.gen_bool(0.5) { Sort::E } else { Sort::A }).collect())
}

fn idle<R: Rng>(rng: &mut R) -> Block {
    let w = random_word(rng, 1);
    Block { n: 0, words: [(String::new(), w)].into(), moves: BTreeMap::new() }
}

fn single<R: Rng>(rng: &mut R) -> Block {
    let (circles, shape) = if rng.gen_bool(0.5) { (2, Shape::Merge(1)) } else { (1, Shape::Split(1)) };
    let input = random_word(rng, circles);
    let options = labelings(&input, &[shape]);
    let w = options.choose(rng).expect("every input admits a saddle");
    Block {
        n: 1,
        words: [("0".to_string(), input), ("1".to_string(), w.output().clone())].into(),
        moves: [("*".to_string(), to_move(&w.events()[0]))].into(),
    }
}

fn square<R: Rng>(rng: &mut R) -> Block {
    let table: Vec<_> = diamonds()
        .into_iter()
        .filter(|d| d.left.iter().chain(&d.right).all(|s| !matches!(s, Shape::Mobius(_))))
        .collect();
    loop {
        let d = table.choose(rng).expect("nonempty table");
        let input = random_word(rng, d.circles);
        let left = labelings(&input, &d.left);
        let Some(l) = left.choose(rng) else { continue };
        let right: Vec<_> = labelings(&input, &d.right).into_iter().filter(|r| r.output() == l.output()).collect();
        let Some(r) = right.choose(rng) else { continue };
        return Block {
            n: 2,
            words: [
                ("00".to_string(), input.clone()),
                ("10".to_string(), l.rows()[1].clone()),
                ("01".to_string(), r.rows()[1].clone()),
                ("11".to_string(), l.output().clone()),
            ]
            .into(),
            moves: [
                ("*0".to_string(), to_move(&l.events()[0])),
                ("1*".to_string(), to_move(&l.events()[1])),
                ("0*".to_string(), to_move(&r.events()[0])),
                ("*1".to_string(), to_move(&r.events()[1])),
            ]
            .into(),
        };
    }
}

fn shift(m: EdgeMove, by: usize) -> EdgeMove {
    match m {
        EdgeMove::Merge { i, j, out, sort } => EdgeMove::Merge { i: i + by, j: j + by, out: out + by, sort },
        EdgeMove::Split { i, out, sorts } => EdgeMove::Split { i: i + by, out: out.map(|p| p + by), sorts },
    }
}

fn widest(b: &Block) -> usize {
    b.words.values().map(|w| w.len()).max().unwrap_or(0)
}

/// A valid cube with at most `max_crossings` crossings and at most
/// `max_circles` circles at any vertex; `max_circles` must be positive.
pub fn random_cube<R: Rng>(rng: &mut R, max_crossings: usize, max_circles: usize) -> StateCube {
    assert!(max_circles > 0, "a cube needs room for one circle");
    let mut blocks = Vec::new();
    let (mut n, mut width) = (0, 0);
    let pieces = rng.gen_range(1..=3);
    for _ in 0..pieces {
        let room = max_crossings - n;
        let b = match rng.gen_range(0..3) {
            1 if room >= 1 => single(rng),
            2 if room >= 2 => square(rng),
            _ => idle(rng),
        };
        if width + widest(&b) > max_circles {
            continue;
        }
        n += b.n;
        width += widest(&b);
        blocks.push(b);
    }
    if blocks.is_empty() {
        blocks.push(idle(rng));
    }
    let mut vertices = BTreeMap::new();
    let mut edges = BTreeMap::new();
    for v in bit_strings(n) {
        let mut word = Vec::new();
        let mut bit = 0;
        for b in &blocks {
            let local = &v[bit..bit + b.n];
            for k in (0..b.n).filter(|&k| local.as_bytes()[k] == b'0') {
                let mut key = local.to_string();
                key.replace_range(k..k + 1, "*");
                let mut global = v.clone();
                global.replace_range(bit + k..bit + k + 1, "*");
                edges.insert(global, shift(b.moves[&key], word.len()));
            }
            word.extend_from_slice(&b.words[local].0);
            bit += b.n;
        }
        vertices.insert(v, SortWord(word));
    }
    StateCube::new(n, vertices, edges).expect("assembled cubes are valid")
}
