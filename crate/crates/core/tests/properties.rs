use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use frobpair::cobordism::{CobordismWord, Event};
use frobpair::cube::linalg::{rank_rational, Matrix};
use frobpair::cube::{check_d_squared, differential, random_cube, smith_normal_form, SignRule};
use frobpair::pair::builders::{build_aps, build_laurent_sqrt, build_tt};
use frobpair::pair::FrobeniusPair;
use frobpair::pole::{pole_degree, Side};
use frobpair::ring::{Domain, Ring, RingElem, RingRef, VarDecl};
use frobpair::tensor::{LinMap, Sort, SortWord, SpecRef, Vector};
use frobpair::theory::manifest::equations;

fn word(rng: &mut ChaCha8Rng, max: usize) -> SortWord {
    let n = rng.gen_range(0..=max);
    SortWord((0..n).map(|_| if rng.gen_bool(0.5) { Sort::A } else { Sort::E }).collect())
}

fn random_map(rng: &mut ChaCha8Rng, spec: &SpecRef, dom: SortWord, cod: SortWord) -> LinMap {
    let targets = spec.basis_tuples(&cod);
    let ring = spec.ring().clone();
    LinMap::from_fn(spec, dom, cod.clone(), |_| {
        let mut v = Vector::zero(spec, cod.clone());
        for t in &targets {
            let c = rng.gen_range(-2..=2i64);
            if c != 0 {
                v = v.add(&Vector::basis(spec, cod.clone(), t.clone())?.scale(&RingElem::from_int(&ring, c)))?;
            }
        }
        Ok(v)
    })
    .unwrap()
}

fn aps() -> FrobeniusPair {
    build_aps().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tensor_interchange(seed: u64) {
        let p = aps();
        let spec = p.spec();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c, d, e, f) = (word(&mut rng, 2), word(&mut rng, 1), word(&mut rng, 2), word(&mut rng, 1), word(&mut rng, 1), word(&mut rng, 1));
        let g1 = random_map(&mut rng, spec, a.clone(), b.clone());
        let g2 = random_map(&mut rng, spec, b, e);
        let h1 = random_map(&mut rng, spec, c.clone(), d.clone());
        let h2 = random_map(&mut rng, spec, d, f);
        let lhs = g2.tensor(&h2).unwrap().compose(&g1.tensor(&h1).unwrap()).unwrap();
        let rhs = g2.compose(&g1).unwrap().tensor(&h2.compose(&h1).unwrap()).unwrap();
        prop_assert!(lhs.equal(&rhs).is_equal());
    }

    #[test]
    fn tensor_associativity(seed: u64) {
        let p = aps();
        let spec = p.spec();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let maps: Vec<LinMap> = (0..3)
            .map(|_| {
                let (d, c) = (word(&mut rng, 1), word(&mut rng, 1));
                random_map(&mut rng, spec, d, c)
            })
            .collect();
        let lhs = maps[0].tensor(&maps[1]).unwrap().tensor(&maps[2]).unwrap();
        let rhs = maps[0].tensor(&maps[1].tensor(&maps[2]).unwrap()).unwrap();
        prop_assert!(lhs.equal(&rhs).is_equal());
    }

    #[test]
    fn transpositions_satisfy_braid_relations(seed: u64) {
        let p = aps();
        let spec = p.spec();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = SortWord((0..3).map(|_| if rng.gen_bool(0.5) { Sort::A } else { Sort::E }).collect());
        let s = |w: &SortWord, i: usize| LinMap::transposition(spec, w, i).unwrap();
        let s1 = s(&w, 1);
        let s2 = s(s1.codomain(), 2);
        let s1b = s(s2.codomain(), 1);
        let t2 = s(&w, 2);
        let t1 = s(t2.codomain(), 1);
        let t2b = s(t1.codomain(), 2);
        let lhs = s1b.compose(&s2).unwrap().compose(&s1).unwrap();
        let rhs = t2b.compose(&t1).unwrap().compose(&t2).unwrap();
        prop_assert!(lhs.equal(&rhs).is_equal());
        let back = s(s1.codomain(), 1).compose(&s1).unwrap();
        prop_assert!(back.equal(&LinMap::identity(spec, w)).is_equal());
    }

    #[test]
    fn dagger_and_mirror_are_involutions(k in 0usize..1000) {
        let eqs = equations();
        let eq = &eqs[k % eqs.len()];
        for t in [&eq.lhs, &eq.rhs] {
            prop_assert_eq!(&t.dagger().dagger(), t);
            prop_assert_eq!(&t.mirror().mirror(), t);
            prop_assert_eq!(t.dagger().mirror(), t.mirror().dagger());
            let (d, c) = t.typecheck().unwrap();
            let (dd, dc) = t.dagger().typecheck().unwrap();
            prop_assert_eq!((dd, dc), (c, d));
        }
    }

    #[test]
    fn cobordism_evaluation_is_functorial(seed: u64) {
        let p = aps();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let input = word(&mut rng, 3);
        let first = random_word(&mut rng, input, 3);
        let second = random_word(&mut rng, first.output().clone(), 3);
        let whole = first.then(&second).unwrap();
        let lhs = whole.evaluate(&p).unwrap();
        let rhs = second.evaluate(&p).unwrap().compose(&first.evaluate(&p).unwrap()).unwrap();
        prop_assert!(lhs.equal(&rhs).is_equal());
    }

    #[test]
    fn distant_events_commute(seed: u64) {
        let p = aps();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let left = word(&mut rng, 2);
        let right = word(&mut rng, 2);
        let a = random_word(&mut rng, left.clone(), 2);
        let b = random_word(&mut rng, right.clone(), 2);
        let n = left.len();
        let shifted = |w: &CobordismWord, by: usize| -> Vec<Event> { w.events().iter().map(|e| shift(*e, by)).collect() };
        let input = left.concat(&right);
        // a on the left block first, then b; and the reverse order
        let mut ab = a.events().to_vec();
        ab.extend(shifted(&b, a.output().len()));
        let mut ba = shifted(&b, n);
        ba.extend(a.events().iter().copied());
        let x = CobordismWord::new(input.clone(), ab).unwrap().evaluate(&p).unwrap();
        let y = CobordismWord::new(input, ba).unwrap().evaluate(&p).unwrap();
        prop_assert!(x.equal(&y).is_equal());
    }

    #[test]
    fn pole_degree_invariances(bits in proptest::collection::vec(any::<bool>(), 0..12), at in 0usize..13, r in 0usize..13, right in any::<bool>()) {
        let mut w: Vec<Side> = bits.iter().map(|&b| if b { Side::Right } else { Side::Left }).collect();
        if w.len() % 2 == 1 {
            w.pop();
        }
        let d = pole_degree(&w).unwrap();
        let mut rot = w.clone();
        if !rot.is_empty() {
            let k = r % rot.len();
            rot.rotate_left(k);
        }
        prop_assert_eq!(pole_degree(&rot).unwrap(), d);
        let s = if right { Side::Right } else { Side::Left };
        let mut ins = w.clone();
        let k = at % (w.len() + 1);
        ins.splice(k..k, [s, s]);
        prop_assert_eq!(pole_degree(&ins).unwrap(), d);
        prop_assert!(2 * d <= w.len());
    }

    #[test]
    fn smith_normal_form_is_a_certified_diagonalization(
        rows in 1usize..5,
        cols in 1usize..5,
        cells in proptest::collection::vec(-6i64..=6, 16),
    ) {
        let m = Matrix::from_rows(cols, (0..rows).map(|i| (0..cols).map(|j| BigInt::from(cells[i * 4 + j])).collect()).collect());
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v).data, s.d.data.clone());
        prop_assert!(s.u.det().abs().is_one());
        prop_assert!(s.v.det().abs().is_one());
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    prop_assert!(s.d.data[i][j].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn ring_operations_are_a_commutative_ring(seed: u64) {
        let ring = Ring::new(Domain::Integers, vec![VarDecl::new("q", true), VarDecl::new("s", false)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [x, y, z] = [0; 3].map(|_| random_elem(&mut rng, &ring));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert!((&x + &x.neg()).is_zero());
        prop_assert_eq!(&x * &RingElem::one(&ring), x.clone());
        let u = RingElem::var_pow(&ring, "q", rng.gen_range(-3..=3)).unwrap().neg();
        prop_assert!((&u * &u.unit_invert().unwrap()).is_one());
    }
}

fn random_elem(rng: &mut ChaCha8Rng, ring: &RingRef) -> RingElem {
    let mut e = RingElem::zero(ring);
    for _ in 0..rng.gen_range(0..4) {
        let m = &RingElem::var_pow(ring, "q", rng.gen_range(-2..=2)).unwrap()
            * &RingElem::var_pow(ring, "s", rng.gen_range(0..=2)).unwrap();
        e = &e + &(&m * &RingElem::from_int(ring, rng.gen_range(-3..=3)));
    }
    e
}

fn shift(e: Event, by: usize) -> Event {
    match e {
        Event::Birth(p) => Event::Birth(p + by),
        Event::Death(p) => Event::Death(p + by),
        Event::Merge(p, s) => Event::Merge(p + by, s),
        Event::Split(p, s, t) => Event::Split(p + by, s, t),
        Event::Mobius(p, s) => Event::Mobius(p + by, s),
        Event::Swap(p) => Event::Swap(p + by),
    }
}

/// A legal word of at most `len` events starting from `input`, keeping
/// every row to at most four circles.
fn random_word(rng: &mut ChaCha8Rng, input: SortWord, len: usize) -> CobordismWord {
    let sorts = [Sort::A, Sort::E];
    let mut events: Vec<Event> = Vec::new();
    let mut current = CobordismWord::new(input.clone(), vec![]).unwrap();
    for _ in 0..rng.gen_range(0..=len) {
        let n = current.output().len();
        let mut options = Vec::new();
        for p in 1..=n + 1 {
            options.push(Event::Birth(p));
            options.push(Event::Death(p));
            options.push(Event::Swap(p));
            for s in sorts {
                options.push(Event::Merge(p, s));
                options.push(Event::Mobius(p, s));
                for t in sorts {
                    options.push(Event::Split(p, s, t));
                }
            }
        }
        let legal: Vec<CobordismWord> = options
            .into_iter()
            .filter_map(|e| {
                let mut next = events.clone();
                next.push(e);
                CobordismWord::new(input.clone(), next).ok()
            })
            .filter(|w| w.output().len() <= 4)
            .collect();
        if legal.is_empty() {
            break;
        }
        current = legal[rng.gen_range(0..legal.len())].clone();
        events = current.events().to_vec();
    }
    current
}

fn ranks(cube: &frobpair::cube::StateCube, pair: &FrobeniusPair, rule: SignRule) -> Vec<usize> {
    (0..cube.n())
        .map(|i| {
            let dense = differential(cube, pair, i, rule).unwrap().to_dense(pair);
            let cols = dense.first().map_or(0, Vec::len);
            let m = Matrix::from_rows(cols, dense.iter().map(|r| r.iter().map(|x| x.as_constant().unwrap()).collect()).collect());
            rank_rational(&m)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn either_sign_rule_gives_a_complex_with_the_same_ranks(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cube = random_cube(&mut rng, 3, 5);
        let p = aps();
        for rule in [SignRule::Before, SignRule::After] {
            prop_assert!(check_d_squared(&cube, &p, rule).unwrap().is_none());
        }
        prop_assert_eq!(ranks(&cube, &p, SignRule::Before), ranks(&cube, &p, SignRule::After));
    }

    #[test]
    fn random_cubes_square_to_zero_over_parametric_pairs(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cube = random_cube(&mut rng, 3, 5);
        for p in [build_tt().unwrap(), build_laurent_sqrt().unwrap()] {
            prop_assert!(check_d_squared(&cube, &p, SignRule::Before).unwrap().is_none());
        }
    }
}
