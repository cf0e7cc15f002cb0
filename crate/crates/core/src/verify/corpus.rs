//! Deterministic desk-scale corpora for the acceptance suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BPoly, UPoly, Var};
use crate::divisor::{principal_divisor, DeltaElement, DivisorDelta, Place};
use crate::explore::{random_binary, sample_divisor};

pub const CORPUS_SEED: u64 = 20_240_611;

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    r.set_stream(stream);
    r
}

fn poly(terms: &[(u32, u32, i64)]) -> BPoly {
    BPoly::from_terms(terms)
}

/// Unary primes of degree at most two and both places at infinity.
pub fn unary_places() -> Vec<Place> {
    let mut v: Vec<Place> = [
        poly(&[(1, 0, 1)]),
        poly(&[(1, 0, 1), (0, 0, -1)]),
        poly(&[(1, 0, 1), (0, 0, 2)]),
        poly(&[(2, 0, 1), (0, 0, 1)]),
        poly(&[(2, 0, 1), (0, 0, -2)]),
        poly(&[(0, 1, 1)]),
        poly(&[(0, 1, 1), (0, 0, 1)]),
        poly(&[(0, 1, 1), (0, 0, -3)]),
        poly(&[(0, 2, 1), (0, 0, 1)]),
        poly(&[(0, 2, 1), (0, 0, -3)]),
    ]
    .iter()
    .map(Place::from_irreducible)
    .collect();
    v.push(Place::inf_x());
    v.push(Place::inf_y());
    v
}

/// Distinct irreducible binary primes with degree at most `max_deg` in each variable.
pub fn binary_places(count: usize, max_deg: u32, stream: u64) -> Vec<Place> {
    let mut r = rng(stream);
    let mut out: Vec<Place> = Vec::new();
    while out.len() < count {
        if let Some(f) = random_binary(&mut r, max_deg) {
            let p = Place::from_irreducible(&f);
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// Pairs of distinct primes mixing binary, unary and infinite places.
pub fn prime_pairs(count: usize) -> Vec<(Place, Place)> {
    let mut places = binary_places(14, 3, 1);
    places.extend(unary_places());
    let mut r = rng(2);
    let mut out = Vec::new();
    while out.len() < count {
        let i = r.gen_range(0..places.len());
        let j = r.gen_range(0..places.len());
        if i != j && !out.contains(&(places[i].clone(), places[j].clone())) {
            out.push((places[i].clone(), places[j].clone()));
        }
    }
    out
}

/// Binary primes a(y)·x − b(y) with a, b coprime and not both constant.
pub fn degree_one_binaries(count: usize, stream: u64) -> Vec<Place> {
    let mut r = rng(stream);
    let mut out: Vec<Place> = Vec::new();
    let draw = |r: &mut ChaCha8Rng| {
        let d = r.gen_range(0..=2);
        let c: Vec<i64> = (0..=d).map(|_| r.gen_range(-3..=3)).collect();
        UPoly::from_ints(Var::Y, &c)
    };
    while out.len() < count {
        let a = draw(&mut r);
        let b = draw(&mut r);
        if a.is_zero() || (a.degree() == 0 && b.degree() == 0) || a.gcd(&b).degree() > 0 {
            continue;
        }
        let f = &(&BPoly::from_upoly(&a) * &BPoly::x()) - &BPoly::from_upoly(&b);
        if f.deg_y() == 0 {
            continue;
        }
        let p = Place::from_irreducible(&f);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

pub fn random_divisors(count: usize, max_deg: u32, stream: u64) -> Vec<DivisorDelta> {
    let mut r = rng(stream);
    (0..count).map(|_| sample_divisor(&mut r, max_deg)).collect()
}

/// Principal divisors of random quotients of products of small primes.
pub fn principal_divisors(count: usize, stream: u64) -> Vec<(DeltaElement, DivisorDelta)> {
    let mut places = binary_places(8, 2, stream);
    places.extend(unary_places().into_iter().filter(|p| p.poly().is_some()));
    let mut r = rng(stream + 1000);
    let mut out = Vec::new();
    while out.len() < count {
        let mut h = DeltaElement::one();
        for _ in 0..r.gen_range(1..=3) {
            let p = &places[r.gen_range(0..places.len())];
            let f = p.poly().unwrap();
            let e = DeltaElement { num: vec![(f.primitive_int(), 1)], ..DeltaElement::one() };
            h = h.mul(&e.pow(if r.gen_bool(0.5) { 1 } else { -1 }));
        }
        if !h.is_constant() {
            out.push((h.clone(), principal_divisor(&h)));
        }
    }
    out
}

/// Places of degree one over Q(y) at the integers in [−bound, bound].
pub fn kp_points(bound: i64) -> Vec<crate::divisor::UPlace> {
    (-bound..=bound).map(|c| crate::divisor::UPlace::finite(&UPoly::from_ints(Var::Y, &[-c, 1]))).collect()
}
