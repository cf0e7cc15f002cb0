use num_rational::BigRational;
use rand::Rng;

use super::corpus::{self, rng};
use super::oracle::numeric_intersection_count;
use super::{Recorder, VerifyConfig};
use crate::algebra::{UPoly, Var};
use crate::divisor::{Divisor, DivisorDelta, Place, UPlace};
use crate::error::Error;
use crate::pairing::{
    bezout, image_dx, pair_bounded, pushforward_homogeneous, pushforward_shifted, self_pair_degree_one, valid_shifts,
    Curve, Side,
};
use crate::residue::{correspondence, different_divisor, residue_iso, residue_mod_degree_one, residue_mod_kp_degree_one};

const SIDES: [Side; 2] = [Side::K, Side::Kprime];

fn single(p: &Place) -> DivisorDelta {
    DivisorDelta::single(p.clone(), 1)
}

fn free_of(d: &DivisorDelta, p: &Place) -> bool {
    d.coeff(p) == 0
}

pub fn symmetry(cfg: &VerifyConfig, rec: &mut Recorder) {
    let pairs = corpus::prime_pairs(60);
    rec.require_count("prime pairs", pairs.len(), 50);
    for (m, n) in &pairs {
        for side in SIDES {
            let ab = rec.ok(pair_bounded(&single(m), &single(n), side, cfg.shift_bound), || format!("pair({m}, {n})"));
            let ba = rec.ok(pair_bounded(&single(n), &single(m), side, cfg.shift_bound), || format!("pair({n}, {m})"));
            if let (Some(ab), Some(ba)) = (ab, ba) {
                rec.check(ab == ba, || format!("{side:?}: <{m},{n}> = {ab} but <{n},{m}> = {ba}"));
            }
        }
    }
}

/// A degree-one binary prime and a degree-one place of Q(y) outside the given divisors.
fn moduli<'a>(pool: &'a [Place], points: &'a [UPlace], ds: &[&DivisorDelta], r: &mut impl Rng) -> (&'a Place, &'a UPlace) {
    loop {
        let n = &pool[r.gen_range(0..pool.len())];
        let p = &points[r.gen_range(0..points.len())];
        if ds.iter().all(|d| free_of(d, n) && free_of(d, &Place::KpUnary(p.clone()))) {
            return (n, p);
        }
    }
}

pub fn bilinearity(cfg: &VerifyConfig, rec: &mut Recorder) {
    let divisors = corpus::random_divisors(60, 2, 3);
    let pool = corpus::degree_one_binaries(12, 4);
    let points = corpus::kp_points(5);
    let mut r = rng(5);
    let mut triples = 0;
    let mut attempts = 0;
    while triples < 55 && attempts < 2000 {
        attempts += 1;
        let pick = |r: &mut rand_chacha::ChaCha8Rng| divisors[r.gen_range(0..divisors.len())].clone();
        let (a, a1, b, b1) = (pick(&mut r), pick(&mut r), pick(&mut r), pick(&mut r));
        let sum = a.add(&a1);
        if !(a.is_coprime_to(&b) && a1.is_coprime_to(&b) && a.is_coprime_to(&b1)) {
            continue;
        }
        triples += 1;
        for side in SIDES {
            let p = |x: &DivisorDelta, y: &DivisorDelta| pair_bounded(x, y, side, cfg.shift_bound);
            if let (Some(s), Some(u), Some(v)) = (
                rec.ok(p(&sum, &b), || format!("pair({sum}, {b})")),
                rec.ok(p(&a, &b), || format!("pair({a}, {b})")),
                rec.ok(p(&a1, &b), || format!("pair({a1}, {b})")),
            ) {
                rec.check(s == u.add(&v), || format!("{side:?}: <A+A1,b> != <A,b> + <A1,b> for A={a}, A1={a1}, b={b}"));
            }
            if let (Some(s), Some(u), Some(v)) = (
                rec.ok(p(&a, &b.add(&b1)), || format!("pair({a}, {b} + {b1})")),
                rec.ok(p(&a, &b), || format!("pair({a}, {b})")),
                rec.ok(p(&a, &b1), || format!("pair({a}, {b1})")),
            ) {
                rec.check(s == u.add(&v), || format!("{side:?}: <A,b+b1> != <A,b> + <A,b1> for A={a}, b={b}, b1={b1}"));
            }
        }
        let (n, q) = moduli(&pool, &points, &[&a, &a1], &mut r);
        if let (Some(s), Some(u), Some(v)) = (
            rec.ok(residue_mod_degree_one(&sum, n), || format!("({sum}) mod {n}")),
            rec.ok(residue_mod_degree_one(&a, n), || format!("({a}) mod {n}")),
            rec.ok(residue_mod_degree_one(&a1, n), || format!("({a1}) mod {n}")),
        ) {
            rec.check(s == u.add(&v), || format!("(A+A1){n} != A{n} + A1{n} for A={a}, A1={a1}"));
        }
        match (correspondence(&sum, q), correspondence(&a, q), correspondence(&a1, q)) {
            (Ok(s), Ok(u), Ok(v)) => rec.check(s == u.add(&v), || format!("(A+A1)({q}) != A({q}) + A1({q}) for A={a}, A1={a1}")),
            (Err(Error::NonGeneric(_)), _, _) | (_, Err(Error::NonGeneric(_)), _) | (_, _, Err(Error::NonGeneric(_))) => rec.skip(),
            (s, u, v) => {
                for e in [s.err(), u.err(), v.err()].into_iter().flatten() {
                    rec.fail(format!("correspondence at {q}: {e}"));
                }
            }
        }
    }
    rec.require_count("coprime triples", triples, 50);
}

pub fn principality(cfg: &VerifyConfig, rec: &mut Recorder) {
    let principal = corpus::principal_divisors(24, 6);
    let mut targets = corpus::binary_places(10, 2, 7);
    targets.extend(corpus::unary_places());
    let pool = corpus::degree_one_binaries(12, 8);
    let points = corpus::kp_points(5);
    let mut r = rng(9);
    let mut used = 0;
    for (h, d) in &principal {
        let b = loop {
            let b = &targets[r.gen_range(0..targets.len())];
            if free_of(d, b) {
                break single(b);
            }
        };
        used += 1;
        for side in SIDES {
            if let Some(p) = rec.ok(pair_bounded(d, &b, side, cfg.shift_bound), || format!("pair(div {h:?}, {b})")) {
                rec.check(p.degree() == 0, || format!("{side:?}: <div({}), {b}> = {p} has degree {}", show(h), p.degree()));
            }
        }
        let (n, q) = moduli(&pool, &points, &[d], &mut r);
        if let Some(res) = rec.ok(residue_mod_degree_one(d, n), || format!("div({}) mod {n}", show(h))) {
            rec.check(res.degree() == 0, || format!("div({}) mod {n} = {res} has degree {}", show(h), res.degree()));
        }
        match correspondence(d, q) {
            Ok(c) => rec.check(c.degree() == 0, || format!("div({})({q}) = {c} has degree {}", show(h), c.degree())),
            Err(Error::NonGeneric(_)) => rec.skip(),
            Err(e) => rec.fail(format!("div({})({q}): {e}", show(h))),
        }
    }
    rec.require_count("principal divisors", used, 20);
}

fn show(h: &crate::divisor::DeltaElement) -> String {
    format!("({})/({})", h.numerator(), h.denominator())
}

pub fn residue_correspondence(_: &VerifyConfig, rec: &mut Recorder) {
    let divisors = corpus::random_divisors(40, 2, 10);
    let points = corpus::kp_points(6);
    let mut agreed = 0;
    for a in &divisors {
        for q in points.iter().step_by(3) {
            if !free_of(a, &Place::KpUnary(q.clone())) {
                continue;
            }
            match (correspondence(a, q), residue_mod_kp_degree_one(a, q)) {
                (Ok(c), Ok(r)) => {
                    rec.check(c == r, || format!("A = {a} at {q}: correspondence {c} but residue {r}"));
                    agreed += 1;
                }
                (Err(Error::NonGeneric(_)), Err(Error::NonGeneric(_))) => rec.skip(),
                (c, r) => rec.fail(format!("A = {a} at {q}: routes disagree on success: {:?} vs {:?}", c.err(), r.err())),
            }
        }
    }
    rec.require_count("degree-one instances", agreed, 50);
}

pub fn different(cfg: &VerifyConfig, rec: &mut Recorder) {
    let m = Place::from_irreducible(&crate::parse::parse_poly("x - y^2").unwrap());
    let n = Place::from_irreducible(&crate::parse::parse_poly("x - y").unwrap());
    if let Some(p) = rec.ok(pair_bounded(&single(&m), &single(&n), Side::Kprime, cfg.shift_bound), || "worked pairing".into()) {
        rec.check(p.to_string() == "(y) + (y-1) + inf_y", || format!("worked pairing gave {p}"));
    }
    let pool = corpus::degree_one_binaries(60, 11);
    let mut count = 0;
    for (i, m) in pool.iter().enumerate() {
        let n = &pool[(i * 7 + 3) % pool.len()];
        if m == n {
            continue;
        }
        let lhs = rec.ok(pair_bounded(&single(m), &single(n), Side::Kprime, cfg.shift_bound), || format!("<{m},{n}>"));
        let rhs = rec.ok(
            residue_iso(m).and_then(|mu| residue_iso(n).and_then(|nu| different_divisor(&mu, &nu))),
            || format!("D({m},{n})"),
        );
        if let (Some(l), Some(r)) = (lhs, rhs) {
            rec.check(l == r, || format!("<{m},{n}> = {l} but the different is {r}"));
            count += 1;
        }
    }
    rec.require_count("degree-one pairs", count, 50);
}

fn x_place(value: Option<BigRational>) -> UPlace {
    match value {
        Some(v) => UPlace::finite(&UPoly::new(Var::X, vec![-v, BigRational::from_integer(1.into())])),
        None => UPlace::Infinity(Var::X),
    }
}

pub fn support(_: &VerifyConfig, rec: &mut Recorder) {
    let pool = corpus::degree_one_binaries(40, 12);
    let mut pairs = 0;
    for (i, m) in pool.iter().enumerate() {
        let n = &pool[(i * 5 + 1) % pool.len()];
        if m == n {
            continue;
        }
        let Some(res) = rec.ok(residue_mod_degree_one(&single(m), n), || format!("{m} mod {n}")) else { continue };
        let (Ok(mu_m), Ok(mu_n)) = (residue_iso(m), residue_iso(n)) else {
            rec.fail(format!("isomorphisms of {m}, {n}"));
            continue;
        };
        pairs += 1;
        let mut candidates: Vec<UPlace> = corpus::kp_points(8);
        candidates.extend(res.support().filter(|q| q.degree() == 1 && !q.is_infinity()).cloned());
        candidates.sort();
        candidates.dedup();
        for q in &candidates {
            let UPlace::Finite(lin) = q else { continue };
            let c = -lin.coeff(0) / lin.coeff(1);
            let member = res.coeff(q) != 0;
            let Some(corr) = rec.ok(correspondence(&single(m), q), || format!("{m}({q})")) else { continue };
            let criterion = corr.coeff(&x_place(mu_n.eval(&c))) != 0;
            rec.check(member == criterion, || format!("{m} mod {n} at {q}: support {member}, criterion {criterion}"));
        }
        let member = res.coeff(&UPlace::Infinity(Var::Y)) != 0;
        let criterion = mu_m.value_at_infinity() == mu_n.value_at_infinity();
        rec.check(member == criterion, || format!("{m} mod {n} at inf_y: support {member}, criterion {criterion}"));
        for q in res.support().filter(|q| q.degree() > 1) {
            let UPlace::Finite(qp) = q else { continue };
            let diff = &(mu_m.num() * mu_n.den()) - &(mu_n.num() * mu_m.den());
            rec.check(qp.divides(&diff), || format!("{m} mod {n}: {q} in support but does not divide xμ − xν"));
        }
    }
    rec.require_count("degree-one pairs", pairs, 30);
}

pub fn self_pairing(_: &VerifyConfig, rec: &mut Recorder) {
    let pool = corpus::degree_one_binaries(24, 13);
    let mut count = 0;
    for m in &pool {
        let sp = rec.ok(self_pair_degree_one(m, Side::Kprime), || format!("self-pairing of {m}"));
        let dx = rec.ok(residue_iso(m).and_then(|mu| image_dx(&mu)), || format!("image of dx under {m}"));
        if let (Some(sp), Some(dx)) = (sp, dx) {
            let total: Divisor<UPlace> = sp.value.add(&dx);
            rec.check(sp.moved.is_coprime_to(&single(m)), || format!("moved divisor of {m} meets {m}"));
            rec.check(total.degree() == 0, || format!("{m}: <m,m> + (dx)μ = {total} has degree {}", total.degree()));
            count += 1;
        }
    }
    rec.require_count("degree-one primes", count, 20);
}

pub fn charts(cfg: &VerifyConfig, rec: &mut Recorder) {
    for (m, n) in &corpus::prime_pairs(60) {
        let (c, d) = (Curve::of(m), Curve::of(n));
        for side in SIDES {
            let shifts = valid_shifts(&c, &d, side, cfg.shift_bound.min(8));
            if shifts.len() < 2 {
                rec.fail(format!("{side:?}: fewer than two valid shifts for {m}, {n}"));
                continue;
            }
            let a = rec.ok(pushforward_shifted(&c, &d, side, shifts[0]), || format!("shift {} for {m}, {n}", shifts[0]));
            let b = rec.ok(pushforward_shifted(&c, &d, side, shifts[1]), || format!("shift {} for {m}, {n}", shifts[1]));
            let h = rec.ok(pushforward_homogeneous(&c, &d, side), || format!("homogeneous route for {m}, {n}"));
            if let (Some(a), Some(b), Some(h)) = (a, b, h) {
                rec.check(a == b, || format!("{side:?} {m}, {n}: shift {} gives {a}, shift {} gives {b}", shifts[0], shifts[1]));
                rec.check(a == h, || format!("{side:?} {m}, {n}: chart {a} but homogeneous {h}"));
                rec.check(a.degree() == bezout(&c, &d), || format!("{side:?} {m}, {n}: degree {} vs Bezout {}", a.degree(), bezout(&c, &d)));
            }
        }
    }
    let binaries = corpus::binary_places(14, 3, 1);
    let mut certified = 0;
    for (i, m) in binaries.iter().enumerate() {
        for n in &binaries[i + 1..] {
            let (c, d) = (Curve::of(m), Curve::of(n));
            match numeric_intersection_count(&c.poly, &d.poly) {
                Ok(Some(k)) => {
                    certified += 1;
                    rec.check(k as i64 == bezout(&c, &d), || format!("{m}, {n}: {k} numeric intersections, Bezout {}", bezout(&c, &d)));
                    if let Some(p) = rec.ok(pair_bounded(&single(m), &single(n), Side::Kprime, cfg.shift_bound), || format!("<{m},{n}>")) {
                        rec.check(p.degree() == k as i64, || format!("{m}, {n}: pairing degree {} vs {k} numeric", p.degree()));
                    }
                }
                Ok(None) => rec.skip(),
                Err(e) => rec.fail(format!("numeric oracle on {m}, {n}: {e}")),
            }
        }
    }
    rec.require_count("certified-simple pairs", certified, 20);
}
