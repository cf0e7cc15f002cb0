//! Divisor-valued norm pairings ⟨A, b⟩ into K' (or K) by resultants.
//!
//! Every prime of Q(x, y) is read as a curve on P¹ × P¹ with a formal
//! bidegree; the pairing of two primes is the pushforward of their
//! intersection cycle to the y-line (side K') or the x-line (side K).

use num_rational::BigRational;
use rayon::prelude::*;

use crate::algebra::bivariate::specialization_points;
use crate::algebra::rational::rat;
use crate::algebra::resultant::{resultant_formal, resultant_in, resultant_in_formal};
use crate::algebra::{BPoly, UPoly, Var};
use crate::divisor::{principal_divisor, zero_divisor_u, DeltaElement, Divisor, DivisorDelta, Place, UPlace};
use crate::error::{Error, Result};
use crate::residue::RationalIsom;

pub const DEFAULT_SHIFT_BOUND: i64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Side {
    K,
    Kprime,
}

impl Side {
    /// The variable of the output field.
    pub fn var(self) -> Var {
        match self {
            Side::K => Var::X,
            Side::Kprime => Var::Y,
        }
    }

    /// The variable eliminated by the pushforward.
    pub fn eliminated(self) -> Var {
        self.var().other()
    }
}

/// A prime as a bihomogeneous curve: its affine equation and formal bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub poly: BPoly,
    pub dx: u32,
    pub dy: u32,
}

impl Curve {
    pub fn of(place: &Place) -> Curve {
        match place {
            Place::Binary(f) => Curve { poly: f.clone(), dx: f.deg_x(), dy: f.deg_y() },
            Place::KUnary(UPlace::Finite(p)) => Curve { poly: BPoly::from_upoly(p), dx: p.degree() as u32, dy: 0 },
            Place::KUnary(UPlace::Infinity(_)) => Curve { poly: BPoly::one(), dx: 1, dy: 0 },
            Place::KpUnary(UPlace::Finite(q)) => Curve { poly: BPoly::from_upoly(q), dx: 0, dy: q.degree() as u32 },
            Place::KpUnary(UPlace::Infinity(_)) => Curve { poly: BPoly::one(), dx: 0, dy: 1 },
        }
    }

    pub fn deg(&self, v: Var) -> u32 {
        match v {
            Var::X => self.dx,
            Var::Y => self.dy,
        }
    }

    fn swapped(&self) -> Curve {
        Curve { poly: self.poly.swap_vars(), dx: self.dy, dy: self.dx }
    }
}

/// Intersection number on P¹ × P¹, i.e. the degree of either pushforward.
pub fn bezout(c: &Curve, d: &Curve) -> i64 {
    (c.dx * d.dy + c.dy * d.dx) as i64
}

fn coprime_check(a: &DivisorDelta, b: &DivisorDelta) -> Result<()> {
    match a.common_place(b) {
        Some(p) => Err(Error::NotCoprime(p.to_string())),
        None => Ok(()),
    }
}

/// Pushforward of the intersection of two curves, computed in one step from
/// the formal-degree (homogeneous) resultant.
pub fn pushforward_homogeneous(c: &Curve, d: &Curve, side: Side) -> Result<Divisor<UPlace>> {
    let e = side.eliminated();
    let r = resultant_in_formal(e, &c.poly, c.deg(e) as usize, &d.poly, d.deg(e) as usize);
    if r.is_zero() {
        return Err(Error::NotCoprime(format!("curves {} and {} share a component", c.poly, d.poly)));
    }
    let total = bezout(c, d);
    let deg = r.degree() as i64;
    let mut div = zero_divisor_u(&r.with_var(side.var()))?;
    div.add_term(UPlace::Infinity(side.var()), total - deg);
    Ok(div)
}

/// Whether `x = s` (side K') meets no intersection point of the two curves.
/// The test is a nonzero formal resultant of the restrictions to that fiber.
pub fn shift_is_valid(c: &Curve, d: &Curve, side: Side, s: i64) -> bool {
    let (c, d) = oriented(c, d, side);
    let s = rat(s);
    let fc = c.poly.eval_at(Var::X, &s);
    let gc = d.poly.eval_at(Var::X, &s);
    !resultant_formal(fc.coeffs(), c.dy as usize, gc.coeffs(), d.dy as usize, &BigRational::default()).eq(&BigRational::default())
}

fn oriented(c: &Curve, d: &Curve, side: Side) -> (Curve, Curve) {
    match side {
        Side::Kprime => (c.clone(), d.clone()),
        Side::K => (c.swapped(), d.swapped()),
    }
}

/// Pushforward computed in the chart `x = s + 1/t` (side K'), which contains
/// every intersection point when the shift is valid; the coefficient at
/// infinity is read in the chart `u = 1/y`.
pub fn pushforward_shifted(c: &Curve, d: &Curve, side: Side, s: i64) -> Result<Divisor<UPlace>> {
    if !shift_is_valid(c, d, side, s) {
        return Err(Error::ShiftExhausted(s));
    }
    let (c, d) = oriented(c, d, side);
    let sr = rat(s);
    let f = c.poly.mobius_x(&sr, c.dx);
    let g = d.poly.mobius_x(&sr, d.dx);
    let r = resultant_in(Var::X, &f, &g);
    if r.is_zero() {
        return Err(Error::NotCoprime(format!("curves {} and {} share a component", c.poly, d.poly)));
    }
    let ru = resultant_in(Var::X, &f.reverse_y(c.dy), &g.reverse_y(d.dy));
    let at_infinity = ru.coeffs().iter().take_while(|a| num_traits::Zero::is_zero(*a)).count() as i64;
    let mut div = zero_divisor_u(&r.clone().with_var(side.var()))?;
    div.add_term(UPlace::Infinity(side.var()), at_infinity);
    Ok(div)
}

/// Smallest valid shift in the order 0, 1, -1, 2, ... with |s| <= bound.
pub fn find_shift(c: &Curve, d: &Curve, side: Side, bound: i64) -> Result<i64> {
    specialization_points((2 * bound + 1) as usize)
        .find(|&s| shift_is_valid(c, d, side, s))
        .ok_or(Error::ShiftExhausted(bound))
}

/// All valid shifts with |s| <= bound, in search order.
pub fn valid_shifts(c: &Curve, d: &Curve, side: Side, bound: i64) -> Vec<i64> {
    specialization_points((2 * bound + 1) as usize).filter(|&s| shift_is_valid(c, d, side, s)).collect()
}

/// Pairing of two distinct primes through the shifted chart.
pub fn pair_primes(m: &Place, n: &Place, side: Side, shift_bound: i64) -> Result<Divisor<UPlace>> {
    if m == n {
        return Err(Error::NotCoprime(m.to_string()));
    }
    let (c, d) = (Curve::of(m), Curve::of(n));
    let s = find_shift(&c, &d, side, shift_bound)?;
    pushforward_shifted(&c, &d, side, s)
}

/// ⟨A, b⟩ on the given side, bilinear over the prime components.
pub fn pair(a: &DivisorDelta, b: &DivisorDelta, side: Side) -> Result<Divisor<UPlace>> {
    pair_bounded(a, b, side, DEFAULT_SHIFT_BOUND)
}

pub fn pair_bounded(a: &DivisorDelta, b: &DivisorDelta, side: Side, shift_bound: i64) -> Result<Divisor<UPlace>> {
    coprime_check(a, b)?;
    let jobs: Vec<(&Place, i64, &Place, i64)> =
        a.iter().flat_map(|(m, am)| b.iter().map(move |(n, bn)| (m, am, n, bn))).collect();
    let parts: Vec<Result<Divisor<UPlace>>> = jobs
        .par_iter()
        .map(|(m, am, n, bn)| Ok(pair_primes(m, n, side, shift_bound)?.scale(am * bn)))
        .collect();
    let mut total = Divisor::zero();
    for p in parts {
        total = total.add(&p?);
    }
    Ok(total)
}

/// The same pairing computed without any chart change (cross-check path).
pub fn pair_homogeneous(a: &DivisorDelta, b: &DivisorDelta, side: Side) -> Result<Divisor<UPlace>> {
    coprime_check(a, b)?;
    let mut total = Divisor::zero();
    for (m, am) in a.iter() {
        for (n, bn) in b.iter() {
            let d = pushforward_homogeneous(&Curve::of(m), &Curve::of(n), side)?;
            total = total.add(&d.scale(am * bn));
        }
    }
    Ok(total)
}

/// The divisor dx of K = Q(x): twice the pole of x, negated.
pub fn dx_divisor() -> Divisor<UPlace> {
    Divisor::single(UPlace::Infinity(Var::X), -2)
}

/// (dx)μ for μ : x ↦ b/a, i.e. −2 times the pole divisor of b/a in Q(y).
pub fn image_dx(mu: &RationalIsom) -> Result<Divisor<UPlace>> {
    Ok(mu.pole_divisor()?.scale(-2))
}

/// The self-pairing of a degree-one binary prime, moved off itself by the
/// principal divisor of x − xμ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfPair {
    /// The element x − b/a whose divisor moves m.
    pub moving_element: DeltaElement,
    /// n = m − div(x − xμ).
    pub moved: DivisorDelta,
    /// ⟨n, m⟩ on the requested side; equals ⟨m, m⟩ up to principal divisors.
    pub value: Divisor<UPlace>,
}

pub fn self_pair_degree_one(m: &Place, side: Side) -> Result<SelfPair> {
    let mu = RationalIsom::of_place(m)?;
    let f = m.poly().unwrap();
    let moving_element = DeltaElement::from_fraction(&f, &BPoly::from_upoly(mu.den()))?;
    let div = principal_divisor(&moving_element);
    let moved = DivisorDelta::single(m.clone(), 1).sub(&div);
    let value = pair(&moved, &DivisorDelta::single(m.clone(), 1), side)?;
    Ok(SelfPair { moving_element, moved, value })
}

/// The pushforward of a single curve pair on side K' as a polynomial, for
/// numeric intersection counting: the chart resultant and its u-chart.
pub fn chart_resultants(c: &Curve, d: &Curve, s: i64) -> (BPoly, BPoly, UPoly) {
    let sr = rat(s);
    let f = c.poly.mobius_x(&sr, c.dx);
    let g = d.poly.mobius_x(&sr, d.dx);
    let r = resultant_in(Var::X, &f, &g);
    (f, g, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(t: &[(u32, u32, i64)]) -> BPoly {
        BPoly::from_terms(t)
    }

    fn place(t: &[(u32, u32, i64)]) -> Place {
        Place::from_irreducible(&bp(t))
    }

    fn y_place(c: &[i64]) -> UPlace {
        UPlace::finite(&UPoly::from_ints(Var::Y, c))
    }

    #[test]
    fn worked_pairings() {
        let m = DivisorDelta::single(place(&[(1, 0, 1), (0, 2, -1)]), 1);
        let n = DivisorDelta::single(place(&[(1, 0, 1), (0, 1, -1)]), 1);
        let p = pair(&m, &n, Side::Kprime).unwrap();
        assert_eq!(p.to_string(), "(y) + (y-1) + inf_y");
        let q = DivisorDelta::single(place(&[(0, 1, 1), (0, 0, -5)]), 1);
        assert_eq!(pair(&m, &q, Side::Kprime).unwrap(), Divisor::single(y_place(&[-5, 1]), 1));
        let k = DivisorDelta::single(place(&[(1, 0, 1), (0, 0, -1)]), 1);
        assert_eq!(pair(&k, &n, Side::Kprime).unwrap(), Divisor::single(y_place(&[-1, 1]), 1));
    }

    #[test]
    fn not_coprime_rejected() {
        let m = DivisorDelta::single(place(&[(1, 0, 1), (0, 2, -1)]), 1);
        assert!(matches!(pair(&m, &m, Side::Kprime), Err(Error::NotCoprime(_))));
    }

    #[test]
    fn routes_agree_on_infinity_heavy_pairs() {
        // x*y - 1 and x*y - 2 meet only at (inf, 0) and (0, inf)
        let m = DivisorDelta::single(place(&[(1, 1, 1), (0, 0, -1)]), 1);
        let n = DivisorDelta::single(place(&[(1, 1, 1), (0, 0, -2)]), 1);
        for side in [Side::K, Side::Kprime] {
            let a = pair(&m, &n, side).unwrap();
            assert_eq!(a, pair_homogeneous(&m, &n, side).unwrap());
            assert_eq!(a.degree(), 2);
        }
        let p = pair(&m, &n, Side::Kprime).unwrap();
        assert_eq!(p.coeff(&y_place(&[0, 1])), 1);
        assert_eq!(p.coeff(&UPlace::Infinity(Var::Y)), 1);
    }

    #[test]
    fn dx_and_image() {
        assert_eq!(dx_divisor().to_string(), "-2*inf_x");
        let mu = RationalIsom::new(UPoly::from_ints(Var::Y, &[0, 0, 1]), UPoly::one(Var::Y)).unwrap();
        assert_eq!(image_dx(&mu).unwrap(), Divisor::single(UPlace::Infinity(Var::Y), -4));
        let nu = RationalIsom::new(UPoly::one(Var::Y), UPoly::from_ints(Var::Y, &[0, 1])).unwrap();
        assert_eq!(image_dx(&nu).unwrap(), Divisor::single(y_place(&[0, 1]), -2));
    }

    #[test]
    fn self_pair_cor_5_6_instances() {
        for m in [place(&[(1, 0, 1), (0, 1, -1)]), place(&[(1, 0, 1), (0, 2, -1)])] {
            let sp = self_pair_degree_one(&m, Side::Kprime).unwrap();
            let mu = RationalIsom::of_place(&m).unwrap();
            assert_eq!(sp.value.add(&image_dx(&mu).unwrap()).degree(), 0);
        }
        let sp = self_pair_degree_one(&place(&[(1, 0, 1), (0, 1, -1)]), Side::Kprime).unwrap();
        assert_eq!(sp.moved, DivisorDelta::from_terms([(Place::inf_x(), 1), (Place::inf_y(), 1)]));
        assert_eq!(sp.value, Divisor::single(UPlace::Infinity(Var::Y), 2));
    }
}
