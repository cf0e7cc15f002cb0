//! Divisor residues modulo degree-one primes, correspondences A(p') and
//! different divisors D_{μ,ν}.

use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::factor::factor_q;
use crate::algebra::resultant::discriminant_in;
use crate::algebra::{BPoly, UPoly, Var};
use crate::divisor::{zero_divisor_u, Divisor, DivisorDelta, Place, UPlace};
use crate::error::{Error, Result};
use crate::pairing::{pushforward_homogeneous, Curve, Side};

/// x ↦ b(y)/a(y), an embedding of Q(x) into Q(y); `a` is monic and coprime to `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalIsom {
    num: UPoly,
    den: UPoly,
}

impl RationalIsom {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        let num = num.with_var(Var::Y);
        let den = den.with_var(Var::Y);
        let g = if num.is_zero() { den.monic() } else { num.gcd(&den) };
        let mut num = num.div_exact(&g).unwrap();
        let mut den = den.div_exact(&g).unwrap();
        let lc = den.lc();
        num = num.scale(&lc.recip());
        den = den.scale(&lc.recip());
        Ok(RationalIsom { num, den })
    }

    /// The isomorphism attached to a binary prime a(y)·x − b(y).
    pub fn of_place(n: &Place) -> Result<Self> {
        match n {
            Place::Binary(f) if f.deg_x() == 1 => {
                let c = f.coeffs_in(Var::X);
                Self::new(-&c[0], c[1].clone())
            }
            other => Err(Error::NotDegreeOne(other.to_string())),
        }
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    /// max(deg b, deg a): the degree of the map P¹ → P¹.
    pub fn degree(&self) -> usize {
        self.num.degree().max(self.den.degree())
    }

    pub fn has_pole_at_infinity(&self) -> bool {
        !self.num.is_zero() && self.num.degree() > self.den.degree()
    }

    /// The divisor of poles of b/a in Q(y).
    pub fn pole_divisor(&self) -> Result<Divisor<UPlace>> {
        let mut d = zero_divisor_u(&self.den)?;
        if self.has_pole_at_infinity() {
            d.add_term(UPlace::Infinity(Var::Y), (self.num.degree() - self.den.degree()) as i64);
        }
        Ok(d)
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, c: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(c);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(c) / d)
        }
    }

    /// Value at y = ∞, `None` at a pole.
    pub fn value_at_infinity(&self) -> Option<BigRational> {
        if self.has_pole_at_infinity() {
            None
        } else if self.num.is_zero() || self.num.degree() < self.den.degree() {
            Some(BigRational::zero())
        } else {
            Some(self.num.lc() / self.den.lc())
        }
    }

    /// Pulls a prime back along the graph of this map: the divisor on Q(y)
    /// of the homogeneous form F(b, a; y).
    pub fn pullback(&self, m: &Place) -> Result<Divisor<UPlace>> {
        let c = Curve::of(m);
        let e = self.degree();
        let mut h = UPoly::zero(Var::Y);
        for (i, fi) in c.poly.coeffs_in(Var::X).iter().enumerate() {
            let term = &(fi * &self.num.pow(i as u32)) * &self.den.pow(c.dx - i as u32);
            h = &h + &term;
        }
        if h.is_zero() {
            return Err(Error::NotCoprime(m.to_string()));
        }
        let formal = c.dy as i64 + c.dx as i64 * e as i64;
        let mut d = zero_divisor_u(&h)?;
        d.add_term(UPlace::Infinity(Var::Y), formal - h.degree() as i64);
        Ok(d)
    }
}

pub fn residue_iso(n: &Place) -> Result<RationalIsom> {
    RationalIsom::of_place(n)
}

/// D_{μ,ν}: coefficient at each place of Q(y) is the order of r − s where both
/// are finite and agree, of 1/r − 1/s where both have poles, zero otherwise.
pub fn different_divisor(mu: &RationalIsom, nu: &RationalIsom) -> Result<Divisor<UPlace>> {
    if mu == nu {
        return Err(Error::EqualIsoms);
    }
    // r − s = N / (a1 a2) with N = b1 a2 − b2 a1; at a common pole q | a1, a2
    // we have 1/r − 1/s = −N / (b1 b2) and q ∤ b1 b2, so both orders equal w_q(N).
    let n = &(&mu.num * &nu.den) - &(&nu.num * &mu.den);
    let mut d = Divisor::zero();
    if n.degree() > 0 {
        d = zero_divisor_u(&n)?;
    }
    let pole_mu = mu.has_pole_at_infinity();
    let pole_nu = nu.has_pole_at_infinity();
    let order = if !pole_mu && !pole_nu {
        (mu.den.degree() + nu.den.degree()) as i64 - n.degree() as i64
    } else if pole_mu && pole_nu {
        (mu.num.degree() + nu.num.degree()) as i64 - n.degree() as i64
    } else {
        0
    };
    d.add_term(UPlace::Infinity(Var::Y), order);
    Ok(d)
}

fn check_prime_to(a: &DivisorDelta, n: &Place) -> Result<()> {
    if a.coeff(n) != 0 {
        return Err(Error::NotCoprime(n.to_string()));
    }
    Ok(())
}

/// A·n for a binary prime n of x-degree one, as a divisor of Q(y) ≅ Δn.
pub fn residue_mod_degree_one(a: &DivisorDelta, n: &Place) -> Result<Divisor<UPlace>> {
    let mu = RationalIsom::of_place(n)?;
    check_prime_to(a, n)?;
    let mut out = Divisor::zero();
    for (m, c) in a.iter() {
        out = out.add(&mu.pullback(m)?.scale(c));
    }
    Ok(out)
}

/// The rational point c of a degree-one finite place y − c.
fn rational_point(p: &UPlace) -> Result<BigRational> {
    match p {
        UPlace::Finite(q) if q.degree() == 1 => Ok(-q.coeff(0) / q.coeff(1)),
        other => Err(Error::NotDegreeOne(other.to_string())),
    }
}

/// Whether the multiplicities of the fiber of a binary prime f over y = c can
/// be read from the factorization of f(x, c): every point of the fiber
/// (including x = ∞) is a simple root of the restriction or has ∂f/∂y ≠ 0.
pub fn fiber_is_regular(f: &BPoly, c: &BigRational) -> Result<bool> {
    let lc = f.lc_in(Var::X);
    let restricted = f.eval_at(Var::Y, c);
    if !lc.eval(c).is_zero() && !discriminant_in(Var::X, f).eval(c).is_zero() {
        return Ok(true);
    }
    let fy = f.partial(Var::Y).eval_at(Var::Y, c);
    if !restricted.is_zero() {
        for (h, e) in factor_q(&restricted)?.factors {
            if e > 1 && fy.gcd(&h).degree() > 0 {
                return Ok(false);
            }
        }
    }
    let escape = f.deg_x() as usize - if restricted.is_zero() { 0 } else { restricted.degree() };
    if escape > 1 && lc.derivative().eval(c).is_zero() {
        return Ok(false);
    }
    Ok(true)
}

fn ensure_regular(m: &Place, c: &BigRational) -> Result<()> {
    if let Place::Binary(f) = m {
        if !fiber_is_regular(f, c)? {
            return Err(Error::NonGeneric(format!("{m} over y = {}", crate::algebra::rational::fmt_rational(c))));
        }
    }
    Ok(())
}

/// A(p') for a degree-one place p' = (y − c) of K', as a divisor of K.
pub fn correspondence(a: &DivisorDelta, p: &UPlace) -> Result<Divisor<UPlace>> {
    let c = rational_point(p)?;
    check_prime_to(a, &Place::KpUnary(p.clone()))?;
    let mut out = Divisor::zero();
    for (m, k) in a.iter() {
        let part = match m {
            Place::Binary(f) => {
                ensure_regular(m, &c)?;
                let restricted = f.eval_at(Var::Y, &c);
                let mut d = Divisor::zero();
                if !restricted.is_zero() {
                    for (h, e) in factor_q(&restricted)?.factors {
                        d.add_term(UPlace::finite(&h), e as i64);
                    }
                }
                let deg = if restricted.is_zero() { 0 } else { restricted.degree() };
                d.add_term(UPlace::Infinity(Var::X), f.deg_x() as i64 - deg as i64);
                d
            }
            Place::KUnary(q) => Divisor::single(q.clone(), 1),
            Place::KpUnary(_) => Divisor::zero(),
        };
        out = out.add(&part.scale(k));
    }
    Ok(out)
}

/// A·q for a degree-one K'-unary place q, computed from the pushforward of the
/// intersection with the fiber y = c (an independent route to [`correspondence`]).
pub fn residue_mod_kp_degree_one(a: &DivisorDelta, q: &UPlace) -> Result<Divisor<UPlace>> {
    let c = rational_point(q)?;
    let qp = Place::KpUnary(q.clone());
    check_prime_to(a, &qp)?;
    let fiber = Curve::of(&qp);
    let mut out = Divisor::zero();
    for (m, k) in a.iter() {
        ensure_regular(m, &c)?;
        out = out.add(&pushforward_homogeneous(&Curve::of(m), &fiber, Side::K)?.scale(k));
    }
    Ok(out)
}

/// Residue of A modulo any prime n, when it is computable pointwise.
pub fn residue(a: &DivisorDelta, n: &Place) -> Result<Divisor<UPlace>> {
    match n {
        Place::Binary(f) if f.deg_x() == 1 => residue_mod_degree_one(a, n),
        Place::KpUnary(q @ UPlace::Finite(p)) if p.degree() == 1 => residue_mod_kp_degree_one(a, q),
        other => Err(Error::PointwiseUnavailable(other.to_string())),
    }
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

    fn uy(c: &[i64]) -> UPoly {
        UPoly::from_ints(Var::Y, c)
    }

    fn yp(c: &[i64]) -> UPlace {
        UPlace::finite(&uy(c))
    }

    fn xp(c: &[i64]) -> UPlace {
        UPlace::finite(&UPoly::from_ints(Var::X, c))
    }

    #[test]
    fn isomorphisms() {
        let mu = residue_iso(&place(&[(1, 0, 1), (0, 2, -1)])).unwrap();
        assert_eq!((mu.num(), mu.den()), (&uy(&[0, 0, 1]), &uy(&[1])));
        let nu = residue_iso(&place(&[(1, 1, 1), (0, 0, -1)])).unwrap();
        assert_eq!((nu.num(), nu.den()), (&uy(&[1]), &uy(&[0, 1])));
        assert!(matches!(residue_iso(&place(&[(2, 0, 1), (0, 1, -1)])), Err(Error::NotDegreeOne(_))));
    }

    #[test]
    fn differents() {
        let iso = |b: &[i64], a: &[i64]| RationalIsom::new(uy(b), uy(a)).unwrap();
        let d = different_divisor(&iso(&[0, 0, 1], &[1]), &iso(&[0, 1], &[1])).unwrap();
        assert_eq!(d.to_string(), "(y) + (y-1) + inf_y");
        let d = different_divisor(&iso(&[0, 1], &[1]), &iso(&[1, 1], &[1])).unwrap();
        assert_eq!(d, Divisor::single(UPlace::Infinity(Var::Y), 2));
        assert!(different_divisor(&iso(&[0], &[1]), &iso(&[1], &[1])).unwrap().is_zero());
        assert!(matches!(different_divisor(&iso(&[1], &[1]), &iso(&[1], &[1])), Err(Error::EqualIsoms)));
    }

    #[test]
    fn residues_mod_degree_one() {
        let n = place(&[(1, 0, 1), (0, 1, -1)]);
        let a = DivisorDelta::single(place(&[(1, 0, 1), (0, 2, -1)]), 1);
        assert_eq!(residue_mod_degree_one(&a, &n).unwrap().to_string(), "(y) + (y-1) + inf_y");
        let a = DivisorDelta::single(place(&[(1, 0, 1)]), 1);
        assert_eq!(residue_mod_degree_one(&a, &n).unwrap(), Divisor::single(yp(&[0, 1]), 1));
        let a = DivisorDelta::single(place(&[(0, 1, 1), (0, 0, -5)]), 1);
        assert_eq!(residue_mod_degree_one(&a, &n).unwrap(), Divisor::single(yp(&[-5, 1]), 1));
        assert!(matches!(residue_mod_degree_one(&DivisorDelta::single(n.clone(), 1), &n), Err(Error::NotCoprime(_))));
    }

    #[test]
    fn correspondences() {
        let m = DivisorDelta::single(place(&[(2, 0, 1), (0, 1, -1)]), 1);
        assert_eq!(correspondence(&m, &yp(&[-4, 1])).unwrap(), Divisor::from_terms([(xp(&[-2, 1]), 1), (xp(&[2, 1]), 1)]));
        assert_eq!(correspondence(&m, &yp(&[0, 1])).unwrap(), Divisor::single(xp(&[0, 1]), 2));
        let k = DivisorDelta::single(place(&[(1, 0, 1), (0, 0, -1)]), 1);
        assert_eq!(correspondence(&k, &yp(&[-7, 1])).unwrap(), Divisor::single(xp(&[-1, 1]), 1));
        // x^2 - 2y^2 at y = 0: one place of residue degree 2 over (x)
        let bad = DivisorDelta::single(place(&[(2, 0, 1), (0, 2, -2)]), 1);
        assert!(matches!(correspondence(&bad, &yp(&[0, 1])), Err(Error::NonGeneric(_))));
    }

    #[test]
    fn kp_residues() {
        let a = DivisorDelta::single(place(&[(1, 0, 1), (0, 2, -1)]), 1);
        let q = yp(&[-3, 1]);
        assert_eq!(residue_mod_kp_degree_one(&a, &q).unwrap(), Divisor::single(xp(&[-9, 1]), 1));
        let k = DivisorDelta::single(place(&[(0, 1, 1), (0, 0, -5)]), 1);
        assert!(residue_mod_kp_degree_one(&k, &q).unwrap().is_zero());
        let deg = residue_mod_kp_degree_one(&a, &q).unwrap();
        assert_eq!(deg, correspondence(&a, &q).unwrap());
    }
}
