//! Places and divisors of K = Q(x), K' = Q(y) and the double field Q(x, y).

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::algebra::bivariate::{self, Certification};
use crate::algebra::factor::factor_q;
use crate::algebra::{BPoly, UPoly, Var};
use crate::error::{Error, Result};

/// A place of the rational function field in one variable: a finite place
/// given by an irreducible primitive integer polynomial, or the degree
/// valuation at infinity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UPlace {
    Finite(UPoly),
    Infinity(Var),
}

impl UPlace {
    /// Finite place of an irreducible polynomial (normalized, not checked).
    pub fn finite(p: &UPoly) -> Self {
        assert!(p.degree() > 0, "place of a constant");
        UPlace::Finite(p.primitive_int())
    }

    /// Finite place after checking irreducibility over Q.
    pub fn finite_checked(p: &UPoly) -> Result<Self> {
        if p.degree() == 0 || !crate::algebra::factor::is_irreducible_q(p)? {
            return Err(Error::Invalid(format!("{p} is not irreducible over Q")));
        }
        Ok(Self::finite(p))
    }

    pub fn var(&self) -> Var {
        match self {
            UPlace::Finite(p) => p.var(),
            UPlace::Infinity(v) => *v,
        }
    }

    pub fn degree(&self) -> i64 {
        match self {
            UPlace::Finite(p) => p.degree() as i64,
            UPlace::Infinity(_) => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, UPlace::Infinity(_))
    }

    /// Valuation of `f` (nonzero) at this place.
    pub fn valuation(&self, f: &UPoly) -> i64 {
        match self {
            UPlace::Finite(p) => f.multiplicity_of(p) as i64,
            UPlace::Infinity(_) => -(f.degree() as i64),
        }
    }
}

impl fmt::Display for UPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UPlace::Finite(p) => write!(f, "({p})"),
            UPlace::Infinity(v) => write!(f, "inf_{}", v.name()),
        }
    }
}

/// A prime divisor of Q(x, y): binary, K-unary or K'-unary.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Binary(BPoly),
    KUnary(UPlace),
    KpUnary(UPlace),
}

impl Place {
    pub fn inf_x() -> Self {
        Place::KUnary(UPlace::Infinity(Var::X))
    }

    pub fn inf_y() -> Self {
        Place::KpUnary(UPlace::Infinity(Var::Y))
    }

    /// The place of an irreducible polynomial, classified by the variables it
    /// involves. Irreducibility is the caller's responsibility.
    pub fn from_irreducible(f: &BPoly) -> Self {
        assert!(!f.is_constant(), "place of a constant");
        let f = f.primitive_int();
        if let Some(p) = f.as_upoly(Var::X) {
            Place::KUnary(UPlace::finite(&p))
        } else if let Some(q) = f.as_upoly(Var::Y) {
            Place::KpUnary(UPlace::finite(&q))
        } else {
            Place::Binary(f)
        }
    }

    /// As [`Place::from_irreducible`], after verifying irreducibility exactly.
    pub fn from_poly_checked(f: &BPoly) -> Result<Self> {
        if f.is_constant() || !bivariate::is_irreducible(f)? {
            return Err(Error::Invalid(format!("{f} is not irreducible over Q")));
        }
        Ok(Self::from_irreducible(f))
    }

    /// Like [`Place::from_poly_checked`] but only with the cheap certification
    /// criterion; `Ok(None)` when it is inconclusive.
    pub fn certified(f: &BPoly) -> Option<Self> {
        (bivariate::certify_irreducible(&f.primitive_int()) == Certification::Certified)
            .then(|| Self::from_irreducible(f))
    }

    /// The defining polynomial of a finite place.
    pub fn poly(&self) -> Option<BPoly> {
        match self {
            Place::Binary(f) => Some(f.clone()),
            Place::KUnary(UPlace::Finite(p)) | Place::KpUnary(UPlace::Finite(p)) => Some(BPoly::from_upoly(p)),
            _ => None,
        }
    }

    /// N_{Δ/K'}: the degree of the residue field over K'; zero for K'-unary places.
    pub fn degree_over_kp(&self) -> i64 {
        match self {
            Place::Binary(f) => f.deg_x() as i64,
            Place::KUnary(p) => p.degree(),
            Place::KpUnary(_) => 0,
        }
    }

    /// N_{Δ/K}: the degree of the residue field over K; zero for K-unary places.
    pub fn degree_over_k(&self) -> i64 {
        match self {
            Place::Binary(f) => f.deg_y() as i64,
            Place::KpUnary(q) => q.degree(),
            Place::KUnary(_) => 0,
        }
    }

    pub fn is_binary(&self) -> bool {
        matches!(self, Place::Binary(_))
    }

    /// Valuation of a nonzero element at this place.
    pub fn valuation(&self, a: &DeltaElement) -> i64 {
        match self {
            Place::KUnary(UPlace::Infinity(_)) => a.deg(Var::X, false) - a.deg(Var::X, true),
            Place::KpUnary(UPlace::Infinity(_)) => a.deg(Var::Y, false) - a.deg(Var::Y, true),
            _ => {
                let p = self.poly().unwrap();
                a.order_of(&p)
            }
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Binary(p) => write!(f, "({p})"),
            Place::KUnary(p) | Place::KpUnary(p) => write!(f, "{p}"),
        }
    }
}

/// A finite formal sum of places with nonzero integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Divisor<P: Ord> {
    terms: BTreeMap<P, i64>,
}

pub type DivisorK = Divisor<UPlace>;
pub type DivisorKp = Divisor<UPlace>;
pub type DivisorDelta = Divisor<Place>;

impl<P: Ord> Default for Divisor<P> {
    fn default() -> Self {
        Divisor { terms: BTreeMap::new() }
    }
}

impl<P: Ord + Clone> Divisor<P> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(p: P, c: i64) -> Self {
        let mut d = Self::zero();
        d.add_term(p, c);
        d
    }

    pub fn from_terms<I: IntoIterator<Item = (P, i64)>>(terms: I) -> Self {
        let mut d = Self::zero();
        for (p, c) in terms {
            d.add_term(p, c);
        }
        d
    }

    pub fn add_term(&mut self, p: P, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(p.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn coeff(&self, p: &P) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&P, i64)> {
        self.terms.iter().map(|(p, c)| (p, *c))
    }

    pub fn support(&self) -> impl Iterator<Item = &P> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(p, c)| (p.clone(), c * k)))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut d = self.clone();
        for (p, c) in &o.terms {
            d.add_term(p.clone(), *c);
        }
        d
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    /// Common support with another divisor, if any.
    pub fn common_place(&self, o: &Self) -> Option<&P> {
        self.terms.keys().find(|p| o.terms.contains_key(*p))
    }

    pub fn is_coprime_to(&self, o: &Self) -> bool {
        self.common_place(o).is_none()
    }

    /// Positive and negative parts.
    pub fn split(&self) -> (Self, Self) {
        let pos = Self::from_terms(self.terms.iter().filter(|(_, c)| **c > 0).map(|(p, c)| (p.clone(), *c)));
        let neg = Self::from_terms(self.terms.iter().filter(|(_, c)| **c < 0).map(|(p, c)| (p.clone(), -*c)));
        (pos, neg)
    }
}

impl Divisor<UPlace> {
    /// Σ coeff·deg with deg(inf) = 1.
    pub fn degree(&self) -> i64 {
        self.iter().map(|(p, c)| c * p.degree()).sum()
    }
}

impl<P: Ord + fmt::Display> fmt::Display for Divisor<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Restriction to K': the K'-unary components.
pub fn restrict_to_kp(a: &DivisorDelta) -> DivisorKp {
    Divisor::from_terms(a.iter().filter_map(|(p, c)| match p {
        Place::KpUnary(q) => Some((q.clone(), c)),
        _ => None,
    }))
}

/// Restriction to K: the K-unary components.
pub fn restrict_to_k(a: &DivisorDelta) -> DivisorK {
    Divisor::from_terms(a.iter().filter_map(|(p, c)| match p {
        Place::KUnary(q) => Some((q.clone(), c)),
        _ => None,
    }))
}

/// Embeds a divisor of K (or K') as a unary divisor of the double field.
pub fn lift_unary(d: &Divisor<UPlace>) -> DivisorDelta {
    Divisor::from_terms(d.iter().map(|(p, c)| {
        let place = match p.var() {
            Var::X => Place::KUnary(p.clone()),
            Var::Y => Place::KpUnary(p.clone()),
        };
        (place, c)
    }))
}

pub fn degree_k(d: &DivisorK) -> i64 {
    d.degree()
}

/// A nonzero element of Q(x, y) in factored form: a rational unit and
/// irreducible primitive integer factors with multiplicities, numerator and
/// denominator sharing no factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaElement {
    pub unit: BigRational,
    pub num: Vec<(BPoly, u32)>,
    pub den: Vec<(BPoly, u32)>,
}

impl DeltaElement {
    pub fn one() -> Self {
        DeltaElement { unit: BigRational::one(), num: Vec::new(), den: Vec::new() }
    }

    pub fn from_poly(f: &BPoly) -> Result<Self> {
        Self::from_fraction(f, &BPoly::one())
    }

    /// Factors numerator and denominator completely over Q.
    pub fn from_fraction(num: &BPoly, den: &BPoly) -> Result<Self> {
        if num.is_zero() || den.is_zero() {
            return Err(Error::Invalid("zero numerator or denominator".into()));
        }
        let fnum = bivariate::factor(num).map_err(uncertified(num))?;
        let fden = bivariate::factor(den).map_err(uncertified(den))?;
        let mut e = DeltaElement { unit: fnum.unit / fden.unit, num: fnum.factors, den: Vec::new() };
        for (f, k) in fden.factors {
            e.mul_factor(&f, -(k as i64));
        }
        Ok(e)
    }

    fn mul_factor(&mut self, f: &BPoly, k: i64) {
        let mut exp: i64 = 0;
        if let Some(i) = self.num.iter().position(|(g, _)| g == f) {
            exp += self.num.remove(i).1 as i64;
        }
        if let Some(i) = self.den.iter().position(|(g, _)| g == f) {
            exp -= self.den.remove(i).1 as i64;
        }
        exp += k;
        if exp > 0 {
            self.num.push((f.clone(), exp as u32));
            self.num.sort();
        } else if exp < 0 {
            self.den.push((f.clone(), (-exp) as u32));
            self.den.sort();
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut e = self.clone();
        e.unit = &self.unit * &o.unit;
        for (f, k) in &o.num {
            e.mul_factor(f, *k as i64);
        }
        for (f, k) in &o.den {
            e.mul_factor(f, -(*k as i64));
        }
        e
    }

    pub fn inv(&self) -> Self {
        DeltaElement { unit: self.unit.recip(), num: self.den.clone(), den: self.num.clone() }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = DeltaElement::one();
        for _ in 0..k.abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn numerator(&self) -> BPoly {
        self.num.iter().fold(BPoly::constant(self.unit.clone()), |acc, (f, k)| &acc * &f.pow(*k))
    }

    pub fn denominator(&self) -> BPoly {
        self.den.iter().fold(BPoly::one(), |acc, (f, k)| &acc * &f.pow(*k))
    }

    fn deg(&self, v: Var, numerator: bool) -> i64 {
        let list = if numerator { &self.num } else { &self.den };
        list.iter().map(|(f, k)| f.deg(v) as i64 * *k as i64).sum()
    }

    /// Order of the irreducible polynomial `p` in this element.
    fn order_of(&self, p: &BPoly) -> i64 {
        let p = p.primitive_int();
        let count = |list: &Vec<(BPoly, u32)>| list.iter().filter(|(f, _)| *f == p).map(|(_, k)| *k as i64).sum::<i64>();
        count(&self.num) - count(&self.den)
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_empty() && self.den.is_empty()
    }
}

fn uncertified(f: &BPoly) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::DegreeBound { .. } => Error::UncertifiedFactor(f.to_string()),
        other => other,
    }
}

pub fn valuation(place: &Place, a: &DeltaElement) -> i64 {
    place.valuation(a)
}

/// The divisor of a nonzero element, including both places at infinity.
pub fn principal_divisor(a: &DeltaElement) -> DivisorDelta {
    let mut d = DivisorDelta::zero();
    for (f, k) in &a.num {
        d.add_term(Place::from_irreducible(f), *k as i64);
    }
    for (f, k) in &a.den {
        d.add_term(Place::from_irreducible(f), -(*k as i64));
    }
    d.add_term(Place::inf_x(), Place::inf_x().valuation(a));
    d.add_term(Place::inf_y(), Place::inf_y().valuation(a));
    d
}

/// The divisor of a nonzero element `num/den` of a rational function field.
pub fn principal_divisor_u(num: &UPoly, den: &UPoly) -> Result<Divisor<UPlace>> {
    assert!(!num.is_zero() && !den.is_zero());
    let var = if num.degree() > 0 { num.var() } else { den.var() };
    let mut d = Divisor::zero();
    for (g, k) in factor_q(num)?.factors {
        d.add_term(UPlace::finite(&g), k as i64);
    }
    for (g, k) in factor_q(den)?.factors {
        d.add_term(UPlace::finite(&g), -(k as i64));
    }
    d.add_term(UPlace::Infinity(var), den.degree() as i64 - num.degree() as i64);
    Ok(d)
}

/// The divisor of a polynomial of the rational function field, finite part only.
pub fn zero_divisor_u(f: &UPoly) -> Result<Divisor<UPlace>> {
    let mut d = Divisor::zero();
    for (g, k) in factor_q(f)?.factors {
        d.add_term(UPlace::finite(&g), k as i64);
    }
    Ok(d)
}

/// Elements of a rational function field that are nonzero constants have no
/// zeros or poles.
pub fn is_unit(f: &UPoly) -> bool {
    f.degree() == 0 && !f.is_zero()
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

    #[test]
    fn valuations() {
        let a = DeltaElement::from_poly(&bp(&[(2, 0, 1), (0, 2, -1)])).unwrap();
        assert_eq!(valuation(&place(&[(1, 0, 1), (0, 1, -1)]), &a), 1);
        let b = DeltaElement::from_fraction(&bp(&[(2, 0, 1), (0, 2, -1)]), &bp(&[(1, 1, 1)])).unwrap();
        assert_eq!(valuation(&Place::inf_x(), &b), -1);
        assert_eq!(valuation(&place(&[(1, 0, 1), (0, 1, -1)]), &DeltaElement::one()), 0);
    }

    #[test]
    fn principal_divisor_examples() {
        let b = DeltaElement::from_fraction(&bp(&[(2, 0, 1), (0, 2, -1)]), &bp(&[(1, 1, 1)])).unwrap();
        let d = principal_divisor(&b);
        let expected = DivisorDelta::from_terms([
            (place(&[(1, 0, 1), (0, 1, -1)]), 1),
            (place(&[(1, 0, 1), (0, 1, 1)]), 1),
            (place(&[(1, 0, 1)]), -1),
            (place(&[(0, 1, 1)]), -1),
            (Place::inf_x(), -1),
            (Place::inf_y(), -1),
        ]);
        assert_eq!(d, expected);
        assert_eq!(d.to_string(), "(x-y) + (x+y) - (x) - inf_x - (y) - inf_y");
        assert!(principal_divisor(&DeltaElement::one()).is_zero());
        let c = DeltaElement::from_poly(&bp(&[(1, 0, 1), (0, 1, -1)])).unwrap();
        assert_eq!(
            principal_divisor(&c),
            DivisorDelta::from_terms([(place(&[(1, 0, 1), (0, 1, -1)]), 1), (Place::inf_x(), -1), (Place::inf_y(), -1)])
        );
    }

    #[test]
    fn residue_degrees() {
        assert_eq!(place(&[(1, 0, 1), (0, 2, -1)]).degree_over_kp(), 1);
        assert_eq!(place(&[(0, 2, 1), (0, 0, 1)]).degree_over_kp(), 0);
        assert_eq!(place(&[(2, 0, 1), (0, 0, -2)]).degree_over_kp(), 2);
        assert_eq!(Place::inf_x().degree_over_kp(), 1);
    }

    #[test]
    fn restriction_and_degree() {
        let a = DivisorDelta::from_terms([
            (place(&[(1, 0, 1), (0, 1, -1)]), 3),
            (place(&[(0, 1, 1), (0, 0, -1)]), 2),
            (place(&[(1, 0, 1)]), 5),
        ]);
        let r = restrict_to_kp(&a);
        assert_eq!(r, DivisorKp::single(UPlace::finite(&UPoly::from_ints(Var::Y, &[-1, 1])), 2));
        assert!(restrict_to_kp(&DivisorDelta::single(place(&[(1, 0, 1), (0, 1, -1)]), 1)).is_zero());
        assert_eq!(
            restrict_to_kp(&DivisorDelta::single(Place::inf_y(), -1)),
            DivisorKp::single(UPlace::Infinity(Var::Y), -1)
        );
        let f = principal_divisor_u(&UPoly::from_ints(Var::X, &[-2, 0, 1]), &UPoly::from_ints(Var::X, &[0, 1])).unwrap();
        assert_eq!(degree_k(&f), 0);
        assert_eq!(degree_k(&DivisorK::zero()), 0);
        assert_eq!(degree_k(&DivisorK::single(UPlace::finite(&UPoly::from_ints(Var::X, &[-1, 1])), 4)), 4);
    }
}
