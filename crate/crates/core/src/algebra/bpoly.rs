use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::rat;
use super::upoly::{coeff_order, push_term, UPoly, Var};

/// Sparse bivariate polynomial over Q, keyed by `(x exponent, y exponent)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BPoly {
    pub fn zero() -> Self {
        BPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BPoly { terms }
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, BigRational::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, BigRational::one())
    }

    /// Builds from `(x exp, y exp, coefficient)` triples; repeated keys add up.
    pub fn from_terms(terms: &[(u32, u32, i64)]) -> Self {
        let mut p = BPoly::zero();
        for &(i, j, c) in terms {
            p.add_term(i, j, rat(c));
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn from_upoly(p: &UPoly) -> Self {
        let mut out = BPoly::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            match p.var() {
                Var::X => out.add_term(k as u32, 0, c.clone()),
                Var::Y => out.add_term(0, k as u32, c.clone()),
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn deg(&self, v: Var) -> u32 {
        match v {
            Var::X => self.deg_x(),
            Var::Y => self.deg_y(),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.0 + k.1).max().unwrap_or(0)
    }

    /// Leading term under lex order with x before y.
    pub fn leading_coeff(&self) -> BigRational {
        self.terms.iter().next_back().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    /// The univariate polynomial when `self` only involves `v` (or is constant).
    pub fn as_upoly(&self, v: Var) -> Option<UPoly> {
        let mut coeffs = Vec::new();
        for (&(i, j), c) in &self.terms {
            let (k, other) = match v {
                Var::X => (i, j),
                Var::Y => (j, i),
            };
            if other != 0 {
                return None;
            }
            if coeffs.len() <= k as usize {
                coeffs.resize(k as usize + 1, BigRational::zero());
            }
            coeffs[k as usize] = c.clone();
        }
        Some(UPoly::new(v, coeffs))
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.deg(v) > 0
    }

    /// Coefficients as a polynomial in `v` over Q[other]: entry k multiplies `v^k`.
    pub fn coeffs_in(&self, v: Var) -> Vec<UPoly> {
        let other = v.other();
        let n = self.deg(v) as usize + 1;
        let mut buckets: Vec<Vec<BigRational>> = vec![Vec::new(); n];
        for (&(i, j), c) in &self.terms {
            let (k, e) = match v {
                Var::X => (i as usize, j as usize),
                Var::Y => (j as usize, i as usize),
            };
            let b = &mut buckets[k];
            if b.len() <= e {
                b.resize(e + 1, BigRational::zero());
            }
            b[e] = c.clone();
        }
        if self.is_zero() {
            return Vec::new();
        }
        buckets.into_iter().map(|b| UPoly::new(other, b)).collect()
    }

    /// Inverse of [`BPoly::coeffs_in`].
    pub fn from_coeffs_in(v: Var, coeffs: &[UPoly]) -> Self {
        let mut out = BPoly::zero();
        for (k, p) in coeffs.iter().enumerate() {
            for (e, c) in p.coeffs().iter().enumerate() {
                match v {
                    Var::X => out.add_term(k as u32, e as u32, c.clone()),
                    Var::Y => out.add_term(e as u32, k as u32, c.clone()),
                }
            }
        }
        out
    }

    /// Leading coefficient with respect to `v`, a polynomial in the other variable.
    pub fn lc_in(&self, v: Var) -> UPoly {
        self.coeffs_in(v).pop().unwrap_or_else(|| UPoly::zero(v.other()))
    }

    /// Substitutes `v := c`, leaving a polynomial in the other variable.
    pub fn eval_at(&self, v: Var, c: &BigRational) -> UPoly {
        let coeffs = self.coeffs_in(v.other());
        UPoly::new(v.other(), coeffs.iter().map(|p| p.eval(c)).collect())
    }

    /// Substitutes `v := p(other)`, giving a polynomial in the other variable.
    pub fn subst_poly(&self, v: Var, p: &UPoly) -> UPoly {
        let other = v.other();
        let p = p.clone().with_var(other);
        let mut acc = UPoly::zero(other);
        for c in self.coeffs_in(v).iter().rev() {
            acc = &(&acc * &p) + c;
        }
        acc
    }

    /// Exchanges the roles of x and y.
    pub fn swap_vars(&self) -> Self {
        BPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return BPoly::zero();
        }
        BPoly { terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect() }
    }

    pub fn partial(&self, v: Var) -> Self {
        let mut out = BPoly::zero();
        for (&(i, j), c) in &self.terms {
            match v {
                Var::X if i > 0 => out.add_term(i - 1, j, c * rat(i as i64)),
                Var::Y if j > 0 => out.add_term(i, j - 1, c * rat(j as i64)),
                _ => {}
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Positive rational content (gcd of numerators over lcm of denominators).
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::zero();
        }
        BigRational::new(num, den)
    }

    /// Canonical primitive integer representative: content 1 and positive
    /// leading coefficient under lex order (x before y).
    pub fn primitive_int(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// The unit `u` with `self = u * self.primitive_int()`.
    pub fn primitive_unit(&self) -> BigRational {
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        c
    }

    /// Content with respect to `v`: the monic gcd (in the other variable) of the
    /// coefficients of `self` viewed as a polynomial in `v`.
    pub fn content_in(&self, v: Var) -> UPoly {
        let mut g = UPoly::zero(v.other());
        for c in self.coeffs_in(v) {
            g = g.gcd(&c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Multiplies every coefficient in `v` by the univariate `p` (in the other variable).
    pub fn mul_upoly(&self, p: &UPoly) -> Self {
        self * &BPoly::from_upoly(p)
    }

    /// Exact division viewing both as polynomials in x over Q[y].
    pub fn div_exact(&self, d: &BPoly) -> Option<BPoly> {
        assert!(!d.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(BPoly::zero());
        }
        let v = Var::X;
        let dc = d.coeffs_in(v);
        let dd = dc.len() - 1;
        let dl = dc[dd].clone();
        let mut rem = self.coeffs_in(v);
        if rem.len() < dc.len() {
            return None;
        }
        let mut quot = vec![UPoly::zero(Var::Y); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let q = top.div_exact(&dl)?;
            for (j, c) in dc.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&q * c);
            }
            quot[i] = q;
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return None;
        }
        Some(BPoly::from_coeffs_in(v, &quot))
    }

    /// `x^a * self(c + 1/x, y)` with formal x-degree `a >= deg_x`.
    pub fn mobius_x(&self, c: &BigRational, formal_deg: u32) -> BPoly {
        assert!(formal_deg >= self.deg_x());
        let coeffs = self.coeffs_in(Var::X);
        // (c*t + 1)^i * t^(a-i)
        let lin = UPoly::new(Var::X, vec![BigRational::one(), c.clone()]);
        let mut out = BPoly::zero();
        for (i, ci) in coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let shifted = &lin.pow(i as u32) * &UPoly::monomial(Var::X, formal_deg as usize - i, BigRational::one());
            out = &out + &(&BPoly::from_upoly(&shifted) * &BPoly::from_upoly(ci));
        }
        out
    }

    /// `y^b * self(x, 1/y)` with formal y-degree `b >= deg_y`.
    pub fn reverse_y(&self, formal_deg: u32) -> BPoly {
        assert!(formal_deg >= self.deg_y());
        BPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((i, formal_deg - j), c.clone())).collect() }
    }

    /// Substitutes `y := y + c`.
    pub fn shift_y(&self, c: &BigRational) -> BPoly {
        let shift = UPoly::new(Var::Y, vec![c.clone(), BigRational::one()]);
        let ys = self.coeffs_in(Var::Y);
        let mut acc = BPoly::zero();
        for coeff in ys.iter().rev() {
            acc = &(&acc * &BPoly::from_upoly(&shift)) + &BPoly::from_upoly(coeff);
        }
        acc
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (&(i, j), c) in self.terms.iter().rev() {
            let mut parts = Vec::new();
            match i {
                0 => {}
                1 => parts.push("x".to_string()),
                k => parts.push(format!("x^{k}")),
            }
            match j {
                0 => {}
                1 => parts.push("y".to_string()),
                k => parts.push(format!("y^{k}")),
            }
            push_term(&mut s, c, &parts.join("*"));
        }
        s
    }
}

impl fmt::Display for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Ord for BPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then(self.deg_x().cmp(&other.deg_x()))
            .then(self.deg_y().cmp(&other.deg_y()))
            .then(self.terms.len().cmp(&other.terms.len()))
            .then_with(|| {
                for ((ka, ca), (kb, cb)) in self.terms.iter().rev().zip(other.terms.iter().rev()) {
                    let o = kb.cmp(ka).then_with(|| coeff_order(ca, cb));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for BPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &BPoly {
    type Output = BPoly;
    fn add(self, rhs: &BPoly) -> BPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BPoly {
    type Output = BPoly;
    fn sub(self, rhs: &BPoly) -> BPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul for &BPoly {
    type Output = BPoly;
    fn mul(self, rhs: &BPoly) -> BPoly {
        let mut out = BPoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }
}

impl Neg for &BPoly {
    type Output = BPoly;
    fn neg(self) -> BPoly {
        BPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BPoly {
            type Output = BPoly;
            fn $m(self, rhs: BPoly) -> BPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_render() {
        let x = BPoly::x();
        let y = BPoly::y();
        let p = &(&x - &y) * &(&x + &y);
        assert_eq!(p.render(), "x^2-y^2");
        assert_eq!(p.deg_x(), 2);
        assert_eq!(p.deg_y(), 2);
        assert_eq!((&x - &y.pow(2)).render(), "x-y^2");
        assert_eq!(p.div_exact(&(&x - &y)).unwrap(), &x + &y);
        assert!(p.div_exact(&(&x - &y.pow(2))).is_none());
    }

    #[test]
    fn primitive_and_content() {
        let p = BPoly::from_terms(&[(1, 0, -4), (0, 2, 6)]);
        assert_eq!(p.primitive_int(), BPoly::from_terms(&[(1, 0, 2), (0, 2, -3)]));
        let q = BPoly::from_terms(&[(1, 1, 1), (0, 1, -1)]);
        assert_eq!(q.content_in(Var::X), UPoly::from_ints(Var::Y, &[0, 1]));
    }

    #[test]
    fn mobius_keeps_formal_degree() {
        // x - y with c = 2: t*(2 + 1/t) - t*y = (2 - y) t + 1
        let p = BPoly::from_terms(&[(1, 0, 1), (0, 1, -1)]);
        let m = p.mobius_x(&rat(2), 1);
        assert_eq!(m, BPoly::from_terms(&[(1, 0, 2), (1, 1, -1), (0, 0, 1)]));
    }
}
