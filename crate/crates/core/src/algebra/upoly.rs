use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, int, rat};

/// Variable tag of a univariate polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
        }
    }

    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }
}

/// Dense univariate polynomial over Q. The coefficient list never ends in a zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly {
    var: Var,
    coeffs: Vec<BigRational>,
}

impl UPoly {
    pub fn new(var: Var, mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { var, coeffs }
    }

    pub fn from_ints(var: Var, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(var: Var, coeffs: &[BigInt]) -> Self {
        Self::new(var, coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn zero(var: Var) -> Self {
        UPoly { var, coeffs: Vec::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, BigRational::one())
    }

    pub fn constant(var: Var, c: BigRational) -> Self {
        Self::new(var, vec![c])
    }

    /// The monomial `c * var^k`.
    pub fn monomial(var: Var, k: usize, c: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(var, coeffs)
    }

    /// `var - c`
    pub fn linear_root(var: Var, c: BigRational) -> Self {
        Self::new(var, vec![-c, BigRational::one()])
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn lc(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    pub fn eval_f64(&self, at: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * at + super::rational::to_f64(c);
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.var);
        }
        UPoly { var: self.var, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat(i as i64))
            .collect();
        Self::new(self.var, coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.var);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner)`, keeping the variable of `inner`.
    pub fn compose(&self, inner: &UPoly) -> Self {
        let mut acc = UPoly::zero(inner.var);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &UPoly::constant(inner.var, c.clone());
        }
        acc
    }

    /// `var^n * self(1/var)` with `n = deg self`.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(self.var, coeffs)
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.degree() < d.degree() || self.is_zero() {
            return (UPoly::zero(self.var), self.clone());
        }
        let dl = d.lc().recip();
        let dd = d.degree();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.degree() - dd + 1];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &dl;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (UPoly::new(self.var, quot), UPoly::new(self.var, rem))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &UPoly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &UPoly) -> (UPoly, UPoly, UPoly) {
        let var = self.var;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UPoly::one(var), UPoly::zero(var));
        let (mut t0, mut t1) = (UPoly::zero(var), UPoly::one(var));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Rational content: the positive rational `c` with `self / c` primitive with
    /// integer coefficients and the same sign of leading coefficient.
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in &self.coeffs {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        BigRational::new(num, den)
    }

    /// Primitive integer representative with positive leading coefficient.
    pub fn primitive_int(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Integer coefficients; only meaningful after `primitive_int` or when
    /// all coefficients are integral.
    pub fn int_coeffs(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.to_integer()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Multiplicity of `p` (non-constant) as a factor of `self`.
    pub fn multiplicity_of(&self, p: &UPoly) -> u32 {
        assert!(!self.is_zero() && p.degree() > 0);
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(p) {
            cur = q;
            k += 1;
        }
        k
    }

    /// Square-free decomposition (Yun). Returns pairwise coprime monic
    /// square-free factors with multiplicities; constants give `[]`.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, u32)> {
        assert!(!self.is_zero(), "square-free decomposition of zero");
        let f = self.monic();
        if f.degree() == 0 {
            return Vec::new();
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0).unwrap();
        let mut c = fp.div_exact(&a0).unwrap();
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).unwrap();
            if b.degree() == 0 {
                break;
            }
            c = d.div_exact(&a).unwrap();
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Rational roots of a polynomial with small integer end coefficients.
    /// Returns `None` when the candidate search would be too large.
    pub fn rational_roots(&self) -> Option<Vec<BigRational>> {
        if self.is_zero() {
            return Some(Vec::new());
        }
        let p = self.primitive_int();
        let mut roots = Vec::new();
        let mut cur = p.clone();
        if cur.coeff(0).is_zero() {
            roots.push(BigRational::zero());
            while cur.coeff(0).is_zero() && !cur.is_zero() {
                cur = UPoly::new(cur.var, cur.coeffs[1..].to_vec());
            }
        }
        if cur.degree() == 0 {
            return Some(roots);
        }
        let a0 = cur.coeff(0).to_integer().abs();
        let an = cur.lc().to_integer().abs();
        let limit = BigInt::from(1_000_000_000_000i64);
        if a0 > limit || an > limit {
            return None;
        }
        let nums = super::factor::small_divisors(&a0)?;
        let dens = super::factor::small_divisors(&an)?;
        for n in &nums {
            for d in &dens {
                if !n.gcd(d).is_one() {
                    continue;
                }
                for s in [1i64, -1] {
                    let r = BigRational::new(n * s, d.clone());
                    if cur.eval(&r).is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        Some(roots)
    }

    /// `self` as a polynomial in the other variable of degree 0.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(super::rational::to_f64).collect()
    }

    /// Compact textual form, e.g. `y^2-3/2*y+1`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => self.var.name().to_string(),
                k => format!("{}^{}", self.var.name(), k),
            };
            push_term(&mut s, c, &mono);
        }
        s
    }
}

/// Appends `c*mono` to a sum being rendered.
pub(crate) fn push_term(s: &mut String, c: &BigRational, mono: &str) {
    let neg = c.is_negative();
    let a = c.abs();
    if s.is_empty() {
        if neg {
            s.push('-');
        }
    } else {
        s.push(if neg { '-' } else { '+' });
    }
    if mono.is_empty() {
        s.push_str(&fmt_rational(&a));
    } else if a.is_one() {
        s.push_str(mono);
    } else {
        s.push_str(&fmt_rational(&a));
        s.push('*');
        s.push_str(mono);
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Canonical order: degree first, then coefficients from the top, smaller
/// magnitude first and negative before positive.
impl Ord for UPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.var
            .cmp(&other.var)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| {
                for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                    let o = coeff_order(a, b);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for UPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn coeff_order(a: &BigRational, b: &BigRational) -> Ordering {
    a.abs().cmp(&b.abs()).then(a.cmp(b))
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UPoly::new(pick_var(self, rhs), coeffs)
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UPoly::new(pick_var(self, rhs), coeffs)
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        let var = pick_var(self, rhs);
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero(var);
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UPoly::new(var, coeffs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly { var: self.var, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UPoly {
            type Output = UPoly;
            fn $m(self, rhs: UPoly) -> UPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        -&self
    }
}

// Constants carry no meaningful variable; prefer the tag of a non-constant operand.
fn pick_var(a: &UPoly, b: &UPoly) -> Var {
    if a.is_constant() && !b.is_constant() {
        b.var
    } else {
        a.var
    }
}

/// Refines nonzero polynomials into a pairwise coprime monic basis.
///
/// Each input equals its leading unit times `prod basis[j]^exponents[i][j]`.
pub fn coprime_basis(fs: &[UPoly]) -> (Vec<UPoly>, Vec<Vec<u32>>) {
    let mut basis: Vec<UPoly> = Vec::new();
    for f in fs {
        assert!(!f.is_zero(), "coprime basis of the zero polynomial");
        if f.degree() > 0 {
            basis.push(f.monic());
        }
    }
    // Replacing a non-coprime pair (a, b) by (g, a/g, b/g) strictly lowers the
    // total degree, so this terminates.
    'refine: loop {
        basis.sort();
        basis.dedup();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let g = basis[i].gcd(&basis[j]);
                if g.degree() == 0 {
                    continue;
                }
                let b = basis.swap_remove(j);
                let a = basis.swap_remove(i);
                for p in [a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap(), g] {
                    if p.degree() > 0 {
                        basis.push(p);
                    }
                }
                continue 'refine;
            }
        }
        break;
    }
    let exps = fs
        .iter()
        .map(|f| basis.iter().map(|b| f.multiplicity_of(b)).collect())
        .collect();
    (basis, exps)
}

/// Integer helper used by renderers and tests.
pub fn upoly_int(var: Var, coeffs: &[i64]) -> UPoly {
    UPoly::new(var, coeffs.iter().map(|&c| BigRational::from_integer(int(c))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(c: &[i64]) -> UPoly {
        UPoly::from_ints(Var::X, c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(x(&[-1, 0, 1]).gcd(&x(&[1, -2, 1])), x(&[-1, 1]));
        let f = x(&[2, 0, 4]);
        assert_eq!(f.gcd(&UPoly::zero(Var::X)), f.monic());
        assert_eq!(x(&[1, 0, 1]).gcd(&x(&[-2, 1])), x(&[1]));
    }

    #[test]
    fn division_reconstructs() {
        let f = x(&[3, -1, 0, 2, 5]);
        let d = x(&[1, 2, 3]);
        let (q, r) = f.div_rem(&d);
        assert_eq!(&(&q * &d) + &r, f);
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn squarefree_examples() {
        // (x-1)^2 (x+2)
        let f = &x(&[-1, 1]).pow(2) * &x(&[2, 1]);
        assert_eq!(f.squarefree_decomposition(), vec![(x(&[2, 1]), 1), (x(&[-1, 1]), 2)]);
        let g = x(&[-2, 0, 3]);
        assert_eq!(g.squarefree_decomposition(), vec![(g.monic(), 1)]);
        assert!(x(&[5]).squarefree_decomposition().is_empty());
    }

    #[test]
    fn coprime_basis_examples() {
        let (b, e) = coprime_basis(&[x(&[-1, 0, 1]), x(&[-1, 1])]);
        assert_eq!(b, vec![x(&[-1, 1]), x(&[1, 1])]);
        assert_eq!(e, vec![vec![1, 1], vec![1, 0]]);
        let f = x(&[1, 0, 1]);
        let (b, e) = coprime_basis(&[f.clone(), f.clone()]);
        assert_eq!(b, vec![f]);
        assert_eq!(e, vec![vec![1], vec![1]]);
    }

    #[test]
    fn render_and_order() {
        assert_eq!(UPoly::from_ints(Var::Y, &[-1, 1]).render(), "y-1");
        assert_eq!(x(&[0, -3, 2]).render(), "2*x^2-3*x");
        let y0 = UPoly::from_ints(Var::Y, &[0, 1]);
        let y1 = UPoly::from_ints(Var::Y, &[-1, 1]);
        assert!(y0 < y1);
    }

    #[test]
    fn rational_roots_found() {
        let f = &(&x(&[-1, 2]) * &x(&[3, 1])) * &x(&[1, 0, 1]);
        assert_eq!(f.rational_roots().unwrap(), vec![rat(-3), BigRational::new(int(1), int(2))]);
    }
}
