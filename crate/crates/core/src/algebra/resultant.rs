//! Resultants by the subresultant pseudo-remainder sequence, generic over an
//! integral domain with exact division.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bpoly::BPoly;
use super::upoly::{UPoly, Var};

/// An integral domain in which divisions known to be exact can be carried out.
pub trait Domain: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// `self / o`, assuming the quotient lies in the domain.
    fn div_exact(&self, o: &Self) -> Self;

    fn neg(&self) -> Self {
        self.zero_like().sub(self)
    }

    fn pow(&self, e: usize) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Domain for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

impl Domain for UPoly {
    fn zero_like(&self) -> Self {
        UPoly::zero(self.var())
    }
    fn one_like(&self) -> Self {
        UPoly::one(self.var())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div_exact(&self, o: &Self) -> Self {
        UPoly::div_exact(self, o).expect("inexact division in resultant")
    }
}

pub(crate) fn trim<D: Domain>(p: &mut Vec<D>) {
    while p.last().is_some_and(|c| c.is_zero_elem()) {
        p.pop();
    }
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
pub(crate) fn prem<D: Domain>(a: &[D], b: &[D]) -> Vec<D> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<D> = a.to_vec();
    let delta = a.len() - b.len();
    let mut steps = 0;
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub(&lr.mul(bj));
        }
        trim(&mut r);
        steps += 1;
    }
    let extra = lb.pow(delta + 1 - steps);
    r.iter().map(|c| c.mul(&extra)).collect()
}

/// Resultant of two dense polynomials (ascending coefficients, trimmed, nonempty).
fn resultant_trimmed<D: Domain>(a: &[D], b: &[D]) -> D {
    let unit = a[0].one_like();
    let (mut a, mut b, mut s) = if a.len() < b.len() {
        let sign = (a.len() - 1) * (b.len() - 1) % 2 == 1;
        (b.to_vec(), a.to_vec(), sign)
    } else {
        (a.to_vec(), b.to_vec(), false)
    };
    let mut g = unit.clone();
    let mut h = unit.clone();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            // h^(1-da) * lc(b)^da
            let lb = &b[0];
            let val = if da == 0 {
                unit.clone()
            } else {
                lb.pow(da).div_exact(&h.pow(da - 1))
            };
            return if s { val.neg() } else { val };
        }
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = !s;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return unit.zero_like();
        }
        let denom = g.mul(&h.pow(delta));
        let r: Vec<D> = r.iter().map(|c| c.div_exact(&denom)).collect();
        a = b;
        b = r;
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).div_exact(&h.pow(delta - 1))
        };
    }
}

/// Sylvester resultant with formal degrees `m >= deg a`, `n >= deg b`.
///
/// Coefficient lists are ascending; trailing zeros are allowed and count
/// toward the formal degree only through `m` and `n`.
pub fn resultant_formal<D: Domain>(a: &[D], m: usize, b: &[D], n: usize, zero: &D) -> D {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    let one = zero.one_like();
    if m == 0 && n == 0 {
        return one;
    }
    // a zero polynomial contributes rows of zeros unless it has no rows at all
    if a.is_empty() {
        return if n > 0 { zero.clone() } else { b.first().cloned().unwrap_or_else(|| zero.clone()).pow(m) };
    }
    if b.is_empty() {
        return if m > 0 { zero.clone() } else { a[0].pow(n) };
    }
    let da = a.len() - 1;
    let db = b.len() - 1;
    assert!(da <= m && db <= n, "formal degree below actual degree");
    if da < m && db < n {
        return zero.clone();
    }
    let core = resultant_trimmed(&a, &b);
    if da < m {
        // Res_{m,n} = (-1)^((m-da)*n) lc(b)^(m-da) Res_{da,n}
        let k = m - da;
        let v = core.mul(&b[db].pow(k));
        if (k * n) % 2 == 1 {
            v.neg()
        } else {
            v
        }
    } else if db < n {
        core.mul(&a[da].pow(n - db))
    } else {
        core
    }
}

/// Bareiss determinant of the Sylvester matrix; an independent slow path.
pub fn sylvester_det<D: Domain>(a: &[D], m: usize, b: &[D], n: usize, zero: &D) -> D {
    let size = m + n;
    if size == 0 {
        return zero.one_like();
    }
    let at = |p: &[D], i: usize| p.get(i).cloned().unwrap_or_else(|| zero.clone());
    let mut mat: Vec<Vec<D>> = Vec::with_capacity(size);
    for r in 0..n {
        mat.push((0..size).map(|c| if c >= r && c - r <= m { at(a, m - (c - r)) } else { zero.clone() }).collect());
    }
    for r in 0..m {
        mat.push((0..size).map(|c| if c >= r && c - r <= n { at(b, n - (c - r)) } else { zero.clone() }).collect());
    }
    let mut sign = false;
    let mut prev = zero.one_like();
    for k in 0..size - 1 {
        if mat[k][k].is_zero_elem() {
            match (k + 1..size).find(|&i| !mat[i][k].is_zero_elem()) {
                Some(i) => {
                    mat.swap(k, i);
                    sign = !sign;
                }
                None => return zero.clone(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = mat[i][j].mul(&mat[k][k]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = v.div_exact(&prev);
            }
        }
        prev = mat[k][k].clone();
    }
    let d = mat[size - 1][size - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Resultant of two univariate polynomials.
pub fn resultant_u(f: &UPoly, g: &UPoly) -> BigRational {
    resultant_formal(f.coeffs(), f.degree(), g.coeffs(), g.degree(), &BigRational::zero())
}

/// Eliminates `v`, returning a polynomial in the other variable.
pub fn resultant_in(v: Var, f: &BPoly, g: &BPoly) -> UPoly {
    resultant_in_formal(v, f, f.deg(v) as usize, g, g.deg(v) as usize)
}

/// As [`resultant_in`] with formal degrees in `v`.
pub fn resultant_in_formal(v: Var, f: &BPoly, m: usize, g: &BPoly, n: usize) -> UPoly {
    let fc = f.coeffs_in(v);
    let gc = g.coeffs_in(v);
    let r = resultant_formal(&fc, m, &gc, n, &UPoly::zero(v.other()));
    r.with_var(v.other())
}

pub fn resultant_x(f: &BPoly, g: &BPoly) -> UPoly {
    resultant_in(Var::X, f, g)
}

pub fn resultant_y(f: &BPoly, g: &BPoly) -> UPoly {
    resultant_in(Var::Y, f, g)
}

/// Discriminant of `f` with respect to `v` (up to the sign convention
/// `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`).
pub fn discriminant_in(v: Var, f: &BPoly) -> UPoly {
    let n = f.deg(v) as usize;
    if n == 0 {
        return UPoly::zero(v.other());
    }
    let r = resultant_in(v, f, &f.partial(v));
    let lc = f.lc_in(v);
    let q = r.div_exact(&lc).expect("leading coefficient divides Res(f, f')");
    if (n * (n - 1) / 2) % 2 == 1 {
        -q
    } else {
        q
    }
}

pub fn discriminant_u(f: &UPoly) -> BigRational {
    let n = f.degree();
    if n == 0 {
        return BigRational::zero();
    }
    let r = resultant_u(f, &f.derivative()) / f.lc();
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use proptest::prelude::*;

    fn bp(t: &[(u32, u32, i64)]) -> BPoly {
        BPoly::from_terms(t)
    }

    #[test]
    fn worked_examples() {
        let f = bp(&[(1, 0, 1), (0, 2, -1)]);
        let g = bp(&[(1, 0, 1), (0, 1, -1)]);
        // Res(f, g) = g(y^2) = y^2 - y; the sign is convention-dependent, the divisor is not
        assert_eq!(resultant_x(&f, &g), UPoly::from_ints(Var::Y, &[0, -1, 1]));
        assert_eq!(resultant_x(&g, &f), UPoly::from_ints(Var::Y, &[0, 1, -1]));
        let f = bp(&[(2, 0, 1), (0, 0, 1)]);
        let g = bp(&[(1, 0, 1), (0, 0, -2)]);
        assert_eq!(resultant_x(&f, &g), UPoly::from_ints(Var::Y, &[5]));
        assert_eq!(resultant_x(&f, &BPoly::one()), UPoly::one(Var::Y));
        // zero polynomial of formal degree 0 against a constant
        let z = BigRational::zero();
        assert_eq!(resultant_formal(&[], 0, &[rat(3)], 2, &z), z);
        assert_eq!(resultant_formal(&[], 2, &[rat(3)], 0, &z), rat(9));
        assert_eq!(sylvester_det(&[], 2, &[rat(3)], 0, &z), rat(9));
    }

    #[test]
    fn univariate_matches_sylvester() {
        let f = UPoly::from_ints(Var::X, &[3, 0, -2, 5, 1]);
        let g = UPoly::from_ints(Var::X, &[-1, 4, 2]);
        let z = BigRational::zero();
        assert_eq!(resultant_u(&f, &g), sylvester_det(f.coeffs(), 4, g.coeffs(), 2, &z));
        // formal degree bump
        assert_eq!(
            resultant_formal(f.coeffs(), 5, g.coeffs(), 2, &z),
            sylvester_det(f.coeffs(), 5, g.coeffs(), 2, &z)
        );
        assert_eq!(
            resultant_formal(f.coeffs(), 4, g.coeffs(), 3, &z),
            sylvester_det(f.coeffs(), 4, g.coeffs(), 3, &z)
        );
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant_u(&UPoly::from_ints(Var::X, &[1, 0, 1])), rat(-4));
        let f = bp(&[(2, 0, 1), (0, 1, -1)]);
        assert_eq!(discriminant_in(Var::X, &f), UPoly::from_ints(Var::Y, &[0, 4]));
    }

    fn small_bpoly() -> impl Strategy<Value = BPoly> {
        prop::collection::vec((0u32..3, 0u32..3, -4i64..5), 1..5).prop_map(|t| BPoly::from_terms(&t))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn prs_equals_sylvester(f in small_bpoly(), g in small_bpoly()) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let m = f.deg_x() as usize + 1;
            let n = g.deg_x() as usize;
            let z = UPoly::zero(Var::Y);
            let fc = f.coeffs_in(Var::X);
            let gc = g.coeffs_in(Var::X);
            prop_assert_eq!(resultant_formal(&fc, m, &gc, n, &z), sylvester_det(&fc, m, &gc, n, &z));
            prop_assert_eq!(resultant_x(&f, &g), sylvester_det(&fc, m - 1, &gc, n, &z));
        }

        #[test]
        fn antisymmetry(f in small_bpoly(), g in small_bpoly()) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let s = (f.deg_x() * g.deg_x()) % 2 == 1;
            let a = resultant_x(&f, &g);
            let b = resultant_x(&g, &f);
            prop_assert_eq!(a, if s { -b } else { b });
        }

        #[test]
        fn multiplicative(f in small_bpoly(), h in small_bpoly(), g in small_bpoly()) {
            prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
            let fh = &f * &h;
            prop_assert_eq!(resultant_x(&fh, &g), &resultant_x(&f, &g) * &resultant_x(&h, &g));
        }
    }
}
