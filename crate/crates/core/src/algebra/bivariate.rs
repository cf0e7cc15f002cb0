//! Bivariate gcd, irreducibility certification and factorization over Q.
//!
//! Factorization specializes `y := c`, factors the univariate image, lifts the
//! factors (y - c)-adically and recombines by trial division.

use num_rational::BigRational;
use num_traits::Zero;

use super::bpoly::BPoly;
use super::factor::{factor_q, is_irreducible_q};
use super::rational::rat;
use super::resultant::{prem, trim};
use super::upoly::{UPoly, Var};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    Certified,
    Unknown,
}

/// Integer specialization points tried, in order: 0, 1, -1, 2, -2, ...
pub fn specialization_points(n: usize) -> impl Iterator<Item = i64> {
    (0..n as i64).map(|k| if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) })
}

/// Primitive part with respect to `v` (content in the other variable removed).
pub fn primitive_part_in(f: &BPoly, v: Var) -> BPoly {
    let c = f.content_in(v);
    if c.degree() == 0 {
        return f.clone();
    }
    let coeffs: Vec<UPoly> = f.coeffs_in(v).iter().map(|a| a.div_exact(&c).unwrap()).collect();
    BPoly::from_coeffs_in(v, &coeffs)
}

/// Greatest common divisor in Q[x, y], normalized by `primitive_int`.
pub fn gcd(a: &BPoly, b: &BPoly) -> BPoly {
    if a.is_zero() {
        return b.primitive_int();
    }
    if b.is_zero() {
        return a.primitive_int();
    }
    let ca = a.content_in(Var::X);
    let cb = b.content_in(Var::X);
    let cg = BPoly::from_upoly(&ca.gcd(&cb));
    let mut p = primitive_part_in(a, Var::X);
    let mut q = primitive_part_in(b, Var::X);
    if p.deg_x() < q.deg_x() {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        if q.deg_x() == 0 {
            break BPoly::one();
        }
        let mut r = prem(&p.coeffs_in(Var::X), &q.coeffs_in(Var::X));
        trim(&mut r);
        if r.is_empty() {
            break q;
        }
        let r = primitive_part_in(&BPoly::from_coeffs_in(Var::X, &r), Var::X);
        p = q;
        q = r;
    };
    (&cg * &g).primitive_int()
}

/// Sound sufficient irreducibility test; never certifies a reducible polynomial.
pub fn certify_irreducible(f: &BPoly) -> Certification {
    if f.deg_x() == 0 || f.deg_y() == 0 {
        return match f.as_upoly(if f.deg_x() == 0 { Var::Y } else { Var::X }) {
            Some(u) if is_irreducible_q(&u).unwrap_or(false) => Certification::Certified,
            _ => Certification::Unknown,
        };
    }
    for v in [Var::X, Var::Y] {
        if f.deg(v) == 1 && f.content_in(v).degree() == 0 {
            return Certification::Certified;
        }
    }
    if f.content_in(Var::X).degree() > 0 {
        return Certification::Unknown;
    }
    let n = f.deg_x();
    let lc = f.lc_in(Var::X);
    for c in specialization_points(12) {
        let c = rat(c);
        if lc.eval(&c).is_zero() {
            continue;
        }
        let s = f.eval_at(Var::Y, &c);
        if s.degree() == n as usize && is_irreducible_q(&s).unwrap_or(false) {
            return Certification::Certified;
        }
    }
    Certification::Unknown
}

/// A factorization `unit * prod(f_i^e_i)` with each `f_i` irreducible in
/// canonical primitive integer form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFactorization {
    pub unit: BigRational,
    pub factors: Vec<(BPoly, u32)>,
}

impl BFactorization {
    pub fn expand(&self) -> BPoly {
        let mut acc = BPoly::constant(self.unit.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }
}

/// Complete factorization over Q.
pub fn factor(f: &BPoly) -> Result<BFactorization> {
    assert!(!f.is_zero(), "factorization of zero");
    let mut irreducibles: Vec<BPoly> = Vec::new();
    let cy = f.content_in(Var::X);
    let f1 = primitive_part_in(f, Var::X);
    let cx = f1.content_in(Var::Y);
    let f2 = primitive_part_in(&f1, Var::Y);
    for c in [&cy, &cx] {
        if c.degree() > 0 {
            for (g, _) in factor_q(c)?.factors {
                irreducibles.push(BPoly::from_upoly(&g).primitive_int());
            }
        }
    }
    if f2.deg_x() > 0 {
        let g = gcd(&f2, &f2.partial(Var::X));
        let sqfree = f2.div_exact(&g).expect("gcd divides");
        irreducibles.extend(factor_squarefree_primitive(&sqfree.primitive_int())?);
    }
    let mut factors = Vec::new();
    let mut rest = f.clone();
    for p in irreducibles {
        let mut e = 0;
        while let Some(q) = rest.div_exact(&p) {
            rest = q;
            e += 1;
        }
        debug_assert!(e > 0);
        factors.push((p, e));
    }
    assert!(rest.is_constant(), "factorization lost a factor");
    factors.sort();
    Ok(BFactorization { unit: rest.coeff(0, 0), factors })
}

/// Irreducible factors of a square-free polynomial primitive in both variables
/// with positive x-degree.
fn factor_squarefree_primitive(f: &BPoly) -> Result<Vec<BPoly>> {
    if f.deg_x() == 1 || f.deg_y() <= 1 {
        return Ok(vec![f.primitive_int()]);
    }
    let n = f.deg_x() as usize;
    let lc = f.lc_in(Var::X);
    let c = specialization_points(200)
        .map(rat)
        .find(|c| {
            if lc.eval(c).is_zero() {
                return false;
            }
            let s = f.eval_at(Var::Y, c);
            s.degree() == n && s.is_squarefree()
        })
        .expect("a square-free specialization exists");
    let image = f.eval_at(Var::Y, &c);
    let fac = factor_q(&image)?;
    if fac.factors.len() == 1 {
        return Ok(vec![f.primitive_int()]);
    }
    let shifted = f.shift_y(&c);
    let lc_deg = lc.degree();
    let prec = f.deg_y() as usize + lc_deg + 1;
    let series = monic_series(&shifted, prec);
    let mut lifted: Vec<Vec<UPoly>> = Vec::new();
    for (i, (g, _)) in fac.factors.iter().enumerate() {
        let others = fac
            .factors
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(UPoly::one(Var::X), |acc, (_, (h, _))| &acc * h);
        lifted.push(lift_factor(&series, g, &others, prec));
    }
    let mut out = Vec::new();
    let mut rest = shifted.clone();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let lcs = BPoly::from_upoly(&rest.lc_in(Var::X).with_var(Var::Y));
            let mut cand = series_to_bpoly(&truncate(
                &mul_series(&bpoly_to_series(&lcs, prec), &product(&lifted, &subset, prec), prec),
                prec,
            ));
            cand = primitive_part_in(&cand, Var::X);
            if cand.deg_x() > 0 {
                if let Some(q) = rest.div_exact(&cand) {
                    out.push(cand);
                    rest = q;
                    for &i in subset.iter().rev() {
                        lifted.remove(i);
                    }
                    found = true;
                    break;
                }
            }
            if !next_subset(&mut subset, lifted.len()) {
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    out.push(rest);
    let neg = -c;
    Ok(out.into_iter().map(|g| g.shift_y(&neg).primitive_int()).collect())
}

/// Power series in y with polynomial-in-x coefficients: entry k multiplies y^k.
type Series = Vec<UPoly>;

fn bpoly_to_series(f: &BPoly, prec: usize) -> Series {
    let mut s = f.coeffs_in(Var::Y);
    for c in s.iter_mut() {
        *c = c.clone().with_var(Var::X);
    }
    s.resize(prec, UPoly::zero(Var::X));
    s.truncate(prec);
    s
}

fn series_to_bpoly(s: &Series) -> BPoly {
    BPoly::from_coeffs_in(Var::Y, &s.iter().map(|c| c.clone().with_var(Var::Y)).collect::<Vec<_>>())
}

fn truncate(s: &Series, prec: usize) -> Series {
    let mut s = s.clone();
    s.resize(prec, UPoly::zero(Var::X));
    s
}

fn mul_series(a: &Series, b: &Series, prec: usize) -> Series {
    let mut out = vec![UPoly::zero(Var::X); prec];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(prec.saturating_sub(i)) {
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

fn product(lifted: &[Series], subset: &[usize], prec: usize) -> Series {
    let mut acc = vec![UPoly::zero(Var::X); prec];
    acc[0] = UPoly::one(Var::X);
    for &i in subset {
        acc = mul_series(&acc, &lifted[i], prec);
    }
    acc
}

/// `f / lc_x(f)` as a series in y (lc_x(f)(0) must be nonzero); monic in x.
fn monic_series(f: &BPoly, prec: usize) -> Series {
    let lc = f.lc_in(Var::X);
    let l = lc.coeffs();
    let mut inv = vec![BigRational::zero(); prec];
    inv[0] = l[0].recip();
    for k in 1..prec {
        let mut acc = BigRational::zero();
        for j in 1..=k.min(l.len() - 1) {
            acc += &l[j] * &inv[k - j];
        }
        inv[k] = -acc * &inv[0];
    }
    let inv_series: Series = inv.into_iter().map(|c| UPoly::constant(Var::X, c)).collect();
    mul_series(&bpoly_to_series(f, prec), &inv_series, prec)
}

/// Lifts the monic factor `g` of `series mod y` (cofactor `h`) to precision `prec`.
fn lift_factor(series: &Series, g: &UPoly, h: &UPoly, prec: usize) -> Series {
    let (_, _, t) = g.ext_gcd(h);
    let mut gs: Series = vec![UPoly::zero(Var::X); prec];
    let mut hs: Series = vec![UPoly::zero(Var::X); prec];
    gs[0] = g.clone();
    hs[0] = h.clone();
    for k in 1..prec {
        let gh = mul_series(&gs, &hs, k + 1);
        let e = &series[k] - &gh[k];
        if e.is_zero() {
            continue;
        }
        let dg = (&e * &t).rem(g);
        let dh = (&e - &(&dg * h)).div_exact(g).expect("Hensel correction divides");
        gs[k] = dg;
        hs[k] = dh;
    }
    gs
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    if k > n {
        return false;
    }
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Exact irreducibility: the certification criterion first, complete
/// factorization when it is inconclusive.
pub fn is_irreducible(f: &BPoly) -> Result<bool> {
    if certify_irreducible(f) == Certification::Certified {
        return Ok(true);
    }
    let fac = factor(f)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bp(t: &[(u32, u32, i64)]) -> BPoly {
        BPoly::from_terms(t)
    }

    #[test]
    fn certification_examples() {
        assert_eq!(certify_irreducible(&bp(&[(1, 0, 1), (0, 2, -1)])), Certification::Certified);
        assert_eq!(certify_irreducible(&bp(&[(2, 0, 1), (0, 2, -1)])), Certification::Unknown);
        assert_eq!(certify_irreducible(&bp(&[(2, 0, 1), (0, 1, -1)])), Certification::Certified);
        // y*(x + 1): degree one in x but not primitive
        assert_eq!(certify_irreducible(&bp(&[(1, 1, 1), (0, 1, 1)])), Certification::Unknown);
    }

    #[test]
    fn gcd_examples() {
        let a = bp(&[(2, 0, 1), (0, 2, -1)]);
        let b = bp(&[(2, 0, 1), (1, 1, -2), (0, 2, 1)]);
        assert_eq!(gcd(&a, &b), bp(&[(1, 0, 1), (0, 1, -1)]));
    }

    #[test]
    fn factors_difference_of_squares() {
        let f = bp(&[(2, 0, 1), (0, 2, -1)]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors, vec![(bp(&[(1, 0, 1), (0, 1, -1)]), 1), (bp(&[(1, 0, 1), (0, 1, 1)]), 1)]);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn factors_with_contents_and_powers() {
        let a = bp(&[(2, 0, 1), (0, 3, -2), (1, 1, 1)]);
        let b = bp(&[(2, 1, 3), (0, 0, 1)]);
        let f = &(&(&a * &b.pow(2)) * &bp(&[(0, 1, 1), (0, 0, -1)])) * &bp(&[(0, 0, 6)]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.factors.len(), 3);
    }

    #[test]
    fn irreducible_with_reducible_specializations() {
        // x^2 - y^3 - y: specialization at 0 is x^2 (not square-free)
        let f = bp(&[(2, 0, 1), (0, 3, -1), (0, 1, -1)]);
        assert!(is_irreducible(&f).unwrap());
    }

    fn small_factor() -> impl Strategy<Value = BPoly> {
        prop::collection::vec((0u32..3, 0u32..3, -3i64..4), 1..4)
            .prop_map(|t| BPoly::from_terms(&t))
            .prop_filter("nonconstant", |p| !p.is_constant())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn factorization_reconstructs(a in small_factor(), b in small_factor()) {
            let f = &a * &b;
            let fac = factor(&f).unwrap();
            prop_assert_eq!(fac.expand(), f);
            for (g, _) in &fac.factors {
                prop_assert!(is_irreducible(g).unwrap() || g.deg_x() == 0 || g.deg_y() == 0);
            }
        }
    }
}
