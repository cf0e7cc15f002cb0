//! Arakelov divisors on the arithmetic surface of P¹ over Z, with the
//! Fubini–Study Green function at the archimedean place.
//!
//! A divisor is a horizontal part (places of Q(y), including infinity), a
//! vertical part (integer multiples of the fibers over primes) and a real
//! multiple of the fiber at infinity.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::algebra::rational::{ln_abs, ln_abs_int};
use crate::algebra::resultant::resultant_u;
use crate::algebra::roots::certified_roots;
use crate::algebra::{UPoly, Var};
use crate::divisor::{
    principal_divisor_u, restrict_to_kp, Divisor, DivisorDelta, DivisorKp, UPlace,
};
use crate::error::{Error, Result};
use crate::pairing::{pair_bounded, Side, DEFAULT_SHIFT_BOUND};

/// ∫ log(1 + |z|²) dμ for the Fubini–Study probability measure.
pub const KAPPA: f64 = 1.0;

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ArakelovDivisor {
    pub horizontal: Divisor<UPlace>,
    pub vertical: BTreeMap<BigInt, i64>,
    pub arch: f64,
}

impl ArakelovDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut vertical = self.vertical.clone();
        for (p, k) in &o.vertical {
            let e = vertical.entry(p.clone()).or_insert(0);
            *e += k;
            if *e == 0 {
                vertical.remove(p);
            }
        }
        ArakelovDivisor { horizontal: self.horizontal.add(&o.horizontal), vertical, arch: self.arch + o.arch }
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        ArakelovDivisor {
            horizontal: self.horizontal.scale(k),
            vertical: self.vertical.iter().map(|(p, e)| (p.clone(), e * k)).collect(),
            arch: self.arch * k as f64,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    /// Degree of the generic fiber.
    pub fn degree(&self) -> i64 {
        self.horizontal.degree()
    }
}

impl fmt::Display for ArakelovDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.horizontal)?;
        for (p, k) in &self.vertical {
            write!(f, " + {k}*F_{p}")?;
        }
        write!(f, " + {}*F_inf", self.arch)
    }
}

/// Fubini–Study Green function on the finite part of P¹(C).
pub fn green_fs(z: Complex64, w: Complex64) -> f64 {
    let n = ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt();
    -((z - w).norm() / n).ln()
}

/// Green function between a finite point and infinity.
pub fn green_fs_infinity(z: Complex64) -> f64 {
    0.5 * (1.0 + z.norm_sqr()).ln()
}

/// ∫ log|z − α| dμ(z).
pub fn point_integral(alpha: Complex64) -> f64 {
    green_fs_infinity(alpha)
}

/// Numeric data of a place of Q(y): roots and leading coefficient of its
/// primitive integer form.
struct PlaceData {
    roots: Vec<Complex64>,
    form: Option<UPoly>,
}

fn root_eps(p: &UPoly) -> f64 {
    let c = p.to_f64_coeffs();
    let lc = c.last().copied().unwrap_or(1.0).abs();
    let bound = 1.0 + c.iter().map(|a| a.abs() / lc).fold(0.0, f64::max);
    1e-9 * bound
}

pub fn roots_of(p: &UPoly) -> Result<Vec<Complex64>> {
    Ok(certified_roots(p, root_eps(p))?.into_iter().map(|r| r.z).collect())
}

fn place_data(place: &UPlace) -> Result<PlaceData> {
    match place {
        UPlace::Finite(p) => Ok(PlaceData { roots: roots_of(p)?, form: Some(p.primitive_int()) }),
        UPlace::Infinity(_) => Ok(PlaceData { roots: vec![], form: None }),
    }
}

/// Local intersection of two distinct horizontal places.
fn horizontal_pair(a: &PlaceData, b: &PlaceData) -> f64 {
    match (&a.form, &b.form) {
        (Some(p), Some(q)) => {
            let finite = ln_abs(&resultant_u(p, q));
            let green: f64 = a.roots.iter().flat_map(|x| b.roots.iter().map(move |y| green_fs(*x, *y))).sum();
            finite + green
        }
        (Some(p), None) | (None, Some(p)) => {
            let roots = if a.form.is_some() { &a.roots } else { &b.roots };
            ln_abs(&p.lc()) + roots.iter().map(|z| green_fs_infinity(*z)).sum::<f64>()
        }
        (None, None) => unreachable!("infinity paired with itself"),
    }
}

/// Archimedean coefficient attached to a horizontal place by the canonical
/// lift: it makes the lifted divisor orthogonal to the fibers at infinity in
/// the sense of the product formula.
pub fn arch_lambda(place: &UPlace) -> Result<f64> {
    match place {
        UPlace::Infinity(_) => Ok(0.5 * KAPPA),
        UPlace::Finite(p) => {
            let q = p.primitive_int();
            let roots = roots_of(&q)?;
            let s: f64 = roots.iter().map(|z| point_integral(*z)).sum();
            Ok(-ln_abs(&q.lc()) - s + 0.5 * KAPPA * q.degree() as f64)
        }
    }
}

/// Lift of a divisor of Q(y) with archimedean coefficients from `arch_lambda`.
pub fn arakelov_from_divisor(d: &Divisor<UPlace>) -> Result<ArakelovDivisor> {
    let mut arch = 0.0;
    for (p, k) in d.iter() {
        arch += k as f64 * arch_lambda(p)?;
    }
    Ok(ArakelovDivisor { horizontal: d.clone(), vertical: BTreeMap::new(), arch })
}

/// Prime factorization of a nonzero integer by trial division.
pub fn prime_factors(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    let mut m = n.abs().to_u64().filter(|m| *m <= 1_000_000_000_000_000).ok_or_else(|| {
        Error::Invalid(format!("integer {n} is too large to factor by trial division"))
    })?;
    assert!(m > 0);
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        let mut e = 0;
        while m % d == 0 {
            m /= d;
            e += 1;
        }
        if e > 0 {
            out.push((BigInt::from(d), e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((BigInt::from(m), 1));
    }
    Ok(out)
}

fn add_vertical(v: &mut BTreeMap<BigInt, i64>, n: &BigInt, sign: i64) -> Result<()> {
    for (p, e) in prime_factors(n)? {
        let entry = v.entry(p.clone()).or_insert(0);
        *entry += sign * e as i64;
        if *entry == 0 {
            v.remove(&p);
        }
    }
    Ok(())
}

fn log_integral(g: &UPoly) -> Result<f64> {
    if g.degree() == 0 {
        return Ok(ln_abs(&g.lc()));
    }
    let roots = roots_of(g)?;
    Ok(ln_abs(&g.lc()) + roots.iter().map(|z| point_integral(*z)).sum::<f64>())
}

/// Principal Arakelov divisor of `num/den` in Q(y): horizontal zeros and
/// poles, vertical valuations of the rational content, and −∫ log|f| dμ at
/// infinity.
pub fn principal_arakelov(num: &UPoly, den: &UPoly) -> Result<ArakelovDivisor> {
    let horizontal = principal_divisor_u(num, den)?;
    let c: BigRational = num.content() / den.content();
    let mut vertical = BTreeMap::new();
    add_vertical(&mut vertical, c.numer(), 1)?;
    add_vertical(&mut vertical, c.denom(), -1)?;
    let arch = -(log_integral(num)? - log_integral(den)?);
    Ok(ArakelovDivisor { horizontal, vertical, arch })
}

fn vertical_log(v: &BTreeMap<BigInt, i64>) -> f64 {
    v.iter().map(|(p, k)| *k as f64 * ln_abs_int(p)).sum()
}

/// Arakelov intersection number; the horizontal parts must have disjoint support.
pub fn intersect(d: &ArakelovDivisor, e: &ArakelovDivisor) -> Result<f64> {
    if let Some(p) = d.horizontal.common_place(&e.horizontal) {
        return Err(Error::CommonSupport(format!("{p}")));
    }
    let dd: Vec<(PlaceData, i64)> =
        d.horizontal.iter().map(|(p, k)| Ok((place_data(p)?, k))).collect::<Result<_>>()?;
    let ed: Vec<(PlaceData, i64)> =
        e.horizontal.iter().map(|(p, k)| Ok((place_data(p)?, k))).collect::<Result<_>>()?;
    let mut total = 0.0;
    for (a, ka) in &dd {
        for (b, kb) in &ed {
            total += (ka * kb) as f64 * horizontal_pair(a, b);
        }
    }
    let (dg, eg) = (d.degree() as f64, e.degree() as f64);
    total += dg * (vertical_log(&e.vertical) + e.arch) + eg * (vertical_log(&d.vertical) + d.arch);
    Ok(total)
}

fn y_minus(c: i64) -> UPoly {
    UPoly::from_ints(Var::Y, &[-c, 1])
}

/// The representative arak(−2∞) − 2·div(y − c) of the relative dualizing
/// class; its horizontal part is −2(y − c).
pub fn canonical_rep(c: i64) -> Result<ArakelovDivisor> {
    let inf = Divisor::single(UPlace::Infinity(Var::Y), -2);
    let principal = principal_arakelov(&y_minus(c), &UPoly::one(Var::Y))?;
    Ok(arakelov_from_divisor(&inf)?.sub(&principal.scale(2)))
}

/// Smallest |c| (0, 1, −1, 2, …) such that y − c is outside `d`.
pub fn choose_rep_point(d: &Divisor<UPlace>) -> i64 {
    (0..)
        .flat_map(|k: i64| if k == 0 { vec![0] } else { vec![k, -k] })
        .find(|c| d.coeff(&UPlace::finite(&y_minus(*c))) == 0)
        .unwrap()
}

/// Degree of an Arakelov divisor against the relative dualizing class.
pub fn deg_kp(d: &ArakelovDivisor) -> Result<f64> {
    deg_kp_at(d, choose_rep_point(&d.horizontal))
}

pub fn deg_kp_at(d: &ArakelovDivisor, c: i64) -> Result<f64> {
    intersect(d, &canonical_rep(c)?)
}

/// deg_Kp of the canonical lift of a divisor of K'.
pub fn deg_kp_divisor(d: &DivisorKp) -> Result<f64> {
    deg_kp(&arakelov_from_divisor(d)?)
}

/// Σ N_{Δ/K'} weighted by coefficients.
pub fn norm_degree(a: &DivisorDelta) -> i64 {
    a.iter().map(|(p, k)| k * p.degree_over_kp()).sum()
}

/// The bracket {A, b} = N(b)·deg(A|K') + N(A)·deg(b|K').
pub fn bracket(a: &DivisorDelta, b: &DivisorDelta) -> Result<f64> {
    let da = deg_kp_divisor(&restrict_to_kp(a))?;
    let db = deg_kp_divisor(&restrict_to_kp(b))?;
    Ok(norm_degree(b) as f64 * da + norm_degree(a) as f64 * db)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalarProduct {
    pub bracket: f64,
    pub pairing_degree: f64,
    pub value: f64,
}

/// (A, b) = {A, b} − deg_Kp ⟨A, b⟩_{K'}.
pub fn residue_scalar_product(a: &DivisorDelta, b: &DivisorDelta) -> Result<ScalarProduct> {
    residue_scalar_product_bounded(a, b, DEFAULT_SHIFT_BOUND)
}

pub fn residue_scalar_product_bounded(a: &DivisorDelta, b: &DivisorDelta, shift_bound: i64) -> Result<ScalarProduct> {
    let br = bracket(a, b)?;
    let p = pair_bounded(a, b, Side::Kprime, shift_bound)?;
    let pd = deg_kp_divisor(&p)?;
    Ok(ScalarProduct { bracket: br, pairing_degree: pd, value: br - pd })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BPoly;
    use crate::divisor::{principal_divisor, DeltaElement, Place};
    use crate::quadrature;

    fn y(c: &[i64]) -> UPoly {
        UPoly::from_ints(Var::Y, c)
    }

    fn place(c: &[i64]) -> UPlace {
        UPlace::finite(&y(c))
    }

    #[test]
    fn closed_forms_against_quadrature() {
        assert!((quadrature::kappa_by_quadrature(1e-13) - KAPPA).abs() < 1e-9);
        for a in [Complex64::new(1.0, 0.0), Complex64::new(2.0, 1.0), Complex64::new(0.0, 10.0), Complex64::new(0.0, 0.0)] {
            let q = quadrature::point_integral_by_quadrature(a.norm(), 1e-13);
            assert!((q - point_integral(a)).abs() < 1e-9, "{a}");
        }
        assert!((point_integral(Complex64::new(1.0, 0.0)) - 0.5 * 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn principal_divisor_of_y_has_no_arch_part() {
        let d = principal_arakelov(&y(&[0, 1]), &UPoly::one(Var::Y)).unwrap();
        assert!(d.arch.abs() < 1e-15);
        assert!(d.vertical.is_empty());
        assert_eq!(d.horizontal.coeff(&place(&[0, 1])), 1);
        assert_eq!(d.horizontal.coeff(&UPlace::Infinity(Var::Y)), -1);
    }

    #[test]
    fn product_formula() {
        let f = principal_arakelov(&y(&[-1, 1]), &UPoly::one(Var::Y)).unwrap();
        let e = arakelov_from_divisor(&Divisor::single(place(&[-3, 1]), 1)).unwrap();
        assert!(intersect(&f, &e).unwrap().abs() < 1e-9);

        let g = principal_arakelov(&y(&[-9, 0, 6]), &y(&[10, 14])).unwrap();
        assert_eq!(g.vertical.get(&BigInt::from(2)), Some(&-1));
        assert_eq!(g.vertical.get(&BigInt::from(3)), Some(&1));
        let e = arakelov_from_divisor(&Divisor::from_terms([(place(&[1, 0, 1]), 2), (place(&[-7, 1]), -1)])).unwrap();
        assert!(intersect(&g, &e).unwrap().abs() < 1e-9);
        let fiber = ArakelovDivisor { arch: 1.5, ..ArakelovDivisor::zero() };
        assert!(intersect(&g, &fiber).unwrap().abs() < 1e-12);
    }

    #[test]
    fn common_support_rejected() {
        let a = arakelov_from_divisor(&Divisor::single(place(&[-3, 1]), 1)).unwrap();
        assert!(matches!(intersect(&a, &a), Err(Error::CommonSupport(_))));
    }

    #[test]
    fn canonical_degree_is_independent_of_rep() {
        let d = Divisor::from_terms([(place(&[-3, 0, 2]), 1), (place(&[1, 1]), -2), (UPlace::Infinity(Var::Y), 3)]);
        let a = arakelov_from_divisor(&d).unwrap();
        let d2 = deg_kp_at(&a, 2).unwrap();
        let d5 = deg_kp_at(&a, 5).unwrap();
        assert!((d2 - d5).abs() < 1e-9);
        assert!((d2 + 2.0 * d.degree() as f64).abs() < 1e-9);
    }

    #[test]
    fn rep_point_avoids_support() {
        let d = Divisor::from_terms([(place(&[0, 1]), 1), (place(&[-1, 1]), 1)]);
        assert_eq!(choose_rep_point(&d), -1);
    }

    #[test]
    fn scalar_product_on_principal_divisor() {
        // the canonical lift has self-intersection −2 on the fibers at infinity,
        // so the principal divisor of x − y does not pair to zero
        let h = DeltaElement::from_poly(&(&BPoly::x() - &BPoly::y())).unwrap();
        let a = principal_divisor(&h);
        let b = Divisor::single(Place::from_irreducible(&BPoly::from_terms(&[(1, 0, 1), (0, 2, -1)])), 1);
        let sp = residue_scalar_product(&a, &b).unwrap();
        assert!((sp.value - 2.0).abs() < 1e-9, "{sp:?}");
    }
}
