//! Independent numeric oracles.

use num_complex::Complex64;

use crate::algebra::rational::{ln_abs, to_f64};
use crate::algebra::resultant::{resultant_u, resultant_x, resultant_y};
use crate::algebra::roots::complex_roots;
use crate::algebra::{BPoly, UPoly, Var};
use crate::arakelov::{green_fs, roots_of};
use crate::divisor::{Divisor, UPlace};
use crate::error::Result;
use crate::quadrature;

fn eval_complex(f: &BPoly, x: Complex64, y: Complex64) -> (Complex64, f64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for (&(i, j), c) in f.terms() {
        let c = to_f64(c);
        let m = x.powu(i) * y.powu(j);
        v += m * c;
        scale += c.abs() * m.norm();
    }
    (v, scale)
}

/// Number of intersection points of two binary curves in P¹ × P¹ found by
/// matching the roots of Res_x and Res_y, when every intersection is simple
/// and affine; `None` when that cannot be certified.
pub fn numeric_intersection_count(f: &BPoly, g: &BPoly) -> Result<Option<usize>> {
    let rx = resultant_x(f, g);
    let ry = resultant_y(f, g);
    if rx.is_zero() || ry.is_zero() || !rx.is_squarefree() || !ry.is_squarefree() {
        return Ok(None);
    }
    let meets = |a: &UPoly, b: &UPoly| a.gcd(b).degree() > 0;
    let corner = |h: &BPoly| h.coeff(h.deg_x(), h.deg_y()) == num_rational::BigRational::default();
    if meets(&f.lc_in(Var::X), &g.lc_in(Var::X)) || meets(&f.lc_in(Var::Y), &g.lc_in(Var::Y)) || (corner(f) && corner(g)) {
        return Ok(None);
    }
    let ys = complex_roots(&rx, 1e-9)?;
    let xs = complex_roots(&ry, 1e-9)?;
    let mut count = 0;
    for &y in &ys {
        for &x in &xs {
            let (fv, fs) = eval_complex(f, x, y);
            let (gv, gs) = eval_complex(g, x, y);
            if fv.norm() <= 1e-7 * fs.max(1.0) && gv.norm() <= 1e-7 * gs.max(1.0) {
                count += 1;
            }
        }
    }
    Ok(Some(count))
}

/// The archimedean coefficient of a place computed with quadrature in place
/// of the closed-form integrals.
pub fn arch_lambda_by_quadrature(place: &UPlace, tol: f64) -> Result<f64> {
    let kappa = quadrature::kappa_by_quadrature(tol);
    match place {
        UPlace::Infinity(_) => Ok(0.5 * kappa),
        UPlace::Finite(p) => {
            let q = p.primitive_int();
            let s: f64 = roots_of(&q)?.iter().map(|z| quadrature::point_integral_by_quadrature(z.norm(), tol)).sum();
            Ok(-ln_abs(&q.lc()) - s + 0.5 * kappa * q.degree() as f64)
        }
    }
}

/// deg_Kp of the canonical lift of a divisor of Q(y), assembled term by
/// term against the representative −2(y − c) with archimedean coefficient
/// −κ + 2∫log|z − c|dμ, every integral taken by quadrature.
pub fn deg_kp_by_terms(d: &Divisor<UPlace>, c: i64, tol: f64) -> Result<f64> {
    let kappa = quadrature::kappa_by_quadrature(tol);
    let cz = Complex64::new(c as f64, 0.0);
    let rep_arch = -kappa + 2.0 * quadrature::point_integral_by_quadrature(c.abs() as f64, tol);
    let line = UPoly::from_ints(Var::Y, &[-c, 1]);
    let mut total = 0.0;
    for (place, k) in d.iter() {
        let local = match place {
            UPlace::Finite(p) => {
                let q = p.primitive_int();
                let green: f64 = roots_of(&q)?.iter().map(|a| green_fs(*a, cz)).sum();
                ln_abs(&resultant_u(&q, &line)) + green
            }
            UPlace::Infinity(_) => 0.5 * (1.0 + (c * c) as f64).ln(),
        };
        let lambda = arch_lambda_by_quadrature(place, tol)?;
        total += k as f64 * (-2.0 * local + place.degree() as f64 * rep_arch - 2.0 * lambda);
    }
    Ok(total)
}
