//! Complex roots by Aberth iteration with a-posteriori inclusion disks.

use num_complex::Complex64;

use super::upoly::UPoly;
use crate::error::{Error, Result};

/// A root approximation together with a radius of a disk known to contain a
/// true root.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub z: Complex64,
    pub radius: f64,
}

const U: f64 = f64::EPSILON / 2.0;

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Upper bound on the rounding error of evaluating `c` at `z` by Horner's rule,
/// including the error of rounding the coefficients themselves.
fn horner_error(c: &[f64], z: Complex64) -> f64 {
    let n = c.len() as f64;
    let gamma = (4.0 * n + 2.0) * U / (1.0 - (4.0 * n + 2.0) * U);
    let r = z.norm();
    let mut acc = 0.0;
    for &a in c.iter().rev() {
        acc = acc * r + a.abs();
    }
    gamma * acc
}

fn aberth(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lc = c[n];
    // Cauchy-style radius
    let bound = 1.0 + c[..n].iter().map(|a| (a / lc).abs()).fold(0.0, f64::max);
    let mut zs: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(0.5 * bound, theta)
        })
        .collect();
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(c, zs[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (zs[i] - zs[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                zs[i] -= w;
                moved = moved.max(w.norm() / (1.0 + zs[i].norm()));
            }
        }
        if moved < 4.0 * U {
            break;
        }
    }
    zs
}

/// Roots of a square-free polynomial with inclusion radii.
fn squarefree_roots(f: &UPoly) -> Vec<Root> {
    let p = f.primitive_int();
    let c = p.to_f64_coeffs();
    let n = c.len() - 1;
    if n == 1 {
        let z = Complex64::new(-c[0] / c[1], 0.0);
        let err = horner_error(&c, z) / c[1].abs();
        return vec![Root { z, radius: err + z.norm() * 2.0 * U }];
    }
    let zs = aberth(&c);
    let lc = c[n].abs();
    (0..n)
        .map(|i| {
            let (val, _) = horner(&c, zs[i]);
            let num = val.norm() + horner_error(&c, zs[i]);
            let den: f64 = (0..n).filter(|&j| j != i).map(|j| (zs[i] - zs[j]).norm()).product::<f64>() * lc;
            let radius = if den > 0.0 { n as f64 * num / den * (1.0 + 4.0 * n as f64 * U) } else { f64::INFINITY };
            Root { z: zs[i], radius }
        })
        .collect()
}

/// All complex roots with multiplicity, each certified to lie within `eps`
/// of a distinct true root (disks are pairwise disjoint per square-free part).
pub fn certified_roots(f: &UPoly, eps: f64) -> Result<Vec<Root>> {
    assert!(!f.is_zero() && eps > 0.0);
    let mut out = Vec::new();
    for (g, e) in f.squarefree_decomposition() {
        let rs = squarefree_roots(&g);
        for (i, a) in rs.iter().enumerate() {
            if !(a.radius < eps) {
                return Err(Error::PrecisionFailure(format!(
                    "root {} of {} has inclusion radius {:e} above {:e}",
                    a.z, g, a.radius, eps
                )));
            }
            for b in &rs[i + 1..] {
                if (a.z - b.z).norm() <= a.radius + b.radius {
                    return Err(Error::PrecisionFailure(format!("overlapping inclusion disks for {g}")));
                }
            }
        }
        for r in rs {
            for _ in 0..e {
                out.push(r);
            }
        }
    }
    Ok(out)
}

pub fn complex_roots(f: &UPoly, eps: f64) -> Result<Vec<Complex64>> {
    Ok(certified_roots(f, eps)?.into_iter().map(|r| r.z).collect())
}

/// Real root of `f` in `[lo, hi]` by bisection on exact rational evaluation
/// signs; `f(lo)` and `f(hi)` must differ in sign.
pub fn bisect_real_root(f: &UPoly, lo: f64, hi: f64, iters: usize) -> f64 {
    use num_rational::BigRational;
    use num_traits::{FromPrimitive, Signed};
    let sign = |x: f64| f.eval(&BigRational::from_f64(x).unwrap()).is_positive();
    let (mut lo, mut hi) = (lo, hi);
    let slo = sign(lo);
    assert_ne!(slo, sign(hi), "no sign change");
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        if sign(mid) == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;
    use crate::algebra::upoly::Var;
    use num_rational::BigRational;
    use num_traits::One;

    #[test]
    fn known_roots() {
        let eps = 1e-10;
        let mut r = complex_roots(&UPoly::from_ints(Var::X, &[1, 0, 1]), eps).unwrap();
        r.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((r[0] - Complex64::new(0.0, -1.0)).norm() < eps);
        assert!((r[1] - Complex64::new(0.0, 1.0)).norm() < eps);

        let lin = UPoly::new(Var::X, vec![-ratio(3, 2), BigRational::one()]);
        let r = complex_roots(&lin, eps).unwrap();
        assert!((r[0] - Complex64::new(1.5, 0.0)).norm() < eps);
    }

    #[test]
    fn cube_root_of_two_against_bisection() {
        let f = UPoly::from_ints(Var::X, &[-2, 0, 0, 1]);
        let oracle = bisect_real_root(&f, 1.0, 2.0, 60);
        assert!((oracle - 1.259921).abs() < 1e-6);
        let roots = certified_roots(&f, 1e-10).unwrap();
        let real: Vec<_> = roots.iter().filter(|r| r.z.im.abs() < 1e-9).collect();
        assert_eq!(real.len(), 1);
        assert!((real[0].z.re - oracle).abs() < 1e-10);
        let complex: Vec<_> = roots.iter().filter(|r| r.z.im.abs() >= 1e-9).collect();
        assert_eq!(complex.len(), 2);
        assert!((complex[0].z - complex[1].z.conj()).norm() < 1e-9);
    }

    #[test]
    fn multiplicities_repeat() {
        let f = &UPoly::from_ints(Var::X, &[-1, 1]).pow(3) * &UPoly::from_ints(Var::X, &[2, 1]);
        let roots = complex_roots(&f, 1e-9).unwrap();
        assert_eq!(roots.len(), 4);
        assert_eq!(roots.iter().filter(|z| (*z - Complex64::new(1.0, 0.0)).norm() < 1e-9).count(), 3);
    }

    #[test]
    fn residuals_small_on_random_polys() {
        for seed in 0..20i64 {
            let coeffs: Vec<i64> = (0..7).map(|k| ((seed * 31 + k * 17) % 11) - 5).collect();
            let f = UPoly::from_ints(Var::X, &coeffs);
            if f.degree() == 0 {
                continue;
            }
            let roots = certified_roots(&f, 1e-8).unwrap();
            assert_eq!(roots.len(), f.degree());
        }
    }
}
