//! Adaptive Gauss–Kronrod (7/15) quadrature, used as an independent oracle for
//! the archimedean closed forms.

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// ∫_a^b f with absolute error target `tol`; returns (value, error estimate).
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let mut stack = vec![(a, b, tol, 0u32)];
    let (mut total, mut err) = (0.0, 0.0);
    while let Some((lo, hi, t, depth)) = stack.pop() {
        let (v, e) = kronrod(f, lo, hi);
        if e <= t || depth >= 60 || hi - lo < 1e-15 * (1.0 + lo.abs()) {
            total += v;
            err += e;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, 0.5 * t, depth + 1));
            stack.push((mid, hi, 0.5 * t, depth + 1));
        }
    }
    (total, err)
}

/// ∫_a^∞ f via the substitution x = a + t/(1 − t).
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: &F, a: f64, tol: f64) -> (f64, f64) {
    let g = |t: f64| {
        if t >= 1.0 {
            return 0.0;
        }
        let s = 1.0 - t;
        f(a + t / s) / (s * s)
    };
    integrate(&g, 0.0, 1.0, tol)
}

/// ∫ φ(|z|) dμ over C for the Fubini–Study probability measure
/// dμ = dA / (π (1 + |z|²)²), for radial φ.
pub fn fs_radial<F: Fn(f64) -> f64>(phi: F, breaks: &[f64], tol: f64) -> f64 {
    let w = |r: f64| 2.0 * r * phi(r) / ((1.0 + r * r) * (1.0 + r * r));
    let mut pts: Vec<f64> = breaks.iter().copied().filter(|b| *b > 0.0).collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut total = 0.0;
    let mut lo = 0.0;
    for &p in &pts {
        total += integrate(&w, lo, p, tol).0;
        lo = p;
    }
    total + integrate_to_infinity(&w, lo, tol).0
}

/// Oracle for ∫ log(1 + |z|²) dμ.
pub fn kappa_by_quadrature(tol: f64) -> f64 {
    fs_radial(|r| (1.0 + r * r).ln(), &[1.0], tol)
}

/// Oracle for ∫ log|z − α| dμ, reducing the angular integral by Jensen's
/// formula (the circle mean of log|r e^{iθ} − α| is log max(r, |α|)).
pub fn point_integral_by_quadrature(alpha_abs: f64, tol: f64) -> f64 {
    let a = alpha_abs;
    fs_radial(|r| r.max(a).ln(), &[a, 1.0], tol)
}

/// The same integral with the angular part also done numerically; slower
/// and less accurate, used to check the Jensen reduction itself.
pub fn point_integral_2d(alpha: num_complex::Complex64, tol: f64) -> f64 {
    let a = alpha.norm();
    let arg = alpha.arg();
    let inner = |r: f64| {
        let g = |t: f64| (num_complex::Complex64::from_polar(r, t + arg) - alpha).norm().ln();
        let pi = std::f64::consts::PI;
        (integrate(&g, -pi, 0.0, tol).0 + integrate(&g, 0.0, pi, tol).0) / (2.0 * pi)
    };
    fs_radial(inner, &[a, 1.0], tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let (v, _) = integrate(&|x: f64| x * x * x - 2.0 * x, 0.0, 2.0, 1e-13);
        assert!((v - 0.0).abs() < 1e-12);
        let (v, _) = integrate_to_infinity(&|x: f64| (-x).exp(), 0.0, 1e-13);
        assert!((v - 1.0).abs() < 1e-11);
    }

    #[test]
    fn measure_is_probability() {
        let m = fs_radial(|_| 1.0, &[1.0], 1e-13);
        assert!((m - 1.0).abs() < 1e-11);
    }

    #[test]
    fn jensen_reduction_matches_2d() {
        let alpha = num_complex::Complex64::new(0.7, -1.1);
        let one_d = point_integral_by_quadrature(alpha.norm(), 1e-12);
        let two_d = point_integral_2d(alpha, 1e-9);
        assert!((one_d - two_d).abs() < 1e-6, "{one_d} vs {two_d}");
    }
}
