use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::corpus::{self, rng};
use super::oracle::{arch_lambda_by_quadrature, deg_kp_by_terms};
use super::{Recorder, VerifyConfig};
use crate::algebra::{UPoly, Var};
use crate::arakelov::{
    arakelov_from_divisor, arch_lambda, bracket, deg_kp_at, deg_kp_divisor, intersect, norm_degree, point_integral,
    principal_arakelov, residue_scalar_product_bounded, roots_of, KAPPA,
};
use crate::divisor::{
    principal_divisor, restrict_to_kp, zero_divisor_u, DeltaElement, DivisorDelta, Place, UPlace,
};
use crate::explore::explore_self_products;
use crate::parse::parse_poly;
use crate::quadrature;

fn random_ypoly(r: &mut ChaCha8Rng, max_deg: usize) -> UPoly {
    loop {
        let d = r.gen_range(1..=max_deg);
        let c: Vec<i64> = (0..=d).map(|_| r.gen_range(-4..=4)).collect();
        let p = UPoly::from_ints(Var::Y, &c);
        if p.degree() > 0 {
            let k = r.gen_range(1..=6);
            return p.scale(&num_rational::BigRational::from_integer(k.into()));
        }
    }
}

pub fn arakelov(cfg: &VerifyConfig, rec: &mut Recorder) {
    let qt = cfg.quad_tol;
    let k = quadrature::kappa_by_quadrature(qt * 1e-3);
    rec.check((k - KAPPA).abs() < qt, || format!("kappa: closed form {KAPPA}, quadrature {k}"));
    let mut r = rng(20);
    let mut alphas = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(-3.0, 4.0)];
    for _ in 0..6 {
        if let Ok(rs) = roots_of(&random_ypoly(&mut r, 3)) {
            alphas.extend(rs);
        }
    }
    for a in &alphas {
        let q = quadrature::point_integral_by_quadrature(a.norm(), qt * 1e-3);
        rec.check((q - point_integral(*a)).abs() < qt, || format!("point integral at {a}: closed {} vs quadrature {q}", point_integral(*a)));
    }
    if let Some(v) = rec.ok(principal_arakelov(&UPoly::from_ints(Var::Y, &[0, 1]), &UPoly::one(Var::Y)), || "v_inf(y)".into()) {
        rec.check(v.arch.abs() < qt, || format!("v_inf(y) = {}", v.arch));
    }

    let mut products = 0;
    let mut tries = 0;
    while products < 36 && tries < 500 {
        tries += 1;
        let (num, den) = (random_ypoly(&mut r, 3), random_ypoly(&mut r, 2));
        if num.gcd(&den).degree() > 0 {
            continue;
        }
        let g = random_ypoly(&mut r, 3);
        let Some(f) = rec.ok(principal_arakelov(&num, &den), || format!("principal ({num})/({den})")) else { continue };
        let Some(mut d) = rec.ok(zero_divisor_u(&g), || format!("divisor of {g}")) else { continue };
        if f.horizontal.coeff(&UPlace::Infinity(Var::Y)) == 0 {
            d.add_term(UPlace::Infinity(Var::Y), r.gen_range(-2..=2));
        }
        if d.is_zero() || !d.is_coprime_to(&f.horizontal) {
            continue;
        }
        let Some(e) = rec.ok(arakelov_from_divisor(&d), || format!("lift of {d}")) else { continue };
        if let Some(v) = rec.ok(intersect(&f, &e), || format!("({num})/({den}) . {d}")) {
            rec.check(v.abs() < cfg.tol, || format!("product formula: div(({num})/({den})) . {d} = {v:e}"));
            products += 1;
        }
        let scaled = num.scale(&num_rational::BigRational::new(7.into(), 3.into()));
        if let Some(s) = rec.ok(principal_arakelov(&scaled, &den), || "scaled".into()) {
            let want = f.arch - (7.0f64 / 3.0).ln();
            rec.check((s.arch - want).abs() < qt, || format!("unit scaling of ({num})/({den}): {} vs {want}", s.arch));
        }
        if !d.iter().any(|(p, _)| *p == UPlace::finite(&UPoly::from_ints(Var::Y, &[-2, 1])) || *p == UPlace::finite(&UPoly::from_ints(Var::Y, &[-5, 1]))) {
            if let (Some(a), Some(b)) = (rec.ok(deg_kp_at(&e, 2), || "deg c=2".into()), rec.ok(deg_kp_at(&e, 5), || "deg c=5".into())) {
                rec.check((a - b).abs() < qt, || format!("deg_Kp of {d}: {a} at c=2, {b} at c=5"));
            }
        }
        for (p, _) in d.iter() {
            if let (Some(a), Some(b)) = (rec.ok(arch_lambda(p), || format!("lambda {p}")), rec.ok(arch_lambda_by_quadrature(p, qt * 1e-3), || format!("lambda {p}"))) {
                rec.check((a - b).abs() < qt, || format!("arch coefficient of {p}: closed {a} vs quadrature {b}"));
            }
        }
    }
    rec.require_count("(f, D) product-formula pairs", products, 30);
}

fn single(p: &str) -> DivisorDelta {
    DivisorDelta::single(Place::from_irreducible(&parse_poly(p).unwrap()), 1)
}

fn element(num: &str, den: &str) -> DeltaElement {
    DeltaElement::from_fraction(&parse_poly(num).unwrap(), &parse_poly(den).unwrap()).unwrap()
}

pub fn rsp(cfg: &VerifyConfig, rec: &mut Recorder) {
    let sb = cfg.shift_bound;
    let rsp = |a: &DivisorDelta, b: &DivisorDelta| residue_scalar_product_bounded(a, b, sb).map(|s| s.value);

    // worked instance against a term-by-term evaluation with quadrature
    let (a, b) = (single("x - y^2"), single("x - y"));
    if let Some(v) = rec.ok(rsp(&a, &b), || "worked instance".into()) {
        let paired = crate::pairing::pair(&a, &b, crate::pairing::Side::Kprime).unwrap();
        match deg_kp_by_terms(&paired, 2, cfg.quad_tol * 1e-3) {
            Ok(d) => rec.check((v - (0.0 - d)).abs() < cfg.tol, || format!("worked instance: pipeline {v}, term sum {}", -d)),
            Err(e) => rec.fail(format!("term-by-term oracle: {e}")),
        }
        rec.note(format!("worked instance (x - y^2, x - y): {v:.9}"));
    }

    let divisors = corpus::random_divisors(40, 2, 21);
    let mut r = rng(22);
    let mut pairs = 0;
    let mut sym_bad = 0;
    let mut inv_bad = 0;
    let mut inv_explained = 0;
    let mut attempts = 0;
    while pairs < 24 && attempts < 1000 {
        attempts += 1;
        let a = &divisors[r.gen_range(0..divisors.len())];
        let b = &divisors[r.gen_range(0..divisors.len())];
        if !a.is_coprime_to(b) {
            continue;
        }
        let (Some(ab), Some(ba)) = (rec.ok(rsp(a, b), || format!("rsp({a}, {b})")), rec.ok(rsp(b, a), || format!("rsp({b}, {a})"))) else { continue };
        pairs += 1;
        rec.check((ab - ba).abs() < cfg.tol, || {
            sym_bad += 1;
            format!("symmetry: rsp({a}, {b}) = {ab}, reversed {ba}")
        });
        // two principal moves, the first through x = k and y = l, the second through the line x + y = k;
        // the variants without places at infinity serve divisors b that contain them
        let mv = |t: i64| {
            let k = 11 + 7 * t;
            let with_inf = (element(&format!("x - {k}"), &format!("y - {}", k + 1)), element(&format!("x + y - {}", k + 2), &format!("x - {}", k + 3)));
            let finite = (
                element(&format!("(x - {k})*(y - {})", k + 4), &format!("(y - {})*(x - {})", k + 1, k + 5)),
                element(&format!("(x + y - {})*(x - {})", k + 2, k + 6), &format!("(x - {})*(x + y - {})", k + 3, k + 4)),
            );
            [with_inf, finite]
        };
        let found = (0..20).flat_map(mv).map(|(e1, e2)| {
            let (d1, d2) = (principal_divisor(&e1), principal_divisor(&e2));
            (a.add(&d1), a.add(&d2), d1, d2)
        });
        let Some((a1, a2, d1, d2)) = found.into_iter().find(|(a1, a2, _, _)| a1.is_coprime_to(b) && a2.is_coprime_to(b)) else {
            rec.fail(format!("no coprime move of {a} against {b}"));
            continue;
        };
        if let (Some(v1), Some(v2)) = (rec.ok(rsp(&a1, b), || format!("rsp({a1}, {b})")), rec.ok(rsp(&a2, b), || format!("rsp({a2}, {b})"))) {
            let ok = (v1 - v2).abs() < cfg.tol;
            if !ok {
                inv_bad += 1;
                let shift = |d: &DivisorDelta| deg_kp_divisor(&restrict_to_kp(d)).unwrap_or(f64::NAN);
                if (v2 - v1 - norm_degree(b) as f64 * (shift(&d2) - shift(&d1))).abs() < cfg.tol {
                    inv_explained += 1;
                }
            }
            rec.check(ok, || format!("class invariance for A = {a}, b = {b}: {v1} vs {v2}"));
        }
    }
    rec.require_count("coprime pairs", pairs, 20);

    let mut van_bad = 0;
    let mut explained = 0;
    let targets = corpus::random_divisors(30, 2, 23);
    for (i, (h, d)) in corpus::principal_divisors(24, 24).iter().enumerate() {
        let Some(b) = targets.iter().cycle().skip(i).take(targets.len()).find(|b| b.is_coprime_to(d)) else { continue };
        let Some(v) = rec.ok(rsp(d, b), || format!("rsp(div, {b})")) else { continue };
        let ok = v.abs() < cfg.tol;
        if !ok {
            van_bad += 1;
            // closed form of the bracket for principal D: N(D) = 0 and the pairing term vanishes
            if let Ok(dk) = deg_kp_divisor(&restrict_to_kp(d)) {
                if (v - norm_degree(b) as f64 * dk).abs() < cfg.tol {
                    explained += 1;
                }
            }
        }
        rec.check(ok, || {
            format!("vanishing: rsp(div(({})/({})), {b}) = {v}", h.numerator(), h.denominator())
        });
    }
    if let Ok(br) = bracket(&single("x - y^2"), &single("x - y")) {
        rec.note(format!("bracket of two binary primes: {br}"));
    }
    rec.note(format!(
        "symmetry failures {sym_bad}; class-invariance failures {inv_bad}, of which {inv_explained} equal N(b) times the change in deg_Kp(A|K'); vanishing failures {van_bad}, of which {explained} equal N(b)·deg_Kp(D|K')"
    ));
}

pub fn explorer(cfg: &VerifyConfig, rec: &mut Recorder) {
    let run = || explore_self_products(100, 2, 7, cfg.shift_bound).and_then(|r| {
        serde_json::to_string(&r).map(|s| (r, s)).map_err(|e| crate::error::Error::Invalid(e.to_string()))
    });
    let (Some((report, first)), Some((_, second))) = (rec.ok(run(), || "explore".into()), rec.ok(run(), || "explore".into())) else { return };
    rec.check(first == second, || "two runs with seed 7 differ".into());
    rec.check(report.minimum.is_some(), || "no minimum reported".into());
    rec.check(report.failed_trials.is_empty(), || format!("failed trials: {:?}", report.failed_trials));
    if let Some(m) = report.minimum {
        rec.note(format!(
            "minimum self-product {m:.6} at trial {}; {} negative; max class-invariance residual {:.6}",
            report.minimum_trial.unwrap(),
            report.negative_trials.len(),
            report.max_residual.unwrap_or(0.0)
        ));
    }
}
