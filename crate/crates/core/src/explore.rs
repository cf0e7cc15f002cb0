//! Seeded search for negative self-products of the residue scalar product.

use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::bivariate::is_irreducible;
use crate::algebra::BPoly;
use crate::arakelov::residue_scalar_product_bounded;
use crate::divisor::{principal_divisor, DeltaElement, DivisorDelta, Place};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct Trial {
    pub index: usize,
    pub divisor: String,
    pub move_a: Option<String>,
    pub move_b: Option<String>,
    pub self_product: Option<f64>,
    pub alternative: Option<f64>,
    pub residual: Option<f64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExploreReport {
    pub trials: usize,
    pub max_deg: u32,
    pub seed: u64,
    pub results: Vec<Trial>,
    pub minimum: Option<f64>,
    pub minimum_trial: Option<usize>,
    pub negative_trials: Vec<usize>,
    pub max_residual: Option<f64>,
    pub failed_trials: Vec<usize>,
}

fn element_of(p: &Place) -> DeltaElement {
    let f = p.poly().expect("finite place");
    DeltaElement { unit: BigRational::one(), num: vec![(f.primitive_int(), 1)], den: Vec::new() }
}

/// A random irreducible binary polynomial with degree at most `max_deg` in
/// each variable, or `None` after 50 rejected draws.
pub fn random_binary(rng: &mut ChaCha8Rng, max_deg: u32) -> Option<BPoly> {
    for _ in 0..50 {
        let dx = rng.gen_range(1..=max_deg);
        let dy = rng.gen_range(1..=max_deg);
        let mut f = BPoly::zero();
        for i in 0..=dx {
            for j in 0..=dy {
                if i + j == 0 || rng.gen_bool(0.5) || (i, j) == (dx, 0) || (i, j) == (0, dy) {
                    let c: i64 = rng.gen_range(-3..=3);
                    f = &f + &BPoly::from_terms(&[(i, j, c)]);
                }
            }
        }
        if f.deg_x() == 0 || f.deg_y() == 0 || f.is_constant() {
            continue;
        }
        if let Ok(true) = is_irreducible(&f) {
            return Some(f.primitive_int());
        }
    }
    None
}

/// A random irreducible polynomial of degree one or two in a single variable.
pub fn random_unary(rng: &mut ChaCha8Rng, in_x: bool) -> BPoly {
    let c: i64 = rng.gen_range(-3..=3);
    let base = if in_x { BPoly::x() } else { BPoly::y() };
    if rng.gen_bool(0.3) {
        // t^2 + c with c > 0 is irreducible
        &base.pow(2) + &BPoly::from_terms(&[(0, 0, c.abs() + 1)])
    } else {
        &base - &BPoly::from_terms(&[(0, 0, c)])
    }
}

/// A random divisor of Q(x, y) with one to three components.
pub fn sample_divisor(rng: &mut ChaCha8Rng, max_deg: u32) -> DivisorDelta {
    let mut d = DivisorDelta::zero();
    let n = rng.gen_range(1..=3);
    while d.len() < n {
        let k: i64 = if rng.gen_bool(0.5) { 1 } else { [-2, -1, 2][rng.gen_range(0..3)] };
        let roll: f64 = rng.gen();
        let place = if roll < 0.55 {
            match random_binary(rng, max_deg.max(1)) {
                Some(f) => Place::from_irreducible(&f),
                None => continue,
            }
        } else if roll < 0.75 {
            Place::from_irreducible(&random_unary(rng, true))
        } else if roll < 0.95 {
            Place::from_irreducible(&random_unary(rng, false))
        } else if rng.gen_bool(0.5) {
            Place::inf_x()
        } else {
            Place::inf_y()
        };
        if d.coeff(&place) == 0 {
            d.add_term(place, k);
        }
    }
    d
}

fn schedule(t: i64) -> i64 {
    if t % 2 == 0 {
        t / 2
    } else {
        -(t + 1) / 2
    }
}

fn lin(a: i64, b: i64, c: i64) -> DeltaElement {
    element_of(&Place::from_irreducible(&BPoly::from_terms(&[(1, 0, a), (0, 1, b), (0, 0, -c)])))
}

/// Moves `a` to a linearly equivalent divisor with disjoint support.
/// `kind` 0 uses the unary lines x = k and y = l; kind 1 also uses the
/// binary line x + y = k.
pub fn move_divisor(a: &DivisorDelta, kind: u32, bound: i64) -> Result<(DivisorDelta, DeltaElement)> {
    let mut cancel = DeltaElement::one();
    let (mut ex, mut ey) = (0i64, 0i64);
    for (p, k) in a.iter() {
        ex += k * p.degree_over_kp();
        ey += k * p.degree_over_k();
        if p.poly().is_some() {
            cancel = cancel.mul(&element_of(p).pow(-k));
        }
    }
    for t in 0..(4 * bound).max(1) {
        let (k, l) = (schedule(t), schedule(t + 1 + kind as i64));
        let h = if kind == 0 {
            cancel.mul(&lin(1, 0, k).pow(ex)).mul(&lin(0, 1, l).pow(ey))
        } else {
            let s = if ex.signum() == ey.signum() { ex.signum() * ex.abs().min(ey.abs()) } else { 0 };
            let s = if s == 0 { ex.signum() } else { s };
            cancel
                .mul(&lin(1, 1, k).pow(s))
                .mul(&lin(1, 0, l + 3).pow(ex - s))
                .mul(&lin(0, 1, l - 3).pow(ey - s))
        };
        let moved = a.add(&principal_divisor(&h));
        if moved.is_coprime_to(a) {
            return Ok((moved, h));
        }
    }
    Err(Error::MoveFailure)
}

fn run_trial(index: usize, seed: u64, max_deg: u32, shift_bound: i64) -> Trial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let a = sample_divisor(&mut rng, max_deg);
    let mut trial = Trial {
        index,
        divisor: a.to_string(),
        move_a: None,
        move_b: None,
        self_product: None,
        alternative: None,
        residual: None,
        error: None,
    };
    let outcome = (|| -> Result<()> {
        let (m1, _) = move_divisor(&a, 0, shift_bound)?;
        trial.move_a = Some(m1.to_string());
        let (m2, _) = move_divisor(&a, 1, shift_bound)?;
        trial.move_b = Some(m2.to_string());
        let v1 = residue_scalar_product_bounded(&m1, &a, shift_bound)?.value;
        let v2 = residue_scalar_product_bounded(&m2, &a, shift_bound)?.value;
        trial.self_product = Some(v1);
        trial.alternative = Some(v2);
        trial.residual = Some((v1 - v2).abs());
        Ok(())
    })();
    if let Err(e) = outcome {
        trial.error = Some(e.to_string());
    }
    trial
}

pub fn explore_self_products(trials: usize, max_deg: u32, seed: u64, shift_bound: i64) -> Result<ExploreReport> {
    if trials == 0 {
        return Err(Error::Invalid("at least one trial is required".into()));
    }
    let results: Vec<Trial> =
        (0..trials).into_par_iter().map(|i| run_trial(i, seed, max_deg, shift_bound)).collect();
    let mut minimum: Option<(f64, usize)> = None;
    let mut max_residual: Option<f64> = None;
    for t in &results {
        if let Some(v) = t.self_product {
            if minimum.is_none_or(|(m, _)| v < m) {
                minimum = Some((v, t.index));
            }
        }
        if let Some(r) = t.residual {
            max_residual = Some(max_residual.map_or(r, |m: f64| m.max(r)));
        }
    }
    Ok(ExploreReport {
        trials,
        max_deg,
        seed,
        minimum: minimum.map(|m| m.0),
        minimum_trial: minimum.map(|m| m.1),
        negative_trials: results.iter().filter(|t| t.self_product.is_some_and(|v| v < -1e-9)).map(|t| t.index).collect(),
        max_residual,
        failed_trials: results.iter().filter(|t| t.error.is_some()).map(|t| t.index).collect(),
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moves_are_disjoint_and_equivalent() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let a = sample_divisor(&mut rng, 2);
            for kind in 0..2 {
                let (m, h) = move_divisor(&a, kind, 64).unwrap();
                assert!(m.is_coprime_to(&a));
                assert_eq!(m.sub(&a), principal_divisor(&h));
            }
        }
    }

    #[test]
    fn deterministic_by_seed() {
        let r1 = serde_json::to_string(&explore_self_products(4, 2, 7, 64).unwrap()).unwrap();
        let r2 = serde_json::to_string(&explore_self_products(4, 2, 7, 64).unwrap()).unwrap();
        assert_eq!(r1, r2);
        let r3 = serde_json::to_string(&explore_self_products(4, 2, 8, 64).unwrap()).unwrap();
        assert_ne!(r1, r3);
    }
}
