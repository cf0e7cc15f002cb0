//! Factorization over Q: square-free decomposition, rational roots, then
//! Zassenhaus (factor mod p, Hensel lift, recombine).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{Fp, Poly};
use super::upoly::UPoly;
use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_BOUND: usize = 24;

const PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Positive divisors of `n` by trial division, or `None` if `|n|` exceeds 10^12.
pub fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    if n == 0 {
        return Some(vec![BigInt::one()]);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// A factorization `unit * prod(f_i^e_i)` with monic irreducible `f_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: BigRational,
    pub factors: Vec<(UPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self, var: super::upoly::Var) -> UPoly {
        let mut acc = UPoly::constant(var, self.unit.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }
}

/// Complete factorization over Q with the default degree bound.
pub fn factor_q(f: &UPoly) -> Result<Factorization> {
    factor_q_bounded(f, DEFAULT_DEGREE_BOUND)
}

pub fn factor_q_bounded(f: &UPoly, bound: usize) -> Result<Factorization> {
    assert!(!f.is_zero(), "factorization of zero");
    if f.degree() > bound {
        return Err(Error::DegreeBound { degree: f.degree(), bound });
    }
    let mut factors = Vec::new();
    for (g, e) in f.squarefree_decomposition() {
        for h in factor_squarefree(&g) {
            factors.push((h, e));
        }
    }
    factors.sort();
    Ok(Factorization { unit: f.lc(), factors })
}

pub fn is_irreducible_q(f: &UPoly) -> Result<bool> {
    if f.degree() == 0 {
        return Ok(false);
    }
    let fac = factor_q(f)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

/// Monic irreducible factors of a square-free polynomial.
fn factor_squarefree(f: &UPoly) -> Vec<UPoly> {
    let var = f.var();
    let mut out = Vec::new();
    let mut rest = f.primitive_int();
    if rest.degree() == 1 {
        return vec![f.monic()];
    }
    if let Some(roots) = rest.rational_roots() {
        for r in roots {
            let lin = UPoly::linear_root(var, r);
            rest = rest.div_exact(&lin).expect("root divides");
            out.push(lin);
        }
    }
    if rest.degree() > 0 {
        let ints = rest.primitive_int().int_coeffs();
        for g in zassenhaus(&ints) {
            out.push(UPoly::from_bigints(var, &g).monic());
        }
    }
    out
}

fn mod_poly(f: &[BigInt], p: &BigInt) -> Poly {
    let fp = Fp::new(p.to_u64().unwrap());
    fp.trim(f.iter().map(|c| c.mod_floor(p).to_u64().unwrap()).collect())
}

fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division over Z; `None` if `b` does not divide `a`.
fn int_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(q)
}

/// Lifts `f = lc * g * h (mod p)`, `g` monic, to `mod p^k` (linear Hensel).
/// Returns the lifted monic `g`.
fn hensel_lift(f: &[BigInt], g: &Poly, h: &Poly, p: u64, k: u32) -> Vec<BigInt> {
    let fp = Fp::new(p);
    let pb = BigInt::from(p);
    let (_, _, t) = fp.ext_gcd(g, h);
    let mut g: Vec<BigInt> = g.iter().map(|&c| BigInt::from(c)).collect();
    let mut h: Vec<BigInt> = h.iter().map(|&c| BigInt::from(c)).collect();
    let mut m = pb.clone();
    for _ in 1..k {
        let gh = int_mul(&g, &h);
        let e: Vec<BigInt> = (0..f.len())
            .map(|i| {
                let d = &f[i] - gh.get(i).cloned().unwrap_or_default();
                debug_assert!((&d % &m).is_zero());
                d / &m
            })
            .collect();
        let e = mod_poly(&e, &pb);
        let gm: Poly = mod_poly(&g, &pb);
        let hm: Poly = mod_poly(&h, &pb);
        let r = fp.rem(&fp.pmul(&e, &t), &gm);
        // dh = (e - r*h) / g
        let dh = fp.divrem(&fp.psub(&e, &fp.pmul(&r, &hm)), &gm).0;
        for (i, c) in r.iter().enumerate() {
            g[i] += &m * BigInt::from(*c);
        }
        for (i, c) in dh.iter().enumerate() {
            if i < h.len() {
                h[i] += &m * BigInt::from(*c);
            } else {
                h.push(&m * BigInt::from(*c));
            }
        }
        m *= &pb;
    }
    g
}

/// Bound on the absolute value of coefficients of any factor of `f` (times lc).
fn coefficient_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1;
    let lc = f[n].abs();
    (BigInt::one() << (n + 1)) * norm * &lc * &lc
}

/// Irreducible factors over Z of a primitive square-free integer polynomial.
fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // choose the prime giving the fewest modular factors among a few candidates
    let mut best: Option<(u64, Vec<Poly>)> = None;
    let mut tried = 0;
    for &p in PRIMES.iter() {
        let pb = BigInt::from(p);
        if (&lc % &pb).is_zero() {
            continue;
        }
        let fp = Fp::new(p);
        let fm = mod_poly(f, &pb);
        if fm.len() != f.len() || !fp.is_squarefree(&fm) {
            continue;
        }
        let facs = fp.factor_squarefree(&fp.monic(&fm), &mut rng);
        if facs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|b| facs.len() < b.1.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 4 {
            break;
        }
    }
    let (p, facs) = best.unwrap_or_else(|| {
        // fall back to larger primes
        let mut p = 101u64;
        loop {
            let pb = BigInt::from(p);
            if is_prime(p) && !(&lc % &pb).is_zero() {
                let fp = Fp::new(p);
                let fm = mod_poly(f, &pb);
                if fm.len() == f.len() && fp.is_squarefree(&fm) {
                    let facs = fp.factor_squarefree(&fp.monic(&fm), &mut rng);
                    return (p, facs);
                }
            }
            p += 2;
        }
    });
    if facs.len() == 1 {
        return vec![f.to_vec()];
    }

    let bound = coefficient_bound(f) * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let fp = Fp::new(p);
    let lifted: Vec<Vec<BigInt>> = (0..facs.len())
        .map(|i| {
            let others = facs
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(vec![1u64], |acc, (_, g)| fp.pmul(&acc, g));
            let lcm = lc.mod_floor(&pb).to_u64().unwrap();
            let h = fp.scale(&others, lcm);
            hensel_lift(f, &facs[i], &h, p, k)
        })
        .collect();

    recombine(f, lifted, &modulus)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let mut out: Vec<BigInt> = v.into_iter().map(|c| c / &g).collect();
    if out.last().is_some_and(|c| c.is_negative()) {
        out.iter_mut().for_each(|c| *c = -c.clone());
    }
    out
}

fn recombine(f: &[BigInt], mut lifted: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let mut f = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        let r = lifted.len();
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let lc = f.last().unwrap().clone();
            let mut cand = vec![lc.clone()];
            for &i in &subset {
                cand = int_mul(&cand, &lifted[i]).iter().map(|c| sym_mod(c, modulus)).collect();
            }
            let cand = primitive(cand);
            if let Some(q) = int_div(&f, &cand) {
                out.push(cand);
                f = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                found = true;
                break;
            }
            if !next_subset(&mut subset, r) {
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    out.push(primitive(f));
    out
}

/// Advances a strictly increasing index tuple in lexicographic order.
fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::algebra::upoly::Var;
    use proptest::prelude::*;

    fn u(c: &[i64]) -> UPoly {
        UPoly::from_ints(Var::X, c)
    }

    #[test]
    fn worked_examples() {
        let f = factor_q(&u(&[-1, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.unit, rat(1));
        assert_eq!(f.factors, vec![(u(&[-1, 1]), 1), (u(&[1, 1]), 1), (u(&[1, 0, 1]), 1)]);
        let f = factor_q(&u(&[1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(u(&[1, 0, 1]), 1)]);
        let f = factor_q(&u(&[-6, 6])).unwrap();
        assert_eq!(f.unit, rat(6));
        assert_eq!(f.factors, vec![(u(&[-1, 1]), 1)]);
    }

    #[test]
    fn degree_bound_enforced() {
        let mut c = vec![0i64; 26];
        c[0] = 1;
        c[25] = 1;
        assert!(matches!(factor_q(&u(&c)), Err(Error::DegreeBound { degree: 25, bound: 24 })));
    }

    #[test]
    fn swinnerton_dyer_like_cases() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits mod every prime
        assert!(is_irreducible_q(&u(&[1, 0, -10, 0, 1])).unwrap());
        // (x^2 - 2)(x^2 - 3)(x^3 - 5)
        let g = &(&u(&[-2, 0, 1]) * &u(&[-3, 0, 1])) * &u(&[-5, 0, 0, 1]);
        let f = factor_q(&g).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.expand(Var::X), g);
    }

    #[test]
    fn non_monic_factors() {
        let g = &(&u(&[1, 0, 3]) * &u(&[-2, 0, 0, 5])) * &u(&[7, 2]).pow(2);
        let f = factor_q(&g).unwrap();
        assert_eq!(f.expand(Var::X), g);
        assert_eq!(f.factors.len(), 3);
    }

    #[test]
    fn divisors() {
        let d = small_divisors(&BigInt::from(12)).unwrap();
        assert_eq!(d, [1, 2, 3, 4, 6, 12].iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn reconstructs_products(a in prop::collection::vec(-6i64..7, 2..5),
                                 b in prop::collection::vec(-6i64..7, 2..5),
                                 c in prop::collection::vec(-6i64..7, 1..4)) {
            let f = &(&u(&a) * &u(&b)) * &u(&c);
            prop_assume!(!f.is_zero());
            let fac = factor_q(&f).unwrap();
            prop_assert_eq!(fac.expand(Var::X), f.clone());
            for (g, _) in &fac.factors {
                if g.degree() >= 2 {
                    prop_assert!(g.rational_roots().unwrap().is_empty());
                }
            }
        }
    }
}
