//! Dense polynomials over the prime field F_p (p < 2^31), ascending coefficients.

use rand::Rng;

pub type Poly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 31));
        Fp { p }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero mod p");
        self.pow(a, self.p - 2)
    }

    pub fn trim(self, mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn padd(self, a: &[u64], b: &[u64]) -> Poly {
        let n = a.len().max(b.len());
        let v = (0..n).map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect();
        self.trim(v)
    }

    pub fn psub(self, a: &[u64], b: &[u64]) -> Poly {
        let n = a.len().max(b.len());
        let v = (0..n).map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect();
        self.trim(v)
    }

    pub fn pmul(self, a: &[u64], b: &[u64]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        self.trim(out)
    }

    pub fn scale(self, a: &[u64], c: u64) -> Poly {
        self.trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn monic(self, a: &[u64]) -> Poly {
        let inv = self.inv(*a.last().expect("monic of zero"));
        self.scale(a, inv)
    }

    pub fn divrem(self, a: &[u64], b: &[u64]) -> (Poly, Poly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return (Vec::new(), self.trim(r));
        }
        let inv = self.inv(*b.last().unwrap());
        let db = b.len() - 1;
        let mut q = vec![0u64; r.len() - db];
        for i in (0..q.len()).rev() {
            let c = self.mul(r[i + db], inv);
            q[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = self.sub(r[i + j], self.mul(c, bj));
            }
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(self, a: &[u64], b: &[u64]) -> Poly {
        self.divrem(a, b).1
    }

    pub fn gcd(self, a: &[u64], b: &[u64]) -> Poly {
        let mut a = self.trim(a.to_vec());
        let mut b = self.trim(b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.monic(&a)
        }
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g` monic.
    pub fn ext_gcd(self, a: &[u64], b: &[u64]) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.trim(a.to_vec()), self.trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.psub(&s0, &self.pmul(&q, &s1));
            let t2 = self.psub(&t0, &self.pmul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let inv = self.inv(*r0.last().unwrap());
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(self, a: &[u64]) -> Poly {
        let v = a.iter().enumerate().skip(1).map(|(i, &c)| self.mul(c, i as u64 % self.p)).collect();
        self.trim(v)
    }

    pub fn powmod(self, base: &[u64], mut e: u128, m: &[u64]) -> Poly {
        let mut r = vec![1u64];
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                r = self.rem(&self.pmul(&r, &b), m);
            }
            b = self.rem(&self.pmul(&b, &b), m);
            e >>= 1;
        }
        r
    }

    pub fn is_squarefree(self, a: &[u64]) -> bool {
        self.gcd(a, &self.derivative(a)).len() == 1
    }

    /// Distinct-degree factorization of a monic square-free polynomial.
    pub fn ddf(self, f: &[u64]) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let mut d = 0;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                let deg = f.len() - 1;
                out.push((f, deg));
                break;
            }
            h = self.powmod(&h, self.p as u128, &f);
            let g = self.gcd(&self.psub(&h, &x), &f);
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        out
    }

    /// Splits a monic square-free product of irreducibles of degree `d`.
    pub fn edf<R: Rng>(self, f: &[u64], d: usize, rng: &mut R) -> Vec<Poly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        loop {
            let a: Poly = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p - 1)/2)
            let mut norm = a.clone();
            for _ in 1..d {
                norm = self.rem(&self.pmul(&self.powmod(&norm, self.p as u128, f), &a), f);
            }
            let b = self.powmod(&norm, ((self.p - 1) / 2) as u128, f);
            let g = self.gcd(&self.psub(&b, &[1]), f);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.divrem(f, &g).0;
                let mut out = self.edf(&g, d, rng);
                out.extend(self.edf(&h, d, rng));
                return out;
            }
        }
    }

    /// Complete factorization of a monic square-free polynomial into monic irreducibles.
    pub fn factor_squarefree<R: Rng>(self, f: &[u64], rng: &mut R) -> Vec<Poly> {
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            out.extend(self.edf(&g, d, rng));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factors_x4_minus_1_mod_5() {
        let f = Fp::new(5);
        let poly = vec![4, 0, 0, 0, 1];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut fs = f.factor_squarefree(&poly, &mut rng);
        fs.sort();
        assert_eq!(fs.len(), 4);
        let prod = fs.iter().fold(vec![1], |acc, g| f.pmul(&acc, g));
        assert_eq!(prod, poly);
    }

    #[test]
    fn ext_gcd_identity() {
        let f = Fp::new(7);
        let a = vec![1, 2, 1];
        let b = vec![3, 1];
        let (g, s, t) = f.ext_gcd(&a, &b);
        assert_eq!(g, vec![1]);
        assert_eq!(f.padd(&f.pmul(&s, &a), &f.pmul(&t, &b)), vec![1]);
    }
}
