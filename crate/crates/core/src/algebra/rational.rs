use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `n` or `n/d` in lowest terms.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Natural log of `|n|` for arbitrarily large integers.
pub fn ln_abs_int(n: &BigInt) -> f64 {
    assert!(!n.is_zero(), "log of zero");
    let a = n.abs();
    let bits = a.bits();
    if bits < 1000 {
        return a.to_f64().unwrap().ln();
    }
    let shift = bits - 60;
    let top: BigInt = &a >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ln_abs(r: &BigRational) -> f64 {
    ln_abs_int(r.numer()) - ln_abs_int(r.denom())
}

pub fn to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let s = if r.is_negative() { -1.0 } else { 1.0 };
            s * ln_abs(r).exp()
        }
    }
}
