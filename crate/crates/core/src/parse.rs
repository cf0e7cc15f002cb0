//! Polynomial expressions and divisor specifications.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := rational | 'x' | 'y' | '(' expr ')' | '-' base
//! rational := int ('/' uint)?
//! ```
//!
//! Whitespace is insignificant and juxtaposition is not multiplication.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{BPoly, UPoly, Var};
use crate::divisor::{DivisorDelta, Place, UPlace};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: expected {}, found {}", self.offset, self.expected.join(" or "), self.found)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigRational),
    Var(Var),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
}

impl Expr {
    pub fn eval(&self) -> BPoly {
        match self {
            Expr::Num(c) => BPoly::constant(c.clone()),
            Expr::Var(Var::X) => BPoly::x(),
            Expr::Var(Var::Y) => BPoly::y(),
            Expr::Add(a, b) => &a.eval() + &b.eval(),
            Expr::Sub(a, b) => &a.eval() - &b.eval(),
            Expr::Mul(a, b) => &a.eval() * &b.eval(),
            Expr::Pow(a, k) => a.eval().pow(*k),
            Expr::Neg(a) => -&a.eval(),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error(&mut self, expected: &[&str]) -> ParseError {
        let found = match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".into(),
        };
        ParseError { offset: self.pos, expected: expected.iter().map(|s| s.to_string()).collect(), found }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let n = rest.bytes().take_while(|b| b.is_ascii_digit()).count();
        if n == 0 {
            return None;
        }
        self.pos += n;
        Some(rest[..n].parse().unwrap())
    }

    fn expr(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut e = self.factor()?;
        while self.eat('*') {
            e = Expr::Mul(Box::new(e), Box::new(self.factor()?));
        }
        Ok(e)
    }

    fn factor(&mut self) -> std::result::Result<Expr, ParseError> {
        let b = self.base()?;
        if self.eat('^') {
            let k = self.digits().ok_or_else(|| self.error(&["exponent"]))?;
            let k: u32 = k.try_into().map_err(|_| self.error(&["exponent below 2^32"]))?;
            return Ok(Expr::Pow(Box::new(b), k));
        }
        Ok(b)
    }

    fn base(&mut self) -> std::result::Result<Expr, ParseError> {
        const START: [&str; 5] = ["number", "'x'", "'y'", "'('", "'-'"];
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(Expr::Var(Var::X))
            }
            Some('y') => {
                self.pos += 1;
                Ok(Expr::Var(Var::Y))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error(&["')'", "operator"]));
                }
                Ok(e)
            }
            Some('-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.base()?)))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits().unwrap();
                let save = self.pos;
                if self.eat('/') {
                    match self.digits() {
                        Some(d) if !d.is_zero() => return Ok(Expr::Num(BigRational::new(n, d))),
                        Some(_) => {
                            self.pos = save + 1;
                            return Err(self.error(&["nonzero denominator"]));
                        }
                        // a '/' followed by a non-number belongs to an enclosing fraction
                        None => self.pos = save,
                    }
                }
                Ok(Expr::Num(BigRational::from_integer(n)))
            }
            _ => Err(self.error(&START)),
        }
    }

    fn finish(&mut self, e: Expr, extra: &[&str]) -> std::result::Result<Expr, ParseError> {
        if self.peek().is_some() {
            let mut expected = vec!["operator", "end of input"];
            expected.extend_from_slice(extra);
            return Err(self.error(&expected));
        }
        Ok(e)
    }
}

pub fn parse_expression(text: &str) -> std::result::Result<Expr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.finish(e, &[])
}

pub fn parse_poly(text: &str) -> Result<BPoly> {
    Ok(parse_expression(text)?.eval())
}

/// `EXPR` or `EXPR / EXPR` with a top-level slash; the denominator is 1
/// when absent.
pub fn parse_fraction(text: &str) -> Result<(BPoly, BPoly)> {
    let mut p = Parser { src: text, pos: 0 };
    let num = p.expr()?;
    if p.eat('/') {
        let den = p.expr()?;
        let den = p.finish(den, &[])?.eval();
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        return Ok((num.eval(), den));
    }
    let num = p.finish(num, &["'/'"])?;
    Ok((num.eval(), BPoly::one()))
}

/// Result of reading a divisor specification: the divisor and the primes
/// whose irreducibility was assumed rather than certified.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedDivisor {
    pub divisor: DivisorDelta,
    pub assumed: Vec<String>,
}

fn place_of(text: &str, offset: usize, assume_irreducible: bool, assumed: &mut Vec<String>) -> Result<Place> {
    match text.trim() {
        "inf_x" => return Ok(Place::inf_x()),
        "inf_y" => return Ok(Place::inf_y()),
        _ => {}
    }
    let f = parse_expression(text).map_err(|e| ParseError { offset: e.offset + offset, ..e })?.eval();
    if f.is_constant() {
        return Err(Error::Invalid(format!("{text} is a constant, not a prime")));
    }
    match Place::from_poly_checked(&f) {
        Ok(p) => Ok(p),
        Err(Error::DegreeBound { .. }) | Err(Error::UncertifiedFactor(_)) if assume_irreducible => {
            assumed.push(f.primitive_int().render());
            Ok(Place::from_irreducible(&f))
        }
        Err(e) => Err(e),
    }
}

/// Parses `"2*(x - y^2); -1*inf_x"`: semicolon-separated terms, each an
/// optional integer coefficient and `*` followed by a prime.
pub fn parse_divisor(text: &str, assume_irreducible: bool) -> Result<ParsedDivisor> {
    let mut divisor = DivisorDelta::zero();
    let mut assumed = Vec::new();
    let mut offset = 0;
    for part in text.split(';') {
        let start = offset;
        offset += part.len() + 1;
        if part.trim().is_empty() {
            continue;
        }
        let (coeff, prime, prime_offset) = split_coefficient(part);
        let place = place_of(prime, start + prime_offset, assume_irreducible, &mut assumed)?;
        divisor.add_term(place, coeff);
    }
    Ok(ParsedDivisor { divisor, assumed })
}

fn split_coefficient(part: &str) -> (i64, &str, usize) {
    let t = part.trim_start();
    let lead = part.len() - t.len();
    let sign_len = if t.starts_with('-') || t.starts_with('+') { 1 } else { 0 };
    let digits = t[sign_len..].bytes().take_while(|b| b.is_ascii_digit()).count();
    if digits > 0 {
        let after = &t[sign_len + digits..];
        let rest = after.trim_start();
        if let Some(prime) = rest.strip_prefix('*') {
            if let Ok(c) = t[..sign_len + digits].parse::<i64>() {
                let consumed = lead + sign_len + digits + (after.len() - rest.len()) + 1;
                return (c, prime, consumed);
            }
        }
    }
    (1, part, 0)
}

/// A place of Q(x) or Q(y): `inf_x`, `inf_y`, or an irreducible univariate
/// expression.
pub fn parse_uplace(text: &str) -> Result<UPlace> {
    match text.trim() {
        "inf_x" => return Ok(UPlace::Infinity(Var::X)),
        "inf_y" => return Ok(UPlace::Infinity(Var::Y)),
        _ => {}
    }
    let f = parse_poly(text)?;
    let u: UPoly = f
        .as_upoly(Var::Y)
        .or_else(|| f.as_upoly(Var::X))
        .ok_or_else(|| Error::Invalid(format!("{text} involves both variables")))?;
    UPlace::finite_checked(&u)
}

/// A single finite prime of Q(x, y) (e.g. the modulus of a residue).
pub fn parse_prime(text: &str, assume_irreducible: bool) -> Result<(Place, Vec<String>)> {
    let mut assumed = Vec::new();
    let p = place_of(text, 0, assume_irreducible, &mut assumed)?;
    Ok((p, assumed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(parse_poly("x^2 - y").unwrap(), BPoly::from_terms(&[(2, 0, 1), (0, 1, -1)]));
        assert_eq!(parse_poly("(x-y)*(x+y)").unwrap(), BPoly::from_terms(&[(2, 0, 1), (0, 2, -1)]));
        assert_eq!(parse_poly("3/2*x - -y").unwrap(), &BPoly::x().scale(&BigRational::new(3.into(), 2.into())) + &BPoly::y());
    }

    #[test]
    fn juxtaposition_rejected() {
        let e = parse_expression("x y").unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(e.expected.contains(&"operator".to_string()));
        assert_eq!(e.found, "'y'");
        assert!(parse_expression("2x").is_err());
    }

    #[test]
    fn error_offsets() {
        assert_eq!(parse_expression("x + * y").unwrap_err().offset, 4);
        assert_eq!(parse_expression("(x - 1").unwrap_err().offset, 6);
        assert_eq!(parse_expression("x^y").unwrap_err().expected, vec!["exponent"]);
        assert!(parse_expression("1/0").is_err());
    }

    #[test]
    fn fractions() {
        let (n, d) = parse_fraction("(x^2-y^2)/(x*y)").unwrap();
        assert_eq!(n, parse_poly("x^2-y^2").unwrap());
        assert_eq!(d, parse_poly("x*y").unwrap());
        let (n, d) = parse_fraction("1/2*x").unwrap();
        assert_eq!(n, parse_poly("x").unwrap().scale(&BigRational::new(1.into(), 2.into())));
        assert_eq!(d, BPoly::one());
    }

    #[test]
    fn divisor_spec() {
        let d = parse_divisor("2*(x - y^2); -1*inf_x; y - 1", false).unwrap();
        assert!(d.assumed.is_empty());
        assert_eq!(d.divisor.coeff(&Place::from_irreducible(&parse_poly("x-y^2").unwrap())), 2);
        assert_eq!(d.divisor.coeff(&Place::inf_x()), -1);
        assert_eq!(d.divisor.coeff(&Place::from_irreducible(&parse_poly("y-1").unwrap())), 1);
        assert!(parse_divisor("x^2 - y^2", false).is_err());
        let e = parse_divisor("x; 2*(x y)", false).unwrap_err();
        assert!(matches!(e, Error::Parse(ParseError { offset: 8, .. })), "{e:?}");
    }

    #[test]
    fn uplaces() {
        assert_eq!(parse_uplace("inf_y").unwrap(), UPlace::Infinity(Var::Y));
        assert_eq!(parse_uplace("2*y - 2").unwrap(), UPlace::finite(&UPoly::from_ints(Var::Y, &[-1, 1])));
        assert!(parse_uplace("y^2 - 1").is_err());
    }
}
