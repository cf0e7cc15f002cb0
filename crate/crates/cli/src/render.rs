use doublefield::algebra::Var;
use doublefield::divisor::{Divisor, Place, UPlace};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Term {
    pub place: String,
    pub kind: &'static str,
    pub coeff: i64,
}

#[derive(Debug, Serialize)]
pub struct DivisorJson {
    pub text: String,
    /// Σ coeff·deg, only for divisors of Q(x) or Q(y).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    pub terms: Vec<Term>,
}

fn uplace_kind(p: &UPlace) -> &'static str {
    match p.var() {
        Var::X => "K",
        Var::Y => "Kprime",
    }
}

pub fn place_kind(p: &Place) -> &'static str {
    match p {
        Place::Binary(_) => "binary",
        Place::KUnary(u) | Place::KpUnary(u) => uplace_kind(u),
    }
}

pub fn delta(d: &Divisor<Place>) -> DivisorJson {
    DivisorJson {
        text: d.to_string(),
        degree: None,
        terms: d.iter().map(|(p, coeff)| Term { place: p.to_string(), kind: place_kind(p), coeff }).collect(),
    }
}

pub fn unary(d: &Divisor<UPlace>) -> DivisorJson {
    DivisorJson {
        text: d.to_string(),
        degree: Some(d.degree()),
        terms: d.iter().map(|(p, coeff)| Term { place: p.to_string(), kind: uplace_kind(p), coeff }).collect(),
    }
}
