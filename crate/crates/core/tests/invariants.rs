use doublefield::algebra::{BPoly, UPoly, Var};
use doublefield::arakelov::{deg_kp, principal_arakelov};
use doublefield::divisor::{principal_divisor, DeltaElement, DivisorDelta, Place};
use doublefield::pairing::{pair, pair_homogeneous, Side};
use doublefield::parse::{parse_divisor, parse_poly};
use proptest::prelude::*;

const PRIMES: [&str; 11] = [
    "x - y^2", "x - y", "x*y - 1", "x + y + 1", "x^2 + y^2 - 2", "y*x^2 - 3", "x - 1", "y + 2", "x^2 + 1", "inf_x", "inf_y",
];

fn place(i: usize) -> Place {
    let d = parse_divisor(PRIMES[i], false).unwrap().divisor;
    let p = d.support().next().unwrap().clone();
    p
}

fn divisor(terms: &[(usize, i64)]) -> DivisorDelta {
    DivisorDelta::from_terms(terms.iter().map(|&(i, c)| (place(i), c)))
}

fn arb_divisor() -> impl Strategy<Value = DivisorDelta> {
    prop::collection::vec((0..PRIMES.len(), -2i64..=2), 1..4).prop_map(|t| divisor(&t))
}

fn arb_element() -> impl Strategy<Value = DeltaElement> {
    prop::collection::vec((0..PRIMES.len() - 2, -2i64..=2), 1..4).prop_map(|t| {
        t.iter().fold(DeltaElement::one(), |acc, &(i, k)| {
            acc.mul(&DeltaElement::from_poly(&parse_poly(PRIMES[i]).unwrap()).unwrap().pow(k))
        })
    })
}

fn arb_bpoly() -> impl Strategy<Value = BPoly> {
    prop::collection::vec((0u32..4, 0u32..4, -30i64..30), 0..6).prop_map(|t| BPoly::from_terms(&t))
}

fn arb_ypoly() -> impl Strategy<Value = UPoly> {
    prop::collection::vec(-5i64..=5, 2..5)
        .prop_filter("nonconstant", |c| c[1..].iter().any(|&v| v != 0))
        .prop_map(|c| UPoly::from_ints(Var::Y, &c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn principal_divisor_is_multiplicative(a in arb_element(), b in arb_element()) {
        prop_assert_eq!(principal_divisor(&a.mul(&b)), principal_divisor(&a).add(&principal_divisor(&b)));
        prop_assert!(principal_divisor(&a.mul(&a.inv())).is_zero());
    }

    #[test]
    fn pairing_is_symmetric(a in arb_divisor(), b in arb_divisor()) {
        prop_assume!(a.is_coprime_to(&b));
        for side in [Side::K, Side::Kprime] {
            prop_assert_eq!(pair(&a, &b, side).unwrap(), pair(&b, &a, side).unwrap());
        }
    }

    #[test]
    fn pairing_is_additive(a in arb_divisor(), a2 in arb_divisor(), b in arb_divisor()) {
        prop_assume!(a.is_coprime_to(&b) && a2.is_coprime_to(&b));
        for side in [Side::K, Side::Kprime] {
            let sum = pair(&a.add(&a2), &b, side).unwrap();
            prop_assert_eq!(sum, pair(&a, &b, side).unwrap().add(&pair(&a2, &b, side).unwrap()));
        }
    }

    #[test]
    fn chart_and_homogeneous_routes_agree(a in arb_divisor(), b in arb_divisor()) {
        prop_assume!(a.is_coprime_to(&b));
        prop_assert_eq!(pair(&a, &b, Side::Kprime).unwrap(), pair_homogeneous(&a, &b, Side::Kprime).unwrap());
    }

    #[test]
    fn principal_pairings_have_degree_zero(h in arb_element(), b in arb_divisor()) {
        let d = principal_divisor(&h);
        prop_assume!(d.is_coprime_to(&b));
        for side in [Side::K, Side::Kprime] {
            prop_assert_eq!(pair(&d, &b, side).unwrap().degree(), 0);
        }
    }

    #[test]
    fn rendered_polynomials_reparse(f in arb_bpoly()) {
        prop_assert_eq!(parse_poly(&f.render()).unwrap(), f.clone());
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn principal_arakelov_divisors_have_degree_zero(num in arb_ypoly(), den in arb_ypoly()) {
        prop_assume!(num.gcd(&den).degree() == 0);
        let d = principal_arakelov(&num, &den).unwrap();
        prop_assert!(deg_kp(&d).unwrap().abs() < 1e-9);
    }
}
