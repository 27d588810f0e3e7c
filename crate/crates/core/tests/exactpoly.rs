use std::sync::Arc;

use proptest::prelude::*;
use qh_core::exactpoly::{
    int, parse_poly, ratio, Bindings, Monomial, MonomialOrder, Poly, PolyError, PolyRing, Rational,
};

fn ring() -> Arc<PolyRing> {
    PolyRing::unit(["x", "y", "z"])
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d).unwrap())
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), arb_rational()), 0..5).prop_map(|terms| {
        let r = ring();
        Poly::from_terms(
            &r,
            terms
                .into_iter()
                .map(|((a, b, c), q)| (Monomial::from_exponents(&[a, b, c]), q)),
        )
    })
}

proptest! {
    #[test]
    fn ring_axioms(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
        let r = ring();
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f + &Poly::zero(&r), f.clone());
        prop_assert_eq!(&f * &Poly::one(&r), f.clone());
        prop_assert_eq!(&(&f + &g) - &g, f.clone());
        prop_assert_eq!(&f + &(-&g), &f - &g);
    }

    #[test]
    fn degree_is_additive(f in arb_poly(), g in arb_poly()) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fg = &f * &g;
        prop_assert_eq!(fg.total_degree().unwrap(), f.total_degree().unwrap() + g.total_degree().unwrap());
        prop_assert_eq!(
            fg.leading_monomial().unwrap(),
            &f.leading_monomial().unwrap().mul(g.leading_monomial().unwrap())
        );
    }

    #[test]
    fn pow_is_repeated_product(f in arb_poly(), e in 0u32..4) {
        let mut acc = Poly::one(f.ring());
        for _ in 0..e {
            acc = &acc * &f;
        }
        prop_assert_eq!(f.pow(e), acc);
    }

    #[test]
    fn render_parse_round_trip(f in arb_poly()) {
        let text = f.to_string();
        prop_assert_eq!(parse_poly(&text, f.ring()).unwrap(), f);
    }

    #[test]
    fn specialization_is_a_homomorphism(f in arb_poly(), g in arb_poly(), a in arb_rational(), b in arb_rational()) {
        let mut both = Bindings::new();
        both.insert("x".into(), a.clone());
        both.insert("y".into(), b.clone());
        let mut only_x = Bindings::new();
        only_x.insert("x".into(), a);
        let mut only_y = Bindings::new();
        only_y.insert("y".into(), b);
        prop_assert_eq!(
            f.specialize(&only_x).specialize(&only_y),
            f.specialize(&both)
        );
        prop_assert_eq!((&f * &g).specialize(&both), &f.specialize(&both) * &g.specialize(&both));
        prop_assert_eq!((&f + &g).specialize(&both), &f.specialize(&both) + &g.specialize(&both));
    }

    #[test]
    fn substitution_agrees_with_specialization(f in arb_poly(), a in arb_rational()) {
        let r = ring();
        let mut b = Bindings::new();
        b.insert("z".into(), a.clone());
        prop_assert_eq!(f.substitute(2, &Poly::constant(&r, a)), f.specialize(&b));
    }

    #[test]
    fn terms_are_sorted_and_nonzero(f in arb_poly()) {
        let r = f.ring();
        for w in f.terms().windows(2) {
            prop_assert_eq!(r.cmp(&w[0].0, &w[1].0), std::cmp::Ordering::Greater);
        }
        prop_assert!(f.terms().iter().all(|(_, c)| *c != int(0)));
    }

    #[test]
    fn orders_are_total_and_multiplicative(
        a in (0u32..4, 0u32..4, 0u32..4),
        b in (0u32..4, 0u32..4, 0u32..4),
        c in (0u32..4, 0u32..4, 0u32..4),
    ) {
        let (a, b, c) = (
            Monomial::from_exponents(&[a.0, a.1, a.2]),
            Monomial::from_exponents(&[b.0, b.1, b.2]),
            Monomial::from_exponents(&[c.0, c.1, c.2]),
        );
        for order in [MonomialOrder::DegRevLex, MonomialOrder::Lex, MonomialOrder::Block { first: 1 }] {
            let w = [1, 1, 1];
            let ab = order.compare(&a, &b, &w);
            prop_assert_eq!(ab, order.compare(&a.mul(&c), &b.mul(&c), &w));
            prop_assert_eq!(ab.reverse(), order.compare(&b, &a, &w));
            prop_assert_ne!(order.compare(&a.mul(&c), &Monomial::one(), &w), std::cmp::Ordering::Less);
        }
    }
}

#[test]
fn canonical_rendering() {
    let r = PolyRing::unit(["E", "H"]);
    let f = parse_poly("2H^2 + E^2 - 5/2 E H", &r).unwrap();
    assert_eq!(f.to_string(), "E^2 - 5/2*E*H + 2*H^2");
    assert_eq!(Poly::zero(&r).to_string(), "0");
    assert_eq!(parse_poly("EH", &r).unwrap().to_string(), "E*H");
}

#[test]
fn weighted_degrees() {
    let r = PolyRing::new(
        [("E", 1), ("H", 1), ("q0", 2), ("q1", 1)],
        MonomialOrder::DegRevLex,
    )
    .unwrap();
    let f = parse_poly("E*H^2 + 2*E*q0 - 2*H*q0 - 2*q0*q1", &r).unwrap();
    assert!(f.is_homogeneous());
    assert_eq!(f.weighted_degree().unwrap(), 3);
    assert_eq!(
        Poly::zero(&r).weighted_degree(),
        Err(PolyError::ZeroPolynomialDegree)
    );
}

#[test]
fn parse_errors() {
    let r = ring();
    assert!(matches!(
        parse_poly("x + w", &r),
        Err(PolyError::Parse { pos: 4, .. })
    ));
    assert!(matches!(
        parse_poly("x / y", &r),
        Err(PolyError::Parse { .. })
    ));
    assert_eq!(parse_poly("x / 0", &r), Err(PolyError::ZeroDenominator));
    assert_eq!(ratio(1, 0), Err(PolyError::ZeroDenominator));
    assert!(matches!(
        PolyRing::new([("x", 1), ("x", 1)], MonomialOrder::Lex),
        Err(PolyError::DuplicateVariable(_))
    ));
}

#[test]
fn mixed_rings_merge_by_name() {
    let a = PolyRing::unit(["x", "y"]);
    let b = PolyRing::unit(["y", "z"]);
    let f = parse_poly("x + y", &a).unwrap();
    let g = parse_poly("y - z", &b).unwrap();
    let h = &f * &g;
    assert_eq!(h.ring().names(), ["x", "y", "z"]);
    assert_eq!(h.to_string(), "x*y + y^2 - x*z - y*z");
}
