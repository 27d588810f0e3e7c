use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use qh_core::exactpoly::{
    int, parse_poly, ratio, Monomial, MonomialOrder, Poly, PolyRing, Rational,
};
use qh_core::groebner::{
    buchberger, groebner, hilbert_analysis, hilbert_numerator, solve_zero_dim, standard_monomials,
    Budget,
};
use qh_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring() -> Arc<PolyRing> {
    PolyRing::unit(["x", "y", "z"])
}

fn polys(ring: &Arc<PolyRing>, src: &[&str]) -> Vec<Poly> {
    src.iter().map(|s| parse_poly(s, ring).unwrap()).collect()
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -3i64..=3), 1..4).prop_map(|terms| {
        let r = ring();
        Poly::from_terms(
            &r,
            terms
                .into_iter()
                .filter(|((a, b, c), _)| a + b + c <= 3)
                .map(|((a, b, c), q)| (Monomial::from_exponents(&[a, b, c]), int(q))),
        )
    })
}

fn arb_ideal() -> impl Strategy<Value = Vec<Poly>> {
    prop::collection::vec(arb_poly(), 1..4)
}

const SMALL: Budget = Budget { limit: 200_000 };

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn buchberger_output_is_a_reduced_basis(gens in arb_ideal(), lex in any::<bool>()) {
        let order = if lex { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
        let g = match buchberger(&gens, &ring().with_order(order), SMALL) {
            Err(Error::BudgetExceeded { .. }) => return Ok(()),
            other => other.unwrap(),
        };
        prop_assert!(g.satisfies_s_criterion());
        prop_assert!(g.is_reduced());
        for f in &gens {
            prop_assert!(g.contains(f));
        }
    }

    #[test]
    fn normal_form_is_linear_and_multiplicative(gens in arb_ideal(), f in arb_poly(), h in arb_poly(), c in -3i64..=3) {
        let g = match buchberger(&gens, &ring(), SMALL) {
            Err(Error::BudgetExceeded { .. }) => return Ok(()),
            other => other.unwrap(),
        };
        let nf = |p: &Poly| g.normal_form(p);
        prop_assert_eq!(nf(&(&f + &h.scale(&int(c)))), &nf(&f) + &nf(&h).scale(&int(c)));
        prop_assert_eq!(nf(&(&f * &h)), nf(&(&nf(&f) * &nf(&h))));
        prop_assert_eq!(nf(&nf(&f)), nf(&f));
        prop_assert!(g.contains(&(&f - &nf(&f))));
    }

    #[test]
    fn hilbert_values_count_standard_monomials(gens in arb_ideal()) {
        let g = match buchberger(&gens, &ring(), SMALL) {
            Err(Error::BudgetExceeded { .. }) => return Ok(()),
            other => other.unwrap(),
        };
        prop_assume!(!g.is_unit());
        let h = hilbert_analysis(&g).unwrap();
        let lms = g.leading_monomials();
        let mut count = 0u64;
        for s in 0..h.values.len() as u32 {
            for a in 0..=s {
                for b in 0..=s - a {
                    let m = Monomial::from_exponents(&[a, b, s - a - b]);
                    if !lms.iter().any(|l| l.divides(&m)) {
                        count += 1;
                    }
                }
            }
            prop_assert_eq!(&h.values[s as usize], &BigInt::from(count));
        }
        if h.dimension == 0 {
            prop_assert_eq!(standard_monomials(&g).len() as u64, h.degree);
        }
    }
}

#[test]
fn monomial_numerators() {
    // k[x,y]/(x^2, xy): 1 - 2t^2 + t^3
    let n = hilbert_numerator(&[
        Monomial::from_exponents(&[2, 0]),
        Monomial::from_exponents(&[1, 1]),
    ]);
    assert_eq!(n, [1, 0, -2, 1].map(BigInt::from));
    assert_eq!(hilbert_numerator(&[]), [BigInt::from(1)]);
}

/// Degree of a variety checked by cutting with `dim` random affine
/// hyperplanes and counting points with multiplicity.
fn slice_degree(gens: &[Poly], dim: usize, seed: u64) -> u64 {
    let r = gens[0].ring().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all = gens.to_vec();
    for _ in 0..dim {
        let mut l = Poly::constant(&r, int(rng.random_range(-50..=50)));
        for v in 0..r.nvars() {
            l = &l + &Poly::var(&r, v).scale(&int(rng.random_range(-50..=50)));
        }
        all.push(l);
    }
    let g = buchberger(&all, &r, Budget::default()).unwrap();
    let h = hilbert_analysis(&g).unwrap();
    assert_eq!(h.dimension, 0);
    standard_monomials(&g).len() as u64
}

#[test]
fn twisted_cubic_cone() {
    let r = PolyRing::unit(["x", "y", "z", "w"]);
    let gens = polys(&r, &["x*z - y^2", "y*w - z^2", "x*w - y*z"]);
    let g = groebner(&gens, MonomialOrder::DegRevLex, Budget::default()).unwrap();
    let h = hilbert_analysis(&g).unwrap();
    assert_eq!((h.dimension, h.degree), (2, 3));
    assert_eq!(slice_degree(&gens, 2, 1), 3);
    assert_eq!(slice_degree(&gens, 2, 2), 3);
    // affine Hilbert polynomial of the cone over the twisted cubic: 3s^2/2 + 5s/2 + 1
    assert_eq!(
        h.polynomial,
        vec![int(1), ratio(5, 2).unwrap(), ratio(3, 2).unwrap()]
    );
}

#[test]
fn plane_curve_degree() {
    let r = ring();
    let gens = polys(&r, &["x^3 + y^3 + z^3 - 1"]);
    let h =
        hilbert_analysis(&groebner(&gens, MonomialOrder::DegRevLex, Budget::default()).unwrap())
            .unwrap();
    assert_eq!((h.dimension, h.degree), (2, 3));
    assert_eq!(slice_degree(&gens, 2, 7), 3);
}

#[test]
fn lex_and_degrevlex_generate_the_same_ideal() {
    let r = ring();
    let gens = polys(&r, &["x^2 + y*z - 2", "y^2 - x*z + 1", "z^2 - x - y"]);
    let a = groebner(&gens, MonomialOrder::DegRevLex, Budget::default()).unwrap();
    let b = groebner(&gens, MonomialOrder::Lex, Budget::default()).unwrap();
    assert!(b
        .polys()
        .iter()
        .all(|p| a.contains(&p.embed(a.ring()).unwrap())));
    assert!(a
        .polys()
        .iter()
        .all(|p| b.contains(&p.embed(b.ring()).unwrap())));
}

#[test]
fn solving_zero_dimensional_systems() {
    let r = PolyRing::unit(["x", "y"]);
    let g = groebner(
        &polys(&r, &["x^2 - 1", "y - 2*x"]),
        MonomialOrder::DegRevLex,
        Budget::default(),
    )
    .unwrap();
    let mut pts = solve_zero_dim(&g, Budget::default()).unwrap();
    pts.sort();
    assert_eq!(pts, vec![vec![int(-1), int(-2)], vec![int(1), int(2)]]);

    let g = groebner(
        &polys(&r, &["x^2 + 1", "y"]),
        MonomialOrder::DegRevLex,
        Budget::default(),
    )
    .unwrap();
    assert!(matches!(
        solve_zero_dim(&g, Budget::default()),
        Err(Error::NonRational { .. })
    ));

    let g = groebner(
        &polys(&r, &["x*y - 1"]),
        MonomialOrder::DegRevLex,
        Budget::default(),
    )
    .unwrap();
    assert_eq!(
        solve_zero_dim(&g, Budget::default()),
        Err(Error::NotZeroDimensional { dim: 1 })
    );

    let g = groebner(
        &polys(&r, &["x - 1", "x - 2"]),
        MonomialOrder::DegRevLex,
        Budget::default(),
    )
    .unwrap();
    assert!(g.is_unit());
    assert_eq!(hilbert_analysis(&g), Err(Error::Inconsistent));
}

#[test]
fn budget_is_enforced() {
    let r = ring();
    let cyclic = polys(&r, &["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"]);
    let g = groebner(&cyclic, MonomialOrder::Lex, Budget::default()).unwrap();
    // z^3 = 1 on cyclic-3
    assert!(g.contains(&parse_poly("z^3 - 1", &r).unwrap()));
    let steps = g.steps();
    assert!(groebner(&cyclic, MonomialOrder::Lex, Budget::new(steps)).is_ok());
    assert_eq!(
        groebner(&cyclic, MonomialOrder::Lex, Budget::new(steps - 1)).map(|_| ()),
        Err(Error::BudgetExceeded { budget: steps - 1 })
    );
}

#[test]
fn rationals_in_bases() {
    let r = PolyRing::unit(["x"]);
    let g = groebner(
        &polys(&r, &["3*x - 2"]),
        MonomialOrder::DegRevLex,
        Budget::default(),
    )
    .unwrap();
    let pts = solve_zero_dim(&g, Budget::default()).unwrap();
    assert_eq!(pts, vec![vec![Rational::new(2.into(), 3.into())]]);
}
