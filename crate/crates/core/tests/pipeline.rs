mod common;

use common::{descriptor, expected, full_run, read, with_geom, THREEFOLDS};
use qh_core::exactpoly::{int, parse_poly, render_rational, MonomialOrder, Poly};
use qh_core::exec::Execution;
use qh_core::groebner::{buchberger, hilbert_analysis, standard_monomials, Budget};
use qh_core::pipeline::{
    analyze, build_geometric, check_presentation, nonvanishing_fiber_multiples, run,
    verify_against_expected, Origin, QuantumPresentation, ThreefoldRun,
};
use qh_core::quantum::QuantumContext;
use qh_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Solved value of the invariant displayed as `shown`.
fn value(run: &ThreefoldRun, shown: &str) -> String {
    let lat = run.context.lattice();
    let (s, v) = run
        .solution
        .essential
        .symbols()
        .iter()
        .zip(&run.solution.values)
        .find(|(s, _)| s.render(lat) == shown)
        .unwrap_or_else(|| panic!("{shown} is not essential"));
    assert_eq!(run.solution.value(s), Some(v));
    render_rational(v)
}

#[test]
fn standard_fiber_entries_are_always_present() {
    for name in THREEFOLDS {
        let d = descriptor(name);
        let ctx = QuantumContext::new(&d).unwrap();
        let sys = ctx.associativity_system(Execution::default()).unwrap();
        let g = build_geometric(&d, &ctx, &sys.essential).unwrap();
        let fibers: Vec<_> = g
            .entries
            .iter()
            .filter(|e| e.origin == Origin::StandardFiber)
            .collect();
        assert_eq!(fibers.len(), d.ncurves(), "{name}");
        assert!(fibers.iter().all(|e| e.value == int(-1)));
        // descriptor lines restating the fiber relation are not duplicated
        let mut idx: Vec<usize> = g.entries.iter().map(|e| e.index).collect();
        idx.sort();
        idx.dedup();
        assert_eq!(idx.len(), g.entries.len());
    }
}

#[test]
fn solutions_satisfy_every_relation() {
    for name in THREEFOLDS {
        let r = full_run(name);
        let bindings = r
            .system
            .x_ring
            .names()
            .iter()
            .cloned()
            .zip(r.solution.values.iter().cloned())
            .collect();
        for g in r
            .system
            .generators
            .iter()
            .chain(&r.geometric.relations(&r.system.x_ring))
        {
            assert!(g.specialize(&bindings).is_zero(), "{name}: {g}");
        }
        assert!(
            nonvanishing_fiber_multiples(&r.context, &r.solution).is_empty(),
            "{name}"
        );
    }
}

#[test]
fn line_and_conic_invariants_are_enumerative() {
    // lines through a point meeting a line or conic at a given point: 1;
    // lines through two points of a conic: 1; secants of a conic meeting a line: 1
    let r = full_run("M2_33");
    assert_eq!(value(&r, "I(L0-F1 | phi1, pt)"), "1");
    let r = full_run("M2_30");
    assert_eq!(value(&r, "I(L0-F1 | phi1, pt)"), "1");
    assert_eq!(value(&r, "I(L0-2*F1 | phi1, phi1)"), "1");
    assert_eq!(value(&r, "I(L0-2*F1 | rho, phi1)"), "1");
    assert_eq!(value(&r, "I(L0-2*F1 | pt)"), "0");
}

#[test]
fn rational_quartic_secants_are_enumerative() {
    // A rational quartic has 3 secants through a general point and 6 in a
    // general plane, so 9 meet two general lines. Its trisecants form one
    // ruling of the quadric containing it: 2 meet a general line and 1
    // passes through each point of the curve.
    let r = full_run("M2_22");
    assert_eq!(value(&r, "I(L0-2*F1 | pt)"), "3");
    assert_eq!(value(&r, "I(L0-2*F1 | rho, rho)"), "9");
    assert_eq!(value(&r, "I(L0-3*F1 | rho)"), "2");
    assert_eq!(value(&r, "I(L0-3*F1 | phi1)"), "1");
    assert_eq!(value(&r, "I(L0-F1 | rho, pt)"), "4");
}

#[test]
fn descriptor_lines_fix_two_curve_invariants() {
    let r = full_run("M3_18");
    assert_eq!(value(&r, "I(L0-F1-F2 | pt)"), "2");
    assert_eq!(value(&r, "I(F1 | phi1)"), "-1");
    assert_eq!(value(&r, "I(F2 | phi2)"), "-1");
}

#[test]
fn m2_30_has_a_unique_point() {
    let r = full_run("M2_30");
    assert_eq!(r.solution.values.len(), 14);
    assert_eq!(
        r.solution.render(&r.context)[12],
        "x13 = I(L0-F1 | rho, pt) = 2"
    );
}

/// Slice the solution set of `J_A + G` by `dim` random affine hyperplanes
/// and count points with multiplicity.
fn sliced_degree(
    d: &qh_core::descriptor::ThreefoldDescriptor,
    dim: usize,
    seed: u64,
) -> (usize, u64) {
    let ctx = QuantumContext::new(d).unwrap();
    let sys = ctx.associativity_system(Execution::default()).unwrap();
    let g = build_geometric(d, &ctx, &sys.essential).unwrap();
    let r = &sys.x_ring;
    let mut gens = sys.generators.clone();
    gens.extend(g.relations(r));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..dim {
        let mut l = Poly::constant(r, int(rng.random_range(-30..=30)));
        for v in 0..r.nvars() {
            l = &l + &Poly::var(r, v).scale(&int(rng.random_range(-30..=30)));
        }
        gens.push(l);
    }
    let gb = buchberger(&gens, r, Budget::default()).unwrap();
    let h = hilbert_analysis(&gb).unwrap();
    (h.dimension, standard_monomials(&gb).len() as u64)
}

fn solve_status(d: &qh_core::descriptor::ThreefoldDescriptor) -> Result<(), Error> {
    run(d, Budget::default(), Execution::default()).map(|_| ())
}

#[test]
fn fiber_relation_alone_leaves_a_surface() {
    let d = with_geom("M2_30", &[]);
    assert_eq!(
        solve_status(&d),
        Err(Error::Underdetermined { dim: 2, deg: 1 })
    );
    assert_eq!(sliced_degree(&d, 2, 3), (0, 1));
    assert_eq!(sliced_degree(&d, 2, 4), (0, 1));

    let d = with_geom("M2_30", &["I(L0-F1 | rho, pt) = 2"]);
    assert_eq!(
        solve_status(&d),
        Err(Error::Underdetermined { dim: 1, deg: 1 })
    );
    assert_eq!(sliced_degree(&d, 1, 5), (0, 1));

    let d = with_geom("M2_33", &[]);
    assert!(matches!(
        solve_status(&d),
        Err(Error::Underdetermined { dim: 1, .. })
    ));
}

#[test]
fn contradictory_input_is_inconsistent() {
    // fiber classes meet rho trivially, so I(F1 | rho) = 0 is forced
    let d = with_geom("M2_30", &["I(F1 | rho) = 1"]);
    assert_eq!(solve_status(&d), Err(Error::Inconsistent));
    let d = with_geom(
        "M2_30",
        &["I(L0-2*F1 | rho, rho) = 1", "I(L0-F1 | rho, pt) = 3"],
    );
    assert_eq!(solve_status(&d), Ok(()));
}

#[test]
fn two_points_are_ambiguous() {
    let d = with_geom(
        "M2_21",
        &["I(L0-F1 | rho, rho) = 1", "I(2*L0-3*F1 | rho, pt) = 2"],
    );
    assert_eq!(solve_status(&d), Err(Error::Ambiguous { deg: 2 }));
    assert_eq!(sliced_degree(&d, 0, 0), (0, 2));
}

#[test]
fn unknown_and_ungraded_symbols_are_rejected() {
    let d = descriptor("M2_30");
    let ctx = QuantumContext::new(&d).unwrap();
    let sys = ctx.associativity_system(Execution::default()).unwrap();
    let bad = with_geom("M2_30", &["I(L0 | pt, pt) = 1"]);
    assert!(matches!(
        build_geometric(&bad, &ctx, &sys.essential),
        Err(Error::UnknownSymbol(_))
    ));
    let bad = with_geom("M2_30", &["I(L0-3*F1 | rho) = 1"]);
    assert!(matches!(
        build_geometric(&bad, &ctx, &sys.essential),
        Err(Error::UnknownSymbol(_))
    ));
    assert_eq!(
        analyze(&sys, MonomialOrder::DegRevLex, Budget::new(10)).map(|_| ()),
        Err(Error::BudgetExceeded { budget: 10 })
    );
}

#[test]
fn presentations_vanish_and_recover_classical_relations() {
    for name in THREEFOLDS {
        let r = full_run(name);
        let p = &r.presentation;
        assert_eq!(p.name, name);
        let classical = r.context.ring().classical_relations().unwrap();
        let check = check_presentation(p, &r.solved_product(), &classical).unwrap();
        assert!(check.passed(), "{name}: {check:?}");
        for f in &p.relations {
            assert!(f.is_homogeneous(), "{name}: {f}");
        }
    }
}

#[test]
fn small_presentations() {
    let r = full_run("M2_33");
    let shown: Vec<String> = r
        .presentation
        .relations
        .iter()
        .map(ToString::to_string)
        .collect();
    let exp = expected("M2_33");
    let want: Vec<String> = exp.relations.iter().map(|(_, s)| s.clone()).collect();
    assert_eq!(shown, want);
    let r = full_run("M2_29");
    assert_eq!(r.presentation.nq(), 2);
    assert_eq!(
        r.presentation.relations.len(),
        expected("M2_29").relations.len()
    );
}

#[test]
fn verification_tiers() {
    let r = full_run("M3_25");
    let p = &r.presentation;
    let rels = expected("M3_25").relations_in(&p.ring).unwrap();
    let v = verify_against_expected(p, &rels, Budget::default()).unwrap();
    assert!(v.ideal_equal() && v.syntactic);

    // same ideal, different generators
    let mut mixed = rels.clone();
    let q0 = parse_poly("q0", &p.ring).unwrap();
    mixed[0] = &rels[0] + &(&q0 * &rels[1]);
    let v = verify_against_expected(p, &mixed, Budget::default()).unwrap();
    assert!(v.ideal_equal() && !v.syntactic);

    // a wrong coefficient is caught in both directions
    let mut wrong = rels.clone();
    wrong[0] = &rels[0] - &q0;
    let v = verify_against_expected(p, &wrong, Budget::default()).unwrap();
    assert!(!v.ideal_equal());
    assert_eq!(v.expected_in_computed, vec![false, true, true]);
}

#[test]
fn quotient_dimension_is_the_total_betti_number() {
    for name in THREEFOLDS {
        let r = full_run(name);
        let gb = buchberger(
            &r.presentation.relations,
            &r.presentation.ring,
            Budget::default(),
        )
        .unwrap();
        // q-graded ring: the quotient is free over k[q] of rank sum b_i,
        // which the affine Hilbert data sees as degree with dimension nq
        let h = hilbert_analysis(&gb).unwrap();
        assert_eq!(h.dimension, r.presentation.nq(), "{name}");
        assert_eq!(h.degree as usize, r.context.ring().hodge_length(), "{name}");
    }
}

#[test]
fn presentation_files_round_trip() {
    for name in ["M2_30", "M3_10"] {
        let p = full_run(name).presentation;
        let again = QuantumPresentation::parse(&p.render()).unwrap();
        assert_eq!(again, p);
    }
    let p3 = QuantumPresentation::parse(&read("P3.qhp")).unwrap();
    assert_eq!(p3.relations[0].to_string(), "H^4 - q0");
    assert_eq!(QuantumPresentation::parse(&p3.render()).unwrap(), p3);
    assert!(QuantumPresentation::parse("name: X\ngenerators: H\nrelation: H^2 - q7\n").is_err());
}
