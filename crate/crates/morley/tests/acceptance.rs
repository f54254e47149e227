//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line. Every check is exact — no tolerances anywhere.

use std::time::Instant;

use num_traits::Zero;

use morley::apolarity::{apolar_cubic, HomPoint, PointConic};
use morley::bateman::{bateman_points, BatemanInput};
use morley::batch::{run_suite, CaseResult, CaseStatus, SUITE_NAMES};
use morley::config7::{conic_through_five, morley_data, seventh_cubic, sixth_points};
use morley::form::monomials;
use morley::rational::{parse_rational, rat_i};
use morley::surface::{branch_cone, CubicSurface};
use morley::{Form, Rational};

fn report(n: u32, name: &str, ok: bool) {
    println!("criterion {n} ({name}): {}", if ok { "pass" } else { "fail" });
    assert!(ok, "criterion {n} ({name}) failed");
}

fn all_pass(results: &[CaseResult]) -> bool {
    results.iter().all(|r| r.status == CaseStatus::Pass)
}

#[test]
fn criterion_01_bateman_vanishing() {
    let start = Instant::now();
    let results = run_suite("differential-identity", 101, 50).unwrap();
    let per_pair = start.elapsed().as_secs_f64() / 50.0;
    report(1, "differential identity on 50 random pairs", all_pass(&results) && per_pair < 1.0);
}

#[test]
fn criterion_02_diagonal_family_point_level() {
    let pairs: [(i64, i64); 10] =
        [(1, 2), (1, 3), (2, 3), (2, 5), (3, 4), (3, 5), (4, 5), (1, 4), (2, 7), (3, 7)];
    let mut ok = true;
    for (m, n) in pairs {
        let x = |i: usize| Form::variable(3, i);
        let theta = &(&x(0) * &x(0))
            + &(&(&x(1) * &x(1)).scale(&rat_i(m * m)) + &(&x(2) * &x(2)).scale(&rat_i(n * n)));
        let d = &(&x(0) * &x(1)) * &x(2);
        let inp = BatemanInput::new(PointConic::from_form(theta).unwrap(), d).unwrap();
        let z = bateman_points(&inp).unwrap();
        let data = morley_data(&z).unwrap();
        ok &= data.f.is_zero() && data.psi.as_ref().is_some_and(|p| p.is_zero());
    }
    report(2, "diagonal family: 7 rational points, F = 0, Psi = 0", ok);
}

#[test]
fn criterion_03_generic_nonvanishing() {
    let start = Instant::now();
    let results = run_suite("nonvanishing", 103, 50).unwrap();
    let per_config = start.elapsed().as_secs_f64() / 50.0;
    report(3, "Psi nonzero on 50 random configurations", all_pass(&results) && per_config < 5.0);
}

#[test]
fn criterion_04_six_on_conic() {
    let results = run_suite("six-on-conic", 104, 20).unwrap();
    report(4, "six on a conic force F = 0 with Q = 0", all_pass(&results));
}

#[test]
fn criterion_05_multihomogeneity() {
    let results = run_suite("homogeneity", 105, 10).unwrap();
    report(5, "scaling laws lambda^2 / lambda^3 / lambda^5 / lambda^15", all_pass(&results));
}

#[test]
fn criterion_06_symmetry_laws() {
    let results = run_suite("symmetry", 106, 10).unwrap();
    report(6, "F symmetric, Psi alternating under transpositions", all_pass(&results));
}

#[test]
fn criterion_07_two_route_constant() {
    let results = run_suite("two-route", 107, 20).unwrap();
    // the constant is pinned in the regression fixture
    let expected: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../fixtures/generic_expected.json"
        ))
        .unwrap(),
    )
    .unwrap();
    let pinned = parse_rational(expected["two_route_constant"].as_str().unwrap()).unwrap();
    report(7, "Fano route / quotient route is the constant 6", all_pass(&results) && pinned == rat_i(6));
}

#[test]
fn criterion_08_seventh_cubic() {
    let pts: [HomPoint; 6] = [
        HomPoint::from_ints(1, 0, 0),
        HomPoint::from_ints(0, 1, 0),
        HomPoint::from_ints(0, 0, 1),
        HomPoint::from_ints(1, 1, 1),
        HomPoint::from_ints(2, 3, 5),
        HomPoint::from_ints(11, 13, 29),
    ];
    let e = seventh_cubic(&pts).unwrap();
    let sixth = sixth_points(&pts).unwrap();
    let mut ok = pts.iter().all(|p| e.eval(p.coords()).is_zero())
        && sixth.iter().all(|q| e.eval(q.coords()).is_zero());

    // six points on a nonsingular conic: E proportional to the apolar cubic
    let on_conic: Vec<HomPoint> =
        [1i64, -1, 2, -2, 3, 5].iter().map(|&t| HomPoint::from_ints(1, t, t * t)).collect();
    let on_conic: [HomPoint; 6] = on_conic.try_into().unwrap();
    let refs: Vec<&HomPoint> = on_conic.iter().collect();
    let theta = conic_through_five(&refs[..5]).unwrap();
    let e2 = seventh_cubic(&on_conic).unwrap();
    let apolar = apolar_cubic(&theta, &on_conic).unwrap();
    ok &= e2.is_proportional_to(&apolar);
    report(8, "seventh-point cubic through the twelve marked points", ok);
}

#[test]
fn criterion_09_luroth_construction() {
    let results = run_suite("luroth", 109, 25).unwrap();
    report(9, "branch quartic matches the closed form, vertices incident", all_pass(&results));
}

#[test]
fn criterion_10_roberts_round_trip() {
    let results = run_suite("roberts", 110, 25).unwrap();
    report(10, "line decomposition recovered, pencil dimension 2", all_pass(&results));
}

#[test]
fn criterion_11_cone_law() {
    let mut f = Form::zero(4);
    for i in 0..4 {
        let mut e = vec![0u32; 4];
        e[i] = 3;
        f.add_term(e, Rational::from_integer(1.into()));
    }
    let s = CubicSurface::new(f).unwrap();
    let points: [[i64; 4]; 5] =
        [[1, -1, 0, 0], [1, 0, -1, 0], [1, 0, 0, -1], [0, 1, -1, 0], [0, 1, 0, -1]];
    let mut ok = true;
    for zc in points {
        let z: [Rational; 4] = std::array::from_fn(|i| rat_i(zc[i]));
        let b = branch_cone(&s, &z).unwrap();
        ok &= b.eval(&z).is_zero();
        // symbolic cone law in 5 variables, the scaling parameter last
        let subs: Vec<Form> = (0..4)
            .map(|i| &Form::variable(5, i) + &Form::variable(5, 4).scale(&z[i]))
            .collect();
        ok &= b.substitute(&subs) == b.shift_vars(5, 0);
    }
    report(11, "branch cone law on the Fermat surface", ok);
}

#[test]
fn criterion_12_infrastructure() {
    let start = Instant::now();
    let results = run_suite("skew-pfaffian", 112, 100).unwrap();
    let mut ok = all_pass(&results);
    // sanity on the harness itself: every suite name resolves
    ok &= SUITE_NAMES.iter().all(|s| run_suite(s, 0, 1).is_ok());
    // degree bookkeeping used throughout: binomial count of monomials
    ok &= monomials(3, 4).len() == 15 && monomials(4, 3).len() == 20;
    ok &= start.elapsed().as_secs() < 600;
    report(12, "pfaffian and kernel infrastructure on 100 random matrices", ok);
}
