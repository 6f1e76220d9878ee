mod common;

use ncmaster_core::lattice_paths::{enumerate, phi, type_vectors_up_to, EnumKind, DEFAULT_GUARD};
use ncmaster_core::master_engine::*;
use ncmaster_core::relations::{
    commutative_collapse, default_test_points, ideal_membership, monomial_normal_form,
    relation_generators, MatrixClass, MembershipMode, MembershipOptions, WeightScheme,
};
use ncmaster_core::word_algebra::{Laurent, Param, Word};
use ncmaster_core::{Coefficient, Rational, Series};

fn series(text: &[(&str, &str)]) -> Series {
    Series::from_terms(
        text.iter()
            .map(|(w, c)| (w.parse().unwrap(), Laurent::parse_any(c).unwrap())),
    )
}

fn classes_for(m: usize) -> Vec<MatrixClass> {
    vec![
        MatrixClass::Commutative,
        MatrixClass::CartierFoata,
        MatrixClass::RightQuantum,
        MatrixClass::QCartierFoata,
        MatrixClass::QRightQuantum,
        MatrixClass::QijCartierFoata,
        MatrixClass::QijRightQuantum,
        MatrixClass::Super((0..m).map(|i| i % 2 == 1).collect()),
        MatrixClass::Super(vec![true; m]),
    ]
}

#[test]
fn g_examples() {
    for class in classes_for(1) {
        assert_eq!(
            compute_g::<Rational>(&[3], &class, DEFAULT_GUARD).unwrap(),
            series(&[("a11,a11,a11", "1")])
        );
    }
    assert_eq!(
        compute_g::<Rational>(&[1, 1], &MatrixClass::QRightQuantum, DEFAULT_GUARD).unwrap(),
        series(&[("a11,a22", "1"), ("a12,a21", "q")])
    );
    assert_eq!(
        compute_g::<Rational>(
            &[1, 1],
            &MatrixClass::Super(vec![true, true]),
            DEFAULT_GUARD
        )
        .unwrap(),
        series(&[("a11,a22", "1"), ("a12,a21", "-1")])
    );
}

#[test]
fn g_matches_x_variable_expansion() {
    for m in 1..=3 {
        for class in classes_for(m) {
            for k in type_vectors_up_to(m, 4) {
                let g = compute_g::<Rational>(&k, &class, DEFAULT_GUARD).unwrap();
                assert_eq!(
                    g,
                    common::g_by_x_expansion(&k, &class.scheme()),
                    "{class} {k:?}"
                );
                assert_eq!(
                    g.len(),
                    enumerate(EnumKind::O, &k, DEFAULT_GUARD).unwrap().len()
                );
            }
        }
    }
}

#[test]
fn commutative_theorem_matches_long_division() {
    for m in 2..=3 {
        let n = 3;
        let r = verify_master(&MasterInstance::<Rational>::new(
            MatrixClass::Commutative,
            m,
            n,
            3,
        ))
        .unwrap();
        assert!(r.passed, "{:?}", r.checks);
        let lhs = master_lhs::<Rational>(&MatrixClass::Commutative, m, n, DEFAULT_GUARD).unwrap();
        let oracle = common::long_division_inverse_det(m, n as u32);
        assert_eq!(common::to_poly(&commutative_collapse(&lhs), m), oracle);
        let rhs = master_rhs::<Rational>(&MatrixClass::Commutative, m, n).unwrap();
        assert_eq!(common::to_poly(&commutative_collapse(&rhs), m), oracle);
    }
}

#[test]
fn cartier_foata_master_and_controls() {
    let r = verify_master(&MasterInstance::<Rational>::new(
        MatrixClass::CartierFoata,
        3,
        3,
        3,
    ))
    .unwrap();
    assert!(r.passed);
    assert!(r
        .components
        .iter()
        .all(|c| c.verdict == ncmaster_core::report::Verdict::Member));
    let control = r
        .checks
        .iter()
        .find(|c| c.name.contains("mutated"))
        .unwrap();
    assert!(control.passed);

    let inst = MasterInstance::<Rational>::new(MatrixClass::QijRightQuantum, 2, 3, 3);
    let r = verify_master(&inst).unwrap();
    assert!(r.passed, "{:?}", r.checks);
    let control = r
        .checks
        .iter()
        .find(|c| c.name.contains("mutated"))
        .unwrap();
    assert!(control.detail.as_ref().unwrap().contains("divided"));
}

#[test]
fn a_corrupted_lhs_is_not_a_member() {
    let class = MatrixClass::QijRightQuantum;
    let (m, n) = (2, 3);
    let mut lhs = master_lhs::<Rational>(&class, m, n, DEFAULT_GUARD).unwrap();
    let rhs = master_rhs::<Rational>(&class, m, n).unwrap();
    // a12 a21 carries weight q12; drop it
    let w: Word = "a12,a21".parse().unwrap();
    lhs.add_term(w.clone(), &Laurent::int(1) - &lhs.coeff(&w));
    let rels = relation_generators(&class, m).unwrap();
    let mode = MembershipMode::Points(default_test_points(&class.universe(m), 3));
    let out =
        ideal_membership(&(&lhs - &rhs), &rels, &mode, &MembershipOptions::default()).unwrap();
    assert!(!out.member);
}

#[test]
fn quasidet_small_cases() {
    let r = verify_quasidet(&MasterInstance::<Rational>::new(
        MatrixClass::CartierFoata,
        1,
        4,
        3,
    ))
    .unwrap();
    assert!(r.passed);
    assert!(
        quasidet_difference::<Rational>(&MatrixClass::CartierFoata, 1, 4, true)
            .unwrap()
            .is_zero()
    );
    for class in [MatrixClass::CartierFoata, MatrixClass::QijRightQuantum] {
        let m = if class == MatrixClass::CartierFoata {
            2
        } else {
            3
        };
        let r = verify_quasidet(&MasterInstance::<Rational>::new(class.clone(), m, 3, 3)).unwrap();
        assert!(r.passed, "{class}: {:?}", r.checks);
    }
}

#[test]
fn transport_examples() {
    let q = WeightScheme::Uniform;
    let w: Word = "a12,a21".parse().unwrap();
    assert_eq!(
        transport(&Series::word(w, Laurent::int(1)), &q),
        series(&[("a12,a21", "q")])
    );
    // column relator of the right-quantum ideal, i < j
    let rel = series(&[("a13,a23", "1"), ("a23,a13", "-1")]);
    assert_eq!(
        transport(&rel, &q),
        series(&[("a13,a23", "1"), ("a23,a13", "-q^-1")])
    );
    let (a, b) = (series(&[("a12,a21", "1")]), series(&[("a11", "1")]));
    assert_eq!(
        transport(&a.mul(&b, None), &q),
        transport(&a, &q).mul(&transport(&b, &q), None)
    );
    // not multiplicative off circuits
    let (x, y) = (series(&[("a12", "1")]), series(&[("a21", "1")]));
    assert_ne!(
        transport(&x.mul(&y, None), &q),
        transport(&x, &q).mul(&transport(&y, &q), None)
    );
}

#[test]
fn specialization_coherence() {
    let (m, n) = (2, 3);
    let to_q = |p: Param| matches!(p, Param::Qij(..)).then(|| Laurent::var(Param::Q));
    let sub = |s: &Series| s.map_coeffs(|_, c| c.substitute(&to_q));
    let lq = master_lhs::<Rational>(&MatrixClass::QRightQuantum, m, n, DEFAULT_GUARD).unwrap();
    let lqij = master_lhs::<Rational>(&MatrixClass::QijRightQuantum, m, n, DEFAULT_GUARD).unwrap();
    assert_eq!(sub(&lqij), lq);
    let rq = master_rhs::<Rational>(&MatrixClass::QRightQuantum, m, n).unwrap();
    let rqij = master_rhs::<Rational>(&MatrixClass::QijRightQuantum, m, n).unwrap();
    assert_eq!(sub(&rqij), rq);
}

#[test]
fn q_sides_are_transports_of_the_q_equals_one_sides() {
    let (m, n) = (2, 3);
    let q = WeightScheme::Uniform;
    let l1 = master_lhs::<Rational>(&MatrixClass::RightQuantum, m, n, DEFAULT_GUARD).unwrap();
    let lq = master_lhs::<Rational>(&MatrixClass::QRightQuantum, m, n, DEFAULT_GUARD).unwrap();
    assert_eq!(transport(&l1, &q), lq);
    let r1 = master_rhs::<Rational>(&MatrixClass::RightQuantum, m, n).unwrap();
    let rq = master_rhs::<Rational>(&MatrixClass::QRightQuantum, m, n).unwrap();
    let class = MatrixClass::QRightQuantum;
    let rels = relation_generators(&class, m).unwrap();
    let mode = MembershipMode::Points(default_test_points(&class.universe(m), 3));
    let out = ideal_membership(
        &(&transport(&r1, &q) - &rq),
        &rels,
        &mode,
        &MembershipOptions::default(),
    )
    .unwrap();
    assert!(out.member);
}

#[test]
fn straightening_weights_agree_modulo_q_cartier_foata() {
    let class = MatrixClass::QCartierFoata;
    let q = WeightScheme::Uniform;
    for m in 1..=3 {
        for k in type_vectors_up_to(m, 4) {
            for o in enumerate(EnumKind::O, &k, DEFAULT_GUARD).unwrap() {
                let (p, _) = phi(&o).unwrap();
                let lhs: Coefficient = transport_weight(&p, &q);
                let rhs: Coefficient = transport_weight(&o, &q);
                let (c1, w1) = monomial_normal_form::<Rational>(&p, &class).unwrap();
                let (c2, w2) = monomial_normal_form::<Rational>(&o, &class).unwrap();
                assert_eq!(w1, w2);
                assert_eq!(&lhs * &c1, &rhs * &c2, "{o} -> {p}");
            }
        }
    }
}

#[test]
fn circuit_multiplicativity() {
    for (scheme, m) in [
        (WeightScheme::Uniform, 2),
        (WeightScheme::Multi, 2),
        (WeightScheme::Multi, 3),
    ] {
        let r = verify_transport_multiplicative::<Rational>(&scheme, m, 2);
        assert!(r.passed);
    }
    assert_eq!(circuits(2, 2).len(), 8);
}

#[test]
fn transport_maps_generators_into_the_deformed_ideal() {
    for m in 1..=3 {
        for (target, pad) in [
            (MatrixClass::QRightQuantum, 1),
            (MatrixClass::QijRightQuantum, 1),
        ] {
            let mode = MembershipMode::Points(default_test_points(&target.universe(m), 3));
            let r = verify_transport_generators::<Rational>(
                &MatrixClass::RightQuantum,
                &target,
                m,
                pad,
                &mode,
                &MembershipOptions::default(),
            )
            .unwrap();
            assert!(r.passed, "{target} m={m}");
        }
    }
}

#[test]
fn minor_commutation_exploration() {
    let run = |class: MatrixClass, m: usize| {
        let mut inst = MasterInstance::<Rational>::new(class, m, 2 * m, 3);
        inst.negative_control = false;
        explore_minor_commutation(&inst).unwrap()
    };
    let verdict = |r: &ncmaster_core::report::VerificationReport, name: &str| {
        r.checks.iter().find(|c| c.name == name).unwrap().passed
    };
    assert!(run(MatrixClass::Commutative, 3).passed);
    let cf = run(MatrixClass::CartierFoata, 3);
    assert_eq!(cf.checks.len(), 21);
    // distinct rows commute, so disjoint index sets give commuting minors
    assert!(verdict(&cf, "det A[1, 2] commutes with det A[3]"));
    assert!(verdict(&cf, "det A[1] commutes with det A[2, 3]"));
    assert!(!verdict(&cf, "det A[1] commutes with det A[1, 2]"));
    // a11 a22 - a22 a11 = a21 a12 - a12 a21 modulo the right-quantum ideal
    assert!(!verdict(
        &run(MatrixClass::RightQuantum, 2),
        "det A[1] commutes with det A[2]"
    ));
    let mut big = MasterInstance::<Rational>::new(MatrixClass::CartierFoata, 5, 3, 1);
    big.negative_control = false;
    assert!(explore_minor_commutation(&big).unwrap_err().is_guard());
}
