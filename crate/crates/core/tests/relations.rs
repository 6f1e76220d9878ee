use std::collections::BTreeSet;

use ncmaster_core::lattice_paths::{
    enumerate, psi_step, type_vectors_up_to, EnumKind, DEFAULT_GUARD,
};
use ncmaster_core::relations::*;
use ncmaster_core::word_algebra::{Laurent, Letter, NCSeries, Param, ParamUniverse, Word};
use ncmaster_core::{Coefficient, Rational, Result, Series};
use proptest::prelude::*;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn word(s: &str) -> Series {
    Series::word(w(s), Laurent::int(1))
}

fn points(class: &MatrixClass, m: usize) -> MembershipMode<Rational> {
    MembershipMode::Points(default_test_points(&class.universe(m), 3))
}

fn member(s: &Series, class: &MatrixClass, m: usize) -> Result<bool> {
    let rels = relation_generators(class, m)?;
    Ok(ideal_membership(s, &rels, &points(class, m), &MembershipOptions::default())?.member)
}

fn all_classes(m: usize) -> Vec<MatrixClass> {
    let mut v = vec![
        MatrixClass::Commutative,
        MatrixClass::CartierFoata,
        MatrixClass::RightQuantum,
        MatrixClass::QCartierFoata,
        MatrixClass::QRightQuantum,
        MatrixClass::QijCartierFoata,
        MatrixClass::QijRightQuantum,
    ];
    v.push(MatrixClass::Super((0..m).map(|i| i % 2 == 0).collect()));
    v
}

/// Relators as a set of term maps, so generator lists compare as sets.
fn as_set(rels: &[Series]) -> BTreeSet<Vec<(String, String)>> {
    rels.iter()
        .map(|r| {
            r.terms()
                .map(|(w, c)| (w.to_string(), c.to_string()))
                .collect()
        })
        .collect()
}

fn substitute_all(
    rels: &RelationSet<Rational>,
    f: impl Fn(Param) -> Option<Coefficient>,
) -> Vec<Series> {
    rels.relators()
        .iter()
        .map(|r| r.map_coeffs(|_, c| c.substitute(&f)))
        .collect()
}

#[test]
fn right_quantum_generators_for_m2() {
    let rels = relation_generators::<Rational>(&MatrixClass::RightQuantum, 2).unwrap();
    let cross = &(&(&word("a11,a22") - &word("a21,a12")) - &word("a22,a11")) + &word("a12,a21");
    let expected = vec![
        &word("a21,a11") - &word("a11,a21"),
        &word("a22,a12") - &word("a12,a22"),
        cross,
    ];
    assert_eq!(as_set(rels.relators()), as_set(&expected));
}

#[test]
fn cartier_foata_m1_is_empty() {
    assert!(
        relation_generators::<Rational>(&MatrixClass::CartierFoata, 1)
            .unwrap()
            .is_empty()
    );
    assert!(
        relation_generators::<Rational>(&MatrixClass::RightQuantum, 1)
            .unwrap()
            .is_empty()
    );
}

#[test]
fn every_class_has_bigraded_relators() {
    for m in 1..=4 {
        for class in all_classes(m) {
            let rels = relation_generators::<Rational>(&class, m).unwrap();
            for r in rels.relators() {
                assert_eq!(r.components(m).len(), 1, "{class} {r}");
                assert!(r.terms().all(|(w, _)| w.len() == 2));
            }
        }
    }
}

#[test]
fn super_matches_signed_qij() {
    for g in [[false, false], [false, true], [true, false], [true, true]] {
        let sup = relation_generators::<Rational>(&MatrixClass::Super(g.to_vec()), 2).unwrap();
        let qij = relation_generators::<Rational>(&MatrixClass::QijCartierFoata, 2).unwrap();
        let sign = if g[0] && g[1] { -1 } else { 1 };
        let specialized = substitute_all(&qij, |p| {
            (p == Param::qij(1, 2)).then(|| Laurent::int(sign))
        });
        assert_eq!(as_set(sup.relators()), as_set(&specialized));
    }
}

#[test]
fn structural_specializations() {
    for m in 1..=4 {
        let get = |c: MatrixClass| relation_generators::<Rational>(&c, m).unwrap();
        let q_to_one = |p: Param| (p == Param::Q).then(|| Laurent::int(1));
        let qij_to_q = |p: Param| matches!(p, Param::Qij(..)).then(|| Laurent::var(Param::Q));
        let qij_to_one = |p: Param| matches!(p, Param::Qij(..)).then(|| Laurent::int(1));
        assert_eq!(
            as_set(&substitute_all(&get(MatrixClass::QCartierFoata), q_to_one)),
            as_set(get(MatrixClass::CartierFoata).relators())
        );
        assert_eq!(
            as_set(&substitute_all(
                &get(MatrixClass::QijCartierFoata),
                qij_to_q
            )),
            as_set(get(MatrixClass::QCartierFoata).relators())
        );
        assert_eq!(
            as_set(&substitute_all(
                &get(MatrixClass::QijRightQuantum),
                qij_to_q
            )),
            as_set(get(MatrixClass::QRightQuantum).relators())
        );
        assert_eq!(
            as_set(&substitute_all(
                &get(MatrixClass::QijRightQuantum),
                qij_to_one
            )),
            as_set(get(MatrixClass::RightQuantum).relators())
        );
        let all_even = MatrixClass::Super(vec![false; m]);
        assert_eq!(
            as_set(get(all_even).relators()),
            as_set(get(MatrixClass::CartierFoata).relators())
        );
    }
}

#[test]
fn succinct_cross_relation_lies_in_qij_right_quantum_ideal() {
    // a_ik a_jl − q_ij^{-1} a_jk a_il − q_kl (q_ij^{-1} a_jl a_ik − a_il a_jk) for all i ≠ j and all k, l
    let m = 3;
    let scheme = WeightScheme::Multi;
    let q = |i, j| scheme.q::<Rational>(i, j);
    let mut sum_checked = 0;
    for i in 1..=m {
        for j in 1..=m {
            if i == j {
                continue;
            }
            for k in 1..=m {
                for l in 1..=m {
                    let pair = |a: (usize, usize), b: (usize, usize)| {
                        Word::new(vec![Letter::new(a.0, a.1), Letter::new(b.0, b.1)])
                    };
                    let mut s = Series::zero();
                    s.add_term(pair((i, k), (j, l)), Laurent::int(1));
                    s.add_term(pair((j, k), (i, l)), -&q(j, i));
                    s.add_term(pair((j, l), (i, k)), -&(&q(k, l) * &q(j, i)));
                    s.add_term(pair((i, l), (j, k)), q(k, l));
                    assert!(
                        member(&s, &MatrixClass::QijRightQuantum, m).unwrap(),
                        "i={i} j={j} k={k} l={l}"
                    );
                    sum_checked += 1;
                }
            }
        }
    }
    assert_eq!(sum_checked, 54);
}

#[test]
fn normal_form_examples() {
    let (c, nf) =
        monomial_normal_form::<Rational>(&w("a22,a11"), &MatrixClass::CartierFoata).unwrap();
    assert_eq!((c, nf), (Laurent::int(1), w("a11,a22")));
    let (c, nf) =
        monomial_normal_form::<Rational>(&w("a21,a12"), &MatrixClass::QCartierFoata).unwrap();
    assert_eq!((c, nf), (Laurent::parse_any("q^2").unwrap(), w("a12,a21")));
    let (c, nf) =
        monomial_normal_form::<Rational>(&w("a21,a11"), &MatrixClass::QijCartierFoata).unwrap();
    assert_eq!((c, nf), (Laurent::var(Param::qij(1, 2)), w("a11,a21")));
    assert!(monomial_normal_form::<Rational>(&w("a21,a11"), &MatrixClass::RightQuantum).is_err());
}

#[test]
fn membership_examples() {
    let cf = MatrixClass::CartierFoata;
    assert!(member(&Series::zero(), &cf, 2).unwrap());
    assert!(member(&(&word("a11,a22") - &word("a22,a11")), &cf, 2).unwrap());
    assert!(!member(&(&word("a11,a12") - &word("a12,a11")), &cf, 2).unwrap());
    // a unit multiple of a relator, embedded in a longer word
    let rel = &word("a21,a11,a12") - &word("a11,a21,a12");
    assert!(member(&rel, &cf, 2).unwrap());
    assert!(member(&rel, &MatrixClass::RightQuantum, 2).unwrap());
}

#[test]
fn symbolic_mode_agrees_with_points() {
    let class = MatrixClass::QijRightQuantum;
    let rels = relation_generators::<Rational>(&class, 2).unwrap();
    let q12 = Laurent::var(Param::qij(1, 2));
    let good = &word("a21,a11") - &word("a11,a21").scale(&q12);
    let bad = &word("a21,a11") - &word("a11,a21");
    let opts = MembershipOptions::default();
    for (s, expected) in [(good, true), (bad, false)] {
        assert_eq!(
            ideal_membership(&s, &rels, &MembershipMode::Symbolic, &opts)
                .unwrap()
                .member,
            expected
        );
        assert_eq!(
            ideal_membership(&s, &rels, &points(&class, 2), &opts)
                .unwrap()
                .member,
            expected
        );
    }
}

#[test]
fn membership_errors() {
    let rels = relation_generators::<Rational>(&MatrixClass::QRightQuantum, 2).unwrap();
    let s = word("a21,a11").scale(&Laurent::var(Param::Q));
    let no_points = ideal_membership(
        &s,
        &rels,
        &MembershipMode::Points(vec![]),
        &MembershipOptions::default(),
    );
    assert!(no_points.is_err());
    let empty = default_test_points::<Rational>(&ParamUniverse::empty(), 1);
    assert!(ideal_membership(
        &s,
        &rels,
        &MembershipMode::Points(empty),
        &MembershipOptions::default()
    )
    .is_err());
    let tiny = MembershipOptions { component_guard: 1 };
    let err =
        ideal_membership(&s, &rels, &points(&MatrixClass::QRightQuantum, 2), &tiny).unwrap_err();
    assert!(err.is_guard());
}

#[test]
fn psi_is_invisible_modulo_cartier_foata() {
    // exact normal forms for every q-sequence with |k| ≤ 5, and full
    // membership tests for |k| ≤ 3
    let cf = MatrixClass::CartierFoata;
    for m in 1..=3 {
        for k in type_vectors_up_to(m, 5) {
            let deg: usize = k.iter().sum();
            for n in 0..=deg * deg {
                let qs = enumerate(EnumKind::Q(n), &k, DEFAULT_GUARD).unwrap();
                for q in qs {
                    let next = psi_step(&q).unwrap();
                    assert_eq!(
                        monomial_normal_form::<Rational>(&next, &cf).unwrap(),
                        monomial_normal_form::<Rational>(&q, &cf).unwrap()
                    );
                    if deg <= 3 && next != q {
                        let diff = &Series::word(next, Laurent::int(1))
                            - &Series::word(q.clone(), Laurent::int(1));
                        assert!(member(&diff, &cf, m).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn psi_preserves_level_sums_modulo_right_quantum() {
    let rq = MatrixClass::RightQuantum;
    for m in 1..=3 {
        for k in type_vectors_up_to(m, 4) {
            let deg: usize = k.iter().sum();
            for n in 0..deg * deg / 2 + 1 {
                let qs = enumerate(EnumKind::Q(n), &k, DEFAULT_GUARD).unwrap();
                let mut diff = Series::zero();
                for q in &qs {
                    diff = &diff + &Series::word(psi_step(q).unwrap(), Laurent::int(1));
                    diff = &diff - &Series::word(q.clone(), Laurent::int(1));
                }
                assert!(member(&diff, &rq, m).unwrap(), "k={k:?} n={n}");
            }
        }
    }
}

fn random_word(m: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=m, 1..=m), 0..=max_len)
        .prop_map(|v| Word::new(v.into_iter().map(|(r, c)| Letter::new(r, c)).collect()))
}

/// Bubble sort by row, exchanging adjacent letters in a caller-chosen order
/// and multiplying in each exchange weight.
fn reduce_by_swaps(w: &Word, class: &MatrixClass, choices: &[usize]) -> (Coefficient, Word) {
    let scheme = class.scheme();
    let mut letters = w.letters().to_vec();
    let mut c = Laurent::int(1);
    let mut pick = choices.iter().cycle();
    loop {
        let out_of_order: Vec<usize> = (0..letters.len().saturating_sub(1))
            .filter(|&i| letters[i].row() > letters[i + 1].row())
            .collect();
        if out_of_order.is_empty() {
            return (c, Word::new(letters));
        }
        let i = out_of_order[pick.next().copied().unwrap_or(0) % out_of_order.len()];
        let (x, y) = (letters[i], letters[i + 1]);
        // x y = q(y.row, x.row) q(x.col, y.col) y x
        c = &c * &(&scheme.q(y.row(), x.row()) * &scheme.q(x.col(), y.col()));
        letters.swap(i, i + 1);
    }
}

proptest! {
    #[test]
    fn normal_form_is_confluent(
        word in random_word(3, 6),
        choices in prop::collection::vec(0usize..100, 1..20),
        which in 0usize..4,
    ) {
        let class = [
            MatrixClass::CartierFoata,
            MatrixClass::QCartierFoata,
            MatrixClass::QijCartierFoata,
            MatrixClass::Super(vec![true, false, true]),
        ][which].clone();
        let nf = monomial_normal_form::<Rational>(&word, &class).unwrap();
        prop_assert_eq!(reduce_by_swaps(&word, &class, &choices), nf.clone());
        let (c2, w2) = monomial_normal_form::<Rational>(&nf.1, &class).unwrap();
        prop_assert_eq!(c2, Laurent::int(1));
        prop_assert_eq!(w2, nf.1);
    }

    #[test]
    fn word_minus_normal_form_is_member(word in random_word(2, 4)) {
        let class = MatrixClass::QijCartierFoata;
        let (c, nf) = monomial_normal_form::<Rational>(&word, &class).unwrap();
        let diff = &Series::word(word, Laurent::int(1)) - &NCSeries::word(nf, c);
        prop_assert!(member(&diff, &class, 2).unwrap());
    }
}
