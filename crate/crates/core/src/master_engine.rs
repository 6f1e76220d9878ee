//! Both sides of the master identities, their comparison modulo the class
//! ideal, and the weight-transport maps between classes.

use std::time::Instant;

use crate::determinants::{build_scaled, det, det_one_minus, DetFlavor, SymbolicMatrix};
use crate::error::{Error, Result};
use crate::lattice_paths::{enumerate, type_vectors_up_to, EnumKind, DEFAULT_GUARD};
use crate::relations::{
    commutative_collapse, default_test_points, ideal_membership, relation_generators, Family,
    MatrixClass, MembershipMode, MembershipOptions, WeightScheme,
};
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::word_algebra::{inversions, Laurent, NCSeries, Word};

#[derive(Clone, Debug)]
pub struct MasterInstance<S> {
    pub class: MatrixClass,
    pub m: usize,
    pub max_degree: usize,
    pub mode: MembershipMode<S>,
    pub enum_guard: u128,
    pub membership: MembershipOptions,
    /// Also check that a deliberately corrupted left-hand side is rejected.
    pub negative_control: bool,
}

impl<S: Scalar> MasterInstance<S> {
    /// Default test points (`rounds` of them) and guards.
    pub fn new(class: MatrixClass, m: usize, max_degree: usize, rounds: usize) -> Self {
        let points = default_test_points(&class.universe(m), rounds);
        MasterInstance {
            class,
            m,
            max_degree,
            mode: MembershipMode::Points(points),
            enum_guard: DEFAULT_GUARD,
            membership: MembershipOptions::default(),
            negative_control: true,
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        self.class.check_dimension(self.m)?;
        if self.max_degree == 0 {
            return Err(Error::InvalidArgument(
                "max degree must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub(crate) fn report(&self, verification: &str) -> VerificationReport {
        let r = VerificationReport::new(verification, self.m)
            .with_class(&self.class)
            .with_max_degree(self.max_degree);
        match &self.mode {
            MembershipMode::Points(p) => r.with_test_points(p),
            MembershipMode::Symbolic => r.with_parameter("mode", "symbolic"),
        }
    }

    pub(crate) fn membership(
        &self,
        target: &NCSeries<S>,
        report: &mut VerificationReport,
        name: &str,
    ) -> Result<bool> {
        let rels = relation_generators(&self.class, self.m)?;
        let out = ideal_membership(target, &rels, &self.mode, &self.membership)?;
        report.check(name, out.member, None);
        report.extend_components(out.components);
        Ok(out.member)
    }

    /// Runs a membership test whose expected answer is "no".
    pub(crate) fn control(
        &self,
        target: &NCSeries<S>,
        report: &mut VerificationReport,
        detail: String,
    ) -> Result<()> {
        let rels = relation_generators(&self.class, self.m)?;
        let out = ideal_membership(target, &rels, &self.mode, &self.membership)?;
        report.check("mutated identity is rejected", !out.member, Some(detail));
        Ok(())
    }
}

/// Weight of the o-sequence with column word `mu`: `∏_{(s,t) ∈ I(μ)} q(μ_t, μ_s)`.
pub fn o_weight<S: Scalar>(scheme: &WeightScheme, mu: &[usize]) -> Laurent<S> {
    let mut c = Laurent::int(1);
    for (s, t) in inversions(mu) {
        c = &c * &scheme.q(mu[t], mu[s]);
    }
    c
}

/// `G(k)`: the weighted sum of all o-sequences of type `k`.
pub fn compute_g<S: Scalar>(k: &[usize], class: &MatrixClass, guard: u128) -> Result<NCSeries<S>> {
    let scheme = class.scheme();
    let mut out = NCSeries::zero();
    for o in enumerate(EnumKind::O, k, guard)? {
        let c = o_weight(&scheme, &o.col_word());
        out.add_term(o, c);
    }
    Ok(out)
}

/// `Σ_{|k| ≤ n} G(k)`.
pub fn master_lhs<S: Scalar>(
    class: &MatrixClass,
    m: usize,
    n: usize,
    guard: u128,
) -> Result<NCSeries<S>> {
    let mut out = NCSeries::truncated_zero(n);
    for k in type_vectors_up_to(m, n) {
        out = &out + &compute_g(&k, class, guard)?;
    }
    Ok(out)
}

/// `1 / det(I − A)` up to degree `n`, with the determinant of the class.
pub fn master_rhs<S: Scalar>(class: &MatrixClass, m: usize, n: usize) -> Result<NCSeries<S>> {
    let d = det_one_minus(&SymbolicMatrix::letters(m), &DetFlavor::for_class(class))?;
    d.inverse(n)
}

/// The left-hand side with one coefficient altered, and a description.
pub(crate) fn mutate<S: Scalar>(lhs: &NCSeries<S>, class: &MatrixClass) -> (NCSeries<S>, String) {
    let scheme = class.scheme();
    let mut words: Vec<&Word> = lhs
        .terms()
        .map(|(w, _)| w)
        .filter(|w| w.len() >= 2)
        .collect();
    words.sort_by_key(|w| (w.len(), (*w).clone()));
    let inverted = words
        .iter()
        .find(|w| !inversions(&w.col_word()).is_empty())
        .copied();
    let target = inverted.or_else(|| words.first().copied());
    let Some(w) = target.cloned() else {
        let w = lhs
            .terms()
            .map(|(w, _)| w.clone())
            .find(|w| !w.is_empty())
            .unwrap_or_default();
        let mut out = lhs.clone();
        out.add_term(w.clone(), lhs.coeff(&w));
        return (out, format!("doubled the coefficient of {w}"));
    };
    let c = lhs.coeff(&w);
    let mut out = lhs.clone();
    let description = match (&scheme, inverted.is_some()) {
        (WeightScheme::Uniform | WeightScheme::Multi, true) => {
            let mu = w.col_word();
            let (s, t) = inversions(&mu)[0];
            let factor = scheme.q::<S>(mu[s], mu[t]);
            out.add_term(w.clone(), &(&c * &factor) - &c);
            format!("divided the weight of {w} by q({},{})", mu[t], mu[s])
        }
        (WeightScheme::Signs(_), _) if c == Laurent::int(-1) => {
            out.add_term(w.clone(), Laurent::int(2));
            format!("negated the weight of {w}")
        }
        _ => {
            out.add_term(w.clone(), c);
            format!("doubled the coefficient of {w}")
        }
    };
    (out, description)
}

/// Checks `Σ_k G(k) − 1/det(I − A) ∈ I_class` up to the truncation degree.
pub fn verify_master<S: Scalar>(inst: &MasterInstance<S>) -> Result<VerificationReport> {
    inst.validate()?;
    let start = Instant::now();
    let n = inst.max_degree;
    let lhs = master_lhs(&inst.class, inst.m, n, inst.enum_guard)?;
    let rhs = master_rhs(&inst.class, inst.m, n)?;
    let mut report = inst
        .report("master")
        .with_parameter("lhs_terms", lhs.len())
        .with_parameter("rhs_terms", rhs.len());
    inst.membership(&(&lhs - &rhs), &mut report, "lhs - rhs lies in the ideal")?;
    if inst.class.family() == Family::Commutative {
        let exact = commutative_collapse(&lhs).same_terms(&commutative_collapse(&rhs));
        report.check("sides agree after commutative collapse", exact, None);
    }
    if inst.negative_control {
        let (bad, detail) = mutate(&lhs, &inst.class);
        inst.control(&(&bad - &rhs), &mut report, detail)?;
    }
    report.elapsed_us = start.elapsed().as_micros() as u64;
    Ok(report)
}

/// `det(I − A) · ((I − Ã)^{-1})_{11} − det(I − A^{11})`, truncated at `n`.
pub fn quasidet_difference<S: Scalar>(
    class: &MatrixClass,
    m: usize,
    n: usize,
    scaled: bool,
) -> Result<NCSeries<S>> {
    let a = SymbolicMatrix::<S>::letters(m);
    let flavor = DetFlavor::for_class(class);
    let tilde = if scaled && class.scheme() != WeightScheme::Unit {
        build_scaled(&a, class)?
    } else {
        a.clone()
    };
    let corner = tilde.inverse_corner(n);
    let full = det_one_minus(&a, &flavor)?.truncate(n);
    let minor = det_one_minus(&a.minor(&[1], &[1]), &flavor)?.truncate(n);
    Ok(&full.mul(&corner, Some(n)) - &minor)
}

/// The quasi-determinant identity `((I − Ã)^{-1})_{11} = det(I − A^{11}) / det(I − A)`,
/// in the form `det(I − A)·((I − Ã)^{-1})_{11} − det(I − A^{11}) ∈ I_class`.
pub fn verify_quasidet<S: Scalar>(inst: &MasterInstance<S>) -> Result<VerificationReport> {
    inst.validate()?;
    let start = Instant::now();
    let n = inst.max_degree;
    let diff = quasidet_difference(&inst.class, inst.m, n, true)?;
    let mut report = inst.report("quasidet");
    if inst.m == 1 {
        report.check("identity holds exactly", diff.is_zero(), None);
    } else {
        inst.membership(
            &diff,
            &mut report,
            "quasi-determinant identity lies in the ideal",
        )?;
    }
    if inst.negative_control && inst.m > 1 {
        let a = SymbolicMatrix::<S>::letters(inst.m);
        let distinct =
            inst.class.scheme() != WeightScheme::Unit && build_scaled(&a, &inst.class)? != a;
        let (bad, detail) = if distinct {
            (
                quasidet_difference(&inst.class, inst.m, n, false)?,
                "used A in place of the scaled matrix".to_string(),
            )
        } else {
            let w = Word::new(vec![
                crate::word_algebra::Letter::new(1, 2),
                crate::word_algebra::Letter::new(2, 1),
            ]);
            let mut bad = diff.clone();
            bad.add_term(w.clone(), Laurent::int(1));
            (bad, format!("added {w} to the corner series"))
        };
        inst.control(&bad, &mut report, detail)?;
    }
    report.elapsed_us = start.elapsed().as_micros() as u64;
    Ok(report)
}

/// Exploratory: whether determinants of principal minors commute modulo the
/// ideal. Not an invariant of any class; the report records what happens.
pub fn explore_minor_commutation<S: Scalar>(
    inst: &MasterInstance<S>,
) -> Result<VerificationReport> {
    inst.validate()?;
    if inst.m > 4 {
        return Err(Error::guard("principal minors", 1 << inst.m, 16));
    }
    let start = Instant::now();
    let a = SymbolicMatrix::<S>::letters(inst.m);
    let flavor = DetFlavor::for_class(&inst.class);
    let all: Vec<usize> = (1..=inst.m).collect();
    let mut minors = Vec::new();
    for mask in 1u32..(1 << inst.m) {
        let keep: Vec<usize> = all
            .iter()
            .copied()
            .filter(|i| mask >> (i - 1) & 1 == 1)
            .collect();
        let drop: Vec<usize> = all.iter().copied().filter(|i| !keep.contains(i)).collect();
        minors.push((keep, det(&a.minor(&drop, &drop), &flavor)?));
    }
    let mut report = inst.report("minors");
    for (x, (ix, dx)) in minors.iter().enumerate() {
        for (iy, dy) in &minors[x + 1..] {
            let comm = &dx.mul(dy, None) - &dy.mul(dx, None);
            let name = format!("det A{ix:?} commutes with det A{iy:?}");
            if comm.is_zero() {
                report.check(name, true, Some("free commutator vanishes".into()));
            } else {
                inst.membership(&comm, &mut report, &name)?;
            }
        }
    }
    report.elapsed_us = start.elapsed().as_micros() as u64;
    Ok(report)
}

/// Transport weight `∏_{I(μ)} q(μ_j, μ_i) · ∏_{I(λ)} q(λ_j, λ_i)^{-1}` of a word.
pub fn transport_weight<S: Scalar>(w: &Word, scheme: &WeightScheme) -> Laurent<S> {
    let (lambda, mu) = (w.row_word(), w.col_word());
    let mut c = o_weight(scheme, &mu);
    for (i, j) in inversions(&lambda) {
        c = &c * &scheme.q(lambda[i], lambda[j]);
    }
    c
}

/// Scales every word by its transport weight.
pub fn transport<S: Scalar>(s: &NCSeries<S>, scheme: &WeightScheme) -> NCSeries<S> {
    s.map_words(|w| (transport_weight(w, scheme), w.clone()))
}

/// All words of degree `1..=max` in which the row word is a rearrangement of
/// the column word, for dimension `m`.
pub fn circuits(m: usize, max: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for k in type_vectors_up_to(m, max) {
        if k.iter().sum::<usize>() > 0 {
            out.extend(
                enumerate(EnumKind::Balanced, &k, DEFAULT_GUARD).expect("small enumeration"),
            );
        }
    }
    out
}

/// Image of each generator `u·g·v` of `I_source` under the transport map
/// for `target`, with `|u| + |v| ≤ pad`, checked for membership in `I_target`.
pub fn verify_transport_generators<S: Scalar>(
    source: &MatrixClass,
    target: &MatrixClass,
    m: usize,
    pad: usize,
    mode: &MembershipMode<S>,
    opts: &MembershipOptions,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let scheme = target.scheme();
    let source_rels = relation_generators::<S>(source, m)?;
    let target_rels = relation_generators::<S>(target, m)?;
    let mut report = VerificationReport::new("transport", m)
        .with_class(target)
        .with_parameter("source_class", source)
        .with_parameter("padding", pad);
    if let MembershipMode::Points(p) = mode {
        report = report.with_test_points(p);
    }
    let mut pads: Vec<Word> = vec![Word::empty()];
    let letters: Vec<Word> = (1..=m)
        .flat_map(|i| (1..=m).map(move |j| Word::new(vec![crate::word_algebra::Letter::new(i, j)])))
        .collect();
    let mut layer = vec![Word::empty()];
    for _ in 0..pad {
        layer = layer
            .iter()
            .flat_map(|w| letters.iter().map(move |l| w.concat(l)))
            .collect();
        pads.extend(layer.iter().cloned());
    }
    let mut image = Vec::new();
    for (gi, g) in source_rels.relators().iter().enumerate() {
        for u in &pads {
            for v in &pads {
                if u.len() + v.len() > pad {
                    continue;
                }
                let embedded = NCSeries::word(u.clone(), Laurent::int(1))
                    .mul(g, None)
                    .mul(&NCSeries::word(v.clone(), Laurent::int(1)), None);
                image.push((gi, u.clone(), v.clone(), transport(&embedded, &scheme)));
            }
        }
    }
    let mut all = true;
    for (gi, u, v, t) in &image {
        let out = ideal_membership(t, &target_rels, mode, opts)?;
        if !out.member {
            all = false;
            report.check(
                format!("generator {gi} embedded as [{u}]·g·[{v}]"),
                false,
                None,
            );
        }
        report.extend_components(out.components);
    }
    report.check(
        format!(
            "{} embedded generators map into the target ideal",
            image.len()
        ),
        all,
        None,
    );
    report.elapsed_us = start.elapsed().as_micros() as u64;
    Ok(report)
}

/// `transport(αβ) = transport(α)·transport(β)` for every ordered pair of
/// circuits of degree at most `max_each`.
pub fn verify_transport_multiplicative<S: Scalar>(
    scheme: &WeightScheme,
    m: usize,
    max_each: usize,
) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("transport-multiplicative", m)
        .with_parameter("max_circuit_degree", max_each);
    let cs = circuits(m, max_each);
    let mut pairs = 0;
    let mut failures = Vec::new();
    for a in &cs {
        for b in &cs {
            let (sa, sb) = (
                NCSeries::<S>::word(a.clone(), Laurent::int(1)),
                NCSeries::word(b.clone(), Laurent::int(1)),
            );
            let whole = transport(&sa.mul(&sb, None), scheme);
            let parts = transport(&sa, scheme).mul(&transport(&sb, scheme), None);
            if whole != parts {
                failures.push(format!("{a} · {b}"));
            }
            pairs += 1;
        }
    }
    report = report.with_parameter("pairs", pairs);
    let detail = (!failures.is_empty()).then(|| failures.join("; "));
    report.check(
        format!("multiplicative on {pairs} circuit pairs"),
        failures.is_empty(),
        detail,
    );
    report.elapsed_us = start.elapsed().as_micros() as u64;
    report
}
