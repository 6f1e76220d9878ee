//! Worked examples with known answers, bundled as one report.

use std::time::Instant;

use crate::beta_extension::count_beta_preimages;
use crate::determinants::{det, DetFlavor, SymbolicMatrix};
use crate::lattice_paths::{classify, phi, primitive_decomposition, DEFAULT_GUARD};
use crate::master_engine::o_weight;
use crate::relations::WeightScheme;
use crate::report::VerificationReport;
use crate::word_algebra::{digits, inv_count, Laurent, Monomial, NCSeries, Param, Word};
use crate::{Rational, Result};

pub const LONG_O: &str =
    "a13,a11,a12,a13,a22,a23,a22,a21,a23,a22,a23,a32,a31,a31,a33,a32,a32,a33,a33";
pub const LONG_P: &str =
    "a13,a32,a22,a23,a31,a11,a12,a22,a21,a13,a31,a23,a33,a32,a22,a23,a32,a33,a33";
pub const PRIMITIVE_P: &str = "a13,a32,a24,a43,a31,a11,a22,a34,a44,a43";
pub const BETA_TARGET: &str = "a11,a13,a22,a31";

fn parse(s: &str) -> Result<Word> {
    s.parse()
}

fn series(terms: &[(&str, Laurent<Rational>)]) -> Result<NCSeries<Rational>> {
    let mut out = NCSeries::zero();
    for (w, c) in terms {
        out.add_term(parse(w)?, c.clone());
    }
    Ok(out)
}

pub fn worked_examples() -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = VerificationReport::new("selftest", 4);

    let o = parse(LONG_O)?;
    let (p, switches) = phi(&o)?;
    report.check(
        "phi straightens the 19-letter o-sequence in 33 switches",
        p == parse(LONG_P)? && switches == 33,
        Some(format!("{switches} switches")),
    );

    let inv_rows = inv_count(&digits("1324312344"));
    let inv_cols = inv_count(&digits("3243112443"));
    report.check(
        "inversion counts 10 and 16",
        (inv_rows, inv_cols) == (10, 16),
        Some(format!("{inv_rows}, {inv_cols}")),
    );

    let prim = parse(PRIMITIVE_P)?;
    let parts = primitive_decomposition(&prim)?;
    let weight = &o_weight::<Rational>(&WeightScheme::Uniform, &prim.col_word())
        * &o_weight::<Rational>(&WeightScheme::Uniform, &prim.row_word())
            .inverse_term()
            .expect("monomial weight");
    let q6 = Laurent::monomial(Monomial::pow_of(Param::Q, 6));
    report.check(
        "10-letter p-sequence has weight q^6 and four primitive parts",
        classify(&prim).p_sequence
            && weight == q6
            && parts.len() == 4
            && (inv_count(&prim.row_word()), inv_count(&prim.col_word())) == (10, 16),
        Some(format!("weight {weight}, {} parts", parts.len())),
    );

    let minor = SymbolicMatrix::<Rational>::letters(3).minor(&[1], &[1]);
    let d = det(&minor, &DetFlavor::Qij)?;
    let expected = series(&[
        ("a22,a33", Laurent::int(1)),
        (
            "a32,a23",
            -&Laurent::monomial(Monomial::pow_of(Param::qij(2, 3), -1)),
        ),
    ])?;
    report.check(
        "q_ij determinant of the lower minor",
        d == expected,
        Some(format!("{d}")),
    );

    let sdet = det(
        &SymbolicMatrix::<Rational>::letters(2),
        &DetFlavor::Super(vec![true, true]),
    )?;
    let perm = series(&[("a11,a22", Laurent::int(1)), ("a21,a12", Laurent::int(1))])?;
    report.check(
        "super determinant at two odd indices is the permanent",
        sdet == perm,
        Some(format!("{sdet}")),
    );

    let pairs = count_beta_preimages(&parse(BETA_TARGET)?, 2, DEFAULT_GUARD)?;
    report.check(
        "six pairs for the beta example",
        pairs == 6,
        Some(format!("{pairs} pairs")),
    );

    report.elapsed_us = start.elapsed().as_micros() as u64;
    Ok(report)
}
