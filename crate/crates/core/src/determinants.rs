//! Non-commutative determinants expanded over permutations, with products
//! always taken in column order: `Σ_σ w(σ) b_{σ_1 1} ⋯ b_{σ_m m}`.
//!
//! Matrices carry the original row and column labels of their entries, so a
//! minor weighs its permutations by the labels it inherited.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::relations::{
    ideal_membership, relation_generators, Family, MatrixClass, MembershipMode, MembershipOptions,
    WeightScheme,
};
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::word_algebra::{
    inversions, Laurent, Letter, Monomial, NCSeries, Param, ParamAssignment,
};

pub const DET_ORDER_BOUND: usize = 6;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DetFlavor {
    /// `(−1)^{inv σ}`
    CartierFoata,
    /// `(−q)^{−inv σ}`
    Quantum,
    /// `∏ (−q_{σ_j σ_i})^{-1}` over inversions `i < j`
    Qij,
    /// `(−1)^{inv σ − oinv σ}`
    Super(Vec<bool>),
}

impl DetFlavor {
    pub fn for_class(class: &MatrixClass) -> DetFlavor {
        match class {
            MatrixClass::Commutative | MatrixClass::CartierFoata | MatrixClass::RightQuantum => {
                DetFlavor::CartierFoata
            }
            MatrixClass::QCartierFoata | MatrixClass::QRightQuantum => DetFlavor::Quantum,
            MatrixClass::QijCartierFoata | MatrixClass::QijRightQuantum => DetFlavor::Qij,
            MatrixClass::Super(g) => DetFlavor::Super(g.clone()),
        }
    }

    /// Weight of the column-ordered row-label sequence `sigma`.
    pub fn weight<S: Scalar>(&self, sigma: &[usize]) -> Laurent<S> {
        let inv = inversions(sigma);
        let sign = |n: usize| Laurent::int(if n.is_multiple_of(2) { 1 } else { -1 });
        match self {
            DetFlavor::CartierFoata => sign(inv.len()),
            DetFlavor::Quantum => {
                let n = inv.len();
                Laurent::term(
                    if n.is_multiple_of(2) {
                        S::one()
                    } else {
                        -S::one()
                    },
                    Monomial::pow_of(Param::Q, -(n as i32)),
                )
            }
            DetFlavor::Qij => {
                let mut w = Laurent::int(1);
                for (i, j) in inv {
                    // (−q_{σ_j σ_i})^{-1} = −q(σ_i, σ_j)
                    w = &w * &-Laurent::monomial(Monomial::q_pair(sigma[i], sigma[j]));
                }
                w
            }
            DetFlavor::Super(g) => sign(inv.len() + oinv(sigma, g)),
        }
    }
}

/// Inversions `i < j`, `σ_i > σ_j`, between two odd entries. Parities are
/// read off the entries themselves, so this is the count that makes the
/// super weight agree with the `q_ij` weight at `q_ij = (−1)^{γ_i γ_j}`.
pub fn oinv(sigma: &[usize], gamma: &[bool]) -> usize {
    inversions(sigma)
        .into_iter()
        .filter(|&(i, j)| gamma[sigma[i] - 1] && gamma[sigma[j] - 1])
        .count()
}

/// A square matrix of series, remembering the labels of its rows and columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicMatrix<S> {
    row_labels: Vec<usize>,
    col_labels: Vec<usize>,
    entries: Vec<Vec<NCSeries<S>>>,
}

impl<S: Scalar> SymbolicMatrix<S> {
    pub fn new(
        row_labels: Vec<usize>,
        col_labels: Vec<usize>,
        entries: Vec<Vec<NCSeries<S>>>,
    ) -> Result<Self> {
        let n = row_labels.len();
        if col_labels.len() != n || entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(
                "matrix must be square with one label per row and column".into(),
            ));
        }
        Ok(SymbolicMatrix {
            row_labels,
            col_labels,
            entries,
        })
    }

    /// The generic matrix `A = (a_ij)`.
    pub fn letters(m: usize) -> Self {
        let labels: Vec<usize> = (1..=m).collect();
        let entries = labels
            .iter()
            .map(|&i| {
                labels
                    .iter()
                    .map(|&j| NCSeries::letter(Letter::new(i, j)))
                    .collect()
            })
            .collect();
        SymbolicMatrix {
            row_labels: labels.clone(),
            col_labels: labels,
            entries,
        }
    }

    /// `I − self`, with the identity taken on labels.
    pub fn identity_minus(&self) -> Self {
        let mut out = self.clone();
        for (r, row) in out.entries.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                let mut v = -&*e;
                if self.row_labels[r] == self.col_labels[c] {
                    v = &v + &NCSeries::one();
                }
                *e = v;
            }
        }
        out
    }

    pub fn size(&self) -> usize {
        self.row_labels.len()
    }

    pub fn row_labels(&self) -> &[usize] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[usize] {
        &self.col_labels
    }

    /// Entry at row position `r`, column position `c` (0-based).
    pub fn at(&self, r: usize, c: usize) -> &NCSeries<S> {
        &self.entries[r][c]
    }

    /// Entry with row label `i` and column label `j`.
    pub fn entry(&self, i: usize, j: usize) -> Option<&NCSeries<S>> {
        let r = self.row_labels.iter().position(|&l| l == i)?;
        let c = self.col_labels.iter().position(|&l| l == j)?;
        Some(&self.entries[r][c])
    }

    /// Deletes the rows and columns with the given labels.
    pub fn minor(&self, drop_rows: &[usize], drop_cols: &[usize]) -> Self {
        let keep_r: Vec<usize> = (0..self.size())
            .filter(|&r| !drop_rows.contains(&self.row_labels[r]))
            .collect();
        let keep_c: Vec<usize> = (0..self.size())
            .filter(|&c| !drop_cols.contains(&self.col_labels[c]))
            .collect();
        SymbolicMatrix {
            row_labels: keep_r.iter().map(|&r| self.row_labels[r]).collect(),
            col_labels: keep_c.iter().map(|&c| self.col_labels[c]).collect(),
            entries: keep_r
                .iter()
                .map(|&r| keep_c.iter().map(|&c| self.entries[r][c].clone()).collect())
                .collect(),
        }
    }

    /// Swaps the contents of two column positions; labels stay in place.
    pub fn swap_columns(&self, a: usize, b: usize) -> Self {
        let mut out = self.clone();
        for row in &mut out.entries {
            row.swap(a, b);
        }
        out
    }

    /// Overwrites column position `dst` with a copy of column position `src`.
    pub fn copy_column(&self, src: usize, dst: usize) -> Self {
        let mut out = self.clone();
        for row in &mut out.entries {
            row[dst] = row[src].clone();
        }
        out
    }

    /// Multiplies every entry of the row labelled `l` by `f(l)`.
    pub fn scale_rows(&self, f: impl Fn(usize) -> Laurent<S>) -> Self {
        let mut out = self.clone();
        for (r, row) in out.entries.iter_mut().enumerate() {
            let c = f(self.row_labels[r]);
            for e in row.iter_mut() {
                *e = e.scale(&c);
            }
        }
        out
    }

    pub fn map_entries(&self, f: impl Fn(&NCSeries<S>) -> NCSeries<S>) -> Self {
        SymbolicMatrix {
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(&f).collect())
                .collect(),
        }
    }

    /// `((I − self)^{-1})_{11}` up to degree `n`: the sum over all walks
    /// from the first label back to it, read left to right.
    pub fn inverse_corner(&self, n: usize) -> NCSeries<S> {
        let k = self.size();
        let mut v: Vec<NCSeries<S>> = (0..k)
            .map(|c| {
                if c == 0 {
                    NCSeries::one().truncate(n)
                } else {
                    NCSeries::truncated_zero(n)
                }
            })
            .collect();
        let mut total = v[0].clone();
        for _ in 0..n {
            let next: Vec<NCSeries<S>> = (0..k)
                .map(|c| {
                    let mut acc = NCSeries::truncated_zero(n);
                    for (r, vr) in v.iter().enumerate() {
                        if !vr.is_zero() {
                            acc = &acc + &vr.mul(&self.entries[r][c], Some(n));
                        }
                    }
                    acc
                })
                .collect();
            v = next;
            total = &total + &v[0];
        }
        total
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    crate::lattice_paths::multiset_permutations(&(0..n).collect::<Vec<_>>()).collect()
}

/// `Σ_σ w(σ) · M_{σ_1, 1} ⋯ M_{σ_m, m}`; `w` sees the row labels.
pub fn det<S: Scalar>(mat: &SymbolicMatrix<S>, flavor: &DetFlavor) -> Result<NCSeries<S>> {
    let n = mat.size();
    if n > DET_ORDER_BOUND {
        return Err(Error::guard(
            "determinant order",
            n as u128,
            DET_ORDER_BOUND as u128,
        ));
    }
    let mut total = NCSeries::zero();
    for perm in permutations(n) {
        let labels: Vec<usize> = perm.iter().map(|&r| mat.row_labels[r]).collect();
        let mut prod = NCSeries::constant(flavor.weight(&labels));
        for (c, &r) in perm.iter().enumerate() {
            prod = prod.mul(&mat.entries[r][c], None);
            if prod.is_zero() {
                break;
            }
        }
        total = &total + &prod;
    }
    Ok(total)
}

/// `det(I − M)` read as `Σ_J (−1)^{|J|} det M_J` over principal minors, so each
/// term is weighted by its permutation restricted to the labels it moves.
pub fn det_one_minus<S: Scalar>(
    mat: &SymbolicMatrix<S>,
    flavor: &DetFlavor,
) -> Result<NCSeries<S>> {
    let n = mat.size();
    if n > DET_ORDER_BOUND {
        return Err(Error::guard(
            "determinant order",
            n as u128,
            DET_ORDER_BOUND as u128,
        ));
    }
    if mat.row_labels != mat.col_labels {
        return Err(Error::InvalidArgument(
            "principal minors need matching row and column labels".into(),
        ));
    }
    let mut total = NCSeries::zero();
    for mask in 0u32..(1 << n) {
        let drop: Vec<usize> = (0..n)
            .filter(|&i| mask & (1 << i) == 0)
            .map(|i| mat.row_labels[i])
            .collect();
        let sub = mat.minor(&drop, &drop);
        let d = if sub.size() == 0 {
            NCSeries::one()
        } else {
            det(&sub, flavor)?
        };
        total = if sub.size().is_multiple_of(2) {
            &total + &d
        } else {
            &total - &d
        };
    }
    Ok(total)
}

/// The scaled matrix: row labelled `l` multiplied by `q(first label, l)`.
pub fn build_scaled<S: Scalar>(
    mat: &SymbolicMatrix<S>,
    class: &MatrixClass,
) -> Result<SymbolicMatrix<S>> {
    let scheme = class.scheme();
    if scheme == WeightScheme::Unit {
        return Err(Error::Unsupported(format!(
            "{class} has no scaled matrix; it uses A itself"
        )));
    }
    let first = mat.row_labels[0];
    Ok(mat.scale_rows(|l| scheme.q(first, l)))
}

fn check_member<S: Scalar>(
    report: &mut VerificationReport,
    name: String,
    target: &NCSeries<S>,
    class: &MatrixClass,
    m: usize,
    points: &[ParamAssignment<S>],
    opts: &MembershipOptions,
) -> Result<()> {
    let rels = relation_generators(class, m)?;
    let out = ideal_membership(
        target,
        &rels,
        &MembershipMode::Points(points.to_vec()),
        opts,
    )?;
    report.check(name, out.member, None);
    report.extend_components(out.components);
    Ok(())
}

/// Column swap, equal columns and last-column Laplace expansion, for
/// `B = A` and `B = I − A`, each checked modulo the class ideal.
pub fn verify_det_lemmas<S: Scalar>(
    class: &MatrixClass,
    m: usize,
    points: &[ParamAssignment<S>],
    opts: &MembershipOptions,
) -> Result<VerificationReport> {
    let start = Instant::now();
    if !matches!(class.family(), Family::CartierFoata | Family::RightQuantum)
        || class.scheme() != WeightScheme::Unit
    {
        return Err(Error::Unsupported(format!(
            "determinant lemmas are stated for cartier-foata and right-quantum, not {class}"
        )));
    }
    if m > 4 {
        return Err(Error::InvalidArgument(
            "determinant lemmas are checked for m ≤ 4".into(),
        ));
    }
    let flavor = DetFlavor::CartierFoata;
    let mut report = VerificationReport::new("detlemmas", m)
        .with_class(class)
        .with_test_points(points);
    let a = SymbolicMatrix::<S>::letters(m);
    for (bname, b) in [("A", a.clone()), ("I-A", a.identity_minus())] {
        let d = det(&b, &flavor)?;
        for c in 0..m.saturating_sub(1) {
            let swapped = det(&b.swap_columns(c, c + 1), &flavor)?;
            check_member(
                &mut report,
                format!("swap columns {} and {} of {bname}", c + 1, c + 2),
                &(&swapped + &d),
                class,
                m,
                points,
                opts,
            )?;
        }
        for c in 0..m {
            for e in c + 1..m {
                let equal = det(&b.copy_column(c, e), &flavor)?;
                check_member(
                    &mut report,
                    format!("columns {} = {} of {bname}", c + 1, e + 1),
                    &equal,
                    class,
                    m,
                    points,
                    opts,
                )?;
            }
        }
        let mut laplace = NCSeries::zero();
        let last = b.col_labels()[m - 1];
        for i in 1..=m {
            let sign = if (m + i).is_multiple_of(2) { 1 } else { -1 };
            let minor = det(&b.minor(&[i], &[last]), &flavor)?;
            let term = minor.mul(b.entry(i, last).expect("label present"), None);
            laplace = &laplace + &term.scale(&Laurent::int(sign));
        }
        let diff = &d - &laplace;
        if m == 1 {
            report.check(
                format!("laplace expansion of {bname}"),
                diff.is_zero(),
                None,
            );
        } else {
            check_member(
                &mut report,
                format!("laplace expansion of {bname}"),
                &diff,
                class,
                m,
                points,
                opts,
            )?;
        }
    }
    report.elapsed_us = start.elapsed().as_micros() as u64;
    Ok(report)
}
