//! The q-shift operator matrix `a_ij = z_i δ_ij − z_i b_ij E_i` acting on
//! Laurent polynomials in commuting `z_1, …, z_m`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_traits::Zero;

use crate::determinants::{det_one_minus, DetFlavor, SymbolicMatrix};
use crate::error::{Error, Result};
use crate::lattice_paths::{enumerate, EnumKind, DEFAULT_GUARD};
use crate::relations::MatrixClass;
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::word_algebra::{Laurent, Letter, Monomial, NCSeries, Param, Word};

pub const KS_DEGREE_BOUND: usize = 5;

/// A finite sum of `c · z^e` with `e ∈ ℤ^m` and coefficients in `b_ij`, `q_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPolynomial<S> {
    m: usize,
    terms: BTreeMap<Vec<i32>, Laurent<S>>,
}

impl<S: Scalar> ZPolynomial<S> {
    pub fn zero(m: usize) -> Self {
        ZPolynomial {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(m: usize) -> Self {
        Self::monomial(vec![0; m], Laurent::int(1))
    }

    pub fn monomial(exps: Vec<i32>, c: Laurent<S>) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// `z_i` (1-based).
    pub fn z(m: usize, i: usize) -> Self {
        let mut e = vec![0; m];
        e[i - 1] = 1;
        Self::monomial(e, Laurent::int(1))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn add_term(&mut self, exps: Vec<i32>, c: Laurent<S>) {
        assert_eq!(exps.len(), self.m, "exponent vector of the wrong length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Laurent<S>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> Laurent<S> {
        self.terms.get(exps).cloned().unwrap_or_else(Laurent::zero)
    }

    pub fn constant_term(&self) -> Laurent<S> {
        self.coeff(&vec![0; self.m])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, if every term has the same one.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<i32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn scale(&self, c: &Laurent<S>) -> Self {
        let mut out = Self::zero(self.m);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, v) in &other.terms {
            out.add_term(e.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Laurent::int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.m);
        for (e, v) in &self.terms {
            for (f, w) in &other.terms {
                out.add_term(e.iter().zip(f).map(|(a, b)| a + b).collect(), v * w);
            }
        }
        out
    }
}

impl<S: Scalar> fmt::Display for ZPolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => write!(f, "*z{}", i + 1)?,
                    _ => write!(f, "*z{}^{x}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

fn qi_pow<S: Scalar>(i: usize, e: i32) -> Laurent<S> {
    Laurent::monomial(Monomial::pow_of(Param::qi(i), e))
}

fn b<S: Scalar>(i: usize, j: usize) -> Laurent<S> {
    Laurent::var(Param::b(i, j))
}

/// `E_i`: `z_i ↦ q_i z_i`.
pub fn q_shift<S: Scalar>(i: usize, p: &ZPolynomial<S>) -> ZPolynomial<S> {
    let mut out = ZPolynomial::zero(p.m);
    for (e, c) in &p.terms {
        out.add_term(e.clone(), c * &qi_pow(i, e[i - 1]));
    }
    out
}

/// `a_ij · p = z_i (δ_ij p − b_ij E_i p)`.
pub fn apply_letter<S: Scalar>(l: Letter, p: &ZPolynomial<S>) -> ZPolynomial<S> {
    let (i, j) = (l.row(), l.col());
    let mut inner = q_shift(i, p).scale(&-b::<S>(i, j));
    if i == j {
        inner = inner.add(p);
    }
    ZPolynomial::z(p.m, i).mul(&inner)
}

/// `a_{w_1} ⋯ a_{w_n} · p`, applied from the right.
pub fn apply_word<S: Scalar>(w: &Word, p: &ZPolynomial<S>) -> Result<ZPolynomial<S>> {
    w.check_indices(p.m)?;
    Ok(w.letters()
        .iter()
        .rev()
        .fold(p.clone(), |acc, &l| apply_letter(l, &acc)))
}

/// `c_ij^k = z_i δ_ij − z_i b_ij q_i^{k−1}`.
pub fn c_factor<S: Scalar>(m: usize, i: usize, j: usize, k: i32) -> ZPolynomial<S> {
    factor(m, i, i, j, k)
}

/// `d_ij^k = z_j δ_ij − z_j b_ij q_i^{k−1}`.
pub fn d_factor<S: Scalar>(m: usize, i: usize, j: usize, k: i32) -> ZPolynomial<S> {
    factor(m, j, i, j, k)
}

fn factor<S: Scalar>(m: usize, zvar: usize, i: usize, j: usize, k: i32) -> ZPolynomial<S> {
    let mut c = -&(&b::<S>(i, j) * &qi_pow(i, k - 1));
    if i == j {
        c = &c + &Laurent::int(1);
    }
    ZPolynomial::z(m, zvar).scale(&c)
}

/// Product over the row blocks of a row-sorted word, the `s`-th of `ℓ`
/// letters in a block contributing the factor with exponent `ℓ − s + 1`.
fn block_form<S: Scalar>(
    alpha: &Word,
    m: usize,
    f: impl Fn(usize, usize, usize, i32) -> ZPolynomial<S>,
) -> Result<ZPolynomial<S>> {
    alpha.check_indices(m)?;
    let rows = alpha.row_word();
    if rows.windows(2).any(|p| p[0] > p[1]) {
        return Err(Error::WrongSequenceKind {
            expected: "sorted by rows",
            word: alpha.to_string(),
        });
    }
    let mut out = ZPolynomial::one(m);
    let letters = alpha.letters();
    let mut start = 0;
    while start < letters.len() {
        let row = letters[start].row();
        let end = start
            + letters[start..]
                .iter()
                .take_while(|l| l.row() == row)
                .count();
        let len = (end - start) as i32;
        for (s, l) in letters[start..end].iter().enumerate() {
            out = out.mul(&f(m, row, l.col(), len - s as i32));
        }
        start = end;
    }
    Ok(out)
}

/// The closed form of `α · 1` for a row-sorted word, in `c`-factors.
pub fn c_form<S: Scalar>(alpha: &Word, m: usize) -> Result<ZPolynomial<S>> {
    block_form(alpha, m, c_factor)
}

/// The same product in `d`-factors; equal to `c_form` on balanced words.
pub fn d_form<S: Scalar>(alpha: &Word, m: usize) -> Result<ZPolynomial<S>> {
    block_form(alpha, m, d_factor)
}

fn degree_guard(k: &[usize]) -> Result<usize> {
    let n: usize = k.iter().sum();
    if n > KS_DEGREE_BOUND {
        return Err(Error::guard(
            "operator expansion degree",
            n as u128,
            KS_DEGREE_BOUND as u128,
        ));
    }
    Ok(n)
}

/// `[z^0] ∏_i (Σ_j b_ij z_j / z_i ; q_i)_{k_i}`, the Pochhammer symbol taken
/// as `(a; q)_k = (1 − a)(1 − aq)⋯(1 − aq^{k−1})`.
pub fn lhs_ks<S: Scalar>(k: &[usize]) -> Result<Laurent<S>> {
    let m = k.len();
    let mut prod = ZPolynomial::one(m);
    for (i0, &ki) in k.iter().enumerate() {
        let i = i0 + 1;
        for r in 0..ki as i32 {
            let mut factor = ZPolynomial::one(m);
            for j in 1..=m {
                let mut e = vec![0; m];
                e[j - 1] += 1;
                e[i - 1] -= 1;
                factor.add_term(e, -&(&b::<S>(i, j) * &qi_pow(i, r)));
            }
            prod = prod.mul(&factor);
        }
    }
    Ok(prod.constant_term())
}

fn z_coeff<S: Scalar>(series: &NCSeries<S>, k: &[usize]) -> Result<Laurent<S>> {
    let m = k.len();
    let target: Vec<i32> = k.iter().map(|&x| x as i32).collect();
    let one = ZPolynomial::one(m);
    let mut total = Laurent::zero();
    for (w, c) in series.terms() {
        total = &total + &(c * &apply_word(w, &one)?.coeff(&target));
    }
    Ok(total)
}

/// `[z^k] (1 / det(I − A) · 1)` through the operator series of degree `|k|`.
pub fn rhs_ks<S: Scalar>(k: &[usize]) -> Result<Laurent<S>> {
    let n = degree_guard(k)?;
    let m = k.len();
    let d = det_one_minus(&SymbolicMatrix::<S>::letters(m), &DetFlavor::CartierFoata)?;
    z_coeff(&d.inverse(n)?.homogeneous_part(n), k)
}

/// `[z^k] (G(k) · 1)`, with `G(k)` the sum of the o-sequences of type `k`.
pub fn rhs_ks_from_g<S: Scalar>(k: &[usize]) -> Result<Laurent<S>> {
    degree_guard(k)?;
    let words = enumerate(EnumKind::O, k, DEFAULT_GUARD)?;
    z_coeff(
        &NCSeries::from_terms(words.into_iter().map(|w| (w, Laurent::int(1)))),
        k,
    )
}

/// Both operator-side expansions against the constant term.
pub fn verify_ks<S: Scalar>(k: &[usize]) -> Result<VerificationReport> {
    let m = k.len();
    if m == 0 || m > 3 {
        return Err(Error::InvalidArgument(format!(
            "dimension {m} is outside 1..=3"
        )));
    }
    let start = Instant::now();
    let lhs = lhs_ks::<S>(k)?;
    let rhs = rhs_ks::<S>(k)?;
    let via_g = rhs_ks_from_g::<S>(k)?;
    let kdesc = k
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let mut report = VerificationReport::new("ks", m)
        .with_class(&MatrixClass::CartierFoata)
        .with_max_degree(k.iter().sum())
        .with_parameter("k", kdesc)
        .with_parameter("lhs", &lhs);
    report.check(
        "constant term equals the z^k coefficient",
        lhs == rhs,
        Some(format!("rhs = {rhs}")),
    );
    report.check(
        "only G(k) contributes to the z^k coefficient",
        via_g == rhs,
        None,
    );
    report.elapsed_us = start.elapsed().as_micros() as u64;
    Ok(report)
}

/// `a_ij a_kl · p == a_kl a_ij · p`.
pub fn letters_commute_on<S: Scalar>(x: Letter, y: Letter, p: &ZPolynomial<S>) -> bool {
    apply_letter(x, &apply_letter(y, p)) == apply_letter(y, &apply_letter(x, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type Z = ZPolynomial<Rational>;

    #[test]
    fn shift_examples() {
        let p = Z::z(2, 1).mul(&Z::z(2, 1)).mul(&Z::z(2, 2));
        assert_eq!(
            q_shift(1, &p),
            p.scale(&Laurent::parse_any("q_1^2").unwrap())
        );
        assert_eq!(q_shift(1, &Z::z(2, 2)), Z::z(2, 2));
        assert_eq!(Z::z(1, 1).homogeneous_degree(), Some(1));
    }

    #[test]
    fn single_letter() {
        let r = apply_word(&"a11".parse().unwrap(), &Z::one(1)).unwrap();
        assert_eq!(r, Z::z(1, 1).scale(&Laurent::parse_any("1 - b11").unwrap()));
        assert_eq!(apply_word(&Word::empty(), &Z::one(1)).unwrap(), Z::one(1));
    }
}
