use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::Laurent;
use super::param::{Param, ParamAssignment};
use super::word::{Bigrade, Letter, Word};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A finite sparse combination of words with Laurent-polynomial coefficients,
/// optionally truncated: with `max_degree = Some(n)` every word longer than `n`
/// is discarded, so the value stands for a power series known up to degree `n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NCSeries<S> {
    terms: BTreeMap<Word, Laurent<S>>,
    max_degree: Option<usize>,
}

fn min_bound(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<S: Scalar> Default for NCSeries<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> NCSeries<S> {
    /// The zero polynomial (no truncation).
    pub fn zero() -> Self {
        NCSeries {
            terms: BTreeMap::new(),
            max_degree: None,
        }
    }

    pub fn truncated_zero(max_degree: usize) -> Self {
        NCSeries {
            terms: BTreeMap::new(),
            max_degree: Some(max_degree),
        }
    }

    pub fn one() -> Self {
        Self::word(Word::empty(), Laurent::one())
    }

    pub fn constant(c: Laurent<S>) -> Self {
        Self::word(Word::empty(), c)
    }

    pub fn word(w: Word, c: Laurent<S>) -> Self {
        let mut s = Self::zero();
        s.add_term(w, c);
        s
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(Word::new(vec![l]), Laurent::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Laurent<S>)>) -> Self {
        let mut s = Self::zero();
        for (w, c) in terms {
            s.add_term(w, c);
        }
        s
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.max_degree
    }

    /// Drops every word longer than `n` and records the bound.
    pub fn truncate(&self, n: usize) -> Self {
        let bound = min_bound(self.max_degree, Some(n));
        NCSeries {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() <= n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
            max_degree: bound,
        }
    }

    pub fn add_term(&mut self, w: Word, c: Laurent<S>) {
        if c.is_zero() || self.max_degree.is_some_and(|n| w.len() > n) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Laurent<S>)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Laurent<S>)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> Laurent<S> {
        self.terms.get(w).cloned().unwrap_or_else(Laurent::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of the empty word.
    pub fn constant_term(&self) -> Laurent<S> {
        self.coeff(&Word::empty())
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Equality of the stored terms, ignoring the truncation bounds.
    pub fn same_terms(&self, other: &Self) -> bool {
        self.terms == other.terms
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        NCSeries {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
            max_degree: self.max_degree,
        }
    }

    pub fn scale(&self, c: &Laurent<S>) -> Self {
        let mut out = NCSeries {
            terms: BTreeMap::new(),
            max_degree: self.max_degree,
        };
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    pub fn scale_scalar(&self, c: &S) -> Self {
        self.scale(&Laurent::constant(c.clone()))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Word, &Laurent<S>) -> Laurent<S>) -> Self {
        let mut out = NCSeries {
            terms: BTreeMap::new(),
            max_degree: self.max_degree,
        };
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(w, c));
        }
        out
    }

    /// Applies a word rewrite `w ↦ (coefficient, word)` termwise.
    pub fn map_words(&self, f: impl Fn(&Word) -> (Laurent<S>, Word)) -> Self {
        let mut out = NCSeries {
            terms: BTreeMap::new(),
            max_degree: self.max_degree,
        };
        for (w, c) in &self.terms {
            let (k, w2) = f(w);
            out.add_term(w2, c * &k);
        }
        out
    }

    /// Concatenation product, discarding words longer than the smallest of the
    /// two operands' bounds and `max_degree`.
    pub fn mul(&self, other: &Self, max_degree: Option<usize>) -> Self {
        let bound = min_bound(min_bound(self.max_degree, other.max_degree), max_degree);
        let mut out = NCSeries {
            terms: BTreeMap::new(),
            max_degree: bound,
        };
        for (wa, ca) in &self.terms {
            if bound.is_some_and(|n| wa.len() > n) {
                continue;
            }
            for (wb, cb) in &other.terms {
                if bound.is_some_and(|n| wa.len() + wb.len() > n) {
                    continue;
                }
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }

    /// For `self = 1 − Σ` with `Σ` free of constant terms, returns
    /// `1 + Σ + Σ² + ⋯` up to degree `max_degree`. It is a two-sided inverse.
    pub fn inverse(&self, max_degree: usize) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let n = match self.max_degree {
            Some(b) => b.min(max_degree),
            None => max_degree,
        };
        // sigma[d] = degree-d part of Σ = −(degree-d part of self)
        let mut sigma: Vec<Vec<(&Word, Laurent<S>)>> = vec![Vec::new(); n + 1];
        for (w, c) in &self.terms {
            if (1..=n).contains(&w.len()) {
                sigma[w.len()].push((w, -c));
            }
        }
        // parts[d] = degree-d part of the inverse = Σ_{j ≥ 1} Σ_j · parts[d − j]
        let mut parts: Vec<BTreeMap<Word, Laurent<S>>> = Vec::with_capacity(n + 1);
        parts.push(BTreeMap::from([(Word::empty(), Laurent::one())]));
        for d in 1..=n {
            let mut acc: BTreeMap<Word, Laurent<S>> = BTreeMap::new();
            for (j, sig) in sigma.iter().enumerate().take(d + 1).skip(1) {
                for (ws, cs) in sig {
                    for (wr, cr) in &parts[d - j] {
                        let c = cs * cr;
                        let entry = acc.entry(ws.concat(wr)).or_insert_with(Laurent::zero);
                        *entry += c;
                    }
                }
            }
            acc.retain(|_, c| !c.is_zero());
            parts.push(acc);
        }
        let mut out = NCSeries::truncated_zero(n);
        for part in parts {
            for (w, c) in part {
                out.add_term(w, c);
            }
        }
        Ok(out)
    }

    /// `self^e` truncated at `max_degree`.
    pub fn pow(&self, e: u32, max_degree: usize) -> Self {
        let mut acc = Self::one().truncate(max_degree);
        for _ in 0..e {
            acc = acc.mul(self, Some(max_degree));
        }
        acc
    }

    /// Evaluates every coefficient at `point`; the result has constant
    /// coefficients and the same words.
    pub fn instantiate(&self, point: &ParamAssignment<S>) -> Result<Self> {
        let mut out = NCSeries {
            terms: BTreeMap::new(),
            max_degree: self.max_degree,
        };
        for (w, c) in &self.terms {
            out.add_term(w.clone(), Laurent::constant(c.eval(point)?));
        }
        Ok(out)
    }

    pub fn params(&self) -> BTreeSet<Param> {
        self.terms.values().flat_map(|c| c.params()).collect()
    }

    /// Splits the series by (row content, column content).
    pub fn components(&self, m: usize) -> BTreeMap<Bigrade, NCSeries<S>> {
        let mut out: BTreeMap<Bigrade, NCSeries<S>> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.bigrade(m))
                .or_insert_with(|| NCSeries {
                    terms: BTreeMap::new(),
                    max_degree: self.max_degree,
                })
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    /// Word → coefficient strings, for machine-readable output.
    pub fn to_string_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(w, c)| (w.to_string(), c.to_string()))
            .collect()
    }
}

impl<S: Scalar> Add<&NCSeries<S>> for &NCSeries<S> {
    type Output = NCSeries<S>;
    fn add(self, rhs: &NCSeries<S>) -> NCSeries<S> {
        let bound = min_bound(self.max_degree, rhs.max_degree);
        let mut out = NCSeries {
            terms: BTreeMap::new(),
            max_degree: bound,
        };
        for (w, c) in self.terms.iter().chain(rhs.terms.iter()) {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub<&NCSeries<S>> for &NCSeries<S> {
    type Output = NCSeries<S>;
    fn sub(self, rhs: &NCSeries<S>) -> NCSeries<S> {
        self + &(-rhs)
    }
}

impl<S: Scalar> Neg for &NCSeries<S> {
    type Output = NCSeries<S>;
    fn neg(self) -> NCSeries<S> {
        NCSeries {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
            max_degree: self.max_degree,
        }
    }
}

impl<S: Scalar> fmt::Display for NCSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut words: Vec<_> = self.terms.iter().collect();
        words.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        for (n, (w, c)) in words.into_iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let word = if w.is_empty() {
                "1".to_string()
            } else {
                w.to_string()
            };
            if c.is_one() {
                f.write_str(&word)?;
            } else if w.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{word}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    type Ser = NCSeries<Rational64>;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn lit(s: &str) -> Ser {
        Ser::word(w(s), Laurent::one())
    }

    #[test]
    fn binomial_in_one_letter() {
        let x = &Ser::one() + &lit("a11");
        let sq = x.mul(&x, Some(2));
        let expected = Ser::from_terms([
            (Word::empty(), Laurent::one()),
            (w("a11"), Laurent::int(2)),
            (w("a11,a11"), Laurent::one()),
        ]);
        assert!(sq.same_terms(&expected));
        assert_eq!(sq.max_degree(), Some(2));
    }

    #[test]
    fn unit_law_and_truncation() {
        let s = &lit("a12,a21") + &lit("a11").scale(&Laurent::var(Param::Q));
        assert!(Ser::one().mul(&s, None).same_terms(&s));
        assert!(lit("a12").mul(&lit("a21"), Some(1)).is_zero());
    }

    #[test]
    fn geometric_inverse() {
        let s = &Ser::one() - &lit("a11");
        let inv = s.inverse(3).unwrap();
        let expected = Ser::from_terms(
            ["", "a11", "a11,a11", "a11,a11,a11"]
                .iter()
                .map(|t| (w(t), Laurent::one())),
        );
        assert!(inv.same_terms(&expected));
        assert!(Ser::one().inverse(5).unwrap().same_terms(&Ser::one()));
        assert_eq!(
            (&lit("a11") + &lit("a11")).inverse(2).unwrap_err(),
            Error::ConstantTermNotOne
        );
    }

    #[test]
    fn instantiate_evaluates_coefficients() {
        let c = Laurent::parse_any("q^-1").unwrap();
        let s = Ser::word(w("a12,a21"), c);
        let at = ParamAssignment::from_pairs([(Param::Q, Rational64::from_integer(2))]).unwrap();
        let v = s.instantiate(&at).unwrap();
        assert_eq!(
            v.coeff(&w("a12,a21")),
            Laurent::constant(Rational64::new(1, 2))
        );
        let missing = ParamAssignment::<Rational64>::new();
        assert!(s.instantiate(&missing).is_err());
    }

    #[test]
    fn components_split_by_bigrade() {
        let s = &(&lit("a12,a21") + &lit("a21,a12")) + &lit("a11");
        let comps = s.components(2);
        assert_eq!(comps.len(), 2);
        assert!(comps.keys().all(Bigrade::is_balanced));
    }
}
