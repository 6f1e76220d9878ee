use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::param::{Monomial, Param, ParamAssignment, ParamUniverse};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A multivariate Laurent polynomial in the named parameters with exact
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Laurent<S> {
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Laurent<S> {
    pub fn constant(c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Laurent { terms }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(S::from_int(n))
    }

    pub fn term(c: S, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Laurent { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(S::one(), m)
    }

    pub fn var(p: Param) -> Self {
        Self::monomial(Monomial::var(p))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn constant_term(&self) -> S {
        self.coeff(&Monomial::one())
    }

    /// `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// `Some((c, m))` when the polynomial is the single term `c·m`.
    pub fn as_term(&self) -> Option<(&S, &Monomial)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    /// Inverse of a single term; `None` for sums or zero.
    pub fn inverse_term(&self) -> Option<Self> {
        let (c, m) = self.as_term()?;
        Some(Self::term(S::one() / c.clone(), m.inverse()))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn params(&self) -> BTreeSet<Param> {
        self.terms.keys().flat_map(|m| m.params()).collect()
    }

    /// Evaluates every monomial exactly at the assignment.
    pub fn eval(&self, point: &ParamAssignment<S>) -> Result<S> {
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            acc = acc + c.clone() * m.eval(point)?;
        }
        Ok(acc)
    }

    /// Substitutes a polynomial for each parameter that `f` maps; others are kept.
    pub fn substitute(&self, f: &impl Fn(Param) -> Option<Laurent<S>>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for &(p, e) in m.factors() {
                let factor = match f(p) {
                    Some(v) if e >= 0 => v.pow(e as u32),
                    Some(v) => v
                        .inverse_term()
                        .expect("substituted value must be invertible")
                        .pow((-e) as u32),
                    None => Self::monomial(Monomial::pow_of(p, e)),
                };
                t = &t * &factor;
            }
            out += t;
        }
        out
    }

    /// Parses a coefficient string, accepting only parameters in `universe`.
    pub fn parse_in(text: &str, universe: &ParamUniverse) -> Result<Self> {
        parse(text, &|name| universe.resolve(name))
    }

    /// Parses a coefficient string with any well-formed parameter names.
    pub fn parse_any(text: &str) -> Result<Self> {
        parse(text, &|name| name.parse())
    }
}

fn parse<S: Scalar>(text: &str, resolve: &dyn Fn(&str) -> Result<Param>) -> Result<Laurent<S>> {
    let bad = |why: &str| Error::Parse(format!("coefficient `{text}`: {why}"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad("empty"));
    }
    // split into signed terms at top-level +/- not part of an exponent
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && prev != Some('^') {
            if prev.is_some() {
                if current.is_empty() {
                    return Err(bad("dangling sign"));
                }
                terms.push((negative, std::mem::take(&mut current)));
            }
            negative = ch == '-';
        } else {
            current.push(ch);
        }
        prev = Some(ch);
    }
    if current.is_empty() {
        return Err(bad("dangling sign"));
    }
    terms.push((negative, current));

    let mut out = Laurent::zero();
    for (negative, term) in terms {
        let mut c = S::one();
        let mut factors = Vec::new();
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(bad("empty factor"));
            }
            if factor.starts_with(|ch: char| ch.is_ascii_digit()) {
                c = c * S::parse(factor).ok_or_else(|| bad("invalid number"))?;
            } else {
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<i32>().map_err(|_| bad("invalid exponent"))?),
                    None => (factor, 1),
                };
                factors.push((resolve(name)?, exp));
            }
        }
        if negative {
            c = -c;
        }
        out.add_term(Monomial::from_factors(factors), c);
    }
    Ok(out)
}

impl<S: Scalar> Zero for Laurent<S> {
    fn zero() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<S: Scalar> One for Laurent<S> {
    fn one() -> Self {
        Self::constant(S::one())
    }
}

impl<S: Scalar> From<S> for Laurent<S> {
    fn from(c: S) -> Self {
        Self::constant(c)
    }
}

impl<S: Scalar> AddAssign<Laurent<S>> for Laurent<S> {
    fn add_assign(&mut self, rhs: Laurent<S>) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<S: Scalar> AddAssign<&Laurent<S>> for Laurent<S> {
    fn add_assign(&mut self, rhs: &Laurent<S>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<S: Scalar> SubAssign<&Laurent<S>> for Laurent<S> {
    fn sub_assign(&mut self, rhs: &Laurent<S>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<S: Scalar> Add<&Laurent<S>> for &Laurent<S> {
    type Output = Laurent<S>;
    fn add(self, rhs: &Laurent<S>) -> Laurent<S> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<S: Scalar> Sub<&Laurent<S>> for &Laurent<S> {
    type Output = Laurent<S>;
    fn sub(self, rhs: &Laurent<S>) -> Laurent<S> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<S: Scalar> Mul<&Laurent<S>> for &Laurent<S> {
    type Output = Laurent<S>;
    fn mul(self, rhs: &Laurent<S>) -> Laurent<S> {
        let mut out = Laurent::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<S: Scalar> Neg for &Laurent<S> {
    type Output = Laurent<S>;
    fn neg(self) -> Laurent<S> {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<S: Scalar> Add for Laurent<S> {
    type Output = Laurent<S>;
    fn add(mut self, rhs: Laurent<S>) -> Laurent<S> {
        self += rhs;
        self
    }
}

impl<S: Scalar> Sub for Laurent<S> {
    type Output = Laurent<S>;
    fn sub(mut self, rhs: Laurent<S>) -> Laurent<S> {
        self -= &rhs;
        self
    }
}

impl<S: Scalar> Mul for Laurent<S> {
    type Output = Laurent<S>;
    fn mul(self, rhs: Laurent<S>) -> Laurent<S> {
        &self * &rhs
    }
}

impl<S: Scalar> Neg for Laurent<S> {
    type Output = Laurent<S>;
    fn neg(self) -> Laurent<S> {
        -&self
    }
}

impl<S: Scalar> fmt::Display for Laurent<S> {
    /// Terms such as `3/5*q12^-1*q^2`, joined by ` + ` / ` - `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest total degree first reads more naturally
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| {
            std::cmp::Reverse(m.factors().iter().map(|&(_, e)| e).sum::<i32>())
        });
        for (n, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}
