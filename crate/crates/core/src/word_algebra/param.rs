use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A named parameter that may appear in a coefficient.
///
/// `Qij(i, j)` is always stored with `i < j`; `q_{ii} = 1` and
/// `q_{ji} = q_{ij}^{-1}` are produced by [`Monomial::q_pair`], never stored.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Param {
    /// The single deformation parameter `q`.
    Q,
    /// `q_{ij}`, `i < j`.
    Qij(u8, u8),
    /// `β` of the β-extension.
    Beta,
    /// The shift parameter `q_i` of the operator `E_i`.
    Qi(u8),
    /// The commuting variable `b_{ij}`.
    B(u8, u8),
}

impl Param {
    pub fn qij(i: usize, j: usize) -> Self {
        assert!(i < j, "q_ij is stored with i < j");
        Param::Qij(i as u8, j as u8)
    }

    pub fn qi(i: usize) -> Self {
        Param::Qi(i as u8)
    }

    pub fn b(i: usize, j: usize) -> Self {
        Param::B(i as u8, j as u8)
    }
}

fn pair(f: &mut fmt::Formatter<'_>, head: &str, i: u8, j: u8) -> fmt::Result {
    if i <= 9 && j <= 9 {
        write!(f, "{head}{i}{j}")
    } else {
        write!(f, "{head}({i},{j})")
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Param::Q => f.write_str("q"),
            Param::Qij(i, j) => pair(f, "q", i, j),
            Param::Beta => f.write_str("beta"),
            Param::Qi(i) => write!(f, "q_{i}"),
            Param::B(i, j) => pair(f, "b", i, j),
        }
    }
}

fn parse_pair(body: &str) -> Option<(u8, u8)> {
    if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
        let (a, b) = inner.split_once(',')?;
        return Some((a.trim().parse().ok()?, b.trim().parse().ok()?));
    }
    let digits: Vec<u32> = body
        .chars()
        .map(|c| c.to_digit(10))
        .collect::<Option<_>>()?;
    (digits.len() == 2).then(|| (digits[0] as u8, digits[1] as u8))
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid parameter name `{s}`"));
        let nonzero = |i: u8| if i == 0 { Err(bad()) } else { Ok(i) };
        match s {
            "q" => Ok(Param::Q),
            "beta" => Ok(Param::Beta),
            _ => {
                if let Some(idx) = s.strip_prefix("q_") {
                    let i: u8 = idx.parse().map_err(|_| bad())?;
                    Ok(Param::Qi(nonzero(i)?))
                } else if let Some(body) = s.strip_prefix('q') {
                    let (i, j) = parse_pair(body).ok_or_else(bad)?;
                    if nonzero(i)? >= nonzero(j)? {
                        return Err(Error::Parse(format!("`{s}`: q_ij requires i < j")));
                    }
                    Ok(Param::Qij(i, j))
                } else if let Some(body) = s.strip_prefix('b') {
                    let (i, j) = parse_pair(body).ok_or_else(bad)?;
                    Ok(Param::B(nonzero(i)?, nonzero(j)?))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

/// A Laurent monomial: parameters with nonzero integer exponents, sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<(Param, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(p: Param) -> Self {
        Monomial(vec![(p, 1)])
    }

    pub fn pow_of(p: Param, e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(p, e)])
        }
    }

    /// `q_{ij}` under the conventions `q_{ii} = 1`, `q_{ji} = q_{ij}^{-1}`.
    pub fn q_pair(i: usize, j: usize) -> Self {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Monomial::one(),
            Less => Monomial::var(Param::qij(i, j)),
            Greater => Monomial::pow_of(Param::qij(j, i), -1),
        }
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Param, i32)>) -> Self {
        let mut map: BTreeMap<Param, i32> = BTreeMap::new();
        for (p, e) in factors {
            *map.entry(p).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    pub fn factors(&self) -> &[(Param, i32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, p: Param) -> i32 {
        self.0.iter().find(|(q, _)| *q == p).map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(p, e)| (p, -e)).collect())
    }

    pub fn pow(&self, n: i32) -> Monomial {
        if n == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(p, e)| (p, e * n)).collect())
    }

    pub fn params(&self) -> impl Iterator<Item = Param> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn eval<S: Scalar>(&self, point: &ParamAssignment<S>) -> Result<S> {
        let mut acc = S::one();
        for &(p, e) in &self.0 {
            let v = point
                .get(p)
                .ok_or_else(|| Error::UnassignedParameter(p.to_string()))?;
            acc = acc * v.powi(e).expect("assignments are nonzero");
        }
        Ok(acc)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, (p, e)) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// The closed set of parameter names declared for a run.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ParamUniverse(BTreeSet<Param>);

impl ParamUniverse {
    pub fn new(params: impl IntoIterator<Item = Param>) -> Self {
        ParamUniverse(params.into_iter().collect())
    }

    pub fn empty() -> Self {
        ParamUniverse(BTreeSet::new())
    }

    /// `q_{ij}` for all `1 ≤ i < j ≤ m`.
    pub fn qij(m: usize) -> Self {
        ParamUniverse::new((1..=m).flat_map(|i| (i + 1..=m).map(move |j| Param::qij(i, j))))
    }

    /// `b_{ij}` and `q_i` for `1 ≤ i, j ≤ m`.
    pub fn shift_operators(m: usize) -> Self {
        let bs = (1..=m).flat_map(|i| (1..=m).map(move |j| Param::b(i, j)));
        ParamUniverse::new(bs.chain((1..=m).map(Param::qi)))
    }

    pub fn contains(&self, p: Param) -> bool {
        self.0.contains(&p)
    }

    pub fn insert(&mut self, p: Param) {
        self.0.insert(p);
    }

    pub fn union(&self, other: &ParamUniverse) -> ParamUniverse {
        ParamUniverse(self.0.union(&other.0).copied().collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = Param> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses a parameter name and rejects it unless declared.
    pub fn resolve(&self, name: &str) -> Result<Param> {
        let p: Param = name.parse()?;
        if self.contains(p) {
            Ok(p)
        } else {
            Err(Error::UnknownParameter(p.to_string()))
        }
    }
}

/// Nonzero exact values for parameters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamAssignment<S>(BTreeMap<Param, S>);

impl<S: Scalar> Default for ParamAssignment<S> {
    fn default() -> Self {
        ParamAssignment(BTreeMap::new())
    }
}

impl<S: Scalar> ParamAssignment<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Param, S)>) -> Result<Self> {
        let mut a = Self::new();
        for (p, v) in pairs {
            a.set(p, v)?;
        }
        Ok(a)
    }

    pub fn set(&mut self, p: Param, value: S) -> Result<()> {
        if value.is_zero() {
            return Err(Error::ZeroParameter(p.to_string()));
        }
        self.0.insert(p, value);
        Ok(())
    }

    pub fn with(mut self, p: Param, value: S) -> Result<Self> {
        self.set(p, value)?;
        Ok(self)
    }

    pub fn get(&self, p: Param) -> Option<&S> {
        self.0.get(&p)
    }

    pub fn covers(&self, universe: &ParamUniverse) -> bool {
        universe.iter().all(|p| self.0.contains_key(&p))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Param, &S)> {
        self.0.iter().map(|(p, v)| (*p, v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `name -> value` strings, for reports.
    pub fn to_strings(&self) -> BTreeMap<String, String> {
        self.0
            .iter()
            .map(|(p, v)| (p.to_string(), v.to_string()))
            .collect()
    }
}
