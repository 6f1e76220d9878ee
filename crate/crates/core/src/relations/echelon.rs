use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Scalar;
use crate::word_algebra::Laurent;

/// Coefficient domain for row reduction. Field elements are all units;
/// Laurent polynomials are units only when they have a single term.
pub trait EliminationRing: Clone + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn unit_inverse(&self) -> Option<Self>;
}

impl<S: Scalar> EliminationRing for S {
    fn zero() -> Self {
        <S as Zero>::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        *self == <S as One>::one()
    }
    fn mul(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
    fn sub(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }
    fn unit_inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| <S as One>::one() / self.clone())
    }
}

impl<S: Scalar> EliminationRing for Laurent<S> {
    fn zero() -> Self {
        <Laurent<S> as Zero>::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.inverse_term()
    }
}

/// Sparse row, sorted by column with no zero entries.
pub type SparseRow<R> = Vec<(usize, R)>;

/// `a·x − b·y`.
fn combine<R: EliminationRing>(a: &R, x: &[(usize, R)], b: &R, y: &[(usize, R)]) -> SparseRow<R> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let scaled = |c: &R, v: &R| if c.is_one() { v.clone() } else { c.mul(v) };
    while i < x.len() || j < y.len() {
        let take = match (x.get(i), y.get(j)) {
            (Some(p), Some(q)) => p.0.cmp(&q.0),
            (Some(_), None) => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Greater,
        };
        let (col, v) = match take {
            std::cmp::Ordering::Less => {
                i += 1;
                (x[i - 1].0, scaled(a, &x[i - 1].1))
            }
            std::cmp::Ordering::Greater => {
                j += 1;
                (y[j - 1].0, R::zero().sub(&scaled(b, &y[j - 1].1)))
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
                (
                    x[i - 1].0,
                    scaled(a, &x[i - 1].1).sub(&scaled(b, &y[j - 1].1)),
                )
            }
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

/// Row-echelon basis of a growing span, keyed by leading column.
#[derive(Clone, Debug)]
pub struct Echelon<R> {
    pivots: BTreeMap<usize, SparseRow<R>>,
}

impl<R: EliminationRing> Default for Echelon<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: EliminationRing> Echelon<R> {
    pub fn new() -> Self {
        Echelon {
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Eliminates leading entries until the lead is not a pivot column.
    pub fn reduce(&self, mut row: SparseRow<R>) -> SparseRow<R> {
        row.retain(|(_, v)| !v.is_zero());
        while let Some((c, lead)) = row.first() {
            let Some(p) = self.pivots.get(c) else { break };
            row = combine(&p[0].1, &row, lead, p);
        }
        row
    }

    /// Adds a row to the span; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow<R>) -> bool {
        let mut row = self.reduce(row);
        let Some((c, lead)) = row.first() else {
            return false;
        };
        let c = *c;
        if !lead.is_one() {
            if let Some(inv) = lead.unit_inverse() {
                for entry in row.iter_mut() {
                    entry.1 = entry.1.mul(&inv);
                }
            }
        }
        self.pivots.insert(c, row);
        true
    }

    pub fn contains(&self, row: SparseRow<R>) -> bool {
        self.reduce(row).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn field_span() {
        let mut e = Echelon::new();
        assert!(e.insert(vec![(0, r(2)), (1, r(4))]));
        assert!(e.insert(vec![(1, r(3)), (2, r(1))]));
        assert!(!e.insert(vec![(0, r(1)), (1, r(5)), (2, r(1))]));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(vec![(0, r(1)), (1, r(2))]));
        assert!(!e.contains(vec![(2, r(1))]));
        assert!(e.contains(Vec::new()));
    }

    #[test]
    fn laurent_span_is_fraction_free() {
        let q = Laurent::<Rational64>::parse_any("q").unwrap();
        let qp1 = Laurent::<Rational64>::parse_any("q + 1").unwrap();
        let mut e = Echelon::new();
        e.insert(vec![(0, qp1.clone()), (1, Laurent::int(1))]);
        e.insert(vec![(1, q.clone()), (2, Laurent::int(1))]);
        // q·row0 − row1
        let target = vec![(0, &q * &qp1), (2, Laurent::int(-1))];
        assert!(e.contains(target));
        assert!(!e.contains(vec![(0, Laurent::int(1))]));
    }
}
