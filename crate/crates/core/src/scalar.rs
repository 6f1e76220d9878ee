//! Exact scalar fields.
//!
//! Every algebraic routine in the crate is generic over [`Scalar`], an exact
//! field with a decimal text form. `BigRational` is the production choice;
//! `Rational64` works for small inputs and is handy in tests.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num, Signed};

/// An exact field element. Floating point types do not qualify: `Eq + Hash`
/// is required.
pub trait Scalar:
    Num
    + Signed
    + Clone
    + Neg<Output = Self>
    + Eq
    + Hash
    + Debug
    + Display
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("scalar field must represent every i64")
    }

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_int(num) / Self::from_int(den)
    }

    /// Parses `"3/5"`, `"-2"` and friends.
    fn parse(text: &str) -> Option<Self> {
        let t = text.trim();
        if t.is_empty() || t.contains(char::is_whitespace) {
            return None;
        }
        if t.contains('/') {
            <Self as Num>::from_str_radix(t, 10).ok()
        } else {
            <Self as Num>::from_str_radix(&format!("{t}/1"), 10).ok()
        }
    }

    /// `x^e` for any integer exponent; `None` when `x = 0` and `e < 0`.
    fn powi(&self, e: i32) -> Option<Self> {
        if e < 0 && self.is_zero() {
            return None;
        }
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * self.clone();
        }
        Some(if e < 0 { Self::one() / acc } else { acc })
    }
}

impl<T> Scalar for T where
    T: Num
        + Signed
        + Clone
        + Neg<Output = T>
        + Eq
        + Hash
        + Debug
        + Display
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}
