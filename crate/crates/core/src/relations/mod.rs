//! Matrix classes, the quadratic relations defining their ideals, and
//! membership of bigraded elements in those ideals.

mod echelon;
mod generators;
mod membership;
mod normal_form;
mod test_points;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::word_algebra::{Laurent, Monomial, Param, ParamUniverse};

pub use echelon::{Echelon, EliminationRing, SparseRow};
pub use generators::{relation_generators, RelationSet};
pub use membership::{
    component_basis, ideal_membership, MembershipMode, MembershipOptions, MembershipOutcome,
    DEFAULT_COMPONENT_GUARD,
};
pub use normal_form::{commutative_collapse, monomial_normal_form};
pub use test_points::{default_test_points, pool_value};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum MatrixClass {
    Commutative,
    CartierFoata,
    RightQuantum,
    QCartierFoata,
    QRightQuantum,
    QijCartierFoata,
    QijRightQuantum,
    /// Parity vector γ; `true` marks an odd index.
    Super(Vec<bool>),
}

/// Which relation shape a class uses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    Commutative,
    CartierFoata,
    RightQuantum,
}

/// How the structure constants `q(i, j)` of a class are obtained.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WeightScheme {
    Unit,
    /// `q(i, j) = q` for `i < j`.
    Uniform,
    /// `q(i, j) = q_ij` for `i < j`.
    Multi,
    /// `q(i, j) = (−1)^{γ_i γ_j}` for `i ≠ j`.
    Signs(Vec<bool>),
}

impl WeightScheme {
    /// `q(i, i) = 1` and `q(j, i) = q(i, j)^{-1}` in every scheme.
    pub fn q<S: Scalar>(&self, i: usize, j: usize) -> Laurent<S> {
        match self {
            WeightScheme::Unit => Laurent::int(1),
            WeightScheme::Uniform => Laurent::monomial(Monomial::pow_of(
                Param::Q,
                match i.cmp(&j) {
                    std::cmp::Ordering::Less => 1,
                    std::cmp::Ordering::Equal => 0,
                    std::cmp::Ordering::Greater => -1,
                },
            )),
            WeightScheme::Multi => Laurent::monomial(Monomial::q_pair(i, j)),
            WeightScheme::Signs(g) => {
                if i != j && g[i - 1] && g[j - 1] {
                    Laurent::int(-1)
                } else {
                    Laurent::int(1)
                }
            }
        }
    }

    /// Free parameters for dimension `m`.
    pub fn universe(&self, m: usize) -> ParamUniverse {
        match self {
            WeightScheme::Uniform => ParamUniverse::new([Param::Q]),
            WeightScheme::Multi => ParamUniverse::qij(m),
            _ => ParamUniverse::empty(),
        }
    }
}

impl MatrixClass {
    pub const NAMES: [&'static str; 8] = [
        "commutative",
        "cartier-foata",
        "right-quantum",
        "q-cartier-foata",
        "q-right-quantum",
        "qij-cartier-foata",
        "qij-right-quantum",
        "super",
    ];

    /// Parses a class name; `gamma` is required for `super` and rejected
    /// otherwise.
    pub fn from_name(name: &str, gamma: Option<Vec<bool>>) -> Result<Self> {
        let class = match name.to_ascii_lowercase().as_str() {
            "commutative" | "comm" => MatrixClass::Commutative,
            "cartier-foata" | "cf" => MatrixClass::CartierFoata,
            "right-quantum" | "rq" => MatrixClass::RightQuantum,
            "q-cartier-foata" | "qcf" => MatrixClass::QCartierFoata,
            "q-right-quantum" | "qrq" | "glz" => MatrixClass::QRightQuantum,
            "qij-cartier-foata" | "qijcf" => MatrixClass::QijCartierFoata,
            "qij-right-quantum" | "qijrq" => MatrixClass::QijRightQuantum,
            "super" => {
                return match gamma {
                    Some(g) => Ok(MatrixClass::Super(g)),
                    None => Err(Error::InvalidArgument(
                        "class `super` needs a parity vector".into(),
                    )),
                }
            }
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown matrix class `{other}`"
                )))
            }
        };
        if gamma.is_some() {
            return Err(Error::InvalidArgument(format!(
                "a parity vector only applies to `super`, not `{name}`"
            )));
        }
        Ok(class)
    }

    pub fn name(&self) -> &'static str {
        match self {
            MatrixClass::Commutative => "commutative",
            MatrixClass::CartierFoata => "cartier-foata",
            MatrixClass::RightQuantum => "right-quantum",
            MatrixClass::QCartierFoata => "q-cartier-foata",
            MatrixClass::QRightQuantum => "q-right-quantum",
            MatrixClass::QijCartierFoata => "qij-cartier-foata",
            MatrixClass::QijRightQuantum => "qij-right-quantum",
            MatrixClass::Super(_) => "super",
        }
    }

    pub fn family(&self) -> Family {
        match self {
            MatrixClass::Commutative => Family::Commutative,
            MatrixClass::CartierFoata
            | MatrixClass::QCartierFoata
            | MatrixClass::QijCartierFoata
            | MatrixClass::Super(_) => Family::CartierFoata,
            MatrixClass::RightQuantum
            | MatrixClass::QRightQuantum
            | MatrixClass::QijRightQuantum => Family::RightQuantum,
        }
    }

    pub fn scheme(&self) -> WeightScheme {
        match self {
            MatrixClass::Commutative | MatrixClass::CartierFoata | MatrixClass::RightQuantum => {
                WeightScheme::Unit
            }
            MatrixClass::QCartierFoata | MatrixClass::QRightQuantum => WeightScheme::Uniform,
            MatrixClass::QijCartierFoata | MatrixClass::QijRightQuantum => WeightScheme::Multi,
            MatrixClass::Super(g) => WeightScheme::Signs(g.clone()),
        }
    }

    /// Classes whose relations rewrite a word into a single scaled word.
    pub fn is_monomial(&self) -> bool {
        self.family() != Family::RightQuantum
    }

    pub fn universe(&self, m: usize) -> ParamUniverse {
        self.scheme().universe(m)
    }

    pub fn check_dimension(&self, m: usize) -> Result<()> {
        if m == 0 {
            return Err(Error::InvalidArgument(
                "dimension m must be at least 1".into(),
            ));
        }
        if let MatrixClass::Super(g) = self {
            if g.len() != m {
                return Err(Error::InvalidArgument(format!(
                    "parity vector has length {} but m = {m}",
                    g.len()
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixClass::Super(g) => {
                let bits: Vec<&str> = g.iter().map(|&b| if b { "1" } else { "0" }).collect();
                write!(f, "super({})", bits.join(","))
            }
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for MatrixClass {
    type Err = Error;

    /// Accepts `super(1,0)` as well as the plain names.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("super(").and_then(|r| r.strip_suffix(')')) {
            return MatrixClass::from_name("super", Some(parse_gamma(inner)?));
        }
        MatrixClass::from_name(s, None)
    }
}

pub fn parse_gamma(text: &str) -> Result<Vec<bool>> {
    text.split(',')
        .map(|t| match t.trim() {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(Error::Parse(format!(
                "parity entries are 0 or 1, got `{other}`"
            ))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn names_roundtrip() {
        for name in MatrixClass::NAMES {
            let gamma = (name == "super").then(|| vec![true, false]);
            let c = MatrixClass::from_name(name, gamma).unwrap();
            assert_eq!(c.name(), name);
            assert_eq!(c.to_string().parse::<MatrixClass>().unwrap(), c);
        }
        assert!(MatrixClass::from_name("super", None).is_err());
        assert!(MatrixClass::from_name("cf", Some(vec![true])).is_err());
        assert!("nonsense".parse::<MatrixClass>().is_err());
    }

    #[test]
    fn scheme_conventions() {
        let s = WeightScheme::Multi;
        let q12: Laurent<Rational64> = s.q(1, 2);
        assert_eq!(&q12 * &s.q(2, 1), Laurent::int(1));
        assert_eq!(s.q::<Rational64>(3, 3), Laurent::int(1));
        let sg = WeightScheme::Signs(vec![true, true, false]);
        assert_eq!(sg.q::<Rational64>(1, 2), Laurent::int(-1));
        assert_eq!(sg.q::<Rational64>(1, 1), Laurent::int(1));
        assert_eq!(sg.q::<Rational64>(1, 3), Laurent::int(1));
    }
}
