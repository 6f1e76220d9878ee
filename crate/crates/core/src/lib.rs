//! Symbolic verification of MacMahon-type identities in the non-commutative
//! matrix algebras `A_m`.

pub mod beta_extension;
pub mod determinants;
pub mod error;
pub mod ks_operators;
pub mod lattice_paths;
pub mod master_engine;
pub mod relations;
pub mod report;
pub mod scalar;
pub mod selftest;
pub mod word_algebra;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact rational scalars used by the executables.
pub type Rational = num_rational::BigRational;
pub type Coefficient = word_algebra::Laurent<Rational>;
pub type Series = word_algebra::NCSeries<Rational>;
pub type Assignment = word_algebra::ParamAssignment<Rational>;
