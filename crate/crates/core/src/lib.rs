//! Exact symmetry-gap computations for parabolic geometries.
//!
//! The pipeline runs root system → Chevalley basis → parabolic grading →
//! Kostant's harmonic modules → Tanaka prolongation → canonical curved model.
//! Every module is generic over an exact [`Scalar`] field; the aliases at the
//! crate root fix the default, arbitrary-precision rationals.

pub mod chevalley;
pub mod error;
pub mod homology;
pub mod kostant;
pub mod linalg;
pub mod model;
pub mod parabolic;
pub mod prolong;
pub mod rootsystem;
pub mod scalar;

pub use chevalley::{BasisElement, ChevalleyAlgebra};
pub use error::{LieError, Result};
pub use rootsystem::{cartan_matrix, Family, RootSystem, SimpleType};
pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;
pub type Weight = rootsystem::Weight<Rational>;
pub type AlgebraElement = chevalley::AlgebraElement<Rational>;
