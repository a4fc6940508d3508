//! Exact exterior calculus for exterior differential systems.
//!
//! The crate provides sparse exterior forms with multivariate polynomial
//! coefficients over arbitrary-precision rationals, exact linear algebra
//! (fraction-free rank, modular cross-checks, pinned nullspace sampling),
//! closure and Cauchy-characteristic checks for exterior differential
//! systems, and the Monte Carlo integral-flag computation of Cartan
//! character tables. Built-in model families cover Maxwell and
//! SU(2)-Yang-Mills theories in three to six spacetime dimensions, and a
//! small text language (`.eds` files) describes user-defined systems.
//!
//! There is no floating point anywhere: every coefficient, matrix entry and
//! rank is computed exactly. Core containers are generic over the scalar
//! via the [`scalar::Ring`] / [`scalar::Field`] traits; production code
//! instantiates them at [`Rat`], and the elimination kernel additionally
//! runs over [`scalar::Fp`] for multi-prime rank verification.

pub mod cartan;
pub mod chart;
pub mod dsl;
pub mod eds;
pub mod error;
pub mod evaluated;
pub mod form;
pub mod linalg;
pub mod models;
pub mod poly;
pub mod scalar;

/// Arbitrary-precision rational, the concrete scalar used throughout.
pub type Rat = num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

pub use cartan::{
    compute_characters, compute_characters_multi, run_trial, CharacterOptions, CharacterTable,
    Flag, PointMode,
};
pub use chart::{Chart, Metric, Point, TangentVector};
pub use eds::{Budget, ClosureCertificate, EDSystem, IdealBasis};
pub use error::EdsError;
pub use evaluated::EvaluatedForm;
pub use form::{hodge_dual_2form, Form};
pub use linalg::{rank, rank_mod_p, solve_sample, Matrix, PinConstraint, SolveOutcome};
pub use poly::Poly;

/// Shorthand for building a [`Rat`] from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Shorthand for building a [`Rat`] fraction.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}
