//! Exact computer algebra for the elliptic affine Lie algebra
//! `sl(2, R) ⊕ Ω_R/dR`, `R = C[t, t^-1, u | u^2 = t^3 - 2bt^2 + t]`, and for
//! its free-field realizations.
//!
//! The algebraic layers are generic over the coefficient field
//! ([`Scalar`]); the aliases below fix it to exact rationals, which is what
//! every verification suite uses.

pub mod algebra;
pub mod differential;
pub mod error;
pub mod fock;
pub mod harness;
pub mod heisenberg;
pub mod jk;
pub mod poly;
pub mod pollaczek;
pub mod report;
pub mod realization;
pub mod ring;
pub mod scalar;
pub mod soundness;

pub use error::{Error, Result};
pub use poly::{CoeffPoly, Symbol};
pub use scalar::Scalar;

/// Arbitrary-precision rational, reduced, denominator positive.
pub type Rational = num_rational::BigRational;
/// Polynomial coefficients over exact rationals.
pub type Poly = CoeffPoly<Rational>;
pub type Ring = ring::RingElement<Rational>;
pub type Class = differential::DifferentialClass<Rational>;
