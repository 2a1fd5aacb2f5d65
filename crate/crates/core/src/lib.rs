//! Exact enumerative computations for secant divisors on symmetric products
//! of a very general curve: Brill-Noether type counts, their recomputation in
//! truncated Chow rings, and divisor classes on moduli of pointed curves and
//! on `C_n`.
//!
//! Everything is generic over an exact [`Scalar`]; the aliases below fix it
//! to arbitrary-precision rationals.

pub mod arith;
pub mod bn_counts;
pub mod chow;
pub mod error;
pub mod moduli;
pub mod params;
pub mod symprod;
pub mod verify;

pub use arith::Scalar;
pub use error::{Error, Result};
pub use params::{Degree, EnumerationBounds, ParamTuple, SecantParams};

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;
/// An element of the truncated ring on `C x Pic`.
pub type RingElement2 = chow::ChowElement2<Rational>;
/// An element of the truncated ring on `C x C x Pic`.
pub type RingElement3 = chow::ChowElement3<Rational>;
