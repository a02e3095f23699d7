//! Symbolic calculator for binary quadratic operads.
//!
//! The linear algebra layer is generic over an exact field; the operad layer
//! works over the rationals [`Q`].

pub mod cochain;
pub mod error;
pub mod free_operad;
pub mod functors;
pub mod koszul;
pub mod linalg;
pub mod morphisms;
pub mod presentation;
pub mod recognize;
pub mod verify;
pub mod zoo;

pub use error::{Error, Result};

use num_bigint::BigInt;
use num_rational::BigRational;

/// The coefficient field of every operadic computation.
pub type Q = BigRational;

/// The integer `n` as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}
