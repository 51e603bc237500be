//! Arbitrary-precision counting functions and sparse polynomials.

mod counts;
mod poly;

pub use counts::{CountError, Counts};
pub use poly::{Poly, PolyError, Var, VarSet};

/// Exact signed integer.
pub type ExactInt = num_bigint::BigInt;
/// Exact rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;
