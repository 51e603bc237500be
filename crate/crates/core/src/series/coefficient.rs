use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::Poly;

/// Ring operations a truncated series needs from its coefficients.
pub trait Coefficient: Clone + fmt::Debug + PartialEq {
    /// Zero in the same ring (same variable set for polynomials).
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &BigRational) -> Self;
    /// Multiplicative inverse, when it exists in the ring.
    fn inverse(&self) -> Option<Self>;
    /// Exact quotient, `None` if `other` does not divide `self`.
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

impl Coefficient for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }

    fn one_like(&self) -> Self {
        BigRational::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn scale(&self, c: &BigRational) -> Self {
        self * c
    }

    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        (!Zero::is_zero(other)).then(|| self / other)
    }
}

impl Coefficient for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.vars())
    }

    fn one_like(&self) -> Self {
        Poly::one(self.vars())
    }

    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }

    fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| One::is_one(&c))
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn scale(&self, c: &BigRational) -> Self {
        Poly::scale(self, c)
    }

    /// Only nonzero constants are units.
    fn inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        (!Zero::is_zero(&c)).then(|| Poly::constant(self.vars(), c.recip()))
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        Poly::div_exact(self, other)
    }
}
