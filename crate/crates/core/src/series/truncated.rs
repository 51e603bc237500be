use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use super::Coefficient;
use crate::exact::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("NonUnitConstantTerm: the constant term is not {expected}")]
    NonUnitConstantTerm { expected: &'static str },
    #[error("DivisibilityFailure: {0}")]
    DivisibilityFailure(String),
    #[error("ResourceLimit: {what} = {value} exceeds the limit {limit}")]
    ResourceLimit {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),
    #[error("UnknownIdentity: {0}")]
    UnknownIdentity(String),
}

/// Power series in one variable known up to and including `var^order`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    var: Var,
    coeffs: Vec<C>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    /// Panics on an empty coefficient list.
    pub fn new(var: Var, coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs order >= 0");
        TruncatedSeries { var, coeffs }
    }

    /// The constant `c`, known to the given order.
    pub fn constant(var: Var, c: C, order: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); order + 1];
        coeffs[0] = c;
        TruncatedSeries { var, coeffs }
    }

    /// `c * var^k`, known to the given order.
    pub fn monomial(var: Var, c: C, k: usize, order: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); order + 1];
        if k <= order {
            coeffs[k] = c;
        }
        TruncatedSeries { var, coeffs }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `var^k`; panics beyond the truncation order.
    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        TruncatedSeries {
            var: self.var,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn map<D: Coefficient>(&self, f: impl FnMut(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries {
            var: self.var,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.map(|a| a.scale(c))
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        self.map(|a| a.mul(c))
    }

    /// Divide by `var^k`; `None` unless the first `k` coefficients vanish.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(TruncatedSeries {
            var: self.var,
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Multiply by `var^k`, keeping the truncation order.
    pub fn shift_up(&self, k: usize) -> Self {
        let zero = self.coeffs[0].zero_like();
        let n = self.coeffs.len();
        let coeffs = (0..n)
            .map(|i| {
                if i < k {
                    zero.clone()
                } else {
                    self.coeffs[i - k].clone()
                }
            })
            .collect();
        TruncatedSeries {
            var: self.var,
            coeffs,
        }
    }

    fn check_var(&self, other: &Self) {
        assert_eq!(self.var, other.var, "series in different variables");
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let inv0 = self.coeffs[0]
            .inverse()
            .ok_or(SeriesError::NonUnitConstantTerm {
                expected: "invertible",
            })?;
        let mut out: Vec<C> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for k in 1..self.coeffs.len() {
            let mut acc = inv0.zero_like();
            for i in 1..=k {
                acc = acc.add(&self.coeffs[i].mul(&out[k - i]));
            }
            out.push(inv0.zero_like().sub(&acc.mul(&inv0)));
        }
        Ok(TruncatedSeries {
            var: self.var,
            coeffs: out,
        })
    }

    /// Square root with constant term 1, coefficient by coefficient from
    /// `r^2 = s`; the result is squared back and compared before returning.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::NonUnitConstantTerm { expected: "1" });
        }
        let half = BigRational::new(1.into(), 2.into());
        let mut out: Vec<C> = Vec::with_capacity(self.coeffs.len());
        out.push(self.coeffs[0].clone());
        for k in 1..self.coeffs.len() {
            let mut acc = self.coeffs[k].clone();
            for i in 1..k {
                acc = acc.sub(&out[i].mul(&out[k - i]));
            }
            out.push(acc.scale(&half));
        }
        let root = TruncatedSeries {
            var: self.var,
            coeffs: out,
        };
        if &(&root * &root) != self {
            return Err(SeriesError::DivisibilityFailure(
                "square root failed to square back".into(),
            ));
        }
        Ok(root)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = TruncatedSeries::constant(self.var, self.coeffs[0].one_like(), self.order());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl TruncatedSeries<BigRational> {
    /// Series with the given integer coefficients.
    pub fn from_ints(var: Var, coeffs: &[i64]) -> Self {
        TruncatedSeries::new(
            var,
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn one(var: Var, order: usize) -> Self {
        TruncatedSeries::constant(var, BigRational::one(), order)
    }
}

impl<C: Coefficient> Add for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;

    fn add(self, rhs: Self) -> TruncatedSeries<C> {
        self.check_var(rhs);
        let n = self.coeffs.len().min(rhs.coeffs.len());
        TruncatedSeries {
            var: self.var,
            coeffs: (0..n)
                .map(|i| self.coeffs[i].add(&rhs.coeffs[i]))
                .collect(),
        }
    }
}

impl<C: Coefficient> Sub for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;

    fn sub(self, rhs: Self) -> TruncatedSeries<C> {
        self.check_var(rhs);
        let n = self.coeffs.len().min(rhs.coeffs.len());
        TruncatedSeries {
            var: self.var,
            coeffs: (0..n)
                .map(|i| self.coeffs[i].sub(&rhs.coeffs[i]))
                .collect(),
        }
    }
}

impl<C: Coefficient> Mul for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;

    fn mul(self, rhs: Self) -> TruncatedSeries<C> {
        self.check_var(rhs);
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| {
                let mut acc = self.coeffs[0].zero_like();
                for i in 0..=k {
                    let (a, b) = (&self.coeffs[i], &rhs.coeffs[k - i]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect();
        TruncatedSeries {
            var: self.var,
            coeffs,
        }
    }
}

impl<C: Coefficient> Neg for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;

    fn neg(self) -> TruncatedSeries<C> {
        self.map(|c| c.zero_like().sub(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Counts, Poly, VarSet};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn sqrt_of_one() {
        let one = TruncatedSeries::one(Var::W, 8);
        assert_eq!(one.sqrt().unwrap(), one);
    }

    #[test]
    fn catalan_from_sqrt() {
        let counts = Counts::new();
        let s = TruncatedSeries::from_ints(Var::W, &[1, -4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        let root = s.sqrt().unwrap();
        let num = &TruncatedSeries::one(Var::W, 11) - &root;
        let c = num.shift_down(1).unwrap().scale(&BigRational::new(1.into(), 2.into()));
        for k in 0..=10 {
            assert_eq!(c.coeff(k), &BigRational::from_integer(counts.catalan(k as i64).unwrap()));
        }
    }

    #[test]
    fn sqrt_rejects_bad_constant() {
        let s = TruncatedSeries::from_ints(Var::W, &[4, 1]);
        assert!(matches!(
            s.sqrt(),
            Err(SeriesError::NonUnitConstantTerm { .. })
        ));
        let z = TruncatedSeries::from_ints(Var::W, &[0, 1]);
        assert!(z.inverse().is_err());
    }

    #[test]
    fn inverse_of_one_minus_w() {
        let s = TruncatedSeries::from_ints(Var::W, &[1, -1, 0, 0, 0, 0]);
        let inv = s.inverse().unwrap();
        assert!(inv.coeffs().iter().all(|c| *c == q(1)));
        assert_eq!(&s * &inv, TruncatedSeries::one(Var::W, 5));
    }

    #[test]
    fn poly_coefficient_sqrt_squares_back() {
        let vars = VarSet::new(&[Var::X, Var::Y]);
        let x = Poly::var(vars, Var::X);
        let y = Poly::var(vars, Var::Y);
        let mut coeffs = vec![Poly::one(vars)];
        for k in 1..=12i64 {
            coeffs.push(&(&x.scale(&q(k)) - &y.pow(k as u32 % 3)) + &(&x * &y));
        }
        let s = TruncatedSeries::new(Var::Z, coeffs);
        let r = s.sqrt().unwrap();
        assert_eq!(&r * &r, s);
        let inv = s.inverse().unwrap();
        assert_eq!(&inv * &s, TruncatedSeries::constant(Var::Z, Poly::one(vars), 12));
    }

    #[test]
    fn shifts() {
        let s = TruncatedSeries::from_ints(Var::W, &[0, 0, 3, 4]);
        assert_eq!(s.shift_down(2).unwrap(), TruncatedSeries::from_ints(Var::W, &[3, 4]));
        assert!(s.shift_down(3).is_none());
        assert_eq!(s.shift_up(1), TruncatedSeries::from_ints(Var::W, &[0, 0, 0, 3]));
    }
}
