//! Sparse multivariate polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

const NUM_VARS: usize = 6;

/// Formal variables used across the generating functions.
///
/// `X` marks hairpins, `Y` islands, `Z` base pairs or vertices, `V` up
/// steps, `W` path size and `T` level-0 horizontal steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Var {
    X,
    Y,
    Z,
    V,
    W,
    T,
}

impl Var {
    pub const ALL: [Var; NUM_VARS] = [Var::X, Var::Y, Var::Z, Var::V, Var::W, Var::T];

    fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
            Var::V => 'v',
            Var::W => 'w',
            Var::T => 't',
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// The declared variables of a polynomial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct VarSet(u8);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn new(vars: &[Var]) -> Self {
        VarSet(vars.iter().fold(0, |acc, v| acc | (1 << v.index())))
    }

    pub fn contains(self, var: Var) -> bool {
        self.0 & (1 << var.index()) != 0
    }

    pub fn without(self, var: Var) -> Self {
        VarSet(self.0 & !(1 << var.index()))
    }

    pub fn iter(self) -> impl Iterator<Item = Var> {
        Var::ALL.into_iter().filter(move |v| self.contains(*v))
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("degree {found} in {var} exceeds the homogenizing degree {bound}")]
    DegreeExceedsBound { var: Var, found: u32, bound: u32 },
}

type Exponents = [u32; NUM_VARS];

/// A polynomial over a fixed variable set.
///
/// Terms are keyed by exponent vectors in lexicographic order `x > y > z > v
/// > w > t`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: VarSet,
    terms: BTreeMap<Exponents, BigRational>,
}

impl Poly {
    pub fn zero(vars: VarSet) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: VarSet) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn constant(vars: VarSet, c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert([0; NUM_VARS], c);
        }
        p
    }

    pub fn from_int(vars: VarSet, c: impl Into<BigInt>) -> Self {
        Self::constant(vars, BigRational::from_integer(c.into()))
    }

    pub fn var(vars: VarSet, var: Var) -> Self {
        Self::monomial(vars, BigRational::one(), &[(var, 1)])
    }

    /// `coeff * prod var^exp`. Panics on a variable outside `vars`.
    pub fn monomial(vars: VarSet, coeff: BigRational, powers: &[(Var, u32)]) -> Self {
        let mut e = [0; NUM_VARS];
        for &(v, k) in powers {
            assert!(vars.contains(v), "variable {v} not declared in {vars}");
            e[v.index()] += k;
        }
        let mut p = Self::zero(vars);
        if !coeff.is_zero() {
            p.terms.insert(e, coeff);
        }
        p
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value if the polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self
                .terms
                .get(&[0; NUM_VARS])
                .cloned(),
            _ => None,
        }
    }

    /// Coefficient of the monomial `prod var^exp`.
    pub fn coeff(&self, powers: &[(Var, u32)]) -> BigRational {
        let mut e = [0; NUM_VARS];
        for &(v, k) in powers {
            e[v.index()] += k;
        }
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms as `(exponents by variable, coefficient)` over the declared
    /// variables.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<(Var, u32)>, &BigRational)> + '_ {
        self.terms.iter().map(move |(e, c)| {
            let powers = self
                .vars
                .iter()
                .filter(|v| e[v.index()] > 0)
                .map(|v| (v, e[v.index()]))
                .collect();
            (powers, c)
        })
    }

    pub fn degree_in(&self, var: Var) -> u32 {
        self.terms.keys().map(|e| e[var.index()]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.vars);
        }
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.vars);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Re-declare the variable set. Panics if a dropped variable still occurs.
    pub fn with_vars(&self, vars: VarSet) -> Poly {
        for v in self.vars.iter().filter(|v| !vars.contains(*v)) {
            assert_eq!(self.degree_in(v), 0, "variable {v} still occurs");
        }
        Poly {
            vars,
            terms: self.terms.clone(),
        }
    }

    /// Evaluate one variable at a rational value; the variable leaves the set.
    pub fn eval(&self, var: Var, value: &BigRational) -> Poly {
        let mut out = Poly::zero(self.vars.without(var));
        for (e, c) in &self.terms {
            let k = e[var.index()];
            let mut rest = *e;
            rest[var.index()] = 0;
            let term = c * num_traits::pow(value.clone(), k as usize);
            out.add_term(rest, term);
        }
        out
    }

    /// Coefficient of `var^exp`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, var: Var, exp: u32) -> Poly {
        let mut out = Poly::zero(self.vars.without(var));
        for (e, c) in &self.terms {
            if e[var.index()] == exp {
                let mut rest = *e;
                rest[var.index()] = 0;
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Replace `var` by a polynomial over the same variable set.
    pub fn substitute(&self, var: Var, replacement: &Poly) -> Poly {
        assert_eq!(self.vars, replacement.vars, "variable sets differ");
        let mut powers = vec![Poly::one(self.vars)];
        let mut out = Poly::zero(self.vars);
        for (e, c) in &self.terms {
            let k = e[var.index()] as usize;
            while powers.len() <= k {
                let next = powers.last().expect("nonempty") * replacement;
                powers.push(next);
            }
            let mut rest = *e;
            rest[var.index()] = 0;
            let mut mono = Poly::zero(self.vars);
            mono.terms.insert(rest, c.clone());
            out = &out + &(&mono * &powers[k]);
        }
        out
    }

    /// Substitute `var -> numerator / denominator` and clear denominators by
    /// multiplying with `denominator^degree`. Every occurrence of `var` must
    /// have exponent at most `degree`.
    pub fn substitute_fraction(
        &self,
        var: Var,
        numerator: &Poly,
        denominator: &Poly,
        degree: u32,
    ) -> Result<Poly, PolyError> {
        assert_eq!(self.vars, numerator.vars, "variable sets differ");
        assert_eq!(self.vars, denominator.vars, "variable sets differ");
        let found = self.degree_in(var);
        if found > degree {
            return Err(PolyError::DegreeExceedsBound {
                var,
                found,
                bound: degree,
            });
        }
        let num_pows: Vec<Poly> = powers_up_to(numerator, degree);
        let den_pows: Vec<Poly> = powers_up_to(denominator, degree);
        let mut out = Poly::zero(self.vars);
        for (e, c) in &self.terms {
            let k = e[var.index()];
            let mut rest = *e;
            rest[var.index()] = 0;
            let mut mono = Poly::zero(self.vars);
            mono.terms.insert(rest, c.clone());
            let factor = &num_pows[k as usize] * &den_pows[(degree - k) as usize];
            out = &out + &(&mono * &factor);
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. Uses multivariate long division in lex order, which is exact
    /// for a single divisor.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert_eq!(self.vars, divisor.vars, "variable sets differ");
        let (lead_e, lead_c) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quotient = Poly::zero(self.vars);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            let mut qe = [0; NUM_VARS];
            for i in 0..NUM_VARS {
                if e[i] < lead_e[i] {
                    return None;
                }
                qe[i] = e[i] - lead_e[i];
            }
            let qc = c / lead_c;
            let mut step = Poly::zero(self.vars);
            step.terms.insert(qe, qc.clone());
            rem = &rem - &(&step * divisor);
            quotient.add_term(qe, qc);
        }
        Some(quotient)
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }
}

fn powers_up_to(p: &Poly, degree: u32) -> Vec<Poly> {
    let mut out = vec![Poly::one(p.vars)];
    for _ in 0..degree {
        let next = out.last().expect("nonempty") * p;
        out.push(next);
    }
    out
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn add(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars, "variable sets differ");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars, "variable sets differ");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars, "variable sets differ");
        let mut out = Poly::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for i in 0..NUM_VARS {
                    e[i] += eb[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $method:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    /// Terms from highest to lowest in lex order, e.g. `2*x^2*y - y + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for v in Var::ALL {
                match e[v.index()] {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    k => factors.push(format!("{v}^{k}")),
                }
            }
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
