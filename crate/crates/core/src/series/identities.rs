use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::gf::{g_motzkin2_coeff, g_narayana_coeff};
use super::{compatible_counts, expand_g, GForm, SeriesError, MAX_G_ORDER};
use crate::exact::{Counts, Poly, Var, VarSet};

/// Identities that [`verify_identity`] can check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// Narayana and 2-Motzkin presentations of the island series, per `ell`.
    Ouriden,
    Coker1,
    Coker2,
    Touchard,
    ChuVandermonde,
    ParityM0M1,
    PiParity,
    GFormsAgree,
}

impl Identity {
    pub const ALL: [Identity; 8] = [
        Identity::Ouriden,
        Identity::Coker1,
        Identity::Coker2,
        Identity::Touchard,
        Identity::ChuVandermonde,
        Identity::ParityM0M1,
        Identity::PiParity,
        Identity::GFormsAgree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Ouriden => "ouriden",
            Identity::Coker1 => "coker1",
            Identity::Coker2 => "coker2",
            Identity::Touchard => "touchard",
            Identity::ChuVandermonde => "chu_vandermonde",
            Identity::ParityM0M1 => "parity_m0m1",
            Identity::PiParity => "pi_parity",
            Identity::GFormsAgree => "G_forms_agree",
        }
    }

    /// Range checked when none is given.
    pub fn default_range(self) -> ParamRange {
        let hi = match self {
            Identity::ChuVandermonde => 6,
            Identity::ParityM0M1 => 30,
            Identity::PiParity => 50,
            Identity::GFormsAgree => 10,
            _ => 12,
        };
        let lo = match self {
            Identity::ChuVandermonde | Identity::PiParity => 0,
            _ => 1,
        };
        ParamRange { lo, hi }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, SeriesError> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| SeriesError::UnknownIdentity(s.to_owned()))
    }
}

/// Inclusive parameter range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParamRange {
    pub lo: u32,
    pub hi: u32,
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..={}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceResult {
    pub parameter: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub parameter: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub range: ParamRange,
    pub status: Status,
    pub instances: Vec<InstanceResult>,
    pub counterexample: Option<Counterexample>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

struct Collector {
    instances: Vec<InstanceResult>,
    counterexample: Option<Counterexample>,
}

impl Collector {
    fn new() -> Self {
        Collector {
            instances: Vec::new(),
            counterexample: None,
        }
    }

    fn check<T: PartialEq + fmt::Display>(&mut self, parameter: String, lhs: T, rhs: T) {
        let pass = lhs == rhs;
        if !pass && self.counterexample.is_none() {
            self.counterexample = Some(Counterexample {
                parameter: parameter.clone(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
        self.instances.push(InstanceResult { parameter, pass });
    }

    fn finish(self, identity: Identity, range: ParamRange) -> IdentityReport {
        let status = if self.counterexample.is_none() {
            Status::Pass
        } else {
            Status::Fail
        };
        IdentityReport {
            name: identity.name().to_owned(),
            range,
            status,
            instances: self.instances,
            counterexample: self.counterexample,
        }
    }
}

/// Check an identity by name over its default range.
pub fn verify_identity_by_name(name: &str) -> Result<IdentityReport, SeriesError> {
    let identity: Identity = name.parse()?;
    verify_identity(identity, identity.default_range())
}

/// Check every instance of `identity` with parameter in `range`, each by
/// exact arithmetic on both sides.
pub fn verify_identity(identity: Identity, range: ParamRange) -> Result<IdentityReport, SeriesError> {
    if range.lo > range.hi {
        return Err(SeriesError::InvalidParameter(format!(
            "empty range {range}"
        )));
    }
    let counts = Counts::new();
    let mut out = Collector::new();
    let lo = range.lo.max(1);
    match identity {
        Identity::Ouriden => {
            for ell in lo..=range.hi {
                out.check(
                    format!("ell={ell}"),
                    ouriden_lhs(&counts, ell),
                    ouriden_rhs(&counts, ell),
                );
            }
        }
        Identity::Coker1 => {
            for n in lo..=range.hi {
                let lhs = coker1_lhs(&counts, n);
                let rhs = coker1_rhs(&counts, n);
                out.check(format!("n={n}"), lhs.clone(), rhs.clone());
                let (sl, sr) = specialize_to_coker1(&counts, n);
                let x = Poly::var(x_vars(), Var::X);
                out.check(format!("n={n},from=ouriden,side=lhs"), sl, &x * &lhs);
                out.check(format!("n={n},from=ouriden,side=rhs"), sr, &x * &rhs);
            }
        }
        Identity::Coker2 => {
            for n in lo..=range.hi {
                let lhs = coker2_lhs(&counts, n);
                let rhs = coker2_rhs(&counts, n);
                out.check(format!("n={n}"), lhs.clone(), rhs.clone());
                let (sl, sr) = specialize_to_coker2(&counts, n);
                let factor = coker2_factor(n);
                out.check(format!("n={n},from=ouriden,side=lhs"), sl, &factor * &lhs);
                out.check(format!("n={n},from=ouriden,side=rhs"), sr, &factor * &rhs);
            }
        }
        Identity::Touchard => {
            for n in lo..=range.hi {
                let rhs: BigInt = (0..=(n - 1) / 2)
                    .map(|k| {
                        counts.catalan(k as i64).unwrap()
                            * counts.binomial(n as i64 - 1, 2 * k as i64).unwrap()
                            * (BigInt::one() << (n - 2 * k - 1))
                    })
                    .sum();
                out.check(format!("n={n}"), counts.catalan(n as i64).unwrap(), rhs);
                let at_one = coker1_lhs(&counts, n).eval(Var::X, &BigRational::one());
                let total = Poly::from_int(VarSet::EMPTY, counts.catalan(n as i64).unwrap());
                out.check(format!("n={n},from=coker1"), at_one, total);
            }
        }
        Identity::ChuVandermonde => {
            let hi = range.hi as i64;
            for m in range.lo as i64..=hi {
                for n in range.lo as i64..=hi {
                    for t in 0..=m.min(hi) {
                        let lhs = counts.binomial(m + n + 1, n).unwrap();
                        let rhs: BigInt = (0..=n)
                            .map(|a| {
                                counts.binomial(m + n - (t + a), n - a).unwrap()
                                    * counts.binomial(t + a, a).unwrap()
                            })
                            .sum();
                        out.check(format!("m={m},n={n},t={t}"), lhs, rhs);
                    }
                }
            }
        }
        Identity::ParityM0M1 => {
            for n in lo..=range.hi {
                let n = n as i64;
                let lhs = counts.level0_total(0, n).unwrap() - counts.level0_total(1, n).unwrap();
                let rhs = BigInt::from(if n % 2 == 0 { 1 } else { -1 });
                out.check(format!("n={n}"), lhs, rhs);
            }
        }
        Identity::PiParity => {
            let nu_max = 2 * range.hi as usize + 1;
            for lambda in [1usize, 3, 5] {
                let table = compatible_counts(lambda, nu_max)?;
                for k in range.lo as usize..=range.hi as usize {
                    out.check(
                        format!("lambda={lambda},k={k}"),
                        table.total(2 * k),
                        table.total(2 * k + 1),
                    );
                }
            }
        }
        Identity::GFormsAgree => {
            if range.hi as usize > MAX_G_ORDER {
                return Err(SeriesError::ResourceLimit {
                    what: "order",
                    value: range.hi as usize,
                    limit: MAX_G_ORDER,
                });
            }
            let order = range.hi as usize;
            let narayana = expand_g(order, GForm::Narayana)?;
            let closed = expand_g(order, GForm::Closed)?;
            let motzkin = expand_g(order, GForm::Motzkin2)?;
            for ell in lo as usize..=order {
                out.check(
                    format!("ell={ell},forms=narayana/closed"),
                    narayana.coeff(ell),
                    closed.coeff(ell),
                );
                out.check(
                    format!("ell={ell},forms=narayana/motzkin2"),
                    narayana.coeff(ell),
                    motzkin.coeff(ell),
                );
            }
        }
    }
    Ok(out.finish(identity, range))
}

fn x_vars() -> VarSet {
    VarSet::new(&[Var::X])
}

fn xy_vars() -> VarSet {
    VarSet::new(&[Var::X, Var::Y])
}

/// `sum_h N(ell,h) x^h y^(h+1) (1+y)^(2 ell - 1 - h)`.
pub fn ouriden_lhs(counts: &Counts, ell: u32) -> Poly {
    g_narayana_coeff(counts, ell)
}

/// `x y^2 sum_p M(ell-1,p) (x y (1+y)^3)^p ((1+y)(1+y+xy))^(ell-2p-1)`.
pub fn ouriden_rhs(counts: &Counts, ell: u32) -> Poly {
    let vars = xy_vars();
    let x = Poly::var(vars, Var::X);
    let y = Poly::var(vars, Var::Y);
    let one_y = &Poly::one(vars) + &y;
    let xy = &x * &y;
    let a = &xy * &one_y.pow(3);
    let b = &one_y * &(&one_y + &xy);
    let mut sum = Poly::zero(vars);
    for p in 0..=(ell - 1) / 2 {
        let m = counts
            .motzkin_poly_coeff(ell as i64 - 1, p as i64)
            .unwrap();
        let term = &a.pow(p) * &b.pow(ell - 2 * p - 1);
        sum = &sum + &(&term * &Poly::from_int(vars, m));
    }
    let out = &(&xy * &y) * &sum;
    debug_assert_eq!(out, g_motzkin2_coeff(counts, ell));
    out
}

/// `sum_k N(n,k) x^(k-1)`.
pub fn coker1_lhs(counts: &Counts, n: u32) -> Poly {
    let vars = x_vars();
    (1..=n).fold(Poly::zero(vars), |acc, k| {
        let c = counts.narayana(n as i64, k as i64).unwrap();
        &acc + &Poly::monomial(vars, BigRational::from_integer(c), &[(Var::X, k - 1)])
    })
}

/// `sum_k C_k binom(n-1, 2k) x^k (1+x)^(n-2k-1)`.
pub fn coker1_rhs(counts: &Counts, n: u32) -> Poly {
    let vars = x_vars();
    let x = Poly::var(vars, Var::X);
    let one_x = &Poly::one(vars) + &x;
    (0..=(n - 1) / 2).fold(Poly::zero(vars), |acc, k| {
        let c = counts.catalan(k as i64).unwrap() * counts.binomial(n as i64 - 1, 2 * k as i64).unwrap();
        let term = &x.pow(k) * &one_x.pow(n - 2 * k - 1);
        &acc + &(&term * &Poly::from_int(vars, c))
    })
}

/// `sum_k N(n,k) x^(2(k-1)) (1+x)^(2(n-k))`.
pub fn coker2_lhs(counts: &Counts, n: u32) -> Poly {
    let vars = x_vars();
    let x = Poly::var(vars, Var::X);
    let one_x = &Poly::one(vars) + &x;
    (1..=n).fold(Poly::zero(vars), |acc, k| {
        let c = counts.narayana(n as i64, k as i64).unwrap();
        let term = &x.pow(2 * (k - 1)) * &one_x.pow(2 * (n - k));
        &acc + &(&term * &Poly::from_int(vars, c))
    })
}

/// `sum_k C_k binom(n-1, k-1) x^(k-1) (1+x)^(k-1)`.
pub fn coker2_rhs(counts: &Counts, n: u32) -> Poly {
    let vars = x_vars();
    let x = Poly::var(vars, Var::X);
    let x_one_x = &x * &(&Poly::one(vars) + &x);
    (1..=n).fold(Poly::zero(vars), |acc, k| {
        let c = counts.catalan(k as i64).unwrap() * counts.binomial(n as i64 - 1, k as i64 - 1).unwrap();
        &acc + &(&x_one_x.pow(k - 1) * &Poly::from_int(vars, c))
    })
}

/// Rename `y` to `x` in a polynomial over `y` alone.
fn y_to_x(p: &Poly) -> Poly {
    let vars = x_vars();
    p.terms().fold(Poly::zero(vars), |acc, (powers, c)| {
        let renamed: Vec<(Var, u32)> = powers.into_iter().map(|(_, k)| (Var::X, k)).collect();
        &acc + &Poly::monomial(vars, c.clone(), &renamed)
    })
}

/// Both sides of the island identity under `x -> x/y` (denominators cleared
/// by `y^ell`), reduced to their `y^(ell+1)` coefficient.
fn specialize_to_coker1(counts: &Counts, ell: u32) -> (Poly, Poly) {
    let vars = xy_vars();
    let x = Poly::var(vars, Var::X);
    let y = Poly::var(vars, Var::Y);
    let side = |p: Poly| {
        p.substitute_fraction(Var::X, &x, &y, ell)
            .expect("x-degree at most ell")
            .coefficient_of(Var::Y, ell + 1)
    };
    (side(ouriden_lhs(counts, ell)), side(ouriden_rhs(counts, ell)))
}

/// Both sides of the island identity under `x -> y/(1+y)` (denominators
/// cleared by `(1+y)^ell`), renamed to polynomials in `x`.
fn specialize_to_coker2(counts: &Counts, ell: u32) -> (Poly, Poly) {
    let vars = xy_vars();
    let y = Poly::var(vars, Var::Y);
    let one_y = &Poly::one(vars) + &y;
    let side = |p: Poly| {
        let s = p
            .substitute_fraction(Var::X, &y, &one_y, ell)
            .expect("x-degree at most ell");
        y_to_x(&s.with_vars(VarSet::new(&[Var::Y])))
    };
    (side(ouriden_lhs(counts, ell)), side(ouriden_rhs(counts, ell)))
}

/// `x^3 (1+x)^(ell-1)`, the factor relating the specialised island identity
/// to the second identity.
fn coker2_factor(ell: u32) -> Poly {
    let vars = x_vars();
    let x = Poly::var(vars, Var::X);
    &x.pow(3) * &(&Poly::one(vars) + &x).pow(ell - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suites_pass() {
        for identity in Identity::ALL {
            let range = match identity {
                Identity::Ouriden | Identity::Coker1 | Identity::Coker2 => ParamRange { lo: 1, hi: 7 },
                Identity::GFormsAgree => ParamRange { lo: 1, hi: 6 },
                _ => identity.default_range(),
            };
            let report = verify_identity(identity, range).unwrap();
            assert!(report.passed(), "{identity}: {:?}", report.counterexample);
            assert!(!report.instances.is_empty());
        }
    }

    #[test]
    fn names_round_trip() {
        for identity in Identity::ALL {
            assert_eq!(identity.name().parse::<Identity>().unwrap(), identity);
        }
        assert_eq!(
            "nope".parse::<Identity>(),
            Err(SeriesError::UnknownIdentity("nope".into()))
        );
    }

    #[test]
    fn failing_check_reports_counterexample() {
        let mut c = Collector::new();
        c.check("a=1".into(), 1, 1);
        c.check("a=2".into(), 2, 3);
        c.check("a=3".into(), 4, 5);
        let r = c.finish(Identity::Touchard, ParamRange { lo: 1, hi: 3 });
        assert_eq!(r.status, Status::Fail);
        let ce = r.counterexample.unwrap();
        assert_eq!((ce.parameter.as_str(), ce.lhs.as_str(), ce.rhs.as_str()), ("a=2", "2", "3"));
    }

    #[test]
    fn report_serializes() {
        let r = verify_identity(Identity::ParityM0M1, ParamRange { lo: 1, hi: 3 }).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["name"], "parity_m0m1");
        assert_eq!(json["status"], "pass");
        assert!(json["counterexample"].is_null());
    }
}
