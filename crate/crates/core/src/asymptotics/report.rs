use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::formulas::{
    asym_level0, asym_pi, ln_asym_level0_total, ln_asym_level0_weighted, ln_asym_motzkin,
    ln_asym_pi_r0, ln_asym_pi_total, ln_asym_pi_weighted,
};
use super::{dominant_singularity, AsymptoticsError};
use crate::exact::Counts;
use crate::series::{compatible_counts, CompatibleTable};

/// Natural logarithm of a positive big integer.
pub fn ln_bigint(n: &BigInt) -> f64 {
    assert!(n.is_positive(), "logarithm of a non-positive integer");
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().expect("64-bit value").ln() + shift as f64 * std::f64::consts::LN_2
}

/// `num / den` as a float, accurate for arbitrarily large operands.
pub fn ratio_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    BigRational::new(num.clone(), den.clone())
        .to_f64()
        .unwrap_or_else(|| (ln_bigint(num) - ln_bigint(den)).exp())
}

/// Exact quantities that have a closed-form asymptotic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "target", rename_all = "snake_case")]
pub enum AsymptoticTarget {
    MotzkinNumber { n: usize },
    Level0Total { r0: usize, n: usize },
    Level0WeightedSum { n: usize },
    PiTotal { lambda: usize, nu: usize },
    PiR0 { lambda: usize, r0: usize, nu: usize },
    PiWeightedSum { lambda: usize, nu: usize },
}

impl AsymptoticTarget {
    pub fn name(&self) -> &'static str {
        match self {
            AsymptoticTarget::MotzkinNumber { .. } => "motzkin_number",
            AsymptoticTarget::Level0Total { .. } => "level0_total",
            AsymptoticTarget::Level0WeightedSum { .. } => "level0_weighted_sum",
            AsymptoticTarget::PiTotal { .. } => "pi_total",
            AsymptoticTarget::PiR0 { .. } => "pi_r0",
            AsymptoticTarget::PiWeightedSum { .. } => "pi_weighted_sum",
        }
    }

    /// Build a target from its name and the parameters it needs.
    pub fn from_name(
        name: &str,
        n: Option<usize>,
        r0: Option<usize>,
        lambda: Option<usize>,
        nu: Option<usize>,
    ) -> Result<Self, AsymptoticsError> {
        let need = |v: Option<usize>, what: &str| {
            v.ok_or_else(|| AsymptoticsError::InvalidParameter(format!("{name} needs {what}")))
        };
        Ok(match name {
            "motzkin_number" => AsymptoticTarget::MotzkinNumber { n: need(n, "n")? },
            "level0_total" => AsymptoticTarget::Level0Total {
                r0: need(r0, "r0")?,
                n: need(n, "n")?,
            },
            "level0_weighted_sum" => AsymptoticTarget::Level0WeightedSum { n: need(n, "n")? },
            "pi_total" => AsymptoticTarget::PiTotal {
                lambda: need(lambda, "lambda")?,
                nu: need(nu, "nu")?,
            },
            "pi_r0" => AsymptoticTarget::PiR0 {
                lambda: need(lambda, "lambda")?,
                r0: need(r0, "r0")?,
                nu: need(nu, "nu")?,
            },
            "pi_weighted_sum" => AsymptoticTarget::PiWeightedSum {
                lambda: need(lambda, "lambda")?,
                nu: need(nu, "nu")?,
            },
            other => return Err(AsymptoticsError::UnsupportedTarget(other.to_owned())),
        })
    }
}

/// An exact count beside its leading-order asymptotic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticReport {
    #[serde(flatten)]
    pub target: AsymptoticTarget,
    #[serde(serialize_with = "serialize_bigint")]
    pub exact: BigInt,
    /// `ln` of the asymptotic value; the value itself may overflow `f64`.
    pub ln_asymptotic: f64,
    pub asymptotic: f64,
    /// `exact / asymptotic`.
    pub ratio: f64,
}

fn serialize_bigint<S: serde::Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

fn report(target: AsymptoticTarget, exact: BigInt, ln_asymptotic: f64) -> AsymptoticReport {
    let ratio = if exact.is_positive() {
        (ln_bigint(&exact) - ln_asymptotic).exp()
    } else {
        0.0
    };
    AsymptoticReport {
        target,
        exact,
        ln_asymptotic,
        asymptotic: ln_asymptotic.exp(),
        ratio,
    }
}

fn table_for(lambda: usize, nu: usize) -> Result<CompatibleTable, AsymptoticsError> {
    Ok(compatible_counts(lambda, nu)?)
}

fn positive(what: &str, v: usize) -> Result<(), AsymptoticsError> {
    if v == 0 {
        return Err(AsymptoticsError::InvalidParameter(format!(
            "{what} must be positive for an asymptotic comparison"
        )));
    }
    Ok(())
}

/// Evaluate the closed-form asymptotic for `target` and pair it with the
/// exact count.
pub fn asym_count(target: AsymptoticTarget) -> Result<AsymptoticReport, AsymptoticsError> {
    let counts = Counts::new();
    match target {
        AsymptoticTarget::MotzkinNumber { n } => {
            positive("n", n)?;
            let exact = counts.motzkin_number(n as i64)?;
            Ok(report(target, exact, ln_asym_motzkin(n)))
        }
        AsymptoticTarget::Level0Total { r0, n } => {
            positive("n", n)?;
            let exact = counts.level0_total(r0 as i64, n as i64)?;
            Ok(report(target, exact, ln_asym_level0_total(r0, n)))
        }
        AsymptoticTarget::Level0WeightedSum { n } => {
            positive("n", n)?;
            let exact = counts.level0_weighted_sum(n as i64)?;
            Ok(report(target, exact, ln_asym_level0_weighted(n)))
        }
        AsymptoticTarget::PiTotal { lambda, nu } => {
            positive("nu", nu)?;
            let sing = dominant_singularity(lambda)?;
            let exact = table_for(lambda, nu)?.total(nu);
            Ok(report(target, exact, ln_asym_pi_total(&sing, nu)))
        }
        AsymptoticTarget::PiR0 { lambda, r0, nu } => {
            positive("nu", nu)?;
            let sing = dominant_singularity(lambda)?;
            let exact = table_for(lambda, nu)?.count(r0, nu);
            Ok(report(target, exact, ln_asym_pi_r0(&sing, r0, nu)))
        }
        AsymptoticTarget::PiWeightedSum { lambda, nu } => {
            positive("nu", nu)?;
            let sing = dominant_singularity(lambda)?;
            let exact = table_for(lambda, nu)?.weighted_sum(nu);
            Ok(report(target, exact, ln_asym_pi_weighted(&sing, nu)))
        }
    }
}

/// Which limit distribution a convergence table compares against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    Level0 { n: usize },
    Pi { lambda: usize, nu: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub r0: usize,
    /// Exact relative frequency of `r0` at the given size.
    pub exact: f64,
    pub asymptotic: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    #[serde(flatten)]
    pub family: Family,
    pub rows: Vec<ConvergenceRow>,
    /// Exact expected `r0` at the given size.
    pub expected_r0: f64,
    /// Limit of the expected `r0`.
    pub asymptotic_expected_r0: f64,
}

impl ConvergenceReport {
    pub fn max_deviation(&self) -> f64 {
        self.rows.iter().fold(0.0, |m, r| m.max(r.deviation))
    }
}

/// Exact `r0`-distribution at a fixed size next to its limit, for
/// `r0 <= r0_max`.
pub fn convergence_report(family: Family, r0_max: usize) -> Result<ConvergenceReport, AsymptoticsError> {
    let counts = Counts::new();
    match family {
        Family::Level0 { n } => {
            let total = counts.motzkin_number(n as i64)?;
            let rows = (0..=r0_max)
                .map(|r0| {
                    let exact = if r0 <= n {
                        ratio_f64(&counts.level0_total(r0 as i64, n as i64)?, &total)
                    } else {
                        0.0
                    };
                    let asymptotic = asym_level0(r0);
                    Ok(ConvergenceRow {
                        r0,
                        exact,
                        asymptotic,
                        deviation: (exact - asymptotic).abs(),
                    })
                })
                .collect::<Result<Vec<_>, AsymptoticsError>>()?;
            let weighted = if n == 0 {
                BigInt::zero()
            } else {
                counts.level0_weighted_sum(n as i64)?
            };
            Ok(ConvergenceReport {
                family,
                rows,
                expected_r0: ratio_f64(&weighted, &total),
                asymptotic_expected_r0: super::formulas::ASYM_LEVEL0_EXPECTED,
            })
        }
        Family::Pi { lambda, nu } => {
            let sing = dominant_singularity(lambda)?;
            let table = table_for(lambda, nu)?;
            let total = table.total(nu);
            if total.is_zero() {
                return Err(AsymptoticsError::InvalidParameter(format!(
                    "no compatible pi-shape of length {nu} for lambda = {lambda}"
                )));
            }
            let rows = (0..=r0_max)
                .map(|r0| {
                    let exact = ratio_f64(&table.count(r0, nu), &total);
                    let asymptotic = asym_pi(&sing, r0);
                    ConvergenceRow {
                        r0,
                        exact,
                        asymptotic,
                        deviation: (exact - asymptotic).abs(),
                    }
                })
                .collect();
            Ok(ConvergenceReport {
                family,
                rows,
                expected_r0: ratio_f64(&table.weighted_sum(nu), &total),
                asymptotic_expected_r0: super::formulas::asym_pi_expected(&sing),
            })
        }
    }
}
