//! Dominant singularities of the compatible-shape series and the closed-form
//! asymptotics of level-0 and pi-shape counts.

mod formulas;
mod report;
mod singularity;

use thiserror::Error;

use crate::exact::CountError;
use crate::series::SeriesError;

pub use formulas::{
    asym_level0, asym_pi, asym_pi_expected, ln_asym_level0_total, ln_asym_level0_weighted,
    ln_asym_motzkin, ln_asym_pi_r0, ln_asym_pi_total, ln_asym_pi_weighted,
    pi_distribution_params, ASYM_LEVEL0_EXPECTED,
};
pub use report::{
    asym_count, convergence_report, ln_bigint, ratio_f64, AsymptoticReport, AsymptoticTarget,
    ConvergenceReport, ConvergenceRow, Family,
};
pub use singularity::{
    deflate, dominant_singularity, find_zeta, singular_polynomial, DominantSingularity, Parity,
    MAX_LAMBDA,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticsError {
    #[error("InvalidLambda: lambda must be in 1..={MAX_LAMBDA}, got {0}")]
    InvalidLambda(usize),
    #[error("NoRootFound: no positive root below 1 for lambda = {0}")]
    NoRootFound(usize),
    #[error("LargeRemainder: deflation left a remainder of {0:e}")]
    LargeRemainder(f64),
    #[error("UnsupportedTarget: {0}")]
    UnsupportedTarget(String),
    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
