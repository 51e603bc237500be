use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::AsymptoticsError;

/// Largest minimum arc-length accepted by [`find_zeta`].
pub const MAX_LAMBDA: usize = 32;
/// Grid step of the initial sign scan.
const SCAN_DENOMINATOR: i64 = 1000;
/// The final enclosure is at most `1 / ENCLOSURE_DENOMINATOR` wide.
const ENCLOSURE_DENOMINATOR: i64 = 1_000_000_000_000;
/// Largest tolerated remainder after deflation.
const DEFLATION_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// Single dominant root `zeta`.
    Even,
    /// Dominant pair `zeta`, `-zeta`.
    Odd,
}

/// Smallest positive root of `p_lambda(z) = z^(2l+2) - 4 z^(l+3) - 2 z^(l+1) + 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominantSingularity {
    pub lambda: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub lo: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub hi: BigRational,
    pub zeta: f64,
    pub parity: Parity,
    /// `Q(zeta)` for even `lambda`, `R(zeta)` for odd `lambda`, once deflated.
    pub cofactor_at_zeta: Option<f64>,
    /// Coefficients of `Q` or `R`, ascending, once deflated.
    pub cofactor: Vec<f64>,
}

fn serialize_rational<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// Coefficients of `p_lambda`, ascending.
pub fn singular_polynomial(lambda: usize) -> Vec<i64> {
    let mut c = vec![0i64; 2 * lambda + 3];
    c[0] = 1;
    c[lambda + 1] -= 2;
    c[lambda + 3] -= 4;
    c[2 * lambda + 2] += 1;
    c
}

fn eval_exact(coeffs: &[i64], z: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, &c| {
        acc * z + BigRational::from_integer(BigInt::from(c))
    })
}

pub(crate) fn eval_f64(coeffs: &[f64], z: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * z + c)
}

/// Isolate the smallest positive root by an exact sign scan on a grid of step
/// 1/1000 followed by exact bisection.
pub fn find_zeta(lambda: usize) -> Result<DominantSingularity, AsymptoticsError> {
    if lambda == 0 || lambda > MAX_LAMBDA {
        return Err(AsymptoticsError::InvalidLambda(lambda));
    }
    let p = singular_polynomial(lambda);
    let grid = |k: i64| BigRational::new(k.into(), SCAN_DENOMINATOR.into());
    let mut bracket = None;
    for k in 1..=SCAN_DENOMINATOR {
        let v = eval_exact(&p, &grid(k));
        if !v.is_positive() {
            bracket = Some((grid(k - 1), grid(k), v.is_zero()));
            break;
        }
    }
    let (mut lo, mut hi, exact) = bracket.ok_or(AsymptoticsError::NoRootFound(lambda))?;
    if exact {
        lo = hi.clone();
    }
    let width = BigRational::new(1.into(), ENCLOSURE_DENOMINATOR.into());
    let two = BigRational::from_integer(2.into());
    while &hi - &lo > width {
        let mid = (&lo + &hi) / &two;
        let v = eval_exact(&p, &mid);
        if v.is_zero() {
            lo = mid.clone();
            hi = mid;
            break;
        }
        if v.is_positive() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let zeta = ((&lo + &hi) / &two)
        .to_f64()
        .expect("enclosure inside (0, 1)");
    Ok(DominantSingularity {
        lambda,
        lo,
        hi,
        zeta,
        parity: if lambda % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        },
        cofactor_at_zeta: None,
        cofactor: Vec::new(),
    })
}

/// Divide `coeffs` (ascending) by the monic `divisor` (ascending); returns
/// quotient and remainder.
fn divide(coeffs: &[f64], divisor: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let d = divisor.len() - 1;
    let mut rem = coeffs.to_vec();
    let mut quot = vec![0.0; coeffs.len().saturating_sub(d)];
    for i in (0..quot.len()).rev() {
        let c = rem[i + d];
        quot[i] = c;
        for (j, &dj) in divisor.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    rem.truncate(d);
    (quot, rem)
}

/// Factor out `(1 - z/zeta)` (even `lambda`) or `(1 - z^2/zeta^2)` (odd
/// `lambda`) in floating point and evaluate the cofactor at `zeta`.
pub fn deflate(sing: &DominantSingularity) -> Result<DominantSingularity, AsymptoticsError> {
    let p: Vec<f64> = singular_polynomial(sing.lambda)
        .into_iter()
        .map(|c| c as f64)
        .collect();
    let z = sing.zeta;
    let (cofactor, remainder) = match sing.parity {
        // p = (z - zeta) S = (1 - z/zeta) (-zeta S)
        Parity::Even => {
            let (s, r) = divide(&p, &[-z, 1.0]);
            (s.iter().map(|c| -z * c).collect::<Vec<_>>(), r)
        }
        // p = (z^2 - zeta^2) S = (1 - z^2/zeta^2) (-zeta^2 S)
        Parity::Odd => {
            let (s, r) = divide(&p, &[-z * z, 0.0, 1.0]);
            (s.iter().map(|c| -z * z * c).collect::<Vec<_>>(), r)
        }
    };
    let worst = remainder.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    if worst > DEFLATION_TOLERANCE {
        return Err(AsymptoticsError::LargeRemainder(worst));
    }
    let mut out = sing.clone();
    out.cofactor_at_zeta = Some(eval_f64(&cofactor, z));
    out.cofactor = cofactor;
    Ok(out)
}

/// [`find_zeta`] followed by [`deflate`].
pub fn dominant_singularity(lambda: usize) -> Result<DominantSingularity, AsymptoticsError> {
    deflate(&find_zeta(lambda)?)
}

impl DominantSingularity {
    /// `p_lambda` at the float witness.
    pub fn residual(&self) -> f64 {
        let p: Vec<f64> = singular_polynomial(self.lambda)
            .into_iter()
            .map(|c| c as f64)
            .collect();
        eval_f64(&p, self.zeta)
    }

    /// `true` if the exact polynomial has no sign change on the scan grid
    /// below `lo`.
    pub fn certified_smallest(&self) -> bool {
        let p = singular_polynomial(self.lambda);
        (0..SCAN_DENOMINATOR)
            .map(|k| BigRational::new(k.into(), SCAN_DENOMINATOR.into()))
            .take_while(|g| g < &self.lo)
            .all(|g| eval_exact(&p, &g).is_positive())
    }

    pub(crate) fn cofactor_value(&self) -> f64 {
        self.cofactor_at_zeta
            .expect("singularity must be deflated before evaluating asymptotics")
    }
}
