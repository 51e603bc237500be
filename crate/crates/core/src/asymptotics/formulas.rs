//! Closed-form limits and leading-order asymptotics, evaluated in log space
//! so that large sizes do not overflow.
//!
//! `Gamma(-1/2) = -2 sqrt(pi)`; the leading minus signs of the singular
//! expansions cancel against it, so every expression below is positive.

use std::f64::consts::{LN_2, PI};

use super::{DominantSingularity, Parity};

/// `lim M(r0; n) / M_n = (r0 + 1) / 2^(r0 + 2)`.
pub fn asym_level0(r0: usize) -> f64 {
    (r0 as f64 + 1.0) / 2f64.powi(r0 as i32 + 2)
}

/// Limit of the expected `r0` among Motzkin paths.
pub const ASYM_LEVEL0_EXPECTED: f64 = 2.0;

/// `(a, b)` with `a = zeta^2 / (1 + zeta^2)` and
/// `b = (1 + zeta^(lambda+1)) / (2 (1 + zeta^2))`.
pub fn pi_distribution_params(sing: &DominantSingularity) -> (f64, f64) {
    let z = sing.zeta;
    let a = z * z / (1.0 + z * z);
    let b = (1.0 + z.powi(sing.lambda as i32 + 1)) / (2.0 * (1.0 + z * z));
    (a, b)
}

/// `lim pi(r0; nu) / pi(nu) = (r0 + 1) a b^r0`.
pub fn asym_pi(sing: &DominantSingularity, r0: usize) -> f64 {
    let (a, b) = pi_distribution_params(sing);
    (r0 as f64 + 1.0) * a * b.powi(r0 as i32)
}

/// Limit of the expected `r0`: `(1 - zeta^(lambda+1)) / zeta^2`.
pub fn asym_pi_expected(sing: &DominantSingularity) -> f64 {
    let z = sing.zeta;
    (1.0 - z.powi(sing.lambda as i32 + 1)) / (z * z)
}

/// `ln(n^(-3/2) / (2 sqrt(pi)))`, the transfer factor with the sign of
/// `Gamma(-1/2)` absorbed.
fn ln_transfer(n: usize) -> f64 {
    -1.5 * (n as f64).ln() - (2.0 * PI.sqrt()).ln()
}

/// `ln M_n ~ ln(3^(n+3/2) / (2 sqrt(pi) n^(3/2)))`.
pub fn ln_asym_motzkin(n: usize) -> f64 {
    (n as f64 + 1.5) * 3f64.ln() + ln_transfer(n)
}

/// `sum_r0 r0 M(r0; n) ~ 3^(n+3/2) / (sqrt(pi) n^(3/2))`.
pub fn ln_asym_level0_weighted(n: usize) -> f64 {
    ln_asym_motzkin(n) + LN_2
}

/// `M(r0; n) ~ (r0 + 1) 3^(n+3/2) / (2^(r0+3) sqrt(pi) n^(3/2))`.
pub fn ln_asym_level0_total(r0: usize, n: usize) -> f64 {
    ln_asym_motzkin(n) + (r0 as f64 + 1.0).ln() - (r0 as f64 + 2.0) * LN_2
}

/// Constant carried by the dominant singularities: `sqrt(Q(zeta)) / (1 -
/// zeta)` for even `lambda`; for odd `lambda` the two contributions at
/// `zeta` and `-zeta` summed, `sqrt(2 R(zeta)) (1/(1-zeta) + (-1)^nu/(1+zeta))`.
fn amplitude(sing: &DominantSingularity, nu: usize) -> f64 {
    let z = sing.zeta;
    let c = sing.cofactor_value();
    match sing.parity {
        Parity::Even => c.sqrt() / (1.0 - z),
        Parity::Odd => {
            let sign = if nu % 2 == 0 { 1.0 } else { -1.0 };
            (2.0 * c).sqrt() * (1.0 / (1.0 - z) + sign / (1.0 + z))
        }
    }
}

/// `pi(nu) ~ zeta^-(nu+2) amplitude / 2 * nu^(-3/2) / (2 sqrt(pi))`.
pub fn ln_asym_pi_total(sing: &DominantSingularity, nu: usize) -> f64 {
    -(nu as f64 + 2.0) * sing.zeta.ln() + (amplitude(sing, nu) / 2.0).ln() + ln_transfer(nu)
}

/// `sum_r0 r0 pi(r0; nu) ~ zeta^-(nu+4) (1 - zeta^(lambda+1)) amplitude / 2 * ...`.
pub fn ln_asym_pi_weighted(sing: &DominantSingularity, nu: usize) -> f64 {
    let z = sing.zeta;
    -(nu as f64 + 4.0) * z.ln()
        + (1.0 - z.powi(sing.lambda as i32 + 1)).ln()
        + (amplitude(sing, nu) / 2.0).ln()
        + ln_transfer(nu)
}

/// `pi(r0; nu) ~ zeta^-nu (r0+1) (1 + zeta^(lambda+1))^r0 amplitude /
/// (2^(r0+1) (1 + zeta^2)^(r0+1)) * ...`.
pub fn ln_asym_pi_r0(sing: &DominantSingularity, r0: usize, nu: usize) -> f64 {
    let z = sing.zeta;
    let r = r0 as f64;
    -(nu as f64) * z.ln()
        + (r + 1.0).ln()
        + r * (1.0 + z.powi(sing.lambda as i32 + 1)).ln()
        + amplitude(sing, nu).ln()
        - (r + 1.0) * LN_2
        - (r + 1.0) * (1.0 + z * z).ln()
        + ln_transfer(nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::dominant_singularity;

    #[test]
    fn level0_limits() {
        assert_eq!(asym_level0(0), 0.25);
        assert_eq!(asym_level0(1), 0.25);
        let total: f64 = (0..200).map(asym_level0).sum();
        assert!((total - 1.0).abs() < 1e-12);
        let mean: f64 = (0..200).map(|r| r as f64 * asym_level0(r)).sum();
        assert!((mean - ASYM_LEVEL0_EXPECTED).abs() < 1e-12);
    }

    #[test]
    fn lambda_four_constants() {
        let s = dominant_singularity(4).unwrap();
        let (a, b) = pi_distribution_params(&s);
        assert!((a - 0.3639).abs() < 5e-4, "a={a}");
        assert!((b - 0.3968).abs() < 5e-4, "b={b}");
        assert!((asym_pi_expected(&s) - 1.316).abs() < 2e-3);
    }

    #[test]
    fn pi_limits_normalize() {
        for lambda in 1..=8 {
            let s = dominant_singularity(lambda).unwrap();
            let total: f64 = (0..2000).map(|r| asym_pi(&s, r)).sum();
            assert!((total - 1.0).abs() < 1e-9, "lambda={lambda} total={total}");
            let (a, b) = pi_distribution_params(&s);
            assert!((a - (1.0 - b).powi(2)).abs() < 1e-9);
            let from_b = 2.0 * b / (1.0 - b);
            assert!((from_b - asym_pi_expected(&s)).abs() < 1e-6, "lambda={lambda}");
        }
    }

    #[test]
    fn r0_terms_sum_to_total() {
        for lambda in [3, 4] {
            let s = dominant_singularity(lambda).unwrap();
            for nu in [200, 201] {
                let total = ln_asym_pi_total(&s, nu).exp();
                let summed: f64 = (0..400).map(|r| ln_asym_pi_r0(&s, r, nu).exp()).sum();
                assert!((summed / total - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn odd_lambda_even_odd_nu_agree() {
        let s = dominant_singularity(3).unwrap();
        for k in [50, 100] {
            let even = ln_asym_pi_total(&s, 2 * k);
            let odd = ln_asym_pi_total(&s, 2 * k + 1);
            // Only the transfer factor nu^(-3/2) differs.
            let expected = -1.5 * ((2 * k) as f64 / (2 * k + 1) as f64).ln();
            assert!(((even - odd) - expected).abs() < 1e-9);
        }
    }
}
