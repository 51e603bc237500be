use num_bigint::BigInt;
use num_traits::Zero;

use super::SeriesError;
use crate::exact::Counts;

/// Largest `nu_max` accepted by [`compatible_counts`].
pub const MAX_COMPATIBLE_NU: usize = 2000;

/// Counts `pi_lambda(r0; nu)` of pi-shapes with `r0 + 1` components that are
/// compatible with some structure of minimum arc-length `lambda` on `nu`
/// vertices. A shape fits every length from its minimal one upwards, so rows
/// are running sums over `nu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibleTable {
    lambda: usize,
    nu_max: usize,
    /// `rows[nu][r0]`.
    rows: Vec<Vec<BigInt>>,
}

/// Vertex count of the smallest structure realising a pi-shape whose path
/// has size `n` and `u` up steps: two vertices per pair, `lambda - 1` per
/// hairpin.
pub fn minimal_length(lambda: usize, n: usize, u: usize) -> usize {
    2 * (n + 1) + (lambda - 1) * (n - u + 1)
}

/// Tabulate `pi_lambda(r0; nu)` for `nu <= nu_max` by summing path classes
/// `(n, u, r0)` at their minimal length and accumulating over `nu`.
pub fn compatible_counts(lambda: usize, nu_max: usize) -> Result<CompatibleTable, SeriesError> {
    if lambda == 0 {
        return Err(SeriesError::InvalidParameter(
            "lambda must be at least 1".into(),
        ));
    }
    if nu_max > MAX_COMPATIBLE_NU {
        return Err(SeriesError::ResourceLimit {
            what: "nu_max",
            value: nu_max,
            limit: MAX_COMPATIBLE_NU,
        });
    }
    let counts = Counts::new();
    let width = nu_max / (lambda + 1) + 1;
    let mut rows = vec![vec![BigInt::zero(); width]; nu_max + 1];
    for n in 0..=nu_max / 2 {
        for u in 0..=n / 2 {
            let nu = minimal_length(lambda, n, u);
            if nu > nu_max {
                continue;
            }
            if u == 0 {
                rows[nu][n] += 1;
                continue;
            }
            for r0 in 0..=n - 2 * u {
                let c = counts
                    .level0_count(r0 as i64, n as i64, u as i64)
                    .expect("valid level-0 arguments");
                rows[nu][r0] += c;
            }
        }
    }
    for nu in 1..=nu_max {
        let (done, rest) = rows.split_at_mut(nu);
        for (acc, prev) in rest[0].iter_mut().zip(&done[nu - 1]) {
            *acc += prev;
        }
    }
    Ok(CompatibleTable {
        lambda,
        nu_max,
        rows,
    })
}

impl CompatibleTable {
    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn nu_max(&self) -> usize {
        self.nu_max
    }

    /// Counts by `r0` at length `nu`; panics beyond `nu_max`.
    pub fn row(&self, nu: usize) -> &[BigInt] {
        &self.rows[nu]
    }

    pub fn count(&self, r0: usize, nu: usize) -> BigInt {
        self.rows[nu].get(r0).cloned().unwrap_or_default()
    }

    pub fn total(&self, nu: usize) -> BigInt {
        self.rows[nu].iter().sum()
    }

    /// `sum_r0 r0 * pi(r0; nu)`.
    pub fn weighted_sum(&self, nu: usize) -> BigInt {
        self.rows[nu]
            .iter()
            .enumerate()
            .map(|(r0, c)| c * BigInt::from(r0))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{enumerate_paths, PathKind};

    #[test]
    fn lambda_four_examples() {
        let t = compatible_counts(4, 12).unwrap();
        for nu in 0..5 {
            assert_eq!(t.total(nu), BigInt::zero());
        }
        assert_eq!(t.total(5), 1.into());
        assert_eq!(t.total(10), 2.into());
    }

    #[test]
    fn lambda_one_parity() {
        let t = compatible_counts(1, 101).unwrap();
        for k in 0..=50 {
            assert_eq!(t.total(2 * k), t.total(2 * k + 1), "k={k}");
        }
    }

    /// Counts from every 1-Motzkin path of size <= `n_max`, valid for
    /// `nu` below the smallest length a path of size `n_max + 1` reaches.
    fn enumerated(lambda: usize, n_max: usize, nu_max: usize) -> Vec<Vec<u64>> {
        let mut rows = vec![vec![0u64; nu_max + 1]; nu_max + 1];
        for n in 0..=n_max {
            for p in enumerate_paths(n, PathKind::Motzkin1).unwrap() {
                let s = p.stats();
                let nu = minimal_length(lambda, n, s.u);
                for row in rows.iter_mut().skip(nu) {
                    row[s.r0] += 1;
                }
            }
        }
        rows
    }

    #[test]
    fn matches_enumeration() {
        for lambda in 1..=5 {
            let n_max = 10;
            let reach = 2 * (n_max + 2);
            let nu_max = reach.min(60);
            let expected = enumerated(lambda, n_max, nu_max);
            let table = compatible_counts(lambda, nu_max).unwrap();
            for nu in 0..nu_max.min(2 * (n_max + 2) - 1) {
                for r0 in 0..=nu {
                    assert_eq!(table.count(r0, nu), expected[nu][r0].into(), "lambda={lambda} nu={nu} r0={r0}");
                }
            }
        }
    }

    /// Height-indexed transfer count: a `U` step weighs 2, `D` and `H` weigh
    /// `lambda + 1`, plus `lambda + 1` for the closing hairpin.
    fn transfer(lambda: usize, nu_max: usize) -> Vec<Vec<u128>> {
        let step = lambda + 1;
        let h_max = nu_max / 2 + 1;
        let r_max = nu_max + 1;
        let mut f = vec![vec![vec![0u128; r_max + 1]; h_max + 2]; nu_max + 1];
        f[0][0][0] = 1;
        let mut raw = vec![vec![0u128; r_max + 1]; nu_max + 1];
        for w in 0..=nu_max {
            for h in 0..=h_max {
                for r in 0..=r_max {
                    let c = f[w][h][r];
                    if c == 0 {
                        continue;
                    }
                    if h == 0 && w + step <= nu_max {
                        raw[w + step][r] += c;
                    }
                    if w + 2 <= nu_max && h < h_max {
                        f[w + 2][h + 1][r] += c;
                    }
                    if w + step <= nu_max {
                        if h > 0 {
                            f[w + step][h - 1][r] += c;
                        }
                        let r_next = if h == 0 { r + 1 } else { r };
                        if r_next <= r_max {
                            f[w + step][h][r_next] += c;
                        }
                    }
                }
            }
        }
        for nu in 1..=nu_max {
            for r in 0..=r_max {
                raw[nu][r] += raw[nu - 1][r];
            }
        }
        raw
    }

    #[test]
    fn matches_transfer_count() {
        for lambda in 1..=5 {
            let oracle = transfer(lambda, 60);
            let table = compatible_counts(lambda, 60).unwrap();
            for nu in 0..=60 {
                for r0 in 0..=60 {
                    assert_eq!(table.count(r0, nu), oracle[nu][r0].into(), "lambda={lambda} nu={nu} r0={r0}");
                }
            }
        }
    }

    #[test]
    fn guards() {
        assert!(compatible_counts(0, 10).is_err());
        assert!(matches!(
            compatible_counts(2, 2001),
            Err(SeriesError::ResourceLimit { .. })
        ));
    }
}
