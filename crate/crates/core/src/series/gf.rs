use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{SeriesError, TruncatedSeries};
use crate::exact::{Counts, Poly, Var, VarSet};

/// Largest z-order accepted by [`expand_g`].
pub const MAX_G_ORDER: usize = 24;
/// Largest w-order accepted by [`expand_level0_gf`].
pub const MAX_LEVEL0_ORDER: usize = 200;

fn q(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn int_poly(vars: VarSet, n: BigInt) -> Poly {
    Poly::from_int(vars, n)
}

/// Motzkin polynomial series `m(v, w)` to order `w^order`, from the closed
/// form with a square root. Coefficients are polynomials in `v`, or plain
/// constants (over no variables) at `v = 1` when `with_v` is false.
pub fn expand_motzkin_gf(order: usize, with_v: bool) -> TruncatedSeries<Poly> {
    let vars = VarSet::new(&[Var::V]);
    let v = Poly::var(vars, Var::V);
    let n = order + 2;
    let mut radicand = vec![Poly::zero(vars); n + 1];
    // (1 - w)^2 - 4 v w^2
    radicand[0] = Poly::one(vars);
    radicand[1] = Poly::from_int(vars, -2);
    radicand[2] = &Poly::one(vars) - &v.scale(&q(4));
    let root = TruncatedSeries::new(Var::W, radicand)
        .sqrt()
        .expect("constant term is one");
    let mut linear = vec![Poly::zero(vars); n + 1];
    linear[0] = Poly::one(vars);
    linear[1] = Poly::from_int(vars, -1);
    let numerator = &TruncatedSeries::new(Var::W, linear) - &root;
    let shifted = numerator
        .shift_down(2)
        .expect("numerator starts at w^2");
    let two_v = v.scale(&q(2));
    let m = shifted.map(|c| c.div_exact(&two_v).expect("numerator divisible by 2v"));
    if with_v {
        m
    } else {
        m.map(|c| c.eval(Var::V, &BigRational::one()))
    }
}

/// The three equivalent presentations of the island-diagram series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GForm {
    Narayana,
    Closed,
    Motzkin2,
}

fn xy_vars() -> VarSet {
    VarSet::new(&[Var::X, Var::Y])
}

/// `G(x, y, z)` to order `z^order` over polynomials in `x`, `y`; the
/// coefficient of `x^h y^I z^ell` counts island diagrams with `h` hairpins,
/// `I` islands and `ell` base pairs.
pub fn expand_g(order: usize, form: GForm) -> Result<TruncatedSeries<Poly>, SeriesError> {
    if order > MAX_G_ORDER {
        return Err(SeriesError::ResourceLimit {
            what: "order",
            value: order,
            limit: MAX_G_ORDER,
        });
    }
    match form {
        GForm::Narayana => Ok(g_narayana(order)),
        GForm::Closed => g_closed(order),
        GForm::Motzkin2 => Ok(g_motzkin2(order)),
    }
}

/// Coefficient of `z^ell` in the Narayana form.
pub(crate) fn g_narayana_coeff(counts: &Counts, ell: u32) -> Poly {
    let vars = xy_vars();
    let x = Poly::var(vars, Var::X);
    let y = Poly::var(vars, Var::Y);
    let one_y = &Poly::one(vars) + &y;
    let mut out = Poly::zero(vars);
    for h in 1..=ell {
        let n = counts
            .narayana(ell as i64, h as i64)
            .expect("valid Narayana arguments");
        let term = &(&x.pow(h) * &y.pow(h + 1)) * &one_y.pow(2 * ell - 1 - h);
        out = &out + &(&term * &int_poly(vars, n));
    }
    out
}

/// Coefficient of `z^ell` in the 2-Motzkin form.
pub(crate) fn g_motzkin2_coeff(counts: &Counts, ell: u32) -> Poly {
    let vars = xy_vars();
    if ell == 0 {
        return Poly::zero(vars);
    }
    let x = Poly::var(vars, Var::X);
    let y = Poly::var(vars, Var::Y);
    let one_y = &Poly::one(vars) + &y;
    let xy = &x * &y;
    let up_down = &one_y.pow(2) * &(&xy * &one_y);
    let level = &one_y.pow(2) + &(&xy * &one_y);
    let mut out = Poly::zero(vars);
    for u in 0..=(ell - 1) / 2 {
        let m = counts
            .motzkin_poly_coeff((ell - 1) as i64, u as i64)
            .expect("valid Motzkin arguments");
        let term = &up_down.pow(u) * &level.pow(ell - 1 - 2 * u);
        out = &out + &(&term * &int_poly(vars, m));
    }
    &(&xy * &y) * &out
}

fn g_narayana(order: usize) -> TruncatedSeries<Poly> {
    let counts = Counts::new();
    let coeffs = (0..=order as u32)
        .map(|ell| g_narayana_coeff(&counts, ell))
        .collect();
    TruncatedSeries::new(Var::Z, coeffs)
}

fn g_motzkin2(order: usize) -> TruncatedSeries<Poly> {
    let counts = Counts::new();
    let coeffs = (0..=order as u32)
        .map(|ell| g_motzkin2_coeff(&counts, ell))
        .collect();
    TruncatedSeries::new(Var::Z, coeffs)
}

/// Closed form: `G = y * N(z) / (2 z (1+y)^3)` with
/// `N = 1 - z(1+y)(1+y+xy) - sqrt(1 - 2z(1+y)(1+y+xy) + z^2 (1+y)^2 (1+y-xy)^2)`.
fn g_closed(order: usize) -> Result<TruncatedSeries<Poly>, SeriesError> {
    let vars = xy_vars();
    let x = Poly::var(vars, Var::X);
    let y = Poly::var(vars, Var::Y);
    let one = Poly::one(vars);
    let one_y = &one + &y;
    let xy = &x * &y;
    let a1 = &one_y * &(&one_y + &xy);
    let a2 = &one_y.pow(2) * &(&one_y - &xy).pow(2);
    let n = order + 1;
    let mut radicand = vec![Poly::zero(vars); n + 1];
    radicand[0] = one.clone();
    radicand[1] = a1.scale(&q(-2));
    radicand[2] = a2;
    let root = TruncatedSeries::new(Var::Z, radicand).sqrt()?;
    let mut linear = vec![Poly::zero(vars); n + 1];
    linear[0] = one.clone();
    linear[1] = -&a1;
    let numerator = &TruncatedSeries::new(Var::Z, linear) - &root;
    let shifted = numerator.shift_down(1).ok_or_else(|| {
        SeriesError::DivisibilityFailure("closed-form numerator has a constant term".into())
    })?;
    let denominator = one_y.pow(3).scale(&q(2));
    let coeffs = shifted
        .coeffs()
        .iter()
        .enumerate()
        .map(|(ell, c)| {
            (&y * c).div_exact(&denominator).ok_or_else(|| {
                SeriesError::DivisibilityFailure(format!(
                    "coefficient of z^{ell} not divisible by 2(1+y)^3"
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TruncatedSeries::new(Var::Z, coeffs))
}

/// `A(1, w) = 1 / (1 - w^2 m(1, w))`: paths that never use a level-0
/// horizontal step.
pub fn expand_level0_sequence_gf(order: usize) -> TruncatedSeries<BigRational> {
    let m = expand_motzkin_gf(order, false).map(|c| c.as_constant().expect("constant"));
    let w2m = m.shift_up(2);
    (&TruncatedSeries::one(Var::W, order) - &w2m)
        .inverse()
        .expect("constant term is one")
}

/// `m(t; 1, w) = A / (1 - t w A)` to order `w^order`, coefficients
/// polynomials in `t`.
pub fn expand_level0_gf(order: usize) -> Result<TruncatedSeries<Poly>, SeriesError> {
    if order > MAX_LEVEL0_ORDER {
        return Err(SeriesError::ResourceLimit {
            what: "order",
            value: order,
            limit: MAX_LEVEL0_ORDER,
        });
    }
    let vars = VarSet::new(&[Var::T]);
    let t = Poly::var(vars, Var::T);
    let a = expand_level0_sequence_gf(order).map(|c| Poly::constant(vars, c.clone()));
    let twa = a.shift_up(1).mul_coeff(&t);
    let one = TruncatedSeries::constant(Var::W, Poly::one(vars), order);
    let denom = (&one - &twa).inverse()?;
    Ok(&a * &denom)
}

/// `m(t; 1, w)` at a fixed rational `t`, with no order limit.
pub fn expand_level0_gf_at(order: usize, t: &BigRational) -> TruncatedSeries<BigRational> {
    let a = expand_level0_sequence_gf(order);
    let twa = a.shift_up(1).scale(t);
    let denom = (&TruncatedSeries::one(Var::W, order) - &twa)
        .inverse()
        .expect("constant term is one");
    &a * &denom
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(c: &BigRational) -> BigInt {
        assert!(c.is_integer(), "{c} is not an integer");
        c.to_integer()
    }

    #[test]
    fn motzkin_examples() {
        let counts = Counts::new();
        let m1 = expand_motzkin_gf(12, false);
        assert_eq!(int(&m1.coeff(0).as_constant().unwrap()), 1.into());
        assert_eq!(int(&m1.coeff(4).as_constant().unwrap()), 9.into());
        let mv = expand_motzkin_gf(12, true);
        assert_eq!(int(&mv.coeff(7).coeff(&[(Var::V, 2)])), 70.into());
        for n in 0..=12u32 {
            for k in 0..=n / 2 {
                assert_eq!(
                    int(&mv.coeff(n as usize).coeff(&[(Var::V, k)])),
                    counts.motzkin_poly_coeff(n as i64, k as i64).unwrap()
                );
            }
        }
    }

    #[test]
    fn g_forms_agree_small() {
        let a = expand_g(6, GForm::Narayana).unwrap();
        let b = expand_g(6, GForm::Closed).unwrap();
        let c = expand_g(6, GForm::Motzkin2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert!(a.coeff(0).is_zero());
        let xy2 = Poly::monomial(xy_vars(), q(1), &[(Var::X, 1), (Var::Y, 2)]);
        assert_eq!(a.coeff(1), &xy2);
        assert_eq!(int(&a.coeff(2).coeff(&[(Var::X, 1), (Var::Y, 3)])), 2.into());
    }

    #[test]
    fn g_matches_island_count() {
        let counts = Counts::new();
        let g = expand_g(7, GForm::Closed).unwrap();
        for ell in 1..=7u32 {
            assert!(g.coeff(ell as usize).coefficient_of(Var::X, 0).is_zero());
            for h in 1..=ell + 1 {
                for i in 0..=2 * ell + 1 {
                    let c = g.coeff(ell as usize).coeff(&[(Var::X, h), (Var::Y, i)]);
                    let expected = counts.island_count(h as i64, i as i64, ell as i64).unwrap();
                    assert_eq!(int(&c), expected, "h={h} I={i} ell={ell}");
                }
            }
        }
    }

    #[test]
    fn g_order_guard() {
        assert!(matches!(
            expand_g(25, GForm::Narayana),
            Err(SeriesError::ResourceLimit { limit: 24, .. })
        ));
    }

    #[test]
    fn level0_examples() {
        let m = expand_level0_gf(12).unwrap();
        let c4 = m.coeff(4);
        assert_eq!(int(&c4.coeff(&[(Var::T, 4)])), 1.into());
        assert_eq!(int(&c4.coeff(&[])), 3.into());
        assert_eq!(int(&c4.coeff(&[(Var::T, 1)])), 2.into());
        let counts = Counts::new();
        for n in 0..=12u32 {
            for r0 in 0..=n {
                assert_eq!(
                    int(&m.coeff(n as usize).coeff(&[(Var::T, r0)])),
                    counts.level0_total(r0 as i64, n as i64).unwrap()
                );
            }
        }
    }

    #[test]
    fn level0_at_one_is_motzkin() {
        let m = expand_motzkin_gf(30, false);
        let at_one = expand_level0_gf_at(30, &q(1));
        for n in 0..=30 {
            assert_eq!(&m.coeff(n).as_constant().unwrap(), at_one.coeff(n));
        }
    }

    #[test]
    fn sequence_times_complement_is_one() {
        let order = 20;
        let a = expand_level0_sequence_gf(order);
        let m = expand_motzkin_gf(order, false).map(|c| c.as_constant().unwrap());
        let complement = &TruncatedSeries::one(Var::W, order) - &m.shift_up(2);
        assert_eq!(&a * &complement, TruncatedSeries::one(Var::W, order));
    }
}
