//! Level-2 forms: `S_4, S_6, T_4, T_6`, the Hauptmodul-like quotient
//! `Phi = Delta(2z)/Delta(z)` and its inverse `psi`, the forms `alpha_k`,
//! `theta_k` of negative weight, holomorphic bases of `M_k(2)`, and
//! triangular decomposition.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::level1::{delta, delta_k, delta_power, eisenstein, SIX_WEIGHTS};
use crate::qseries::QSeries;

pub use crate::level1::{mu_exponent, mu_sign};

/// `g(2z)` to precision `precision`, computing `g` at half the precision.
fn at_2z(precision: i64, g: impl FnOnce(i64) -> Result<QSeries>) -> Result<QSeries> {
    let half = (precision + 1).div_euclid(2);
    Ok(g(half)?.v_op(2).truncate(precision))
}

fn combine_2z(w: u32, precision: i64, a: i64, b: i64, d: i64) -> Result<QSeries> {
    let e = eisenstein(w, precision)?;
    let e2 = at_2z(precision, |p| eisenstein(w, p))?;
    (&e.scale_i64(a) + &e2.scale_i64(b)).div_exact(&BigInt::from(d))
}

/// `(E_4(z) - E_4(2z)) / 240`.
pub fn s4(precision: i64) -> Result<QSeries> {
    combine_2z(4, precision, 1, -1, 240)
}

/// `(E_6(z) - E_6(2z)) / -504`.
pub fn s6(precision: i64) -> Result<QSeries> {
    combine_2z(6, precision, 1, -1, -504)
}

/// `(16 E_4(2z) - E_4(z)) / 15`.
pub fn t4(precision: i64) -> Result<QSeries> {
    combine_2z(4, precision, -1, 16, 15)
}

/// `(64 E_6(2z) - E_6(z)) / 63`.
pub fn t6(precision: i64) -> Result<QSeries> {
    combine_2z(6, precision, -1, 64, 63)
}

/// `Phi = Delta(2z) / Delta(z) = q + 24 q^2 + ...`.
pub fn phi(precision: i64) -> QSeries {
    let d2 = at_2z(precision + 1, |p| Ok(delta(p))).expect("delta");
    let inv = delta_power(-1, precision - 2);
    &d2 * &inv
}

/// `psi = 1 / Phi`.
pub fn psi(precision: i64) -> QSeries {
    phi(precision + 2).invert().expect("unit leading coefficient")
}

/// Exponent `i` in the quotient defining `alpha_k` and `theta_k`.
fn quotient_power(k: i64) -> Result<(i64, bool)> {
    if k > 0 || k % 2 != 0 {
        return Err(Error::UnsupportedWeight(k));
    }
    if k.rem_euclid(4) == 2 {
        Ok(((6 - k) / 4, true))
    } else {
        Ok((-k / 4, false))
    }
}

/// `T_6 / T_4^i` when `k = 2 (mod 4)`, `1 / T_4^i` otherwise. Constant term 1.
pub fn alpha(k: i64, precision: i64) -> Result<QSeries> {
    let (i, with_six) = quotient_power(k)?;
    let mut out = t4(precision)?.pow(-i)?;
    if with_six {
        out = &out * &t6(precision)?;
    }
    Ok(out)
}

/// `S_6 / S_4^i` when `k = 2 (mod 4)`, `1 / S_4^i` otherwise.
pub fn theta(k: i64, precision: i64) -> Result<QSeries> {
    let (i, with_six) = quotient_power(k)?;
    if with_six {
        let inv = s4(precision + i)?.pow(-i)?;
        Ok(&inv * &s6(precision + i)?)
    } else {
        s4(precision + i + 1)?.pow(-i)
    }
}

/// `dim M_k(2) = 1 + floor(k / 4)`.
pub fn level2_dim(k: i64) -> usize {
    assert!(k >= 0 && k % 2 == 0, "level2_dim needs an even nonnegative weight");
    1 + (k / 4) as usize
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level2BasisElement {
    pub weight: i64,
    pub index: usize,
    pub series: QSeries,
    pub vanishing_order: u32,
}

/// How a basis element is assembled.
#[derive(Clone, Copy)]
enum Shape {
    /// `(E_4^a E_6^b)(2z)`
    Eis2z(u32, u32),
    DeltaK,
    DeltaK2z,
    /// `E_4^a E_6^b S_4^c S_6^d`
    Mixed(u32, u32, u32, u32),
}

fn shapes(k: i64) -> Result<&'static [Shape]> {
    use Shape::*;
    Ok(match k {
        12 => &[Eis2z(3, 0), DeltaK, DeltaK2z, Mixed(0, 0, 3, 0)],
        16 => &[Eis2z(4, 0), DeltaK, DeltaK2z, Mixed(1, 0, 3, 0), Mixed(0, 0, 4, 0)],
        18 => &[Eis2z(3, 1), DeltaK, DeltaK2z, Mixed(0, 1, 3, 0), Mixed(0, 0, 3, 1)],
        20 => &[
            Eis2z(5, 0),
            DeltaK,
            DeltaK2z,
            Mixed(2, 0, 3, 0),
            Mixed(1, 0, 4, 0),
            Mixed(0, 0, 5, 0),
        ],
        22 => &[
            Eis2z(4, 1),
            DeltaK,
            DeltaK2z,
            Mixed(1, 1, 3, 0),
            Mixed(0, 1, 4, 0),
            Mixed(0, 0, 4, 1),
        ],
        26 => &[
            Eis2z(5, 1),
            DeltaK,
            DeltaK2z,
            Mixed(2, 1, 3, 0),
            Mixed(1, 1, 4, 0),
            Mixed(0, 1, 5, 0),
            Mixed(0, 0, 5, 1),
        ],
        _ => return Err(Error::UnsupportedWeight(k)),
    })
}

fn product(precision: i64, factors: &[(QSeries, u32)]) -> Result<QSeries> {
    let mut acc = QSeries::one(precision);
    for (f, e) in factors {
        if *e > 0 {
            acc = &acc * &f.pow(*e as i64)?;
        }
    }
    Ok(acc)
}

fn build_shape(k: i64, shape: Shape, precision: i64) -> Result<QSeries> {
    let eis = |a: u32, b: u32, p: i64| -> Result<QSeries> {
        product(p, &[(eisenstein(4, p)?, a), (eisenstein(6, p)?, b)])
    };
    match shape {
        Shape::Eis2z(a, b) => at_2z(precision, |p| eis(a, b, p)),
        Shape::DeltaK => delta_k(k, precision),
        Shape::DeltaK2z => at_2z(precision, |p| delta_k(k, p)),
        Shape::Mixed(a, b, c, d) => {
            // S_4 and S_6 have valuation 1, so each extra factor costs nothing.
            let e = eis(a, b, precision)?;
            let s = product(precision, &[(s4(precision)?, c), (s6(precision)?, d)])?;
            Ok((&e * &s).truncate(precision))
        }
    }
}

/// The holomorphic basis of `M_k(2)` for the six weights; the `i`-th element
/// is `q^i + O(q^(i+1))`.
pub fn table1_basis(k: i64, precision: i64) -> Result<Vec<Level2BasisElement>> {
    if !SIX_WEIGHTS.contains(&k) {
        return Err(Error::UnsupportedWeight(k));
    }
    let list = shapes(k)?;
    debug_assert_eq!(list.len(), level2_dim(k));
    list.iter()
        .enumerate()
        .map(|(i, &shape)| {
            Ok(Level2BasisElement {
                weight: k,
                index: i,
                series: build_shape(k, shape, precision)?,
                vanishing_order: i as u32,
            })
        })
        .collect()
}

/// Coefficients `c_i` with `f = sum c_i basis_i` for a basis with strictly
/// increasing valuations and leading coefficients `1` or `-1`.
pub fn decompose_in_basis(f: &QSeries, basis: &[QSeries]) -> Result<Vec<BigInt>> {
    let mut residual = f.clone();
    let mut out = Vec::with_capacity(basis.len());
    let mut last: Option<i64> = None;
    for (index, b) in basis.iter().enumerate() {
        let pivot = b.valuation();
        let lead = match b.leading_coefficient() {
            Some(c) if c.is_one() || (-c).is_one() => c.clone(),
            _ => return Err(Error::BasisNotTriangular { index }),
        };
        if last.is_some_and(|v| v >= pivot) {
            return Err(Error::BasisNotTriangular { index });
        }
        last = Some(pivot);
        if pivot >= residual.precision() {
            return Err(Error::PrecisionExceeded {
                exponent: pivot,
                precision: residual.precision(),
            });
        }
        if !residual.is_zero() && residual.valuation() < pivot {
            return Err(Error::NotInSpan {
                exponent: residual.valuation(),
            });
        }
        let c = residual.coeff(pivot)? * &lead;
        residual.sub_assign_scaled(&c, b);
        out.push(c);
    }
    if !residual.is_zero() {
        return Err(Error::NotInSpan {
            exponent: residual.valuation(),
        });
    }
    Ok(out)
}

/// `sum c_i basis_i`.
pub fn recombine(coeffs: &[BigInt], basis: &[QSeries]) -> QSeries {
    let precision = basis.iter().map(QSeries::precision).min().unwrap_or(0);
    let mut acc = QSeries::zero(precision);
    for (c, b) in coeffs.iter().zip(basis) {
        if !c.is_zero() {
            acc = &acc + &b.scale(c);
        }
    }
    acc
}
