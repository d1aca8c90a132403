//! Truncated Laurent series in `q` with arbitrary-precision integer
//! coefficients.
//!
//! A [`QSeries`] stores the coefficients of `q^v, q^(v+1), ..., q^(P-1)`
//! together with the precision `P`: the value is only known modulo
//! `O(q^P)`. Every operation propagates the largest precision it can
//! guarantee, and [`QSeries::coeff`] refuses to read at or beyond it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::par;

/// 2-adic valuation of an integer; zero has infinite valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn at_least(self, e: u64) -> bool {
        match self {
            Valuation::Finite(v) => v >= e,
            Valuation::Infinite => true,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Largest `e` with `2^e | x`, or [`Valuation::Infinite`] for `x = 0`.
pub fn two_adic_valuation(x: &BigInt) -> Valuation {
    match x.trailing_zeros() {
        Some(e) => Valuation::Finite(e),
        None => Valuation::Infinite,
    }
}

fn is_unit(c: &BigInt) -> bool {
    c.is_one() || (-c).is_one()
}

/// Truncated Laurent series `sum c_i q^(valuation + i) + O(q^precision)`.
///
/// Invariants: either `coeffs` is empty (the zero series, whose valuation is
/// conventionally its precision) or `coeffs[0] != 0` and
/// `coeffs.len() == precision - valuation`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    valuation: i64,
    coeffs: Vec<BigInt>,
    precision: i64,
}

impl QSeries {
    /// Builds a series from coefficients starting at `q^valuation`.
    /// Coefficients at or beyond the precision are dropped, missing ones up
    /// to the precision are taken to be zero.
    pub fn new(valuation: i64, mut coeffs: Vec<BigInt>, precision: i64) -> Self {
        let len = (precision - valuation).max(0) as usize;
        coeffs.resize(len, BigInt::zero());
        let mut s = QSeries {
            valuation,
            coeffs,
            precision,
        };
        s.normalize();
        s
    }

    /// Series with valuation 0 built from small integer coefficients.
    pub fn from_i64s(coeffs: &[i64], precision: i64) -> Self {
        Self::new(0, coeffs.iter().map(|&c| BigInt::from(c)).collect(), precision)
    }

    /// Series whose coefficient of `q^e` is `f(e)` for `valuation <= e < precision`.
    pub fn from_fn(valuation: i64, precision: i64, f: impl FnMut(i64) -> BigInt) -> Self {
        let coeffs = (valuation..precision).map(f).collect();
        Self::new(valuation, coeffs, precision)
    }

    pub fn zero(precision: i64) -> Self {
        QSeries {
            valuation: precision,
            coeffs: Vec::new(),
            precision,
        }
    }

    pub fn one(precision: i64) -> Self {
        Self::monomial(BigInt::one(), 0, precision)
    }

    /// `c * q^e + O(q^precision)`.
    pub fn monomial(c: BigInt, e: i64, precision: i64) -> Self {
        if e >= precision {
            return Self::zero(precision);
        }
        let mut coeffs = vec![BigInt::zero(); (precision - e) as usize];
        coeffs[0] = c;
        Self::new(e, coeffs, precision)
    }

    fn normalize(&mut self) {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            None => {
                self.coeffs.clear();
                self.valuation = self.precision;
            }
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.valuation += k as i64;
            }
        }
    }

    /// Lowest exponent with a nonzero coefficient (the precision for zero).
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    /// Number of known coefficients past the leading term, `precision - valuation`.
    pub fn relative_precision(&self) -> i64 {
        self.precision - self.valuation
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.first()
    }

    /// Coefficient of `q^e`; zero below the valuation.
    pub fn coeff(&self, e: i64) -> Result<BigInt> {
        if e >= self.precision {
            return Err(Error::PrecisionExceeded {
                exponent: e,
                precision: self.precision,
            });
        }
        Ok(self.get(e).cloned().unwrap_or_default())
    }

    fn get(&self, e: i64) -> Option<&BigInt> {
        if e < self.valuation {
            return None;
        }
        self.coeffs.get((e - self.valuation) as usize)
    }

    /// Nonzero terms as `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        let v = self.valuation;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (v + i as i64, c))
    }

    /// Forgets every term at or beyond `precision`.
    pub fn truncate(&self, precision: i64) -> Self {
        if precision >= self.precision {
            return self.clone();
        }
        let keep = (precision - self.valuation).max(0) as usize;
        Self::new(self.valuation, self.coeffs[..keep.min(self.coeffs.len())].to_vec(), precision)
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        QSeries {
            valuation: self.valuation + e,
            coeffs: self.coeffs.clone(),
            precision: self.precision + e,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.precision);
        }
        QSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            precision: self.precision,
        }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&BigInt::from(c))
    }

    /// Divides every coefficient by `d`, failing unless each division is exact.
    pub fn div_exact(&self, d: &BigInt) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let (quo, rem) = c.div_rem(d);
            if !rem.is_zero() {
                return Err(Error::ExactDivisionFailure {
                    exponent: self.valuation + i as i64,
                    divisor: d.clone(),
                });
            }
            coeffs.push(quo);
        }
        Ok(Self::new(self.valuation, coeffs, self.precision))
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        let precision = self.precision.min(other.precision);
        let valuation = self.valuation.min(other.valuation).min(precision);
        let coeffs = (valuation..precision)
            .map(|e| {
                let a = self.get(e);
                let b = other.get(e);
                match (a, b, negate_other) {
                    (Some(a), Some(b), false) => a + b,
                    (Some(a), Some(b), true) => a - b,
                    (Some(a), None, _) => a.clone(),
                    (None, Some(b), false) => b.clone(),
                    (None, Some(b), true) => -b,
                    (None, None, _) => BigInt::zero(),
                }
            })
            .collect();
        Self::new(valuation, coeffs, precision)
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let valuation = self.valuation + other.valuation;
        let precision = (self.precision + other.valuation).min(other.precision + self.valuation);
        if self.is_zero() || other.is_zero() {
            return Self::zero(precision);
        }
        let len = (precision - valuation) as usize;
        // Iterate over the sparser operand's nonzero entries.
        let (sparse, dense) = if nonzero_count(&self.coeffs) <= nonzero_count(&other.coeffs) {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let coeffs = cauchy(sparse, dense, len);
        Self::new(valuation, coeffs, precision)
    }

    /// Multiplicative inverse; the leading coefficient must be `1` or `-1`.
    pub fn invert(&self) -> Result<Self> {
        let c0 = match self.leading_coefficient() {
            Some(c) if is_unit(c) => c.clone(),
            Some(c) => return Err(Error::NonUnitLeadingCoefficient(c.clone())),
            None => return Err(Error::NonUnitLeadingCoefficient(BigInt::zero())),
        };
        let a = &self.coeffs;
        let len = a.len();
        let nz: Vec<(usize, &BigInt)> = a
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut b: Vec<BigInt> = Vec::with_capacity(len);
        b.push(c0.clone());
        // c0 * b_n = -sum_{i>=1} a_i b_{n-i}, and c0 is its own inverse.
        for n in 1..len {
            let mut acc = BigInt::zero();
            for &(i, ai) in &nz {
                if i > n {
                    break;
                }
                let bj = &b[n - i];
                if !bj.is_zero() {
                    acc += ai * bj;
                }
            }
            b.push(if c0.is_one() { -acc } else { acc });
        }
        Ok(Self::new(-self.valuation, b, -self.valuation + len as i64))
    }

    /// Integer power. Negative exponents need a unit leading coefficient.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let rel = self.relative_precision();
        if n == 0 {
            return Ok(Self::one(rel));
        }
        let Some(c0) = self.leading_coefficient() else {
            if n < 0 {
                return Err(Error::NonUnitLeadingCoefficient(BigInt::zero()));
            }
            return Ok(Self::zero(n * self.precision));
        };
        if n == 1 {
            return Ok(self.clone());
        }
        if !is_unit(c0) {
            if n < 0 {
                return Err(Error::NonUnitLeadingCoefficient(c0.clone()));
            }
            return Ok(self.pow_by_squaring(n as u64));
        }
        // (c0 q^v h)^n with h = 1 + ..., via the J.C.P. Miller recurrence
        // g_m = (1/m) sum_{k=1}^m ((n+1)k - m) h_k g_{m-k}.
        let negate = !c0.is_one();
        let h: Vec<BigInt> = if negate {
            self.coeffs.iter().map(|c| -c).collect()
        } else {
            self.coeffs.clone()
        };
        let len = h.len();
        let nz: Vec<(usize, &BigInt)> = h
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut g: Vec<BigInt> = Vec::with_capacity(len);
        g.push(BigInt::one());
        for m in 1..len {
            let mut acc = BigInt::zero();
            for &(k, hk) in &nz {
                if k > m {
                    break;
                }
                let gm = &g[m - k];
                if gm.is_zero() {
                    continue;
                }
                let w = (n + 1) * k as i64 - m as i64;
                if w != 0 {
                    acc += hk * gm * w;
                }
            }
            let (quo, rem) = acc.div_rem(&BigInt::from(m));
            debug_assert!(rem.is_zero(), "Miller recurrence must divide exactly");
            g.push(quo);
        }
        if negate && n % 2 != 0 {
            for c in g.iter_mut() {
                *c = -&*c;
            }
        }
        let v = n * self.valuation;
        Ok(Self::new(v, g, v + len as i64))
    }

    fn pow_by_squaring(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        while n > 0 {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc.expect("n > 0")
    }

    /// `f(z) -> f(pz)`: the exponent `e` becomes `p e`.
    pub fn v_op(&self, p: u32) -> Self {
        assert!(p >= 1, "V_p needs p >= 1");
        let p = p as i64;
        if self.is_zero() {
            return Self::zero(p * self.precision);
        }
        let valuation = p * self.valuation;
        let precision = p * self.precision;
        let mut coeffs = vec![BigInt::zero(); (precision - valuation) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * p as usize] = c.clone();
        }
        Self::new(valuation, coeffs, precision)
    }

    /// Keeps exponents divisible by `p` and divides them by `p`.
    pub fn u_op(&self, p: u32) -> Self {
        assert!(p >= 1, "U_p needs p >= 1");
        let p = p as i64;
        let precision = div_ceil(self.precision, p);
        if self.is_zero() {
            return Self::zero(precision);
        }
        let valuation = div_ceil(self.valuation, p).min(precision);
        Self::from_fn(valuation, precision, |n| self.get(p * n).cloned().unwrap_or_default())
    }

    /// In-place `self -= c * other`, used by triangular eliminations.
    pub fn sub_assign_scaled(&mut self, c: &BigInt, other: &QSeries) {
        if c.is_zero() {
            return;
        }
        if other.valuation < self.valuation && !other.is_zero() {
            *self = &*self - &other.scale(c);
            return;
        }
        let precision = self.precision.min(other.precision);
        if self.is_zero() {
            *self = (-&other.scale(c)).truncate(precision);
            return;
        }
        let keep = (precision - self.valuation).max(0) as usize;
        self.coeffs.truncate(keep);
        self.precision = precision;
        let offset = (other.valuation - self.valuation) as usize;
        for (i, x) in other.coeffs.iter().enumerate() {
            let Some(slot) = self.coeffs.get_mut(offset + i) else {
                break;
            };
            if !x.is_zero() {
                *slot -= c * x;
            }
        }
        self.normalize();
    }

    /// Minimum 2-adic valuation over the known coefficients.
    pub fn min_two_adic_valuation(&self) -> Valuation {
        self.coeffs
            .iter()
            .map(two_adic_valuation)
            .min()
            .unwrap_or(Valuation::Infinite)
    }

    /// Whether `self - other` vanishes modulo `2^n` to the common precision.
    pub fn congruent_mod_pow2(&self, other: &Self, n: u64) -> bool {
        self.combine(other, true).min_two_adic_valuation().at_least(n)
    }
}

fn nonzero_count(c: &[BigInt]) -> usize {
    c.iter().filter(|x| !x.is_zero()).count()
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Coefficients `0..len` of the product of two coefficient vectors, iterating
/// the nonzero entries of `sparse`.
fn cauchy(sparse: &[BigInt], dense: &[BigInt], len: usize) -> Vec<BigInt> {
    let nz: Vec<(usize, &BigInt)> = sparse
        .iter()
        .enumerate()
        .take(len)
        .filter(|(_, c)| !c.is_zero())
        .collect();
    par::map_range(len, |n| {
        let mut acc = BigInt::zero();
        let lo = (n + 1).saturating_sub(dense.len());
        let start = nz.partition_point(|&(i, _)| i < lo);
        for &(i, ai) in &nz[start..] {
            if i > n {
                break;
            }
            let bj = &dense[n - i];
            if !bj.is_zero() {
                acc += ai * bj;
            }
        }
        acc
    })
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.combine(rhs, false)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.combine(rhs, true)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            precision: self.precision,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

/// `q^v*(c0 + c1*q + c2*q^2 + ...) + O(q^P)`, zero terms omitted; the
/// `q^v*` prefix is dropped when `v = 0`.
impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "O(q^{})", self.precision);
        }
        if self.valuation != 0 {
            write!(f, "q^{}*(", self.valuation)?;
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*q")?,
                _ => write!(f, "{mag}*q^{i}")?,
            }
        }
        if self.valuation != 0 {
            f.write_str(")")?;
        }
        write!(f, " + O(q^{})", self.precision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(coeffs: &[i64], p: i64) -> QSeries {
        QSeries::from_i64s(coeffs, p)
    }

    fn euler_phi(p: i64) -> QSeries {
        let mut acc = QSeries::one(p);
        for k in 1..p {
            let factor = &QSeries::one(p) - &QSeries::monomial(BigInt::one(), k, p);
            acc = &acc * &factor;
        }
        acc
    }

    #[test]
    fn add_cancels_and_normalizes() {
        let a = s(&[1, 1], 5);
        let b = s(&[1, -1], 5);
        assert_eq!(&a + &b, s(&[2], 5));
        let c = &a - &a;
        assert!(c.is_zero());
        assert_eq!(c.valuation(), c.precision());
    }

    #[test]
    fn mul_basic_and_shift() {
        let a = s(&[1, 1], 6);
        let b = s(&[1, -1], 6);
        assert_eq!(&a * &b, s(&[1, 0, -1], 6));
        let qinv = QSeries::monomial(BigInt::one(), -1, 5);
        let q = QSeries::monomial(BigInt::one(), 1, 7);
        let prod = &qinv * &q;
        assert_eq!(prod.coeff(0).unwrap(), BigInt::one());
        // min(5 + 1, 7 - 1)
        assert_eq!(prod.precision(), 6);
    }

    #[test]
    fn invert_geometric_and_partitions() {
        let inv = s(&[1, -1], 8).invert().unwrap();
        assert_eq!(inv, s(&[1; 8], 8));
        let p = euler_phi(12).invert().unwrap();
        // p(0..=6) = 1 1 2 3 5 7 11
        let want = [1, 1, 2, 3, 5, 7, 11];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(p.coeff(n as i64).unwrap(), BigInt::from(*w));
        }
        let one = &euler_phi(12) * &p;
        assert_eq!(one, QSeries::one(12));
    }

    #[test]
    fn invert_rejects_non_unit() {
        assert_eq!(
            s(&[2, 1], 4).invert(),
            Err(Error::NonUnitLeadingCoefficient(BigInt::from(2)))
        );
        assert!(QSeries::zero(4).invert().is_err());
    }

    #[test]
    fn pow_matches_repeated_products() {
        let a = s(&[1, 1], 6);
        assert_eq!(a.pow(2).unwrap(), s(&[1, 2, 1], 6));
        assert_eq!(a.pow(1).unwrap(), a);
        let b = QSeries::new(-1, vec![(-1).into(), 3.into(), 0.into(), 5.into()], 3);
        let cube = &(&b * &b) * &b;
        assert_eq!(b.pow(3).unwrap(), cube);
        let inv2 = b.invert().unwrap().pow(2).unwrap();
        assert_eq!(b.pow(-2).unwrap(), inv2);
        let nonunit = s(&[3, 1], 5);
        assert_eq!(nonunit.pow(3).unwrap(), &(&nonunit * &nonunit) * &nonunit);
    }

    #[test]
    fn coeff_range_checks() {
        let a = s(&[1, 0, 3], 3);
        assert_eq!(a.coeff(2).unwrap(), BigInt::from(3));
        assert_eq!(a.coeff(-5).unwrap(), BigInt::zero());
        assert_eq!(
            a.coeff(3),
            Err(Error::PrecisionExceeded {
                exponent: 3,
                precision: 3
            })
        );
    }

    #[test]
    fn u_and_v_operators() {
        let a = QSeries::new(1, vec![1.into(), 1.into()], 3);
        let v = a.v_op(2);
        assert_eq!(v.valuation(), 2);
        assert_eq!(v.precision(), 6);
        assert_eq!(v.coeff(4).unwrap(), BigInt::one());
        assert_eq!(v.coeff(3).unwrap(), BigInt::zero());
        assert_eq!(QSeries::one(4).v_op(7), QSeries::one(28));

        let b = QSeries::new(-1, vec![1.into(), 0.into(), 0.into(), 3.into()], 3);
        let u = b.u_op(2);
        assert_eq!(u, QSeries::new(1, vec![3.into()], 2));
        assert_eq!(v.u_op(2), a);
    }

    #[test]
    fn two_adic_examples() {
        assert_eq!(two_adic_valuation(&48.into()), Valuation::Finite(4));
        assert_eq!(two_adic_valuation(&0.into()), Valuation::Infinite);
        assert_eq!(two_adic_valuation(&(-24).into()), Valuation::Finite(3));
        assert!(Valuation::Infinite > Valuation::Finite(1000));
    }

    #[test]
    fn display_format() {
        let a = QSeries::new(-1, vec![1.into(), 0.into(), (-24).into(), 252.into()], 3);
        assert_eq!(a.to_string(), "q^-1*(1 - 24*q^2 + 252*q^3) + O(q^3)");
        assert_eq!(s(&[2, 1], 3).to_string(), "2 + 1*q + O(q^3)");
        assert_eq!(QSeries::zero(4).to_string(), "O(q^4)");
    }
}
