//! Level-1 modular forms: Eisenstein series, the discriminant, the
//! j-function, the cusp forms `Delta_k`, and the canonical basis `f_{k,m}`
//! of weakly holomorphic forms of weight `k`.

mod basis;
mod profile;

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::qseries::QSeries;

pub use basis::{a_coefficient, basis_table, canonical_basis, BasisTable};
pub use profile::{mu_exponent, mu_sign, xi, WeightProfile, SIX_WEIGHTS};

/// `k = 12 ell + kprime` with `kprime` in `{0, 4, 6, 8, 10, 14}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightDecomposition {
    pub k: i64,
    pub ell: i64,
    pub kprime: i64,
}

impl WeightDecomposition {
    pub fn new(k: i64) -> Result<Self> {
        if k % 2 != 0 {
            return Err(Error::UnsupportedWeight(k));
        }
        let mut kprime = k.rem_euclid(12);
        if kprime == 2 {
            kprime = 14;
        }
        Ok(WeightDecomposition {
            k,
            ell: (k - kprime) / 12,
            kprime,
        })
    }
}

/// `sigma_kpow(n)`, the sum of `d^kpow` over positive divisors of `n`.
pub fn sigma(kpow: u32, n: u64) -> BigInt {
    assert!(n >= 1, "sigma needs n >= 1");
    let mut acc = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            acc += BigInt::from(d).pow(kpow);
            let e = n / d;
            if e != d {
                acc += BigInt::from(e).pow(kpow);
            }
        }
        d += 1;
    }
    acc
}

/// `sigma_kpow(n)` for `0 <= n < len` (entry 0 is unused and zero).
fn sigma_table(kpow: u32, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for d in 1..len {
        let dk = BigInt::from(d).pow(kpow);
        for m in (d..len).step_by(d) {
            out[m] += &dk;
        }
    }
    out
}

/// `E_4 = 1 + 240 sum sigma_3(n) q^n` or `E_6 = 1 - 504 sum sigma_5(n) q^n`.
pub fn eisenstein(w: u32, precision: i64) -> Result<QSeries> {
    let (kpow, scale) = match w {
        4 => (3, 240),
        6 => (5, -504),
        _ => return Err(Error::UnsupportedWeight(w as i64)),
    };
    let len = precision.max(0) as usize;
    let sig = sigma_table(kpow, len);
    let coeffs = sig
        .into_iter()
        .enumerate()
        .map(|(n, s)| if n == 0 { BigInt::one() } else { s * scale })
        .collect();
    Ok(QSeries::new(0, coeffs, precision))
}

/// Euler's `prod (1 - q^n)` from the pentagonal number theorem.
pub fn euler_phi(precision: i64) -> QSeries {
    let len = precision.max(0) as usize;
    let mut coeffs = vec![BigInt::zero(); len];
    if len > 0 {
        coeffs[0] = BigInt::one();
    }
    for k in 1i64.. {
        let p1 = (k * (3 * k - 1) / 2) as usize;
        if p1 >= len {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        coeffs[p1] += sign;
        let p2 = (k * (3 * k + 1) / 2) as usize;
        if p2 < len {
            coeffs[p2] += sign;
        }
    }
    QSeries::new(0, coeffs, precision)
}

/// `Delta = q prod (1 - q^n)^24`.
pub fn delta(precision: i64) -> QSeries {
    euler_phi(precision - 1)
        .pow(24)
        .expect("phi has unit leading coefficient")
        .shift(1)
}

/// `Delta^e` known to absolute precision `precision` (any sign of `e`).
pub fn delta_power(e: i64, precision: i64) -> QSeries {
    // The relative precision of a power equals that of its base.
    let rel = precision - e;
    euler_phi(rel)
        .pow(24 * e)
        .expect("phi has unit leading coefficient")
        .shift(e)
}

/// `j = E_4^3 / Delta = q^-1 + 744 + ...`.
pub fn j_invariant(precision: i64) -> QSeries {
    let e4 = eisenstein(4, precision + 1).expect("weight 4");
    let e4_cubed = e4.pow(3).expect("unit leading coefficient");
    let inv_delta = delta_power(-1, precision);
    (&e4_cubed * &inv_delta).truncate(precision)
}

/// The generator of the one-dimensional space `M_kprime(1)`:
/// `1, E_4, E_6, E_4^2, E_4 E_6, E_4^2 E_6`.
pub fn e_weight(kprime: i64, precision: i64) -> Result<QSeries> {
    let (a, b) = match kprime {
        0 => (0, 0),
        4 => (1, 0),
        6 => (0, 1),
        8 => (2, 0),
        10 => (1, 1),
        14 => (2, 1),
        _ => return Err(Error::UnsupportedWeight(kprime)),
    };
    let mut acc = QSeries::one(precision);
    if a > 0 {
        acc = &acc * &eisenstein(4, precision)?.pow(a)?;
    }
    if b > 0 {
        acc = &acc * &eisenstein(6, precision)?;
    }
    Ok(acc)
}

fn require_six(k: i64) -> Result<()> {
    if SIX_WEIGHTS.contains(&k) {
        Ok(())
    } else {
        Err(Error::UnsupportedWeight(k))
    }
}

/// The normalized cusp form `Delta_k = Delta * E_{k-12}` for the six weights
/// with two-dimensional `M_k(1)`.
pub fn delta_k(k: i64, precision: i64) -> Result<QSeries> {
    require_six(k)?;
    let e = e_weight(k - 12, precision)?;
    Ok(&delta(precision) * &e)
}

static DELTA_K_CACHE: LazyLock<RwLock<HashMap<i64, QSeries>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// `tau_k(n)`, the `n`-th coefficient of `Delta_k`.
pub fn tau_k(k: i64, n: i64) -> Result<BigInt> {
    require_six(k)?;
    if n < 1 {
        return Ok(BigInt::zero());
    }
    if let Some(s) = DELTA_K_CACHE.read().unwrap().get(&k) {
        if n < s.precision() {
            return s.coeff(n);
        }
    }
    let precision = ((n + 1).max(64) as u64).next_power_of_two() as i64;
    let series = delta_k(k, precision)?;
    let c = series.coeff(n)?;
    let mut cache = DELTA_K_CACHE.write().unwrap();
    let keep = cache.get(&k).is_some_and(|s| s.precision() >= precision);
    if !keep {
        cache.insert(k, series);
    }
    Ok(c)
}
