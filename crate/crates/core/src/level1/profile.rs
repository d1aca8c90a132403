use serde::Serialize;

use super::WeightDecomposition;
use crate::error::{Error, Result};

/// The weights `k` for which `M_k(1)` is two-dimensional.
pub const SIX_WEIGHTS: [i64; 6] = [12, 16, 18, 20, 22, 26];

/// Per-weight divisibility constants. `xi` and `mu` belong to the dual
/// weight `2 - k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WeightProfile {
    pub k: i64,
    pub gamma: u32,
    pub rho: u32,
    pub chi: u32,
    pub nu: u32,
    pub eta: u32,
    pub omega: u32,
    pub ell: i64,
    pub kprime: i64,
    pub xi: u32,
    pub mu: i64,
}

// k, gamma, rho, chi, nu, eta, omega
const TABLE: [(i64, u32, u32, u32, u32, u32, u32); 6] = [
    (12, 3, 7, 7, 15, 12, 4),
    (16, 3, 8, 9, 16, 13, 6),
    (18, 4, 8, 9, 16, 10, 3),
    (20, 3, 7, 7, 16, 13, 4),
    (22, 5, 7, 7, 16, 12, 3),
    (26, 4, 9, 8, 15, 10, 3),
];

impl WeightProfile {
    pub fn new(k: i64) -> Result<Self> {
        let &(k, gamma, rho, chi, nu, eta, omega) = TABLE
            .iter()
            .find(|row| row.0 == k)
            .ok_or(Error::UnsupportedWeight(k))?;
        let d = WeightDecomposition::new(k)?;
        Ok(WeightProfile {
            k,
            gamma,
            rho,
            chi,
            nu,
            eta,
            omega,
            ell: d.ell,
            kprime: d.kprime,
            xi: xi(2 - k)?,
            mu: mu_exponent(2 - k),
        })
    }

    pub fn all() -> Vec<Self> {
        SIX_WEIGHTS.iter().map(|&k| Self::new(k).expect("table weight")).collect()
    }
}

/// Exponent `xi_k` with `alpha_k = 1 (mod 2^xi_k)`, for the six dual weights.
pub fn xi(k: i64) -> Result<u32> {
    match k {
        -10 | -14 | -18 => Ok(3),
        -20 => Ok(4),
        -24 => Ok(5),
        -16 => Ok(6),
        _ => Err(Error::UnsupportedWeight(k)),
    }
}

/// Power of 2 in the transformation law of `theta_k` for negative even `k`.
pub fn mu_exponent(k: i64) -> i64 {
    if k.rem_euclid(4) == 2 {
        3 - k
    } else {
        -k
    }
}

pub fn mu_sign(k: i64) -> i64 {
    if k.rem_euclid(4) == 2 {
        -1
    } else {
        1
    }
}
