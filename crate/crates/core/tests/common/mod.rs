//! Independent reference computations on plain coefficient vectors, used to
//! check the library rather than to drive it.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use wmf::dissection::{Exponents, KolbergExpr, KolbergMonomial};
use wmf::QSeries;

pub type Poly = Vec<BigInt>;

pub fn mul(a: &[BigInt], b: &[BigInt], len: usize) -> Poly {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Power series quotient `a / b` for `b[0] = +-1`.
pub fn div(a: &[BigInt], b: &[BigInt], len: usize) -> Poly {
    let mut rem: Poly = (0..len).map(|i| a.get(i).cloned().unwrap_or_default()).collect();
    let mut out = vec![BigInt::zero(); len];
    for i in 0..len {
        let c = &rem[i] * &b[0];
        for (j, y) in b.iter().enumerate().take(len - i) {
            rem[i + j] -= &c * y;
        }
        out[i] = c;
    }
    out
}

/// `prod_{n>=1} (1 - q^n)^e`, one factor at a time.
pub fn euler_power(e: i64, len: usize) -> Poly {
    let mut acc = vec![BigInt::zero(); len];
    acc[0] = BigInt::one();
    for n in 1..len {
        let mut factor = vec![BigInt::zero(); len];
        factor[0] = BigInt::one();
        factor[n] = -BigInt::one();
        for _ in 0..e.unsigned_abs() {
            acc = if e > 0 { mul(&acc, &factor, len) } else { div(&acc, &factor, len) };
        }
    }
    acc
}

pub fn sigma(k: u32, n: u64) -> BigInt {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| BigInt::from(d).pow(k)).sum()
}

pub fn eisenstein(w: u32, len: usize) -> Poly {
    let c: i64 = if w == 4 { 240 } else { -504 };
    (0..len)
        .map(|n| if n == 0 { BigInt::one() } else { sigma(w - 1, n as u64) * c })
        .collect()
}

/// Coefficients of `Delta / q`.
pub fn delta_over_q(len: usize) -> Poly {
    euler_power(24, len)
}

/// Partitions of `n` by recursion on the largest part.
pub fn partitions(n: u64) -> u64 {
    fn go(n: u64, max: u64) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|k| go(n - k, k)).sum()
    }
    go(n, n)
}

/// The coefficients of `q^v, q^(v+1), ...` of `f`, `len` of them.
pub fn window(f: &QSeries, v: i64, len: usize) -> Poly {
    (0..len as i64).map(|i| f.coeff(v + i).unwrap()).collect()
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

/// `f_{-10,2} | U_4` over `Phi^i alpha_{-10}`, as `(power of 2, odd part)`,
/// each with a minus sign.
pub const U4_EXPANSION: [(u32, u64); 14] = [
    (4, 12285),
    (13, 560584703),
    (32, 81073083),
    (41, 1530945507),
    (52, 2152441109),
    (61, 5180299059),
    (72, 1612138839),
    (81, 1156390619),
    (93, 63543825),
    (102, 17635779),
    (117, 48367),
    (126, 5199),
    (138, 39),
    (147, 1),
];

/// A random expression whose `Q` exponents stay even once `phi(q)` is
/// rewritten in terms of `phi(q^2)` and `Q`.
pub fn random_expr(rng: &mut impl Rng) -> KolbergExpr {
    let terms = rng.gen_range(1..=5);
    let ms: Vec<KolbergMonomial> = (0..terms)
        .map(|_| {
            let phi1 = rng.gen_range(-3..=3i64);
            let mut c: i64 = rng.gen_range(-40..=40);
            if c == 0 {
                c = 1;
            }
            KolbergMonomial {
                coefficient: BigInt::from(c),
                exponents: Exponents {
                    q: rng.gen_range(-3..=3),
                    big_q: 2 * rng.gen_range(-6..=6i64) + phi1.rem_euclid(2),
                    r: rng.gen_range(-4..=4),
                    s: rng.gen_range(-3..=3),
                    t: rng.gen_range(-2..=2),
                    phi2: rng.gen_range(-3..=3),
                    phi4: rng.gen_range(-3..=3),
                    phi8: rng.gen_range(-2..=2),
                    phi1,
                },
            }
        })
        .collect();
    KolbergExpr::from_monomials(ms)
}
