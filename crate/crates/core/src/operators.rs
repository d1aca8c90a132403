//! Hecke operators and the coefficient relations they induce.
//!
//! Operator identities are checked with every term multiplied by a common
//! power of `p` when the weight is below 1, so that `p^(k-1)` stays integral.

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use crate::error::{Error, Result};
use crate::level1::{a_coefficient, canonical_basis, delta_k, tau_k};
use crate::qseries::QSeries;

/// `delta_{x,y}`: 1 if `y | x`, else 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DivIndicator {
    pub x: i64,
    pub y: i64,
    pub value: u8,
}

impl DivIndicator {
    pub fn new(x: i64, y: i64) -> Self {
        assert!(y != 0, "indicator needs a nonzero divisor");
        DivIndicator {
            x,
            y,
            value: (x % y == 0) as u8,
        }
    }

    pub fn holds(self) -> bool {
        self.value == 1
    }
}

fn divides(y: i64, x: i64) -> bool {
    DivIndicator::new(x, y).holds()
}

fn pow_big(p: u64, e: i64) -> BigInt {
    debug_assert!(e >= 0);
    BigInt::from(p).pow(e as u32)
}

/// `p^shift (f | T_p) = p^shift (f|U_p) + p^(shift+k-1) (f|V_p)`.
pub fn hecke_t_scaled(f: &QSeries, p: u32, k: i64, shift: i64) -> Result<QSeries> {
    let e = shift + k - 1;
    if e < 0 || shift < 0 {
        return Err(Error::FractionalScalar {
            base: p as u64,
            exponent: e.min(shift),
        });
    }
    let u = f.u_op(p).scale(&pow_big(p as u64, shift));
    let v = f.v_op(p).scale(&pow_big(p as u64, e));
    Ok(&u + &v)
}

/// `f | T_p = f|U_p + p^(k-1) f|V_p`; needs `k >= 1`.
pub fn hecke_t(f: &QSeries, p: u32, k: i64) -> Result<QSeries> {
    hecke_t_scaled(f, p, k, 0)
}

/// `a_k(m/p,n) + a_k(m,p) tau_k(n) + p^(k-1) a_k(mp,n)
///  = a_k(m,np) + p^(k-1) a_k(m,n/p)`.
pub fn check_hecke_relation(k: i64, m: i64, n: i64, p: i64) -> Result<bool> {
    Ok(hecke_relation_defect(k, m, n, p)?.is_zero())
}

/// Left side minus right side of the relation in [`check_hecke_relation`].
pub fn hecke_relation_defect(k: i64, m: i64, n: i64, p: i64) -> Result<BigInt> {
    let pk1 = pow_big(p as u64, k - 1);
    let quo = |x: i64, y: i64| if divides(y, x) { Some(x / y) } else { None };
    let mut lhs = a_coefficient(k, m, p)? * tau_k(k, n)? + &pk1 * a_coefficient(k, m * p, n)?;
    if let Some(mp) = quo(m, p) {
        lhs += a_coefficient(k, mp, n)?;
    }
    let mut rhs = a_coefficient(k, m, n * p)?;
    if let Some(np) = quo(n, p) {
        rhs += &pk1 * a_coefficient(k, m, np)?;
    }
    Ok(lhs - rhs)
}

/// The relation obtained from `f_{k,m} | T_p | T_p`.
pub fn check_hecke_squared_relation(k: i64, m: i64, n: i64, p: i64) -> Result<bool> {
    Ok(hecke_squared_relation_defect(k, m, n, p)?.is_zero())
}

/// Left side minus right side of the relation in [`check_hecke_squared_relation`].
pub fn hecke_squared_relation_defect(k: i64, m: i64, n: i64, p: i64) -> Result<BigInt> {
    let pk1 = pow_big(p as u64, k - 1);
    let p2k2 = pow_big(p as u64, 2 * k - 2);
    let p2 = p * p;
    let dm = 1 + DivIndicator::new(m, p).value as i64;
    let dn = 1 + DivIndicator::new(n, p).value as i64;
    let mut lhs = &p2k2 * a_coefficient(k, m * p2, n)?
        + &pk1 * dm * a_coefficient(k, m, n)?
        + a_coefficient(k, m, p2)? * tau_k(k, n)?;
    if divides(p2, m) {
        lhs += a_coefficient(k, m / p2, n)?;
    }
    let mut rhs = &pk1 * dn * a_coefficient(k, m, n)? + a_coefficient(k, m, n * p2)?;
    if divides(p2, n) {
        rhs += &p2k2 * a_coefficient(k, m, n / p2)?;
    }
    Ok(lhs - rhs)
}

/// `tau_k(2^(b+1) n) - tau_k(2) tau_k(2^b n) + 2^(k-1) tau_k(2^(b-1) n)` for `b >= 1`.
pub fn tau_recursion_defect(k: i64, b: u32, n: i64) -> Result<BigInt> {
    assert!(b >= 1, "the recursion starts at b = 1");
    let t = |e: u32| tau_k(k, (1i64 << e) * n);
    Ok(t(b + 1)? - tau_k(k, 2)? * t(b)? + pow_big(2, k - 1) * t(b - 1)?)
}

fn agree(a: &QSeries, b: &QSeries) -> bool {
    let p = a.precision().min(b.precision());
    a.truncate(p) == b.truncate(p)
}

/// `-f + p f|U_p|V_p + p^k f|V_p|V_p = p f|T_p|V_p - f`, scaled by
/// `p^s` with `s = max(0, 1-k)`.
pub fn check_thm41_identity(f: &QSeries, p: u32, k: i64) -> Result<bool> {
    let s = (1 - k).max(0);
    let pp = p as u64;
    let fs = f.scale(&pow_big(pp, s));
    let lhs = &(&f.u_op(p).v_op(p).scale(&pow_big(pp, s + 1))
        + &f.v_op(p).v_op(p).scale(&pow_big(pp, s + k)))
        - &fs;
    let rhs = &hecke_t_scaled(f, p, k, s)?.v_op(p).scale(&pow_big(pp, 1)) - &fs;
    Ok(agree(&lhs, &rhs))
}

/// `-f_p + p f_{p^2}(pz) - p^(k-1) f(pz) + p^k f_p(p^2 z) + p^(2k-1) f(p^3 z)
///  = p f|T_p|T_p|V_p - f|T_p - p^k f|V_p`, scaled by `p^(2 max(0, 1-k))`.
pub fn check_thm42_identity(f: &QSeries, p: u32, k: i64) -> Result<bool> {
    let s = (1 - k).max(0);
    let big_s = 2 * s;
    let pp = p as u64;
    let c = |e: i64| pow_big(pp, e);
    let fp = f.u_op(p);
    let fp2 = fp.u_op(p);
    let terms = [
        fp.scale(&c(big_s)),
        fp2.v_op(p).scale(&c(big_s + 1)),
        f.v_op(p).scale(&c(big_s + k - 1)),
        fp.v_op(p).v_op(p).scale(&c(big_s + k)),
        f.v_op(p).v_op(p).v_op(p).scale(&c(big_s + 2 * k - 1)),
    ];
    let lhs = &(&(&(&terms[1] - &terms[0]) - &terms[2]) + &terms[3]) + &terms[4];
    let tt = hecke_t_scaled(&hecke_t_scaled(f, p, k, s)?, p, k, s)?;
    let rhs = &(&tt.v_op(p).scale(&c(1)) - &hecke_t_scaled(f, p, k, big_s)?)
        - &f.v_op(p).scale(&c(big_s + k));
    Ok(agree(&lhs, &rhs))
}

/// `f_{k,m} | T_p = p^(k-1) f_{k,mp} + delta_{m,p} f_{k,m/p} + a_k(m,p) Delta_k`
/// to precision `precision`.
pub fn check_form_hecke_identity(k: i64, m: i64, p: u32, precision: i64) -> Result<bool> {
    let pi = p as i64;
    let f = canonical_basis(k, m, precision * pi)?;
    let lhs = hecke_t(&f, p, k)?;
    let mut rhs = canonical_basis(k, m * pi, precision)?.scale(&pow_big(p as u64, k - 1));
    if divides(pi, m) {
        rhs = &rhs + &canonical_basis(k, m / pi, precision)?;
    }
    let a = a_coefficient(k, m, pi)?;
    if !a.is_zero() {
        rhs = &rhs + &delta_k(k, precision)?.scale(&a);
    }
    Ok(agree(&lhs, &rhs))
}
