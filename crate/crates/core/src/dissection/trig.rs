//! `cos(k alpha)` and `i sin(k alpha)` in terms of the Kolberg functions,
//! where `Q^2 = R (cos alpha + i sin alpha)`.

use num_bigint::BigInt;

use super::{Exponents, KolbergExpr};

fn mono(c: i64, q: i64, r: i64, s: i64, t: i64) -> KolbergExpr {
    KolbergExpr::monomial(
        BigInt::from(c),
        Exponents {
            q,
            r,
            s,
            t,
            ..Exponents::default()
        },
    )
}

/// `cos alpha = R^2 S^3 T^-2`
fn cos1() -> KolbergExpr {
    mono(1, 0, 2, 3, -2)
}

/// `i sin alpha = 2 q R^2 S T^2`
fn isin1() -> KolbergExpr {
    mono(2, 1, 2, 1, 2)
}

/// `i sin 2alpha = 4 q R^4 S^4`
fn isin2() -> KolbergExpr {
    mono(4, 1, 4, 4, 0)
}

/// `cos 2alpha = R^8 S^-4`
fn cos2() -> KolbergExpr {
    mono(1, 0, 8, -4, 0)
}

/// `i sin 4alpha = 8 q R^12`
fn isin4() -> KolbergExpr {
    mono(8, 1, 12, 0, 0)
}

/// `cos 4alpha = 1 - 2 sin^2 2alpha = 1 + 32 q^2 R^8 S^8`
fn cos4() -> KolbergExpr {
    &KolbergExpr::one() + &mono(32, 2, 8, 8, 0)
}

/// Chebyshev `T_n(x)` and `U_n(x)` evaluated at an expression.
fn chebyshev(n: u32, x: &KolbergExpr, second_kind: bool) -> KolbergExpr {
    let one = KolbergExpr::one();
    if n == 0 {
        return one;
    }
    let two_x = x.scale(&BigInt::from(2));
    let mut prev = one;
    let mut cur = if second_kind { two_x.clone() } else { x.clone() };
    for _ in 1..n {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `cos(k alpha)` for `k >= 1`; `k = 0` gives 1.
pub fn expand_cos(k: u32) -> KolbergExpr {
    match k {
        0 => KolbergExpr::one(),
        2 => cos2(),
        k if k % 2 == 1 => chebyshev(k, &cos1(), false),
        k if k % 4 == 2 => {
            let s = expand_isin(k / 2);
            &KolbergExpr::one() + &(&s * &s).scale(&BigInt::from(2))
        }
        k => chebyshev(k / 4, &cos4(), false),
    }
}

/// `i sin(k alpha)` for `k >= 1`; `k = 0` gives 0.
pub fn expand_isin(k: u32) -> KolbergExpr {
    match k {
        0 => KolbergExpr::zero(),
        k if k % 2 == 1 => &isin1() * &chebyshev(k - 1, &cos1(), true),
        k if k % 4 == 2 => &isin2() * &chebyshev(k / 2 - 1, &cos2(), true),
        k => &isin4() * &chebyshev(k / 4 - 1, &cos4(), true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_values() {
        assert_eq!(expand_cos(2).to_string(), "R^8*S^-4");
        assert_eq!(expand_isin(1).to_string(), "2*q*R^2*S*T^2");
        assert_eq!(expand_isin(4).to_string(), "8*q*R^12");
        assert_eq!(expand_isin(2).to_string(), "4*q*R^4*S^4");
        assert_eq!(expand_cos(4).to_string(), "1 + 32*q^2*R^8*S^8");
        assert_eq!(expand_isin(8).to_string(), "16*q*R^12 + 512*q^3*R^20*S^8");
    }

    #[test]
    fn chebyshev_recurrences() {
        let x = KolbergExpr::var(super::super::Gen::R);
        assert_eq!(chebyshev(3, &x, false).to_string(), "-3*R + 4*R^3");
        assert_eq!(chebyshev(3, &x, true).to_string(), "-4*R + 8*R^3");
    }
}
