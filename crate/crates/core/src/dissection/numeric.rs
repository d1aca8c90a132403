//! Numeric expansion of Kolberg expressions, used as an oracle for the
//! symbolic rules.
//!
//! Generators are expanded from their infinite products. Evaluation peels one
//! level at a time: every monomial is `q^eps phi(q)^a Q^b` times a series in
//! `q^2`, and the `q^2`-part is itself a Kolberg expression one level down
//! (`R -> Q`, `phi(q^2) -> phi(q)`, ...).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Exponents, KolbergExpr, Parity};
use crate::qseries::QSeries;

/// `prod_{k>=1} (1 + sign q^k) + O(q^len)`.
fn product_series(len: i64, sign: i64) -> QSeries {
    let n = len.max(0) as usize;
    let mut c = vec![BigInt::zero(); n];
    if n > 0 {
        c[0] = BigInt::one();
    }
    for k in 1..n {
        for i in (k..n).rev() {
            if !c[i - k].is_zero() {
                let t = &c[i - k] * sign;
                c[i] += t;
            }
        }
    }
    QSeries::new(0, c, len)
}

/// `phi(q)^a Q^b + O(q^len)`.
fn level_factor(a: i64, b: i64, len: i64) -> QSeries {
    let mut out = QSeries::one(len);
    if a != 0 {
        out = &out * &product_series(len, -1).pow(a).expect("unit");
    }
    if b != 0 {
        out = &out * &product_series(len, 1).pow(b).expect("unit");
    }
    out
}

fn only_q(e: &Exponents) -> bool {
    Exponents { q: 0, ..*e } == Exponents::default()
}

/// Expands `expr` to absolute precision `precision`.
pub fn to_qseries(expr: &KolbergExpr, precision: i64) -> QSeries {
    let mut acc = QSeries::zero(precision);
    if expr.is_zero() {
        return acc;
    }
    if expr.terms().all(|(e, _)| only_q(e)) {
        for (e, c) in expr.terms() {
            acc = &acc + &QSeries::monomial(c.clone(), e.q, precision);
        }
        return acc;
    }
    // Group by (q parity, phi(q) exponent, Q exponent).
    let mut groups: BTreeMap<(i64, i64, i64), KolbergExpr> = BTreeMap::new();
    for (e, c) in expr.terms() {
        let eps = e.q.rem_euclid(2);
        let down = Exponents {
            q: (e.q - eps) / 2,
            big_q: e.r,
            r: e.s,
            s: e.t,
            t: 0,
            phi1: e.phi2,
            phi2: e.phi4,
            phi4: e.phi8,
            phi8: 0,
        };
        groups
            .entry((eps, e.phi1, e.big_q))
            .or_default()
            .add_term(down, c.clone());
    }
    for ((eps, a, b), inner) in groups {
        let need = precision - eps;
        let min_q = inner.terms().map(|(e, _)| e.q).min().expect("nonempty");
        // The level factor has valuation 0; it must cover the pole of `lower`.
        let factor_len = need - (2 * min_q).min(0);
        if factor_len <= 0 {
            continue;
        }
        let half = Integer::div_ceil(&need, &2);
        let lower = to_qseries(&inner, half).v_op(2);
        let factor = level_factor(a, b, factor_len);
        let term = (&factor * &lower).truncate(need).shift(eps);
        acc = &acc + &term;
    }
    acc
}

/// Keeps the exponents of the given parity.
pub fn dissect_numeric(f: &QSeries, parity: Parity) -> QSeries {
    let want = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    QSeries::from_fn(f.valuation(), f.precision(), |e| {
        if e.rem_euclid(2) == want {
            f.coeff(e).expect("below precision")
        } else {
            BigInt::zero()
        }
    })
}
