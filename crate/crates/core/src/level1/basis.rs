use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{delta_power, e_weight, j_invariant, WeightDecomposition};
use crate::error::{Error, Result};
use crate::qseries::QSeries;

/// The canonical basis elements `f_{k,m}` for `-ell <= m <= max_index`,
/// each known to absolute precision `precision`.
#[derive(Clone, Debug)]
pub struct BasisTable {
    weight: WeightDecomposition,
    max_index: i64,
    precision: i64,
    rows: Vec<QSeries>,
}

impl BasisTable {
    /// Builds the table by the j-ladder: `f_{k,m}` comes from `j f_{k,m-1}`
    /// after clearing the exponents `-m < e <= ell` with earlier rows.
    pub fn build(k: i64, max_index: i64, precision: i64) -> Result<Self> {
        let weight = WeightDecomposition::new(k)?;
        let ell = weight.ell;
        if max_index < -ell {
            return Err(Error::IndexBelowRange {
                k,
                m: max_index,
                min: -ell,
            });
        }
        let steps = max_index + ell;
        // Each rung loses one unit of precision.
        let work = precision.max(ell + 1) + steps;
        let base = &delta_power(ell, work) * &e_weight(weight.kprime, work - ell.min(0))?;
        let j = j_invariant((work - ell - 1).max(1));
        let mut rows = Vec::with_capacity(steps as usize + 1);
        rows.push(base);
        for m in (-ell + 1)..=max_index {
            let mut g = &j * rows.last().expect("nonempty");
            for e in (-m + 1)..=ell {
                let c = g.coeff(e)?;
                if !c.is_zero() {
                    g.sub_assign_scaled(&c, &rows[(-e + ell) as usize]);
                }
            }
            rows.push(g);
        }
        let rows = rows.into_iter().map(|r| r.truncate(precision)).collect();
        Ok(BasisTable {
            weight,
            max_index,
            precision,
            rows,
        })
    }

    pub fn weight(&self) -> i64 {
        self.weight.k
    }

    pub fn ell(&self) -> i64 {
        self.weight.ell
    }

    pub fn max_index(&self) -> i64 {
        self.max_index
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn covers(&self, max_index: i64, precision: i64) -> bool {
        max_index <= self.max_index && precision <= self.precision
    }

    /// `f_{k,m}`, or `None` outside `-ell..=max_index`.
    pub fn get(&self, m: i64) -> Option<&QSeries> {
        let i = m + self.weight.ell;
        if i < 0 {
            return None;
        }
        self.rows.get(i as usize)
    }
}

static TABLES: LazyLock<RwLock<HashMap<i64, Arc<BasisTable>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// A shared table covering at least `max_index` and `precision`. Tables grow
/// geometrically so that scans with slowly increasing demands rebuild rarely.
pub fn basis_table(k: i64, max_index: i64, precision: i64) -> Result<Arc<BasisTable>> {
    let weight = WeightDecomposition::new(k)?;
    let max_index = max_index.max(-weight.ell);
    let existing = TABLES.read().unwrap().get(&k).cloned();
    let (want_m, want_p) = match &existing {
        Some(t) if t.covers(max_index, precision) => return Ok(t.clone()),
        Some(t) => (
            grow(t.max_index, max_index, -weight.ell),
            grow(t.precision, precision, 0),
        ),
        None => (max_index, precision),
    };
    let table = Arc::new(BasisTable::build(k, want_m, want_p)?);
    let mut map = TABLES.write().unwrap();
    match map.get(&k) {
        Some(t) if t.covers(want_m, want_p) => Ok(t.clone()),
        _ => {
            map.insert(k, table.clone());
            Ok(table)
        }
    }
}

fn grow(old: i64, need: i64, floor: i64) -> i64 {
    if need <= old {
        old
    } else {
        let span = old - floor;
        need.max(old + span / 2)
    }
}

/// `f_{k,m} + O(q^precision)`.
pub fn canonical_basis(k: i64, m: i64, precision: i64) -> Result<QSeries> {
    let ell = WeightDecomposition::new(k)?.ell;
    if m < -ell {
        return Err(Error::IndexBelowRange { k, m, min: -ell });
    }
    let table = basis_table(k, m, precision)?;
    Ok(table.get(m).expect("covered").truncate(precision))
}

/// `a_k(m, n)`, the coefficient of `q^n` in `f_{k,m}`, extended by zero for
/// odd `k`, for `m < -ell`, and for `n < ell + 1`. The last rule also zeroes
/// the leading term `n = -m`.
pub fn a_coefficient(k: i64, m: i64, n: i64) -> Result<BigInt> {
    let Ok(weight) = WeightDecomposition::new(k) else {
        return Ok(BigInt::zero());
    };
    if m < -weight.ell || n < weight.ell + 1 {
        return Ok(BigInt::zero());
    }
    basis_table(k, m, n + 1)?.get(m).expect("covered").coeff(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::level1::{delta, eisenstein, j_invariant};

    fn assert_gap(f: &QSeries, k: i64, m: i64) {
        let ell = WeightDecomposition::new(k).unwrap().ell;
        assert_eq!(f.valuation(), -m);
        assert_eq!(f.coeff(-m).unwrap(), BigInt::from(1));
        for e in (-m + 1)..=ell {
            assert!(f.coeff(e).unwrap().is_zero(), "k={k} m={m} e={e}");
        }
    }

    #[test]
    fn small_cases() {
        assert_eq!(canonical_basis(12, -1, 30).unwrap(), delta(30));
        let e4 = eisenstein(4, 30).unwrap();
        let f120 = &e4.pow(3).unwrap() - &delta(30).scale_i64(720);
        assert_eq!(canonical_basis(12, 0, 30).unwrap(), f120);
        let j = j_invariant(30);
        let f01 = &j - &QSeries::one(30).scale_i64(744);
        assert_eq!(canonical_basis(0, 1, 30).unwrap(), f01);
        assert!(canonical_basis(12, -2, 30).is_err());
    }

    #[test]
    fn gaps_and_precision() {
        for k in [12, 16, 26, -10, -24, 0, 2, 4, 14] {
            let t = BasisTable::build(k, 12, 25).unwrap();
            for m in -t.ell()..=12 {
                let f = t.get(m).unwrap();
                assert_eq!(f.precision(), 25);
                assert_gap(f, k, m);
            }
        }
    }

    #[test]
    fn zero_convention() {
        assert!(a_coefficient(12, -5, 10).unwrap().is_zero());
        assert!(a_coefficient(12, -1, 1).unwrap().is_zero());
        assert!(a_coefficient(13, 1, 4).unwrap().is_zero());
        assert_eq!(a_coefficient(12, -1, 2).unwrap(), BigInt::from(-24));
        assert_eq!(a_coefficient(0, 1, 1).unwrap(), BigInt::from(196884));
    }

    #[test]
    fn cache_growth_is_consistent() {
        let small = canonical_basis(-14, 3, 20).unwrap();
        let big = canonical_basis(-14, 9, 60).unwrap();
        assert_eq!(small, canonical_basis(-14, 3, 20).unwrap());
        assert_eq!(big.truncate(20).valuation(), -9);
        assert_eq!(canonical_basis(-14, 3, 20).unwrap(), BasisTable::build(-14, 3, 20).unwrap().get(3).unwrap().clone());
    }
}
