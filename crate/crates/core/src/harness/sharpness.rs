use serde::Serialize;

use super::{evaluate, main_theorem_cells, Claim, GridParams};
use crate::error::{Error, Result};
use crate::qseries::Valuation;

/// How close the grid comes to the claimed exponent in one case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharpnessReport {
    pub k: i64,
    pub case: String,
    pub cells: usize,
    /// Smallest observed valuation, `None` for an empty grid or all zeros.
    pub min_observed: Option<u64>,
    /// Smallest claimed exponent over the same cells.
    pub min_claimed: Option<u32>,
    /// Some cell attains its claimed exponent exactly.
    pub attained: bool,
    /// Cells whose coefficient is odd.
    pub odd_count: usize,
}

/// Informational scan of one case label of the main grid at weight `k`.
pub fn probe_sharpness(k: i64, case: &str, grid: &GridParams) -> Result<SharpnessReport> {
    if !super::CASE_LABELS.contains(&case) {
        return Err(Error::UnknownCase(case.to_string()));
    }
    let g = GridParams {
        weights: vec![k],
        ..grid.clone()
    };
    let cells: Vec<_> = main_theorem_cells(&g)?.into_iter().filter(|c| c.case == case).collect();
    let records = evaluate(&cells)?;
    let finite = |v: Valuation| v.finite();
    let claimed = |c: Claim| match c {
        Claim::Divisible(e) => Some(e),
        _ => None,
    };
    Ok(SharpnessReport {
        k,
        case: case.to_string(),
        cells: records.len(),
        min_observed: records.iter().filter_map(|r| finite(r.observed)).min(),
        min_claimed: records.iter().filter_map(|r| claimed(r.claimed)).min(),
        attained: records
            .iter()
            .any(|r| matches!((r.claimed, r.observed), (Claim::Divisible(e), Valuation::Finite(v)) if v == e as u64)),
        odd_count: records.iter().filter(|r| r.observed == Valuation::Finite(0)).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> GridParams {
        GridParams {
            weights: vec![12],
            a_max: 2,
            b_max: 2,
            m_list: vec![1, 3],
            n_list: vec![1, 3],
            tau_b_max: 2,
        }
    }

    #[test]
    fn a0_case_respects_bound() {
        let g = GridParams { b_max: 1, ..grid() };
        let r = probe_sharpness(12, "a=0", &g).unwrap();
        assert_eq!(r.cells, 8);
        assert_eq!(r.min_claimed, Some(0));
        let b1 = GridParams { b_max: 1, ..grid() };
        let cells: Vec<_> = main_theorem_cells(&b1)
            .unwrap()
            .into_iter()
            .filter(|c| c.case == "a=0" && c.index.1 == 1)
            .collect();
        let recs = evaluate(&cells).unwrap();
        assert!(recs.iter().all(|r| r.observed.at_least(3)));
    }

    #[test]
    fn diagonal_is_informational() {
        let r = probe_sharpness(12, "a=b", &grid()).unwrap();
        assert_eq!(r.min_claimed, None);
        assert!(!r.attained);
        assert_eq!(r.cells, 2 * 4);
    }

    #[test]
    fn empty_grid() {
        let g = GridParams {
            m_list: vec![],
            ..grid()
        };
        let r = probe_sharpness(12, "a>b>=1", &g).unwrap();
        assert_eq!(r.cells, 0);
        assert_eq!(r.min_observed, None);
        assert!(probe_sharpness(12, "nope", &g).is_err());
    }
}
