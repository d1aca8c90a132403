//! Verification of the divisibility claims on canonical-basis coefficients:
//! the main grid, the supporting lemmas, the symbolic dissection pipeline,
//! and sharpness probes. Reports are deterministic regardless of how many
//! worker threads evaluate the cells.

mod lemmas;
mod pipeline;
mod record;
mod sharpness;
mod theorem;

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::level1::{self, a_coefficient, basis_table, tau_k};
use crate::operators::{hecke_relation_defect, hecke_squared_relation_defect, tau_recursion_defect};
use crate::qseries::{two_adic_valuation, QSeries};
use crate::{level2, par};

pub use lemmas::{verify_lemma, LemmaBounds, LEMMA_NAMES};
pub use pipeline::{kolberg_delta, kolberg_e4, kolberg_e6, kolberg_j, run_lemma51_pipeline, PipelineTranscript};
pub use record::{Claim, CongruenceRecord, Summary, VerificationReport};
pub use sharpness::{probe_sharpness, SharpnessReport};
pub use theorem::{case_label, claimed_exponent, main_theorem_cells, verify_main_theorem, GridParams, CASE_LABELS};

/// The integer whose 2-adic valuation a cell reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    /// `a_k(m, n)`
    Coeff { m: i64, n: i64 },
    /// `tau_k(n)`
    Tau { n: i64 },
    /// `a_k(m1, n1) - a_k(m2, n2)`
    CoeffDiff { m1: i64, n1: i64, m2: i64, n2: i64 },
    /// Defect of the first Hecke relation at `p = 2`.
    Hecke { m: i64, n: i64 },
    /// Defect of the squared Hecke relation at `p = 2`.
    HeckeSquared { m: i64, n: i64 },
    /// Defect of the `tau_k` recursion at `2^b n`.
    TauRecursion { b: u32, n: i64 },
}

impl Quantity {
    fn value(self, k: i64) -> Result<BigInt> {
        match self {
            Quantity::Coeff { m, n } => a_coefficient(k, m, n),
            Quantity::Tau { n } => tau_k(k, n),
            Quantity::CoeffDiff { m1, n1, m2, n2 } => Ok(a_coefficient(k, m1, n1)? - a_coefficient(k, m2, n2)?),
            Quantity::Hecke { m, n } => hecke_relation_defect(k, m, n, 2),
            Quantity::HeckeSquared { m, n } => hecke_squared_relation_defect(k, m, n, 2),
            Quantity::TauRecursion { b, n } => tau_recursion_defect(k, b, n),
        }
    }

    /// Largest basis index and coefficient exponent touched.
    fn reach(self) -> Option<(i64, i64)> {
        match self {
            Quantity::Coeff { m, n } => Some((m, n)),
            Quantity::CoeffDiff { m1, n1, m2, n2 } => Some((m1.max(m2), n1.max(n2))),
            Quantity::Hecke { m, n } => Some((2 * m, 2 * n)),
            Quantity::HeckeSquared { m, n } => Some((4 * m, 4 * n)),
            Quantity::Tau { .. } | Quantity::TauRecursion { .. } => None,
        }
    }
}

/// A claim awaiting evaluation.
#[derive(Clone, Debug)]
pub struct Cell {
    pub k: i64,
    pub case: String,
    pub index: (u32, u32, i64, i64),
    pub claim: Claim,
    pub quantity: Quantity,
}

/// Builds every basis table the cells need, one weight per task, so that
/// the cell sweep only reads shared tables.
pub fn prefetch(cells: &[Cell]) -> Result<()> {
    let mut reach: BTreeMap<i64, (i64, i64)> = BTreeMap::new();
    for c in cells {
        if let Some((m, n)) = c.quantity.reach() {
            let e = reach.entry(c.k).or_insert((m, n));
            *e = (e.0.max(m), e.1.max(n));
        }
    }
    let jobs: Vec<(i64, (i64, i64))> = reach.into_iter().collect();
    par::map(&jobs, |&(k, (m, n))| basis_table(k, m, n + 1).map(|_| ()))
        .into_iter()
        .collect()
}

/// Evaluates cells (in parallel when enabled) into records.
pub fn evaluate(cells: &[Cell]) -> Result<Vec<CongruenceRecord>> {
    prefetch(cells)?;
    par::map(cells, |c| {
        let v = c.quantity.value(c.k)?;
        Ok(CongruenceRecord::new(c.k, &c.case, c.index, c.claim, two_adic_valuation(&v)))
    })
    .into_iter()
    .collect()
}

/// A named form that the command line and harness can expand on demand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormHandle {
    /// `f_{k,m}`
    Basis { k: i64, m: i64 },
    /// `Delta_k`
    DeltaK { k: i64 },
    /// `E_4` or `E_6`
    Eisenstein { w: u32 },
    J,
    /// `alpha_k` for negative `k`
    Alpha { k: i64 },
    Phi,
}

impl FormHandle {
    pub fn expand(self, precision: i64) -> Result<QSeries> {
        match self {
            FormHandle::Basis { k, m } => level1::canonical_basis(k, m, precision),
            FormHandle::DeltaK { k } => level1::delta_k(k, precision),
            FormHandle::Eisenstein { w } => level1::eisenstein(w, precision),
            FormHandle::J => Ok(level1::j_invariant(precision)),
            FormHandle::Alpha { k } => level2::alpha(k, precision),
            FormHandle::Phi => Ok(level2::phi(precision)),
        }
    }
}

impl std::str::FromStr for FormHandle {
    type Err = Error;
    /// `f(k,m)`, `Delta(k)`, `E4`, `E6`, `j`, `alpha(k)`, `Phi`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("unknown form `{s}`"),
        };
        let args = |name: &str| -> Option<Vec<i64>> {
            let inner = s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
            inner.split(',').map(|x| x.trim().parse().ok()).collect()
        };
        match s {
            "E4" => return Ok(FormHandle::Eisenstein { w: 4 }),
            "E6" => return Ok(FormHandle::Eisenstein { w: 6 }),
            "j" => return Ok(FormHandle::J),
            "Phi" => return Ok(FormHandle::Phi),
            _ => {}
        }
        if let Some(v) = args("f") {
            if let [k, m] = v[..] {
                return Ok(FormHandle::Basis { k, m });
            }
        }
        if let Some(v) = args("Delta") {
            if let [k] = v[..] {
                return Ok(FormHandle::DeltaK { k });
            }
        }
        if let Some(v) = args("alpha") {
            if let [k] = v[..] {
                return Ok(FormHandle::Alpha { k });
            }
        }
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_handles() {
        let f: FormHandle = "f(12, 0)".parse().unwrap();
        assert_eq!(f, FormHandle::Basis { k: 12, m: 0 });
        assert_eq!("Delta(16)".parse::<FormHandle>().unwrap(), FormHandle::DeltaK { k: 16 });
        assert!("g(1)".parse::<FormHandle>().is_err());
        let d = FormHandle::DeltaK { k: 12 }.expand(10).unwrap();
        assert_eq!(d, level1::delta(10));
    }

    #[test]
    fn evaluation_order_is_stable() {
        let cells: Vec<Cell> = (1..6)
            .rev()
            .map(|n| Cell {
                k: 12,
                case: "x".into(),
                index: (0, 0, 1, n),
                claim: Claim::None,
                quantity: Quantity::Coeff { m: 1, n },
            })
            .collect();
        let recs = evaluate(&cells).unwrap();
        let ns: Vec<i64> = recs.iter().map(|r| r.n).collect();
        assert_eq!(ns, vec![5, 4, 3, 2, 1]);
    }
}
