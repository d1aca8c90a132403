use serde_json::json;

use super::{evaluate, Cell, Claim, Quantity, VerificationReport};
use crate::error::{Error, Result};
use crate::level1::{WeightProfile, SIX_WEIGHTS};

/// Case labels of the main grid, in report order.
pub const CASE_LABELS: [&str; 8] = ["a=0", "a>0,b=0", "a>b>=1", "b>a>=1", "a=b", "m=-1", "m=0,b=0", "m=0,b>0"];

/// Label of the `(a, b)` cell for `a_k(2^a m, 2^b n)`.
pub fn case_label(a: u32, b: u32) -> &'static str {
    match (a, b) {
        (0, _) => "a=0",
        (_, 0) => "a>0,b=0",
        _ if a > b => "a>b>=1",
        _ if b > a => "b>a>=1",
        _ => "a=b",
    }
}

/// Exponent `e` with `2^e | a_k(2^a m, 2^b n)` for odd positive `m, n`.
pub fn claimed_exponent(k: i64, a: u32, b: u32) -> Result<u32> {
    let p = WeightProfile::new(k)?;
    Ok(match (a, b) {
        (0, b) => p.gamma * b,
        (_, 0) => p.nu,
        _ if a > b => p.chi,
        _ if b > a => p.rho + p.gamma * (b - a),
        _ => return Err(Error::NoClaim),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridParams {
    pub weights: Vec<i64>,
    pub a_max: u32,
    pub b_max: u32,
    pub m_list: Vec<i64>,
    pub n_list: Vec<i64>,
    /// Largest `b` in the `a_k(-1, 2^b n)` row.
    pub tau_b_max: u32,
}

impl Default for GridParams {
    fn default() -> Self {
        GridParams {
            weights: SIX_WEIGHTS.to_vec(),
            a_max: 4,
            b_max: 4,
            m_list: vec![1, 3, 5, 7],
            n_list: vec![1, 3, 5, 7],
            tau_b_max: 6,
        }
    }
}

impl GridParams {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "weights": self.weights,
            "a_max": self.a_max,
            "b_max": self.b_max,
            "m_list": self.m_list,
            "n_list": self.n_list,
            "tau_b_max": self.tau_b_max,
        })
    }
}

fn check_odd(list: &[i64]) -> Result<()> {
    match list.iter().find(|&&x| x <= 0 || x % 2 == 0) {
        Some(&x) => Err(Error::Parse {
            pos: 0,
            msg: format!("{x} is not an odd positive integer"),
        }),
        None => Ok(()),
    }
}

/// Every cell of the grid, including informational `a = b` cells.
pub fn main_theorem_cells(g: &GridParams) -> Result<Vec<Cell>> {
    check_odd(&g.m_list)?;
    check_odd(&g.n_list)?;
    let mut cells = Vec::new();
    for &k in &g.weights {
        let p = WeightProfile::new(k)?;
        for a in 0..=g.a_max {
            for b in 0..=g.b_max {
                let claim = match claimed_exponent(k, a, b) {
                    Ok(e) => Claim::Divisible(e),
                    Err(Error::NoClaim) => Claim::None,
                    Err(e) => return Err(e),
                };
                for &m in &g.m_list {
                    for &n in &g.n_list {
                        let (mm, nn) = (m << a, n << b);
                        cells.push(Cell {
                            k,
                            case: case_label(a, b).into(),
                            index: (a, b, m, n),
                            claim,
                            quantity: Quantity::Coeff { m: mm, n: nn },
                        });
                    }
                }
            }
        }
        for &n in &g.n_list {
            for b in 0..=g.tau_b_max {
                cells.push(Cell {
                    k,
                    case: "m=-1".into(),
                    index: (0, b, -1, n),
                    claim: Claim::Divisible(p.gamma * b),
                    quantity: Quantity::Tau { n: n << b },
                });
            }
            for b in 0..=g.b_max {
                let (case, e) = if b == 0 { ("m=0,b=0", p.eta) } else { ("m=0,b>0", p.omega) };
                cells.push(Cell {
                    k,
                    case: case.into(),
                    index: (0, b, 0, n),
                    claim: Claim::Divisible(e),
                    quantity: Quantity::Coeff { m: 0, n: n << b },
                });
            }
        }
    }
    Ok(cells)
}

pub fn verify_main_theorem(g: &GridParams) -> Result<VerificationReport> {
    let cells = main_theorem_cells(g)?;
    Ok(VerificationReport::new(g.to_json(), evaluate(&cells)?))
}
