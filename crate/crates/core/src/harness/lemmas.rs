use num_bigint::BigInt;
use serde_json::json;

use super::{evaluate, par, run_lemma51_pipeline, Cell, Claim, CongruenceRecord, Quantity, VerificationReport};
use crate::error::{Error, Result};
use crate::level1::{canonical_basis, eisenstein, WeightProfile, SIX_WEIGHTS};
use crate::level2::alpha;
use crate::qseries::{QSeries, Valuation};

/// Names accepted by [`verify_lemma`], plus `all`.
pub const LEMMA_NAMES: [&str; 21] = [
    "L2.2", "L3.1", "L3.2", "L3.3", "L5.1", "L6.3", "L6.4", "L6.5", "P6.6", "L6.7", "P6.8", "L7.1", "L7.2", "L7.3",
    "L7.4", "L7.5", "L7.6", "L7.7", "L7.8", "P7.9", "all",
];

/// Instance bounds for the lemma checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaBounds {
    pub weights: Vec<i64>,
    pub a_max: u32,
    pub b_max: u32,
    pub m_list: Vec<i64>,
    pub n_list: Vec<i64>,
    /// Odd indices `1, 3, ..., odd_max` for statements with one free index.
    pub odd_max: i64,
    /// `1 <= m, n <= hecke_max` for the exact Hecke relations.
    pub hecke_max: i64,
    pub tau_b_max: u32,
    pub tau_n_max: i64,
    pub alpha_precision: i64,
    pub identity_precision: i64,
}

impl Default for LemmaBounds {
    fn default() -> Self {
        LemmaBounds {
            weights: SIX_WEIGHTS.to_vec(),
            a_max: 4,
            b_max: 4,
            m_list: vec![1, 3, 5, 7],
            n_list: vec![1, 3, 5, 7],
            odd_max: 31,
            hecke_max: 16,
            tau_b_max: 6,
            tau_n_max: 9,
            alpha_precision: 100,
            identity_precision: 40,
        }
    }
}

impl LemmaBounds {
    fn odds(&self) -> Vec<i64> {
        (1..=self.odd_max).step_by(2).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "weights": self.weights,
            "a_max": self.a_max,
            "b_max": self.b_max,
            "m_list": self.m_list,
            "n_list": self.n_list,
            "odd_max": self.odd_max,
            "hecke_max": self.hecke_max,
            "tau_b_max": self.tau_b_max,
            "tau_n_max": self.tau_n_max,
            "alpha_precision": self.alpha_precision,
            "identity_precision": self.identity_precision,
        })
    }
}

/// Coefficient cells `a_k(2^a m, 2^b n)` over the `(a, b)` pairs accepted by
/// `keep`, with exponent `claim(profile, a, b)`.
fn coeff_cells(
    name: &str,
    bd: &LemmaBounds,
    keep: impl Fn(u32, u32) -> bool,
    claim: impl Fn(&WeightProfile, u32, u32) -> u32,
) -> Result<Vec<Cell>> {
    let mut out = Vec::new();
    for &k in &bd.weights {
        let p = WeightProfile::new(k)?;
        for a in 0..=bd.a_max {
            for b in 0..=bd.b_max {
                if !keep(a, b) {
                    continue;
                }
                for &m in &bd.m_list {
                    for &n in &bd.n_list {
                        out.push(Cell {
                            k,
                            case: name.into(),
                            index: (a, b, m, n),
                            claim: Claim::Divisible(claim(&p, a, b)),
                            quantity: Quantity::Coeff { m: m << a, n: n << b },
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Cells with one odd free index `x` feeding `quantity(x)`.
fn single_cells(
    name: &str,
    bd: &LemmaBounds,
    index: impl Fn(i64) -> (u32, u32, i64, i64),
    claim: impl Fn(&WeightProfile) -> u32,
    quantity: impl Fn(i64) -> Quantity,
) -> Result<Vec<Cell>> {
    let mut out = Vec::new();
    for &k in &bd.weights {
        let p = WeightProfile::new(k)?;
        for x in bd.odds() {
            out.push(Cell {
                k,
                case: name.into(),
                index: index(x),
                claim: Claim::Divisible(claim(&p)),
                quantity: quantity(x),
            });
        }
    }
    Ok(out)
}

fn alpha_records(bd: &LemmaBounds) -> Result<Vec<CongruenceRecord>> {
    let duals: Vec<i64> = bd.weights.iter().map(|k| 2 - k).collect();
    par::map(&duals, |&w| {
        let p = WeightProfile::new(2 - w)?;
        let a = alpha(w, bd.alpha_precision)?;
        let defect = &a - &QSeries::one(bd.alpha_precision);
        Ok(CongruenceRecord::new(
            w,
            "L2.2",
            (0, 0, 0, bd.alpha_precision),
            Claim::Divisible(p.xi),
            defect.min_two_adic_valuation(),
        ))
    })
    .into_iter()
    .collect()
}

/// `(E_4 power, C)` with `f_{2-k,2} E_4^r = f_{2-k+4r,2} + C f_{2-k+4r,1}`.
fn identity_constant(k: i64) -> (i64, i64) {
    match k {
        12 => (3, 744),
        16 => (3, 504),
        18 => (3, 1248),
        20 => (3, 264),
        22 => (4, 1248),
        _ => (3, 768),
    }
}

fn identity_records(bd: &LemmaBounds) -> Result<Vec<CongruenceRecord>> {
    let p = bd.identity_precision;
    par::map(&bd.weights, |&k| {
        WeightProfile::new(k)?;
        let (r, c) = identity_constant(k);
        let w = 2 - k;
        let lhs = &canonical_basis(w, 2, p)? * &eisenstein(4, p + 2)?.pow(r)?;
        let rhs = &canonical_basis(w + 4 * r, 2, p)? + &canonical_basis(w + 4 * r, 1, p)?.scale(&BigInt::from(c));
        let defect = &lhs - &rhs;
        Ok(CongruenceRecord::new(
            k,
            "L7.1/identity",
            (0, 0, c, p),
            Claim::Exact,
            defect.min_two_adic_valuation(),
        ))
    })
    .into_iter()
    .collect()
}

fn pipeline_records(bd: &LemmaBounds) -> Result<Vec<CongruenceRecord>> {
    par::map(&bd.weights, |&k| {
        let t = run_lemma51_pipeline(k)?;
        // A failed numeric cross-check invalidates the symbolic result.
        let observed = match (t.numeric_agrees, t.min_valuation) {
            (false, _) => Valuation::Finite(0),
            (true, Some(v)) => Valuation::Finite(v),
            (true, None) => Valuation::Infinite,
        };
        Ok(CongruenceRecord::new(
            k,
            "L5.1/pipeline",
            (1, 2, 0, 0),
            Claim::Divisible(t.claim),
            observed,
        ))
    })
    .into_iter()
    .collect()
}

fn lemma_cells(name: &str, bd: &LemmaBounds) -> Result<Vec<Cell>> {
    let mut cells = match name {
        "L3.1" | "L3.2" => {
            let mut out = Vec::new();
            for &k in &bd.weights {
                WeightProfile::new(k)?;
                for m in 1..=bd.hecke_max {
                    for n in 1..=bd.hecke_max {
                        out.push(Cell {
                            k,
                            case: name.into(),
                            index: (0, 0, m, n),
                            claim: Claim::Exact,
                            quantity: if name == "L3.1" {
                                Quantity::Hecke { m, n }
                            } else {
                                Quantity::HeckeSquared { m, n }
                            },
                        });
                    }
                }
            }
            out
        }
        "L3.3" => {
            let mut out = Vec::new();
            for &k in &bd.weights {
                let p = WeightProfile::new(k)?;
                for n in (1..=bd.tau_n_max).step_by(2) {
                    for b in 0..=bd.tau_b_max {
                        out.push(Cell {
                            k,
                            case: "L3.3".into(),
                            index: (0, b, -1, n),
                            claim: Claim::Divisible(p.gamma * b),
                            quantity: Quantity::Tau { n: n << b },
                        });
                        if b >= 1 {
                            out.push(Cell {
                                k,
                                case: "L3.3/recursion".into(),
                                index: (0, b, -1, n),
                                claim: Claim::Exact,
                                quantity: Quantity::TauRecursion { b, n },
                            });
                        }
                    }
                }
            }
            out
        }
        "L5.1" => single_cells(
            name,
            bd,
            |m| (1, 2, m, 1),
            |p| p.rho + p.gamma,
            |m| Quantity::Coeff { m: 2 * m, n: 4 },
        )?,
        "L6.3" => single_cells(name, bd, |n| (0, 0, 0, n), |p| p.eta, |n| Quantity::Coeff { m: 0, n })?,
        "L6.4" => {
            let mut out = Vec::new();
            for &k in &bd.weights {
                let p = WeightProfile::new(k)?;
                for b in 1..=bd.b_max {
                    for &n in &bd.n_list {
                        out.push(Cell {
                            k,
                            case: name.into(),
                            index: (0, b, 0, n),
                            claim: Claim::Divisible(p.omega),
                            quantity: Quantity::Coeff { m: 0, n: n << b },
                        });
                    }
                }
            }
            out
        }
        "L6.5" => single_cells(name, bd, |n| (1, 0, 1, n), |p| p.nu, |n| Quantity::Coeff { m: 2, n })?,
        "P6.6" => coeff_cells(name, bd, |a, b| a > 0 && b == 0, |p, _, _| p.nu)?,
        "L6.7" => {
            let mut out = Vec::new();
            for &k in &bd.weights {
                let p = WeightProfile::new(k)?;
                for a in 2..=bd.a_max {
                    for &m in &bd.m_list {
                        out.push(Cell {
                            k,
                            case: name.into(),
                            index: (a, 1, m, 1),
                            claim: Claim::Divisible(p.chi),
                            quantity: Quantity::Coeff { m: m << a, n: 2 },
                        });
                    }
                }
            }
            out
        }
        "P6.8" => coeff_cells(name, bd, |a, b| a > b, |p, _, _| p.chi)?,
        "L7.1" => single_cells(name, bd, |m| (0, 1, m, 1), |p| p.gamma, |m| Quantity::Coeff { m, n: 2 })?,
        "L7.2" => coeff_cells(name, bd, |a, b| b == a + 1, |p, _, _| p.gamma)?,
        "L7.3" => coeff_cells(name, bd, |a, b| b == a + 2, |p, _, _| 2 * p.gamma)?,
        "L7.4" => coeff_cells(name, bd, |a, b| a < b, |p, a, b| p.gamma * (b - a))?,
        "L7.5" => coeff_cells(name, bd, |a, b| a == 1 && b >= 2, |p, _, b| p.rho + p.gamma * (b - 1))?,
        "L7.6" => coeff_cells(name, bd, |a, b| a >= 1 && b == a + 1, |p, _, _| p.rho + p.gamma)?,
        "L7.7" => {
            let mut out = Vec::new();
            for &k in &bd.weights {
                let p = WeightProfile::new(k)?;
                for b in 1..bd.b_max {
                    for &m in &bd.m_list {
                        for &n in &bd.n_list {
                            out.push(Cell {
                                k,
                                case: name.into(),
                                index: (b, b, m, n),
                                claim: Claim::Divisible(p.chi + p.gamma),
                                quantity: Quantity::CoeffDiff {
                                    m1: m << (b + 1),
                                    n1: n << (b + 1),
                                    m2: m << b,
                                    n2: n << b,
                                },
                            });
                        }
                    }
                }
            }
            out
        }
        "L7.8" => coeff_cells(name, bd, |a, b| a >= 1 && b == a + 2, |p, _, _| p.rho + 2 * p.gamma)?,
        "P7.9" => coeff_cells(name, bd, |a, b| b > a && a >= 1, |p, a, b| p.rho + p.gamma * (b - a))?,
        "L2.2" => Vec::new(),
        _ => return Err(Error::UnknownLemma(name.to_string())),
    };
    cells.sort_by_key(|c| (c.k, c.index));
    Ok(cells)
}

/// Checks every instance of the named statement within `bd`.
pub fn verify_lemma(name: &str, bd: &LemmaBounds) -> Result<VerificationReport> {
    let names: Vec<&str> = if name == "all" {
        LEMMA_NAMES[..LEMMA_NAMES.len() - 1].to_vec()
    } else if LEMMA_NAMES.contains(&name) {
        vec![name]
    } else {
        return Err(Error::UnknownLemma(name.to_string()));
    };
    let mut cells = Vec::new();
    let mut records = Vec::new();
    for n in &names {
        cells.extend(lemma_cells(n, bd)?);
        match *n {
            "L2.2" => records.extend(alpha_records(bd)?),
            "L5.1" => records.extend(pipeline_records(bd)?),
            "L7.1" => records.extend(identity_records(bd)?),
            _ => {}
        }
    }
    records.extend(evaluate(&cells)?);
    let mut params = bd.to_json();
    params["lemma"] = json!(name);
    Ok(VerificationReport::new(params, records))
}
