//! Symbolic proof that `a_{2-k}(4, 2n) = 0 (mod 2^(rho+gamma))` for odd `n`.
//!
//! `f_{2-k,4} = Delta^ell E_{k'} P(j)` is rewritten in Kolberg functions,
//! dissected twice, and the surviving coefficients are inspected.

use num_bigint::BigInt;

use crate::dissection::{
    dissect, dissect_numeric, halve, min_two_adic_valuation, phi2_to_phi4, reduce_mod_pow2, to_qseries, Exponents,
    KolbergExpr, Parity,
};
use crate::error::Result;
use crate::level1::{canonical_basis, delta_power, e_weight, j_invariant, WeightDecomposition, WeightProfile};
use crate::level2::decompose_in_basis;

fn mono(c: i64, e: Exponents) -> KolbergExpr {
    KolbergExpr::monomial(BigInt::from(c), e)
}

fn ex(q: i64, big_q: i64, phi2: i64, phi4: i64) -> Exponents {
    Exponents {
        q,
        big_q,
        phi2,
        phi4,
        ..Exponents::default()
    }
}

fn sum<const N: usize>(parts: [KolbergExpr; N]) -> KolbergExpr {
    parts.iter().fold(KolbergExpr::zero(), |acc, x| &acc + x)
}

/// `Delta = q phi(q^2)^24 Q^-24`.
pub fn kolberg_delta() -> KolbergExpr {
    mono(1, ex(1, -24, 24, 0))
}

/// `E_4 = phi(q^2)^8 (Q^-16 + 2^8 q Q^8)`.
pub fn kolberg_e4() -> KolbergExpr {
    &mono(1, ex(0, -16, 8, 0)) + &mono(256, ex(1, 8, 8, 0))
}

pub fn kolberg_e6() -> KolbergExpr {
    sum([
        mono(1, ex(0, -24, 12, 0)),
        mono(-480, ex(1, 0, 12, 0)),
        mono(-(1 << 9) * 33, ex(2, 8, 4, 8)),
        mono(1 << 13, ex(3, 0, -12, 24)),
    ])
}

pub fn kolberg_j() -> KolbergExpr {
    sum([
        mono(1, ex(-1, -24, 0, 0)),
        mono(768, ex(0, 0, 0, 0)),
        mono(3 << 16, ex(1, 24, 0, 0)),
        mono(1 << 24, ex(2, 48, 0, 0)),
    ])
}

fn kolberg_e_weight(kprime: i64) -> KolbergExpr {
    let (a, b) = match kprime {
        0 => (0, 0),
        4 => (1, 0),
        6 => (0, 1),
        8 => (2, 0),
        10 => (1, 1),
        _ => (2, 1),
    };
    let e4 = kolberg_e4().pow(a).expect("nonnegative");
    let e6 = kolberg_e6().pow(b).expect("nonnegative");
    &e4 * &e6
}

#[derive(Clone, Debug)]
pub struct PipelineTranscript {
    pub k: i64,
    /// Coefficients of `P(j)`, highest degree first.
    pub poly: Vec<BigInt>,
    /// Working modulus exponent.
    pub modulus_exp: u32,
    /// Exponent the final coefficients must reach.
    pub claim: u32,
    /// Named intermediate expressions, in order.
    pub steps: Vec<(String, KolbergExpr)>,
    pub final_expr: KolbergExpr,
    /// `None` when the final expression vanishes.
    pub min_valuation: Option<u64>,
    /// Numeric expansions agree with the symbolic steps.
    pub numeric_agrees: bool,
    pub pass: bool,
}

impl PipelineTranscript {
    pub fn step(&self, name: &str) -> Option<&KolbergExpr> {
        self.steps.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }
}

impl std::fmt::Display for PipelineTranscript {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "k = {}, modulus 2^{}, claim 2^{}", self.k, self.modulus_exp, self.claim)?;
        let poly: Vec<String> = self.poly.iter().map(ToString::to_string).collect();
        writeln!(f, "P(j) coefficients: [{}]", poly.join(", "))?;
        for (name, e) in &self.steps {
            writeln!(f, "{name}: {e}")?;
        }
        let v = self.min_valuation.map_or("inf".to_string(), |v| v.to_string());
        writeln!(f, "min valuation {v}, numeric check {}", self.numeric_agrees)?;
        write!(f, "{}", if self.pass { "pass" } else { "FAIL" })
    }
}

const CHECK_PRECISION: i64 = 80;

pub fn run_lemma51_pipeline(k: i64) -> Result<PipelineTranscript> {
    let profile = WeightProfile::new(k)?;
    let w = 2 - k;
    let d = WeightDecomposition::new(w)?;
    let claim = profile.rho + profile.gamma;
    let n = claim + 1;

    let f = canonical_basis(w, 4, CHECK_PRECISION)?;
    let deg = 4 + d.ell;
    let prefactor = &delta_power(d.ell, CHECK_PRECISION) * &e_weight(d.kprime, CHECK_PRECISION)?;
    let j = j_invariant(CHECK_PRECISION);
    let basis: Vec<_> = (0..=deg)
        .rev()
        .map(|i| &prefactor * &j.pow(i).expect("nonnegative"))
        .collect();
    let poly = decompose_in_basis(&f, &basis)?;

    let kj = kolberg_j();
    let mut pj = KolbergExpr::zero();
    for (i, c) in (0..=deg).rev().zip(&poly) {
        pj = &pj + &kj.pow(i)?.scale(c);
    }
    let input = &(&kolberg_delta().pow(d.ell)? * &kolberg_e_weight(d.kprime)) * &pj;

    let reduced = reduce_mod_pow2(&input, n);
    let even = reduce_mod_pow2(&phi2_to_phi4(&dissect(&reduced, Parity::Even)?), n);
    let halved = halve(&even)?;
    let final_expr = reduce_mod_pow2(&dissect(&halved, Parity::Odd)?, n);
    let min_valuation = min_two_adic_valuation(&final_expr);

    let p = CHECK_PRECISION;
    let modulus = n as u64;
    let input_ok = to_qseries(&input, p) == f.truncate(p);
    let f2 = f.u_op(2);
    let numeric_final = to_qseries(&final_expr, f2.precision());
    let final_ok = numeric_final.congruent_mod_pow2(&dissect_numeric(&f2, Parity::Odd), modulus);
    let even_ok = to_qseries(&even, p).congruent_mod_pow2(&dissect_numeric(&f, Parity::Even), modulus);

    let pass = min_valuation.is_none_or(|v| v >= claim as u64);
    Ok(PipelineTranscript {
        k,
        poly,
        modulus_exp: n,
        claim,
        steps: vec![
            ("input".into(), input),
            ("reduced".into(), reduced),
            ("even part".into(), even),
            ("halved".into(), halved),
            ("odd part".into(), final_expr.clone()),
        ],
        final_expr,
        min_valuation,
        numeric_agrees: input_ok && even_ok && final_ok,
        pass,
    })
}
