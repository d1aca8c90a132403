//! Symbolic two-dissection in the Kolberg functions
//! `phi(q) = prod (1 - q^k)`, `Q = prod (1 + q^k)`, `R = Q(q^2)`,
//! `S = R(q^2)`, `T = S(q^2)`, together with `phi(q^2), phi(q^4), phi(q^8)`.
//!
//! Every generator except `q`, `Q` and `phi(q)` is a series in `q^2`, so the
//! parity of a monomial is decided by its `q` exponent once `Q^(2h)` is
//! rewritten as `R^h (cos h alpha + i sin h alpha)`.

mod numeric;
mod parse;
mod trig;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use numeric::{dissect_numeric, to_qseries};
pub use parse::parse_expr;
pub use trig::{expand_cos, expand_isin};

/// Exponent vector of a monomial. The derived order compares `q`, `Q`, `R`,
/// `S`, `T`, `phi(q^2)`, `phi(q^4)`, `phi(q^8)`, `phi(q)` in turn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponents {
    pub q: i64,
    pub big_q: i64,
    pub r: i64,
    pub s: i64,
    pub t: i64,
    pub phi2: i64,
    pub phi4: i64,
    pub phi8: i64,
    pub phi1: i64,
}

impl Exponents {
    fn zip(self, o: Self, f: impl Fn(i64, i64) -> i64) -> Self {
        Exponents {
            q: f(self.q, o.q),
            big_q: f(self.big_q, o.big_q),
            r: f(self.r, o.r),
            s: f(self.s, o.s),
            t: f(self.t, o.t),
            phi2: f(self.phi2, o.phi2),
            phi4: f(self.phi4, o.phi4),
            phi8: f(self.phi8, o.phi8),
            phi1: f(self.phi1, o.phi1),
        }
    }

    fn times(self, n: i64) -> Self {
        self.zip(Self::default(), |a, _| a * n)
    }

    fn get(&self, g: Gen) -> i64 {
        match g {
            Gen::Q => self.q,
            Gen::BigQ => self.big_q,
            Gen::R => self.r,
            Gen::S => self.s,
            Gen::T => self.t,
            Gen::Phi2 => self.phi2,
            Gen::Phi4 => self.phi4,
            Gen::Phi8 => self.phi8,
            Gen::Phi1 => self.phi1,
        }
    }

    fn slot(&mut self, g: Gen) -> &mut i64 {
        match g {
            Gen::Q => &mut self.q,
            Gen::BigQ => &mut self.big_q,
            Gen::R => &mut self.r,
            Gen::S => &mut self.s,
            Gen::T => &mut self.t,
            Gen::Phi2 => &mut self.phi2,
            Gen::Phi4 => &mut self.phi4,
            Gen::Phi8 => &mut self.phi8,
            Gen::Phi1 => &mut self.phi1,
        }
    }
}

/// The generators, in display order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    Q,
    BigQ,
    R,
    S,
    T,
    Phi2,
    Phi4,
    Phi8,
    Phi1,
}

impl Gen {
    pub const ALL: [Gen; 9] = [
        Gen::Q,
        Gen::BigQ,
        Gen::R,
        Gen::S,
        Gen::T,
        Gen::Phi2,
        Gen::Phi4,
        Gen::Phi8,
        Gen::Phi1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Gen::Q => "q",
            Gen::BigQ => "Q",
            Gen::R => "R",
            Gen::S => "S",
            Gen::T => "T",
            Gen::Phi2 => "phi2",
            Gen::Phi4 => "phi4",
            Gen::Phi8 => "phi8",
            Gen::Phi1 => "phi1",
        }
    }

    pub fn from_name(s: &str) -> Option<Gen> {
        Gen::ALL.into_iter().find(|g| g.name() == s)
    }
}

/// One term `coefficient * q^.. Q^.. ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KolbergMonomial {
    pub coefficient: BigInt,
    pub exponents: Exponents,
}

/// An integer combination of distinct monomials with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct KolbergExpr {
    terms: BTreeMap<Exponents, BigInt>,
}

impl KolbergExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, Exponents::default())
    }

    pub fn monomial(c: BigInt, e: Exponents) -> Self {
        let mut out = Self::zero();
        out.add_term(e, c);
        out
    }

    pub fn var(g: Gen) -> Self {
        let mut e = Exponents::default();
        *e.slot(g) = 1;
        Self::monomial(BigInt::one(), e)
    }

    /// `c * g^n`.
    pub fn power_of(g: Gen, n: i64, c: i64) -> Self {
        let mut e = Exponents::default();
        *e.slot(g) = n;
        Self::monomial(BigInt::from(c), e)
    }

    pub fn from_monomials(ms: impl IntoIterator<Item = KolbergMonomial>) -> Self {
        let mut out = Self::zero();
        for m in ms {
            out.add_term(m.exponents, m.coefficient);
        }
        out
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> Vec<KolbergMonomial> {
        self.terms
            .iter()
            .map(|(e, c)| KolbergMonomial {
                coefficient: c.clone(),
                exponents: *e,
            })
            .collect()
    }

    pub fn coefficient(&self, e: &Exponents) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        KolbergExpr {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiplies every monomial by `c * x^e`.
    pub fn mul_monomial(&self, c: &BigInt, e: Exponents) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        KolbergExpr {
            terms: self
                .terms
                .iter()
                .map(|(x, v)| (x.zip(e, |a, b| a + b), v * c))
                .collect(),
        }
    }

    /// Integer power; negative exponents need a single-monomial `self` with
    /// coefficient `1` or `-1`.
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            let mut acc = Self::one();
            let mut base = self.clone();
            let mut k = n as u64;
            while k > 0 {
                if k & 1 == 1 {
                    acc = &acc * &base;
                }
                k >>= 1;
                if k > 0 {
                    base = &base * &base;
                }
            }
            return Ok(acc);
        }
        let (e, c) = self.single().ok_or(Error::NonMonomialInverse)?;
        if !(c.is_one() || (-c).is_one()) {
            return Err(Error::NonMonomialInverse);
        }
        let sign = if c.is_negative() && n % 2 != 0 { -1 } else { 1 };
        Ok(Self::monomial(BigInt::from(sign), e.times(n)))
    }

    fn single(&self) -> Option<(Exponents, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    /// `self / other` for a unit monomial `other`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.pow(-1)?)
    }

    /// Re-keys every monomial, merging collisions.
    fn map_monomials(&self, mut f: impl FnMut(Exponents) -> Result<Exponents>) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(f(*e)?, c.clone());
        }
        Ok(out)
    }
}

impl std::ops::Add for &KolbergExpr {
    type Output = KolbergExpr;
    fn add(self, rhs: &KolbergExpr) -> KolbergExpr {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &KolbergExpr {
    type Output = KolbergExpr;
    fn sub(self, rhs: &KolbergExpr) -> KolbergExpr {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl std::ops::Neg for &KolbergExpr {
    type Output = KolbergExpr;
    fn neg(self) -> KolbergExpr {
        self.scale(&BigInt::from(-1))
    }
}

// Monomials multiply by adding exponents.
#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Mul for &KolbergExpr {
    type Output = KolbergExpr;
    fn mul(self, rhs: &KolbergExpr) -> KolbergExpr {
        let mut out = KolbergExpr::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.zip(*b, |s, t| s + t), x * y);
            }
        }
        out
    }
}

impl fmt::Display for KolbergExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            for g in Gen::ALL {
                match e.get(g) {
                    0 => {}
                    1 => factors.push(g.name().to_string()),
                    n => factors.push(format!("{}^{}", g.name(), n)),
                }
            }
            if !mag.is_one() || factors.is_empty() {
                factors.insert(0, mag.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for KolbergExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl FromStr for Parity {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "even" | "0" => Ok(Parity::Even),
            "odd" | "1" => Ok(Parity::Odd),
            _ => Err(format!("unknown parity `{s}`")),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Rewrites `phi(q)^n` as `phi(q^2)^n Q^-n`.
pub fn normalize_phi1(expr: &KolbergExpr) -> KolbergExpr {
    expr.map_monomials(|mut e| {
        let n = std::mem::take(&mut e.phi1);
        e.phi2 += n;
        e.big_q -= n;
        Ok(e)
    })
    .expect("infallible")
}

/// Rewrites `phi(q^2)^n` as `phi(q^4)^n R^-n`.
pub fn phi2_to_phi4(expr: &KolbergExpr) -> KolbergExpr {
    expr.map_monomials(|mut e| {
        let n = std::mem::take(&mut e.phi2);
        e.phi4 += n;
        e.r -= n;
        Ok(e)
    })
    .expect("infallible")
}

/// The even (`(f)_0`) or odd (`(f)_1`) part, without reindexing.
pub fn dissect(expr: &KolbergExpr, parity: Parity) -> Result<KolbergExpr> {
    let expr = normalize_phi1(expr);
    let mut out = KolbergExpr::zero();
    for (e, c) in expr.terms() {
        if e.big_q % 2 != 0 {
            return Err(Error::OddQExponent(e.big_q));
        }
        let h = e.big_q / 2;
        let rest = Exponents {
            big_q: 0,
            r: e.r + h,
            ..*e
        };
        // Q^(2h) = R^h (cos h alpha + i sin h alpha); sine is odd in h.
        let want_cos = (e.q.is_even()) == (parity == Parity::Even);
        let part = if want_cos {
            expand_cos(h.unsigned_abs() as u32)
        } else if h < 0 {
            -&expand_isin(h.unsigned_abs() as u32)
        } else {
            expand_isin(h as u32)
        };
        out = &out + &part.mul_monomial(c, rest);
    }
    Ok(out)
}

/// Least nonnegative residues modulo `2^n`, dropping zeros.
pub fn reduce_mod_pow2(expr: &KolbergExpr, n: u32) -> KolbergExpr {
    let m = BigInt::one() << n;
    let mut out = KolbergExpr::zero();
    for (e, c) in expr.terms() {
        out.add_term(*e, c.mod_floor(&m));
    }
    out
}

/// The substitution `q^2 -> q` on an expression in `q^2`.
pub fn halve(expr: &KolbergExpr) -> Result<KolbergExpr> {
    expr.map_monomials(|e| {
        if e.big_q != 0 {
            return Err(Error::NotEvenSeries("Q"));
        }
        if e.phi1 != 0 {
            return Err(Error::NotEvenSeries("phi1"));
        }
        if e.q % 2 != 0 {
            return Err(Error::OddExponentOfQ(e.q));
        }
        // phi(q^2) -> phi(q) = phi(q^2) / Q
        Ok(Exponents {
            q: e.q / 2,
            big_q: e.r - e.phi2,
            r: e.s,
            s: e.t,
            t: 0,
            phi2: e.phi2 + e.phi4,
            phi4: e.phi8,
            phi8: 0,
            phi1: 0,
        })
    })
}

/// Minimum 2-adic valuation of the coefficients (`None` for zero).
pub fn min_two_adic_valuation(expr: &KolbergExpr) -> Option<u64> {
    expr.terms()
        .filter_map(|(_, c)| crate::two_adic_valuation(c).finite())
        .min()
}
