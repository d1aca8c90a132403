//! Exact q-expansions of weakly holomorphic modular forms of level 1 and 2,
//! Kolberg-style symbolic two-dissections, and a verification harness for
//! 2-adic divisibility of canonical-basis coefficients.
//!
//! Every coefficient is an arbitrary-precision integer and every series
//! carries an explicit precision `O(q^P)`; reading past it is an error.

pub mod dissection;
pub mod error;
pub mod harness;
pub mod level1;
pub mod level2;
pub mod operators;
pub mod par;
pub mod qseries;

pub use error::{Error, Result};
pub use qseries::{two_adic_valuation, QSeries, Valuation};
