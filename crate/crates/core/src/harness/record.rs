use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::qseries::Valuation;

/// What a record asserts about its observed 2-adic valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    /// `v_2 >= e`.
    Divisible(u32),
    /// The quantity vanishes (`v_2 = inf`).
    Exact,
    /// Informational row with nothing asserted.
    None,
}

impl Claim {
    pub fn holds(self, observed: Valuation) -> bool {
        match self {
            Claim::Divisible(e) => observed.at_least(e as u64),
            Claim::Exact => observed.is_infinite(),
            Claim::None => true,
        }
    }

    fn to_json(self) -> Value {
        match self {
            Claim::Divisible(e) => json!(e),
            Claim::Exact => json!("exact"),
            Claim::None => Value::Null,
        }
    }
}

impl std::fmt::Display for Claim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Claim::Divisible(e) => write!(f, "{e}"),
            Claim::Exact => write!(f, "exact"),
            Claim::None => write!(f, "-"),
        }
    }
}

/// One checked cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceRecord {
    pub k: i64,
    pub case: String,
    pub a: u32,
    pub b: u32,
    pub m: i64,
    pub n: i64,
    pub claimed: Claim,
    pub observed: Valuation,
    pub pass: bool,
}

impl CongruenceRecord {
    pub fn new(k: i64, case: &str, (a, b, m, n): (u32, u32, i64, i64), claimed: Claim, observed: Valuation) -> Self {
        CongruenceRecord {
            k,
            case: case.to_string(),
            a,
            b,
            m,
            n,
            claimed,
            observed,
            pass: claimed.holds(observed),
        }
    }

    fn sort_key(&self) -> (i64, &str, u32, u32, i64, i64) {
        (self.k, &self.case, self.a, self.b, self.m, self.n)
    }

    pub fn is_informational(&self) -> bool {
        self.claimed == Claim::None
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "case": self.case,
            "a": self.a,
            "b": self.b,
            "m": self.m,
            "n": self.n,
            "claimed": self.claimed.to_json(),
            "observed": self.observed.to_string(),
            "pass": self.pass,
        })
    }
}

impl std::fmt::Display for CongruenceRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "k={} case={} a={} b={} m={} n={} claimed={} observed={} {}",
            self.k,
            self.case,
            self.a,
            self.b,
            self.m,
            self.n,
            self.claimed,
            self.observed,
            if self.is_informational() {
                "info"
            } else if self.pass {
                "pass"
            } else {
                "FAIL"
            }
        )
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    /// Records that assert something.
    pub total: usize,
    pub passed: usize,
    pub informational: usize,
}

/// An ordered collection of records with the parameters that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub version: String,
    pub params: Value,
    pub records: Vec<CongruenceRecord>,
}

impl VerificationReport {
    pub fn new(params: Value, mut records: Vec<CongruenceRecord>) -> Self {
        records.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
        VerificationReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            params,
            records,
        }
    }

    pub fn merge(params: Value, reports: impl IntoIterator<Item = VerificationReport>) -> Self {
        let records = reports.into_iter().flat_map(|r| r.records).collect();
        Self::new(params, records)
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for r in &self.records {
            if r.is_informational() {
                s.informational += 1;
            } else {
                s.total += 1;
                s.passed += r.pass as usize;
            }
        }
        s
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn first_failure(&self) -> Option<&CongruenceRecord> {
        self.records.iter().find(|r| !r.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "version": self.version,
            "params": self.params,
            "records": self.records.iter().map(CongruenceRecord::to_json).collect::<Vec<_>>(),
            "summary": self.summary(),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>4} {:<14} {:>2} {:>2} {:>4} {:>4} {:>7} {:>8}  status",
            "k", "case", "a", "b", "m", "n", "claimed", "observed"
        );
        for r in &self.records {
            let status = if r.is_informational() {
                "info"
            } else if r.pass {
                "pass"
            } else {
                "FAIL"
            };
            let _ = writeln!(
                out,
                "{:>4} {:<14} {:>2} {:>2} {:>4} {:>4} {:>7} {:>8}  {}",
                r.k,
                r.case,
                r.a,
                r.b,
                r.m,
                r.n,
                r.claimed.to_string(),
                r.observed.to_string(),
                status
            );
        }
        let s = self.summary();
        let _ = writeln!(
            out,
            "{} of {} claims pass, {} informational",
            s.passed, s.total, s.informational
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_flag_and_order() {
        let r1 = CongruenceRecord::new(16, "a=0", (0, 1, 1, 1), Claim::Divisible(3), Valuation::Finite(3));
        let r2 = CongruenceRecord::new(12, "a=0", (0, 2, 1, 1), Claim::Divisible(6), Valuation::Finite(5));
        let r3 = CongruenceRecord::new(12, "a=b", (1, 1, 1, 1), Claim::None, Valuation::Finite(0));
        let rep = VerificationReport::new(Value::Null, vec![r1, r2.clone(), r3]);
        assert_eq!(rep.records[0], r2);
        assert!(!rep.all_pass());
        assert_eq!(rep.first_failure(), Some(&r2));
        assert_eq!(
            rep.summary(),
            Summary {
                total: 2,
                passed: 1,
                informational: 1
            }
        );
        let j = rep.to_json();
        assert_eq!(j["records"][0]["observed"], "5");
        assert_eq!(j["records"][1]["claimed"], Value::Null);
    }

    #[test]
    fn exact_claims() {
        assert!(Claim::Exact.holds(Valuation::Infinite));
        assert!(!Claim::Exact.holds(Valuation::Finite(40)));
        assert_eq!(Claim::Exact.to_json(), json!("exact"));
    }
}
