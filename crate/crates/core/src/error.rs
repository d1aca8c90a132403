use num_bigint::BigInt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("leading coefficient {0} is not a unit")]
    NonUnitLeadingCoefficient(BigInt),
    #[error("coefficient of q^{exponent} requested from a series known only to O(q^{precision})")]
    PrecisionExceeded { exponent: i64, precision: i64 },
    #[error("index m = {m} is below -ell = {min} for weight {k}")]
    IndexBelowRange { k: i64, m: i64, min: i64 },
    #[error("weight {0} is not supported by this operation")]
    UnsupportedWeight(i64),
    #[error("coefficient of q^{exponent} is not divisible by {divisor}")]
    ExactDivisionFailure { exponent: i64, divisor: BigInt },
    #[error("series is not in the span of the basis (residual at q^{exponent})")]
    NotInSpan { exponent: i64 },
    #[error("basis is not triangular with unit pivots at element {index}")]
    BasisNotTriangular { index: usize },
    #[error("scalar {base}^{exponent} is not integral")]
    FractionalScalar { base: u64, exponent: i64 },
    #[error("monomial has odd Q-exponent {0}")]
    OddQExponent(i64),
    #[error("monomial has odd q-exponent {0}; divide by q first")]
    OddExponentOfQ(i64),
    #[error("generator {0} has no image under q^2 -> q")]
    NotEvenSeries(&'static str),
    #[error("cannot invert a non-monomial expression or a non-unit coefficient")]
    NonMonomialInverse,
    #[error("no claim is made for this case (a = b >= 1)")]
    NoClaim,
    #[error("unknown lemma `{0}`")]
    UnknownLemma(String),
    #[error("unknown case label `{0}`")]
    UnknownCase(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
