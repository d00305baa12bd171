use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("binomial coefficient with negative upper argument {n}")]
    NegativeBinomialTop { n: i64 },

    #[error("alternating binomial sum needs n >= 1 and m >= 0 (got n = {n}, m = {m})")]
    AlternatingSumDomain { n: i64, m: i64 },

    #[error("field order {q} is not a prime power")]
    NotPrimePower { q: u64 },

    #[error("field order {q} is outside the supported range 2..=32")]
    UnsupportedFieldOrder { q: u64 },

    #[error("zero has no multiplicative inverse")]
    InverseOfZero,

    #[error("invalid code parameters: {0}")]
    InvalidParams(String),

    #[error("weight {w} outside the admissible range {lo}..={hi} for {what}")]
    WeightOutOfRange {
        what: &'static str,
        w: i64,
        lo: i64,
        hi: i64,
    },

    #[error("{what} is not available for these parameters: {reason}")]
    Inadmissible { what: String, reason: String },

    #[error("helper term {name} is undefined at w = {w}")]
    HelperUndefined { name: String, w: i64 },

    #[error("{what} evaluated to the non-integral value {value}")]
    NonIntegral { what: &'static str, value: String },

    #[error("{what} evaluated to the negative count {value} at w = {w}")]
    NegativeCount {
        what: &'static str,
        w: usize,
        value: String,
    },

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
