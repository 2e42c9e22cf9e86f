use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported field size {0}: need a prime 2 <= q <= 17")]
    UnsupportedField(u32),

    #[error("series has no nonzero tracked coefficient")]
    ZeroSeries,

    #[error("precision exhausted: need coefficients below {needed}, only {available} tracked")]
    PrecisionExhausted { needed: i32, available: i32 },

    #[error("window [{from}, {to}) exceeds tracked window [{lo}, {prec})")]
    WindowViolation { from: i32, to: i32, lo: i32, prec: i32 },

    #[error("enumeration of {requested} points exceeds budget {cap}")]
    BudgetExceeded { requested: u128, cap: u64 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid combination: {0}")]
    InvalidCombination(String),

    #[error("no split element with m={m}, n={n} found over F_{q}")]
    ValuationMismatch { m: u32, n: u32, q: u32 },

    #[error("coordinate {coord} has a term outside its window: {detail}")]
    OutsideWindow { coord: char, detail: String },
}
