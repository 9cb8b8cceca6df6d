//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is below the minimum of 3")]
    TooSmall(u64),
    #[error("cannot invert zero modulo {0}")]
    ZeroInverse(u64),
    #[error("character index {index} out of range [0, {p} - 2]")]
    IndexOutOfRange { index: u64, p: u64 },
    #[error("interval of length {len} at shift {shift} is invalid modulo {p}")]
    BadInterval { shift: u64, len: u64, p: u64 },
    #[error("interval {{{start}+1, ..., {start}+{len}}} passes through 0 modulo {p}")]
    WrapsZero { start: u64, len: u64, p: u64 },
    #[error("float value {value} drifted more than {tolerance} from integer {rounded}")]
    RoundingDrift {
        value: f64,
        rounded: i64,
        tolerance: f64,
    },
    #[error("polynomial has a repeated factor")]
    NotSquareFree,
    #[error("polynomials share a nonconstant factor")]
    NotCoprime,
    #[error("operation requires a nonprincipal character")]
    PrincipalCharacter,
    #[error("set elements must be distinct residues in [1, p-1]")]
    InvalidSet,
    #[error("requested {requested} elements but only {available} units exist modulo {p}")]
    TooLarge {
        requested: u64,
        available: u64,
        p: u64,
    },
    #[error("work estimate {estimate} exceeds the brute-force budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("parameter ell must be at least 1, got {0}")]
    BadEll(u32),
    #[error("parameter ell must be even for this bound, got {0}")]
    OddEll(u32),
    #[error("table (p={table_p}, r={table_r}) does not match query (p={query_p}, r={query_r})")]
    DimensionMismatch {
        table_p: u64,
        table_r: u32,
        query_p: u64,
        query_r: u32,
    },
    #[error("weight of modulus {0} exceeds 1")]
    WeightTooLarge(f64),
    #[error("the factored route requires unit interval and set weights")]
    WeightedInput,
    #[error("saving exponent needs 0 < exact <= trivial, got exact={exact}, trivial={trivial}")]
    DomainError { exact: f64, trivial: f64 },
    #[error("sweep grid is empty")]
    EmptyGrid,
    #[error("table cache {path}: {reason}")]
    BadCache { path: String, reason: String },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
