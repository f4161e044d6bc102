use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// The standing hypothesis on `(l, p)` fails for a theorem-level entry point.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("{what} has size {size}, exceeding the bound {bound}")]
    BoundExceeded { what: String, size: u128, bound: u128 },

    #[error("prime search for l={l}, n={n} exceeded the bound {bound}")]
    SearchExhausted { l: u64, n: u32, bound: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{a} is not a unit modulo {modulus}")]
    NotCoprime { a: u64, modulus: u64 },

    #[error("cannot reduce modulo {l}: {reason}")]
    NotReducible { l: u64, reason: String },

    #[error("operands belong to different constructions: {0}")]
    ParamMismatch(String),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("swap automorphism requires t1 = t2 (got t1={t1}, t2={t2})")]
    SwapNeedsEqualLevels { t1: u32, t2: u32 },

    /// A checked mathematical identity failed; carries the counterexample.
    #[error("assertion failed: {0}")]
    Assertion(String),
}

impl Error {
    pub fn bound(what: impl Into<String>, size: u128, bound: u128) -> Self {
        Error::BoundExceeded {
            what: what.into(),
            size,
            bound,
        }
    }

    /// True for failures that indicate a broken identity rather than bad input.
    pub fn is_mathematical(&self) -> bool {
        matches!(self, Error::Assertion(_))
    }
}
