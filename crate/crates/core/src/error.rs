/// Error type shared by every module in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller-supplied argument violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A value falls outside what the prime table can answer for.
    #[error("{what} = {value} is outside the table range (limit {limit})")]
    OutOfRange {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    /// Honoring the request would exceed a configured resource budget.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// A prime-indexed function has no value at the requested prime.
    #[error("{name} has no defined value at prime {prime}")]
    UndefinedPrime { name: String, prime: u64 },

    /// Dirichlet inversion requires the value at 1 to be 1.
    #[error("not invertible: value at 1 is {0}, expected 1")]
    NotInvertible(String),

    /// The closed unit-pair formula produced a non-integer, so its
    /// preconditions cannot have held.
    #[error("unit-pair formula does not apply to m = {m}: {reason}")]
    FormulaDomain { m: u64, reason: String },

    /// A near-tie comparison could not be decided even after exact
    /// escalation; the truncated constant bounds both sides too loosely.
    #[error("comparison at n = {n} is inconclusive within available precision")]
    PrecisionExhausted { n: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
