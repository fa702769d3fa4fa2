use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("cannot parse rational {input:?}: {reason}")]
    ParseRational { input: String, reason: String },

    #[error("no feasible witness point: {0}")]
    InfeasibleWitness(String),

    #[error("column group constant K_{group} vanishes (|K| = {modulus:e})")]
    DegenerateConstant { group: usize, modulus: f64 },

    #[error("malformed certificate record: {0}")]
    MalformedRecord(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
