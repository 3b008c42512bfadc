use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {reason} (witness {witness:?})")]
    NotAGroup { reason: String, witness: (usize, usize, usize) },

    #[error("group order {order} exceeds the configured limit {limit}")]
    OrderLimitExceeded { order: usize, limit: usize },

    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("coset enumeration exceeded {limit} cosets")]
    CosetLimitExceeded { limit: usize },

    #[error("poset has {nodes} nodes, above the limit {limit}")]
    PosetSizeExceeded { nodes: usize, limit: usize },

    #[error("time limit of {limit_ms} ms exceeded during {stage}")]
    TimeLimitExceeded { stage: String, limit_ms: u64 },

    #[error("poset has height {0}; the Euler count needs height at most 1")]
    HeightTooLarge(usize),

    #[error("complex has more than {limit} simplices")]
    ComplexSizeExceeded { limit: usize },

    #[error("complex has {0} connected components")]
    Disconnected(usize),

    #[error("integer overflow during exact elimination")]
    IntegerOverflow,

    #[error("unknown catalog name `{0}`")]
    UnknownName(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by a configured resource bound.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::OrderLimitExceeded { .. }
                | Error::CosetLimitExceeded { .. }
                | Error::PosetSizeExceeded { .. }
                | Error::ComplexSizeExceeded { .. }
                | Error::TimeLimitExceeded { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
