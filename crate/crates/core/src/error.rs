use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong across the library.
///
/// Party and seat indices carried by the variants are zero-based; the
/// `Display` output converts them to the one-based numbering used in
/// documents and on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vote vector is empty")]
    EmptyVotes,
    #[error("weight vector is empty")]
    EmptyWeights,
    #[error("party {} has non-positive vote count {value}", .party + 1)]
    NonPositiveVote { party: usize, value: i64 },
    #[error("seat {} has non-positive weight {value}", .seat + 1)]
    NonPositiveWeight { seat: usize, value: i64 },
    #[error("party {} out of range (instance has {parties} parties)", .party + 1)]
    PartyOutOfRange { party: usize, parties: usize },
    #[error("seat cap {cap} out of range (instance has {seats} seats)")]
    CapOutOfRange { cap: usize, seats: usize },
    #[error("assignment covers {found} seats, instance has {expected}")]
    AssignmentLength { expected: usize, found: usize },
    #[error("seat {} assigned to party {}, instance has {parties} parties", .seat + 1, .party + 1)]
    AssignedPartyOutOfRange {
        seat: usize,
        party: usize,
        parties: usize,
    },
    #[error("divisor offset must be non-negative, got {0}")]
    NegativeOffset(String),
    #[error("operation needs exactly {expected} parties, instance has {found}")]
    PartyCount { expected: usize, found: usize },
    #[error("extra seat weight must be positive")]
    ZeroExtraWeight,
    #[error("min-HM requires the extra weight {extra} to be at most the smallest weight {smallest}")]
    ExtraWeightTooLarge { extra: u64, smallest: u64 },
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Schema(String),
    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("csv: {0}")]
    Csv(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// True when the error came from an exhausted budget rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        match self {
            Error::ResourceLimit(_) => true,
            Error::Context { source, .. } => source.is_resource_limit(),
            _ => false,
        }
    }
}
