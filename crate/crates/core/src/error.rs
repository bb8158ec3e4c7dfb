use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("residue tower too shallow at prime {prime}: need exponent {needed}")]
    InsufficientPrecision { prime: u64, needed: u32 },

    #[error("residue towers cover different primes")]
    PrecisionMismatch,

    #[error("index {index} out of range for {available} primes")]
    IndexOutOfRange { index: usize, available: usize },

    #[error("character or element does not match group kind: {0}")]
    KindMismatch(String),

    #[error("bound {bound} needs prime {prime}, which is outside the working prime list")]
    UnsupportedBound { bound: u64, prime: u64 },

    #[error("sequence truncation too small: {0}")]
    TruncationTooSmall(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("finite group has {order} elements, limit is {limit}")]
    SizeLimit { order: usize, limit: usize },

    #[error("invalid finite group: {0}")]
    InvalidGroup(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("witness construction invariant violated: {0}")]
    InvariantViolated(String),

    #[error("enumeration of {0} items exceeds the configured limit")]
    TooLarge(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InsufficientPrecision { .. } => "insufficient_precision",
            Error::PrecisionMismatch => "precision_mismatch",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::KindMismatch(_) => "kind_mismatch",
            Error::UnsupportedBound { .. } => "unsupported_bound",
            Error::TruncationTooSmall(_) => "truncation_too_small",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::SizeLimit { .. } => "size_limit",
            Error::InvalidGroup(_) => "invalid_group",
            Error::Parse(_) => "parse",
            Error::InvariantViolated(_) => "invariant_violated",
            Error::TooLarge(_) => "too_large",
        }
    }
}
