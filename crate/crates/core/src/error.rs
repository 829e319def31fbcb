use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("singular basis change")]
    SingularBasisChange,

    #[error("mixed primes: {0} and {1}")]
    PrimeMismatch(u64, u64),

    #[error("weight {weight} needs centralizers up to C_{needed}, sequence ends at C_{last}")]
    SequenceTooShort { weight: u32, needed: u32, last: u32 },

    #[error("maximum weight must be at least {min}, got {got}")]
    WeightTooSmall { min: u32, got: u32 },

    #[error("weight {weight} exceeds table weight {max}")]
    WeightOverflow { weight: u64, max: u32 },

    #[error("prefix is not realizable: {0}")]
    InvalidPrefix(String),

    #[error("metabelian sequence has no constituents")]
    Metabelian,

    #[error("second centralizer first occurs in weight {0}, which is not 2p^h")]
    BadParameter(u32),

    #[error("constituent ending in weight {end} has length {length}, which is not q, 2q or 2q - p^β for q = {q}")]
    BadConstituentLength { end: u32, length: u32, q: u64 },

    #[error("deflation block starting at weight {0} has two distinct non-y centralizers")]
    MalformedBlock(u32),

    #[error("invalid AFS parameters: {0}")]
    InvalidAfsParams(String),

    #[error("cannot reconstruct: {0}")]
    Ambiguous(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
