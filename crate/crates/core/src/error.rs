use thiserror::Error;

use crate::ring::RingSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("an ideal needs at least one generator")]
    EmptyGeneratorList,

    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: RingSpec, right: RingSpec },

    #[error("submodules live in different ambient modules")]
    AmbientMismatch,

    #[error("matrix does not define a homomorphism between the given presentations")]
    NotWellDefined,

    #[error("adic filtration did not stabilize within {kmax} steps")]
    NonStabilizing { kmax: usize },

    #[error("the Matlis dual of a module with a free Z-part is not finitely generated")]
    FreePartNotSupported,

    #[error("module is infinite")]
    InfiniteModule,

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("unknown claim `{0}`")]
    UnknownClaim(String),

    #[error("parse error: {0}")]
    Parse(String),
}
