use thiserror::Error;

use crate::braid::GeneratorId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid braid: {0}")]
    InvalidBraid(String),

    #[error("disk search for {query} reached the cap of {cap} boundary events")]
    CapExceeded { query: String, cap: usize },

    #[error("no positive height assignment found within {iterations} iterations")]
    HeightsUnsolved { iterations: usize },

    #[error("diagram has {faces} bounded faces, above the oracle bound of {bound}")]
    FaceBound { faces: usize, bound: usize },

    #[error("{count} degree-0 generators exceed the enumeration limit of {limit}")]
    TooManyGenerators { count: usize, limit: usize },

    #[error("unknown generator {0}")]
    UnknownGenerator(GeneratorId),

    #[error("only braid crossings can be resolved, got {0}")]
    NotResolvable(GeneratorId),

    #[error("resolution map is not a chain map at {0:?}")]
    ChainMapFailure(Vec<GeneratorId>),

    #[error("validation failed: {0}")]
    ValidationFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
