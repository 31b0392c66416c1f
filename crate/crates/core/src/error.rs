use num_bigint::BigUint;

use crate::rootsys::Family;

/// Errors raised by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("type {family}{rank} is not admissible: {reason}")]
    InadmissibleRank {
        family: Family,
        rank: usize,
        reason: &'static str,
    },

    #[error("weight has {got} coefficients but the root system has rank {expected}")]
    CoefficientLength { expected: usize, got: usize },

    #[error("weights live in different root systems ({left} and {right})")]
    SystemMismatch { left: String, right: String },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("type {0} has no graph automorphism")]
    NoGraphAutomorphism(Family),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("module dimension {dim} exceeds the dimension cap {cap}")]
    DimensionCap { dim: BigUint, cap: u64 },

    #[error("no combinatorial enumerator for {system} with index {k}; use dominant_character instead")]
    NoEnumerator { system: String, k: usize },

    #[error("unknown catalog id {0}; run `weylbranch catalog` for the list")]
    UnknownCatalog(String),

    #[error("catalog {id}: {message}; admissible: {constraints}")]
    InadmissibleParams {
        id: u32,
        message: String,
        constraints: String,
    },

    #[error("embedding {id} failed validation: {message}")]
    Validation { id: u32, message: String },

    #[error("restricted weight {0} is not integral")]
    NonIntegral(String),

    #[error("peeling failed: {0}")]
    Peel(String),

    #[error("permutation group: {0}")]
    Perm(String),

    #[error("{source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
