use thiserror::Error;

use crate::universe::SubsetMask;

/// Errors raised by the set machinery, mass functions, filters and the
/// sampling harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("universe must contain at least one element")]
    EmptyUniverse,
    #[error("universe has {0} elements; at most 64 are supported")]
    TooLarge(usize),
    #[error("{0} atoms; at most 24 are supported when materializing an algebra")]
    AlgebraTooLarge(usize),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("subset {0:?} has elements outside the universe")]
    OutOfUniverse(SubsetMask),
    #[error("blocks do not form a partition: {0}")]
    NotAPartition(String),
    #[error("family lists {0:?} more than once")]
    DuplicateMember(SubsetMask),
    #[error("family must contain at least one member")]
    EmptyFamily,
    #[error("family is not a Boolean algebra (no atoms)")]
    NoAtoms,
    #[error("{0:?} is not a member of the family")]
    NotAMember(SubsetMask),
    #[error("mass assigned to {0:?}, which is not in the family")]
    NotInFamily(SubsetMask),
    #[error("mass assigned to {0:?} more than once")]
    DuplicateAssignment(SubsetMask),
    #[error("negative mass {value} on {subset:?}")]
    NegativeMass { subset: SubsetMask, value: f64 },
    #[error("masses deviate from 1 by {0:+e}")]
    SumNotOne(f64),
    #[error("probabilities deviate from 1 by {0:+e}")]
    ProbabilitySumNotOne(f64),
    #[error("no observations")]
    ZeroObservations,
    #[error("bad normalization constant {0}")]
    BadNormalization(f64),
    #[error("parameter k = {k} outside [1, {n}]")]
    BadK { k: usize, n: usize },
    #[error("parameter s = {0} outside [0, 1]")]
    BadShare(String),
    #[error("filter value {value} outside [0, 1]; the mass function is invalid")]
    OutOfRange { value: f64 },
    #[error("nested family restriction")]
    NestedRestriction,
    #[error("empty sample")]
    EmptySample,
    #[error("invalid experiment configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
