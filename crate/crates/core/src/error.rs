use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::morphism::RelationViolation;
use crate::pcgroup::ConsistencyViolation;

fn join<T: fmt::Display>(items: &[T]) -> String {
    let mut out = String::new();
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            out.push_str("; ");
        }
        out.push_str(&alloc::format!("{item}"));
    }
    out
}

/// Rejections raised while building a presentation.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("relative order of {generator} must be at least 2")]
    InvalidRelativeOrder { generator: String },
    #[error("generator index {index} is out of range")]
    UnknownGenerator { index: usize },
    #[error("relation {relation} refers to a generator it may not use")]
    IndexRestriction { relation: String },
    #[error("power relation given for {generator}, which has infinite order")]
    PowerOfInfiniteGenerator { generator: String },
    #[error("inverse conjugate relation {relation} given for a generator of finite order")]
    InverseConjugateOfFiniteGenerator { relation: String },
    #[error("missing inverse conjugate relation {relation}")]
    MissingInverseConjugate { relation: String },
    #[error("relation {relation} given more than once")]
    DuplicateRelation { relation: String },
    #[error("inconsistent presentation: {}", join(.0))]
    Inconsistent(Vec<ConsistencyViolation>),
}

/// Failures of the group-theoretic algorithms.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("group is not nilpotent: lower central series stalls at term {term}")]
    NotNilpotent { term: usize },
    #[error("lower central series did not reach the trivial group within class {bound}")]
    ClassBoundExceeded { bound: usize },
    #[error("{expected} generator images expected, {found} given")]
    ImageCountMismatch { expected: usize, found: usize },
    #[error("map does not preserve the defining relations: {}", join(.0))]
    InvalidMap(Vec<RelationViolation>),
    #[error("codomain of the first map is not the domain of the second")]
    DomainMismatch,
    #[error("element is not in the C-equalizer: its images differ outside the last lower central term")]
    NotInCEqualizer,
    #[error("lifted basepoint defect left the last lower central term")]
    InternalLiftFailure,
    #[error("group is infinite")]
    InfiniteGroup,
    #[error("group of order {order} exceeds the enumeration limit {limit}")]
    OracleLimitExceeded { order: String, limit: u64 },
}
