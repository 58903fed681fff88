use thiserror::Error;

use crate::setalg::OrbitType;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised anywhere in the toolkit.
///
/// Failures of untrusted oracles always carry enough context to replay the
/// offending query from the command line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed representation: {0}")]
    MalformedRepresentation(String),
    #[error("domain error: {0} is not a positive integer")]
    DomainError(i64),
    #[error("period limit exceeded: need {needed}, limit is {limit}")]
    PeriodLimitExceeded { needed: u64, limit: u64 },
    #[error("set is empty or all of N")]
    NotProperSubset,
    #[error("set is not infinite")]
    NotInfinite,

    #[error("not injective: {first} and {second} both map to {image}")]
    NotInjective { first: u64, second: u64, image: u64 },
    #[error("not surjective: {0} has no preimage")]
    NotSurjective(u64),
    #[error("residue map is not a bijection of the residue classes")]
    ResidueMapNotBijective,
    #[error("{0} is mapped outside N")]
    NonPositiveImage(u64),
    #[error("random generation failed after {0} attempts")]
    GenerationFailed(usize),

    #[error("not a vertex: orbit type is {}", .0.map_or("empty or full".to_string(), |t| t.to_string()))]
    NotBalanced(Option<OrbitType>),
    #[error("vertices lie in different components")]
    DifferentComponents,
    #[error("duplicate vertices in clique candidate")]
    DuplicateVertices,
    #[error("first set is a subset of the second")]
    IsSubset,

    #[error("oracle failure: {0}")]
    OracleFailure(String),
    #[error("vertices are not in the same component")]
    NotSameComponent,
    #[error("vertices are equal")]
    EqualVertices,
    #[error("invalid piecewise automorphism: {0}")]
    InvalidPieces(String),
    #[error("images of a star are not a star or top: {0}")]
    NotCliquePreserving(String),
    #[error("reconstruction at n = {n}: difference has {} elements, expected exactly one", .size.map_or("infinitely many".to_string(), |s| s.to_string()))]
    NotSingleton { n: u64, size: Option<usize> },
    #[error("order reconstruction at n = {n}: image intersection has {} elements, expected exactly one", .size.map_or("infinitely many".to_string(), |s| s.to_string()))]
    NotSingletonIntersection { n: u64, size: Option<usize> },
    #[error("intersection of family is not a vertex")]
    IntersectionNotVertex,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("inconsistent oracle: {0}")]
    InconsistentOracle(String),

    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),
    #[error("operation not supported for {0} graphs")]
    UnsupportedFamily(String),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("parse error at {line}:{col}: expected {expected}")]
    Parse { line: usize, col: usize, expected: String },
    #[error("bad description: {0}")]
    Format(String),
}
