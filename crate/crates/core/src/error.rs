use alloc::string::String;

use crate::hypergraph::WeightingClass;

/// Everything that can go wrong in the core library.
///
/// Vertex and coordinate indices carried by the variants are 1-based, matching
/// the external numbering used in files and on the command line.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("index {index} is outside the ground set 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("ground set of size {n} exceeds the supported maximum {max}")]
    GroundSetTooLarge { n: usize, max: usize },

    #[error("ground set must be nonempty")]
    EmptyGroundSet,

    #[error("hyperedge {edge} is empty")]
    EmptyEdge { edge: usize },

    #[error("hyperedge {edge} equals the whole ground set, so its complement is empty")]
    EdgeIsWholeSet { edge: usize },

    #[error("index {index} is covered by no hyperedge")]
    UncoveredIndex { index: usize },

    #[error("weight of edge {edge} is negative")]
    NegativeWeight { edge: usize },

    #[error("entry {index} is negative")]
    NegativeEntry { index: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("weighting is {found:?} but a {required} is required (index {index} has incident weight {incident})")]
    Classification {
        required: &'static str,
        found: WeightingClass,
        index: usize,
        incident: String,
    },

    #[error("total weight {total} must exceed 1 for the dual weighting")]
    TotalWeightTooSmall { total: String },

    #[error("hypergraph is not quasiregular (index {index} shares an edge with an index of different degree)")]
    NotQuasiregular { index: usize },

    #[error("hypergraph is not regular")]
    NotRegular,

    #[error("prefix values are not nondecreasing under the order (position {position}); only fractional partitions are accepted")]
    PrefixNotMonotone { position: usize },

    #[error("this set function only supports fractional partitions")]
    PartitionRequired,

    #[error("the two subsets must be disjoint")]
    OverlappingSets,

    #[error("invalid ground order: {0}")]
    InvalidOrder(String),

    #[error("k = {k} is out of range 1..={n}")]
    KOutOfRange { k: usize, n: usize },

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("malformed linear program: {0}")]
    MalformedProgram(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("P is not absolutely continuous with respect to Q at outcome {outcome}")]
    NotAbsolutelyContinuous { outcome: String },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("matrix is not positive definite (pivot {pivot} at position {position})")]
    NotPositiveDefinite { position: usize, pivot: f64 },

    #[error("function must be strictly positive on the support (entry {index})")]
    NonPositiveFunction { index: usize },

    #[error("parameter must be positive: {0}")]
    NonPositiveParameter(&'static str),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("{what} exceeds the enumeration guard of {limit}")]
    GuardExceeded { what: &'static str, limit: u64 },
}

pub type Result<T> = core::result::Result<T, Error>;
