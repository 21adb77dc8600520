use thiserror::Error;

/// Errors raised by the construction and analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("trace must be real and positive (got {0:e})")]
    NonPositiveTrace(f64),

    #[error("party {party} out of range for {qubits} qubits")]
    PartyOutOfRange { party: usize, qubits: usize },

    #[error("party set must be nonempty")]
    EmptyPartySet,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vectors {i} and {j} are linearly dependent (|det| / norms = {ratio:e})")]
    LinearlyDependent { i: usize, j: usize, ratio: f64 },

    #[error("cross-ratio {0} is numerically 0 or 1")]
    DegenerateCrossRatio(num_complex::Complex64),

    #[error("vector {0} is a product vector (det F = 0)")]
    NotEntangled(usize),

    #[error("pairwise condition violated by vectors {i} and {j} (residual {residual:e})")]
    PairwiseCondition { i: usize, j: usize, residual: f64 },

    #[error("numerically degenerate input: {0}")]
    Degenerate(String),

    #[error("expected a {expected}-dimensional subspace, found dimension {found}")]
    SubspaceDimension { expected: usize, found: usize },

    #[error("subspace contains a continuum of product vectors")]
    ContinuumOfProducts,

    #[error("expected {expected} product vectors, found {found}")]
    ProductCount { expected: usize, found: usize },

    #[error("record {0} has no tripartite factorization")]
    MissingTripartiteFactors(usize),

    #[error("least-squares weight {index} is negative ({weight:e})")]
    NegativeWeight { index: usize, weight: f64 },

    #[error("zero vector")]
    ZeroVector,

    #[error("not a three-qubit rank-four PPT entangled state: {}", .0.join("; "))]
    NotRankFourPptes(Vec<String>),
}

pub type Result<T> = std::result::Result<T, Error>;
