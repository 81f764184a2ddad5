use thiserror::Error;

/// Every failure mode of the library. Verification failures carry a short
/// human-readable witness so that CLI reports can show where an identity broke.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division is not exact: {0}")]
    NonExactDivision(String),
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative power of a non-monomial substitution for `{0}`")]
    NonMonomialInverse(String),
    #[error("partitions have different weights: |{0}| vs |{1}|")]
    WeightMismatch(String, String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition {partition} has more than {n} parts")]
    TooManyParts { partition: String, n: usize },
    #[error("denominator did not cancel: {0}")]
    NonCancellingDenominator(String),
    #[error("zero pivot in triangular solve at {0}")]
    EigenvalueCollision(String),
    #[error("power-sum form of P_{0} is not stable in the number of variables")]
    StabilityFailure(String),
    #[error("identity violated: {identity}; first mismatch at {witness}")]
    IdentityViolation { identity: String, witness: String },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("relation `{relation}` violated on {witness}")]
    RelationViolation { relation: String, witness: String },
    #[error("Yang-Baxter equation violated at entry {0}")]
    YbeViolation(String),
    #[error("evaluation parameter must be nonzero")]
    ZeroParameter,
    #[error("Drinfeld polynomial factorization mismatch: {0}")]
    FactorizationMismatch(String),
    #[error("module dimension {0} exceeds the brute-force limit {1}")]
    DimensionTooLarge(usize, usize),
    #[error("L-operator is not triangular: {0}")]
    TriangularityFailure(String),
    #[error("eigenvalue mismatch: {0}")]
    EigenvalueMismatch(String),
    #[error("expansions at u=0 and u=oo disagree: {0}")]
    InconsistentExpansions(String),
    #[error("coefficient requested beyond cutoff degree {0}")]
    CutoffExceeded(i64),
    #[error("generating series is not symmetric: {0}")]
    SymmetryViolation(String),
    #[error("negative power found: {0}")]
    NegativePowerFound(String),
    #[error("vectors are not proportional: {0}")]
    MismatchBeyondScalar(String),
    #[error("vector is not homogeneous: {0}")]
    InhomogeneousVector(String),
    #[error("fusion combination does not vanish: {0}")]
    NonVanishing(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
