//! Error type shared by the whole engine.

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("generator arity must be at least 2, got {0}")]
    ArityTooSmall(u32),
    #[error("generator degree {0} is not supported (only 0 and 1)")]
    UnsupportedDegree(u32),
    #[error("only the regular generator symmetry is supported")]
    UnsupportedSymmetry,
    #[error("internal vertex count must be at least 1, got {0}")]
    InvalidVertexCount(i64),
    #[error("slot {slot} out of range for arity {arity}")]
    SlotOutOfRange { slot: u32, arity: u32 },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: u32, got: u32 },
    #[error("permutation of size {got} applied to an element of arity {expected}")]
    PermutationSizeMismatch { expected: u32, got: u32 },
    #[error("labels are not a permutation of 1..={expected}")]
    LabelsNotPermutation { expected: u32 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix index ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("pairing must be a square matrix of the ambient dimension {ambient}, got {rows}x{cols}")]
    PairingShape {
        ambient: usize,
        rows: usize,
        cols: usize,
    },
    #[error("arity {arity} is not of the form k*({n}-1)+1")]
    InadmissibleArity { arity: u32, n: u32 },
    #[error(
        "free component at arity {arity} has dimension {dim}, above the bound {bound}; \
         use the one-variable (shape-level) computation"
    )]
    ResourceBound { arity: u32, dim: u128, bound: u64 },
    #[error("unknown builtin presentation `{0}` (expected 3Ass, 3tAss, Ass, nAss(N) or ntAss(N))")]
    UnknownBuiltin(String),
    #[error("relation has arity {got}, expected {expected}")]
    RelationArity { expected: u32, got: u32 },
    #[error("relation is not quadratic: a monomial has {0} generator occurrences, expected 2")]
    NotQuadratic(u32),
    #[error("power series must start with coefficient 1 in degree 1, got {0}")]
    BadLeadingCoefficient(String),
    #[error("series composition requires a zero constant term, got {0}")]
    NonzeroConstantTerm(String),
    #[error("dimension table has no entry for arity {0}")]
    MissingDims(u32),
    #[error("tensor compatibility check requires degree-0 generators")]
    TensorCheckNeedsDegreeZero,
    #[error("cochain is not expressed in a single {expected}-ary symbol")]
    MixedCochain { expected: u32 },
    #[error(transparent)]
    Parse(#[from] crate::dsl::ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
