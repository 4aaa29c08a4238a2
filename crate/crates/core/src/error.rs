use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("ragged matrix literal: row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },

    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("lattice is degenerate (determinant 0)")]
    Degenerate,
    #[error("lattice is not even")]
    NotEven,
    #[error("discriminant group is not {p}-elementary (invariant factor {factor})")]
    NotElementary { p: u64, factor: String },
    #[error("Gauss sum of this form is not representable: {0}")]
    UnsupportedGaussSum(String),

    #[error("unknown lattice name `{0}`")]
    UnknownName(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid lattice literal: {0}")]
    InvalidLiteral(String),

    #[error("invalid classification key (n = {n}, s = {s})")]
    InvalidKey { n: usize, s: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("lattice does not appear in the classification table: {0}")]
    NotClassified(String),

    #[error("matrix is not an isometry of the lattice")]
    NotIsometry,
    #[error("lattice is not definite")]
    NotDefinite,
    #[error("rank {rank} exceeds the enumeration limit {limit}")]
    RankTooLarge { rank: usize, limit: usize },

    #[error("invalid Picard number {0}")]
    InvalidRho(usize),
    #[error("Hurwitz formula gives non-integral genus (2g-2 = {0})")]
    NonIntegralGenus(i64),
    #[error("Hurwitz formula gives negative genus (2g-2 = {0})")]
    NegativeGenus(i64),
}
