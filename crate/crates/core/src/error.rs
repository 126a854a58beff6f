use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {p}^{k} is too large to tabulate")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("{q} is not the size of a subfield of GF({p}^{k})")]
    NotSubfield { q: u64, p: u32, k: u32 },
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("generator index {letter} out of range for S_{n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("objects live over different fields")]
    FieldMismatch,
    #[error("position index {index} out of range 1..{n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("projection of a tuple with an empty word")]
    EmptyWord,
    #[error("brute-force enumeration needs {needed} candidates, bound is {bound}")]
    CostBound { needed: u128, bound: u128 },
    #[error("need at least {needed} sample points, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("duplicate sample point {0}")]
    DuplicateSample(u64),
    #[error("interpolated polynomial has non-integer coefficients")]
    NonIntegerInterpolant,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
