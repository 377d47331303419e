//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported dimension {0} (supported: 1 ..= 4)")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not orthogonal (deviation {0:.3e})")]
    NotOrthogonal(f64),
    #[error("linear part does not preserve the integer lattice")]
    LatticeNotPreserved,
    #[error("group not finite within cap {0}")]
    GroupNotFiniteWithinCap(usize),
    #[error("frequency cutoff overflow: |k| = {got} exceeds hard cap {cap}")]
    CutoffOverflow { got: i64, cap: i64 },
    #[error("translation phase exp(2*pi*i*{0}) is not representable in the Gaussian-rational scalar tower (denominator must divide 4)")]
    InexactPhase(String),
    #[error("action not free: element {0} has nonempty fixed locus")]
    ActionNotFree(usize),
    #[error("group contains non-translation elements")]
    NotTranslationGroup,
    #[error("invariant frequency sublattice is rank deficient")]
    SublatticeRankDeficient,
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("spectrum cutoff too large: {shells} shells exceed cap {cap}")]
    SpectrumTooLarge { shells: usize, cap: usize },
    #[error("scenario validation failed: {0}")]
    ScenarioValidation(String),
    #[error("numerical check failed: {0}")]
    Numerical(String),
    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("scenario parse error: {0}")]
    TomlParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
