use thiserror::Error;

/// Failures inside the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("rank mismatch: expected a vector of rank {expected}, found rank {found}")]
    RankMismatch { expected: usize, found: usize },
}

/// Malformed polynomial text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("k must be at least 1, got {0}")]
    InvalidK(i64),
    #[error("j must be nonnegative, got {0}")]
    InvalidJ(i64),
    #[error("monomial u^{r} z^{s} (r={r}, s={s}) is out of support for k={k}, j={j}")]
    OutOfSupport { k: u32, j: u32, r: u32, s: i64 },
    #[error("bundles over different k: {0} and {1}")]
    MismatchedK(u32, u32),
    #[error("transition matrix restricted to u=0 is not unimodular")]
    NotUnimodular,
    #[error("j={j} < k={k}: the bundle is split and rigid")]
    SplitAndRigid { k: u32, j: u32 },
    #[error("closed-form height needs a non-split bundle, got p = 0 at k={k}, j={j}")]
    SplitBundle { k: u32, j: u32 },
    #[error("truncation bound must be at least 1, got {0}")]
    InvalidTruncation(u32),
    #[error("module does not have finite length")]
    NotFiniteLength,
    #[error("input not torsion-free: the evaluation map has a nonzero kernel")]
    NotTorsionFree,
    #[error("presentation did not stabilise for R in {from}..={to}")]
    Stabilization { from: u32, to: u32 },
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error("prime field result could not be confirmed over Q: {0}")]
    Unconfirmed(String),
}
