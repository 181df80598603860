//! Error types shared across the crate.
//!
//! Three families, mirroring how callers should react:
//! * [`StructuralError`] — the input violates a type's invariant (malformed
//!   quiver data, inhomogeneous relation, mismatched algebras). Not retryable.
//! * [`ParameterError`] — a bound or flag is unusable (too small, zero
//!   modulus). Retryable with different parameters.
//! * [`Inconclusive`] — the computation is sound but the requested bound was
//!   not enough to decide; carries a suggestion where one exists.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum StructuralError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("arrows `{first}` and `{second}` do not compose")]
    NonComposable { first: String, second: String },
    #[error("empty arrow list: a lazy path needs a vertex")]
    EmptyPathNeedsVertex,
    #[error("grading must cover every arrow (expected {expected}, got {got})")]
    GradingSize { expected: usize, got: usize },
    #[error("elements belong to different quivers")]
    QuiverMismatch,
    #[error("relation is not homogeneous under the grading")]
    InhomogeneousRelation,
    #[error("relation mixes endpoints: every term must share source and target")]
    NonUniformRelation,
    #[error("{0}")]
    Algebra(String),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParameterError {
    #[error("bound {bound} is smaller than required minimum {min} ({what})")]
    BoundTooSmall { bound: usize, min: usize, what: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub struct Inconclusive {
    pub bound: usize,
    pub reason: String,
    pub suggestion: Option<usize>,
}

impl std::fmt::Display for Inconclusive {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "inconclusive at bound {}: {}", self.bound, self.reason)?;
        if let Some(s) = self.suggestion {
            write!(f, "; try bound {s}")?;
        }
        Ok(())
    }
}

/// Umbrella error for pipeline stages; carries the stage name so a failing
/// multi-step computation reports where it stopped.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum KernelError {
    #[error("[{stage}] {source}")]
    Structural { stage: &'static str, source: StructuralError },
    #[error("[{stage}] {source}")]
    Parameter { stage: &'static str, source: ParameterError },
    #[error("[{stage}] {source}")]
    Inconclusive { stage: &'static str, source: Inconclusive },
}

impl KernelError {
    pub fn stage(&self) -> &'static str {
        match self {
            KernelError::Structural { stage, .. }
            | KernelError::Parameter { stage, .. }
            | KernelError::Inconclusive { stage, .. } => stage,
        }
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, KernelError::Inconclusive { .. })
    }
}

pub trait StageExt<T> {
    fn stage(self, name: &'static str) -> Result<T, KernelError>;
}

impl<T> StageExt<T> for Result<T, StructuralError> {
    fn stage(self, name: &'static str) -> Result<T, KernelError> {
        self.map_err(|source| KernelError::Structural { stage: name, source })
    }
}

impl<T> StageExt<T> for Result<T, ParameterError> {
    fn stage(self, name: &'static str) -> Result<T, KernelError> {
        self.map_err(|source| KernelError::Parameter { stage: name, source })
    }
}

impl<T> StageExt<T> for Result<T, Inconclusive> {
    fn stage(self, name: &'static str) -> Result<T, KernelError> {
        self.map_err(|source| KernelError::Inconclusive { stage: name, source })
    }
}
