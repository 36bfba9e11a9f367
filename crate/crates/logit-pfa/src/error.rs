//! Error types, one enum per pipeline stage.

use thiserror::Error;

/// Failures of a single marginal logistic fit.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum GlmError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("perfect or quasi-complete separation: the maximum-likelihood estimate does not exist")]
    SeparationDetected,
    #[error("no convergence after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("averaged information matrix is numerically singular")]
    SingularInformation,
}

impl GlmError {
    /// Short class name used in drop reports.
    pub fn kind(&self) -> &'static str {
        match self {
            GlmError::DegenerateInput(_) => "DegenerateInput",
            GlmError::SeparationDetected => "SeparationDetected",
            GlmError::NoConvergence { .. } => "NoConvergence",
            GlmError::SingularInformation => "SingularInformation",
        }
    }
}

/// Failures while stacking scores or standardizing the slope estimators.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum MmmError {
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("zero variance for coordinate {index}")]
    ZeroVariance { index: usize },
    #[error("only {retained} columns survived fitting; at least 2 are required")]
    TooFewColumns { retained: usize },
}

/// Failures of the factor decomposition and FDP estimation stage.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum PfaError {
    #[error("input matrix is not symmetric")]
    NotSymmetric,
    #[error("eigendecomposition failed (LAPACK info = {0})")]
    DecompositionFailed(i32),
    #[error("trimmed loading matrix is rank deficient")]
    RankDeficientDesign,
    #[error("factor regression did not converge")]
    NoConvergence,
    #[error("threshold {0} outside (0, 1]")]
    InvalidThreshold(f64),
    #[error("threshold grid is empty")]
    EmptyGrid,
    #[error("invalid threshold grid: {0}")]
    InvalidGrid(String),
}

/// Failures of the simulation harness.
#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid scenario configuration: {0}")]
    InvalidConfig(String),
    #[error("all {0} replications failed")]
    AllReplicationsFailed(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Failures of the end-to-end analysis on user data.
#[derive(Debug, Error)]
pub enum AnalyzeError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("only {retained} columns survived fitting; at least 2 are required")]
    TooFewColumns { retained: usize },
    #[error("column {column} ({label}) failed to fit: {source}")]
    ColumnFailed {
        column: usize,
        label: String,
        source: GlmError,
    },
    #[error(transparent)]
    Mmm(#[from] MmmError),
    #[error(transparent)]
    Pfa(#[from] PfaError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Low-level linear algebra failures.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum LinalgError {
    #[error("LAPACK routine failed with info = {0}")]
    Lapack(i32),
    #[error("matrix is numerically singular")]
    Singular,
}
