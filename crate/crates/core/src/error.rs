use thiserror::Error;

use crate::tensor::ValidationReport;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("shape mismatch: expected {expected} components, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid dimension {n}: {reason}")]
    InvalidDimension { n: usize, reason: String },

    #[error("matrix is not symmetric (residual {residual:e})")]
    NotSymmetric { residual: f64 },

    #[error("not an algebraic curvature tensor: {0}")]
    InvalidCurvature(Box<ValidationReport>),

    #[error("invalid multi-index {entries:?} for n = {n}")]
    InvalidMultiIndex { entries: Vec<usize>, n: usize },

    #[error("form degree p = {p} out of range for n = {n}")]
    POutOfRange { p: usize, n: usize },

    #[error("k = {k} needs ⌊k⌋ + 1 ≤ N eigenvalues, have N = {len}")]
    KOutOfRange { k: f64, len: usize },

    #[error("weights infeasible: total {total} exceeds {len} × highest {highest}")]
    InfeasibleWeights { total: f64, highest: f64, len: usize },

    #[error("invalid weight bound: highest {highest}, total {total}")]
    InvalidWeights { highest: f64, total: f64 },

    #[error("variant precondition failed: {0}")]
    VariantPreconditionFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
