//! Euclidean multilinear scaffolding: dimensions, multi-indices, p-forms,
//! symmetric 2-tensors, general `(0,k)`-tensors and algebraic curvature
//! tensors.
//!
//! All indices are 0-based. Components are taken with respect to a fixed
//! orthonormal basis `e_1, …, e_n`, so raising and lowering is trivial.

mod curvature;
mod dimension;
mod form;
mod general;
mod multi_index;
mod sym;

pub use curvature::{validate_curvature, CurvatureTensor, SymmetryKind, SymmetryViolation, ValidationReport};
pub use dimension::{binomial, factorial, Dimension, DEFAULT_MAX_DIM};
pub use form::PForm;
pub use general::GeneralTensor;
pub use multi_index::{sort_with_sign, MultiIndex};
pub use sym::{canonical_s02_basis, full_s2_basis, trace_free_project, BasisLabel, CanonicalS02Basis, SymTwoTensor};
