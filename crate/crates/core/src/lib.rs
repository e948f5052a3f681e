//! Algebraic curvature computations on a Euclidean vector space.
//!
//! Starting from an algebraic curvature tensor `R_{ijkl}` (with the sphere
//! convention `R_{ijkl} = δ_ik δ_jl − δ_il δ_jk`) this crate assembles the
//! curvature operator of the second kind `𝓡` on trace-free symmetric
//! 2-tensors, the operator of the first kind on 2-forms and the
//! Lichnerowicz curvature term on `p`-forms, checks the Bochner
//! decomposition of the latter in terms of `𝓡`, and evaluates the weighted
//! eigenvalue sums that turn spectra of `𝓡` into Betti-number vanishing
//! certificates.
//!
//! ```
//! use curvkind_core::{model_spaces, operators, weights};
//!
//! let r = model_spaces::su3_so3::<f64>();
//! let spec = operators::spectrum(&operators::second_kind_matrix(&r));
//! let nine = weights::k_partial_sum(spec.values(), 9.0).unwrap();
//! assert!((nine - 0.5).abs() < 1e-10);
//! ```

pub mod bochner;
pub mod error;
pub mod model_spaces;
pub mod operators;
pub mod scalar;
pub mod selftest;
pub mod tensor;
pub mod weights;

pub use error::{Error, Result};
pub use model_spaces::ModelSpec;
pub use operators::{BasisTag, CurvatureSummary, OperatorMatrix, Spectrum};
pub use scalar::{Field, Scalar};
pub use tensor::{CurvatureTensor, Dimension, GeneralTensor, MultiIndex, PForm, SymTwoTensor};
pub use weights::{Certificate, Constants, Variant, WeightBound};

pub type CurvatureTensor64 = CurvatureTensor<f64>;
pub type CurvatureTensor32 = CurvatureTensor<f32>;
pub type PForm64 = PForm<f64>;
pub type SymTwoTensor64 = SymTwoTensor<f64>;
pub type GeneralTensor64 = GeneralTensor<f64>;
pub type OperatorMatrix64 = OperatorMatrix<f64>;
pub type Spectrum64 = Spectrum<f64>;
pub type WeightBound64 = WeightBound<f64>;
pub type ExactWeightBound = WeightBound<num_rational::Rational64>;
pub type ExactConstants = Constants<num_rational::Rational64>;
