//! Numeric abstractions.
//!
//! [`Field`] is the minimal ordered-field interface used by the weighted
//! eigenvalue calculus; it is implemented for `f32`, `f64` and
//! [`Rational64`] so that constants and partial sums can be evaluated
//! exactly. [`Scalar`] extends it with floating-point operations and a dense
//! symmetric eigensolver, and is what the tensor and operator code is
//! generic over.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::Neg;

use num_rational::Rational64;
use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive};

pub trait Field: Copy + PartialOrd + Debug + Num + Neg<Output = Self> + Send + Sync + 'static {
    fn from_int(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// `⌊self⌋` as an index, `None` when negative or not finite.
    fn floor_index(self) -> Option<usize>;

    fn as_f64(self) -> f64;

    fn abs_val(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

macro_rules! impl_float_field {
    ($t:ty) => {
        impl Field for $t {
            fn from_int(v: i64) -> Self {
                v as $t
            }

            fn floor_index(self) -> Option<usize> {
                if self.is_finite() && self >= 0.0 {
                    Some(self.floor() as usize)
                } else {
                    None
                }
            }

            fn as_f64(self) -> f64 {
                self as f64
            }
        }
    };
}

impl_float_field!(f32);
impl_float_field!(f64);

impl Field for Rational64 {
    fn from_int(v: i64) -> Self {
        Rational64::from_integer(v)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational64::new(num, den)
    }

    fn floor_index(self) -> Option<usize> {
        if self.is_negative() {
            None
        } else {
            self.floor().to_integer().to_usize()
        }
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Real floating-point scalar used by all tensor computations.
pub trait Scalar: Field + Float + FromPrimitive + Sum + Display + LowerExp {
    /// Converts an `f64` literal.
    fn lit(v: f64) -> Self;

    /// Eigen-decomposition of a dense symmetric `dim × dim` row-major matrix.
    ///
    /// Returns eigenvalues in ascending order together with the matching
    /// unit eigenvectors, one contiguous `dim`-vector per eigenvalue.
    fn symmetric_eigen(dim: usize, entries: &[Self]) -> (Vec<Self>, Vec<Vec<Self>>);

    /// A tolerance no tighter than what the type can represent: the
    /// requested value, floored at a small multiple of machine epsilon.
    fn tolerance(requested: f64) -> Self {
        Self::lit(requested.max(64.0 * <Self as Field>::as_f64(<Self as Float>::epsilon())))
    }
}

macro_rules! impl_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn lit(v: f64) -> Self {
                v as $t
            }

            fn symmetric_eigen(dim: usize, entries: &[Self]) -> (Vec<Self>, Vec<Vec<Self>>) {
                assert_eq!(entries.len(), dim * dim, "matrix storage does not match dim");
                if dim == 0 {
                    return (Vec::new(), Vec::new());
                }
                let mat = nalgebra::DMatrix::<$t>::from_row_slice(dim, dim, entries);
                let eig = mat.symmetric_eigen();
                let mut order: Vec<usize> = (0..dim).collect();
                order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
                let values = order.iter().map(|&a| eig.eigenvalues[a]).collect();
                let vectors = order
                    .iter()
                    .map(|&a| eig.eigenvectors.column(a).iter().copied().collect())
                    .collect();
                (values, vectors)
            }
        }
    };
}

impl_scalar!(f32);
impl_scalar!(f64);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_floor_index() {
        assert_eq!(Rational64::new(7, 2).floor_index(), Some(3));
        assert_eq!(Rational64::new(-1, 2).floor_index(), None);
        assert_eq!(Rational64::from_int(4).floor_index(), Some(4));
    }

    #[test]
    fn float_floor_index() {
        assert_eq!(3.5f64.floor_index(), Some(3));
        assert_eq!((-0.1f64).floor_index(), None);
        assert_eq!(f64::NAN.floor_index(), None);
    }

    #[test]
    fn eigen_sorted_ascending() {
        let (vals, vecs) = f64::symmetric_eigen(3, &[3.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 2.0]);
        assert_eq!(vals, vec![-1.0, 2.0, 3.0]);
        assert!((vecs[0][1].abs() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tolerance_floor() {
        assert_eq!(f64::tolerance(1e-12), 1e-12);
        assert!(f32::tolerance(1e-12) > 1e-6);
    }
}
