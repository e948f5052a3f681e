use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::sym::SymTwoTensor;

/// Algebraic `(0,4)`-curvature tensor `R_{ijkl}` on `ℝⁿ`, dense row-major.
///
/// Sign convention: the unit sphere has `R_{ijkl} = δ_ik δ_jl − δ_il δ_jk`,
/// so `R_{ijij}` is the sectional curvature of the plane `e_i ∧ e_j` and
/// `Ric_{ij} = Σ_k R_{ikjk}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor<T> {
    n: usize,
    data: Vec<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryKind {
    /// `R_{ijkl} = −R_{jikl}`
    AntisymmetryFirstPair,
    /// `R_{ijkl} = −R_{ijlk}`
    AntisymmetrySecondPair,
    /// `R_{ijkl} = R_{klij}`
    PairSymmetry,
    /// `R_{ijkl} + R_{jkil} + R_{kijl} = 0`
    FirstBianchi,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryViolation {
    pub kind: SymmetryKind,
    /// 0-based `(i, j, k, l)` of the worst residual.
    pub index: [usize; 4],
    pub residual: f64,
}

/// Outcome of checking the algebraic curvature identities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub n: usize,
    pub max_abs: f64,
    pub tolerance: f64,
    /// Worst residual per identity, in [`SymmetryKind`] order.
    pub worst: Vec<SymmetryViolation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.worst.iter().all(|v| v.residual <= self.tolerance)
    }

    pub fn violations(&self) -> impl Iterator<Item = &SymmetryViolation> {
        self.worst.iter().filter(|v| v.residual > self.tolerance)
    }

    /// The single worst violation, if any identity fails.
    pub fn worst_violation(&self) -> Option<&SymmetryViolation> {
        self.violations().max_by(|a, b| a.residual.total_cmp(&b.residual))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.worst_violation() {
            None => write!(f, "ok (n = {}, tolerance {:e})", self.n, self.tolerance),
            Some(v) => write!(
                f,
                "{:?} violated at (i,j,k,l) = ({}, {}, {}, {}) [1-based], residual {:e} > {:e}",
                v.kind,
                v.index[0] + 1,
                v.index[1] + 1,
                v.index[2] + 1,
                v.index[3] + 1,
                v.residual,
                self.tolerance
            ),
        }
    }
}

#[inline]
fn at(n: usize, i: usize, j: usize, k: usize, l: usize) -> usize {
    ((i * n + j) * n + k) * n + l
}

/// Checks the antisymmetries, pair symmetry and first Bianchi identity to
/// `1e-12·max|R|`.
pub fn validate_curvature<T: Scalar>(n: usize, components: &[T]) -> Result<ValidationReport> {
    let expected = n.pow(4);
    if components.len() != expected {
        return Err(Error::ShapeMismatch { expected, found: components.len() });
    }
    let max_abs = components.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let tolerance = T::tolerance(1e-12) * max_abs;
    let kinds = [
        SymmetryKind::AntisymmetryFirstPair,
        SymmetryKind::AntisymmetrySecondPair,
        SymmetryKind::PairSymmetry,
        SymmetryKind::FirstBianchi,
    ];
    let mut worst: Vec<(T, [usize; 4])> = vec![(T::zero(), [0; 4]); 4];
    let r = |i, j, k, l| components[at(n, i, j, k, l)];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let v = r(i, j, k, l);
                    let residuals = [
                        (v + r(j, i, k, l)).abs(),
                        (v + r(i, j, l, k)).abs(),
                        (v - r(k, l, i, j)).abs(),
                        (v + r(j, k, i, l) + r(k, i, j, l)).abs(),
                    ];
                    for (w, res) in worst.iter_mut().zip(residuals) {
                        if res > w.0 {
                            *w = (res, [i, j, k, l]);
                        }
                    }
                }
            }
        }
    }
    Ok(ValidationReport {
        n,
        max_abs: max_abs.as_f64(),
        tolerance: tolerance.as_f64(),
        worst: kinds
            .iter()
            .zip(worst)
            .map(|(&kind, (res, index))| SymmetryViolation { kind, index, residual: res.as_f64() })
            .collect(),
    })
}

impl<T: Scalar> CurvatureTensor<T> {
    /// Validating constructor; input is never symmetrized.
    pub fn new(n: usize, components: Vec<T>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension { n, reason: "need n ≥ 2".into() });
        }
        let report = validate_curvature(n, &components)?;
        if !report.is_ok() {
            return Err(Error::InvalidCurvature(Box::new(report)));
        }
        Ok(CurvatureTensor { n, data: components })
    }

    /// For tensors that satisfy the identities by construction.
    pub(crate) fn from_raw(n: usize, data: Vec<T>) -> Self {
        debug_assert_eq!(data.len(), n.pow(4));
        CurvatureTensor { n, data }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_raw(n, vec![T::zero(); n.pow(4)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> T {
        self.data[at(self.n, i, j, k, l)]
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    pub fn validate(&self) -> ValidationReport {
        validate_curvature(self.n, &self.data).expect("shape is an invariant")
    }

    pub fn scale(&self, s: T) -> Self {
        Self::from_raw(self.n, self.data.iter().map(|&v| v * s).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(Self::from_raw(self.n, self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect()))
    }

    /// Kulkarni–Nomizu product
    /// `(h⌀k)_{ijkl} = h_ik k_jl + h_jl k_ik − h_il k_jk − h_jk k_il`.
    pub fn kulkarni_nomizu(h: &SymTwoTensor<T>, k: &SymTwoTensor<T>) -> Result<Self> {
        if h.n() != k.n() {
            return Err(Error::DimensionMismatch { left: h.n(), right: k.n() });
        }
        let n = h.n();
        let mut data = vec![T::zero(); n.pow(4)];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        data[at(n, a, b, c, d)] = h.get(a, c) * k.get(b, d) + h.get(b, d) * k.get(a, c)
                            - h.get(a, d) * k.get(b, c)
                            - h.get(b, c) * k.get(a, d);
                    }
                }
            }
        }
        Ok(Self::from_raw(n, data))
    }

    /// Components in the orthonormal frame spanned by the columns of `q`:
    /// `R'_{abcd} = Σ Q_ia Q_jb Q_kc Q_ld R_{ijkl}`.
    pub fn rotate(&self, q: &[T]) -> Self {
        let n = self.n;
        let mut cur = self.data.clone();
        // contract one slot at a time
        for slot in 0..4 {
            let stride = n.pow(3 - slot as u32);
            let mut next = vec![T::zero(); cur.len()];
            for (flat, out) in next.iter_mut().enumerate() {
                let a = (flat / stride) % n;
                let base = flat - a * stride;
                let mut acc = T::zero();
                for i in 0..n {
                    acc = acc + q[i * n + a] * cur[base + i * stride];
                }
                *out = acc;
            }
            cur = next;
        }
        Self::from_raw(n, cur)
    }

    /// `Ric_{ij} = Σ_k R_{ikjk}`.
    pub fn ricci(&self) -> SymTwoTensor<T> {
        let n = self.n;
        SymTwoTensor::from_upper(n, |i, j| (0..n).map(|k| self.get(i, k, j, k)).sum())
    }

    pub fn scalar_curvature(&self) -> T {
        self.ricci().trace()
    }
}
