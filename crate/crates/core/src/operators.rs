//! Curvature operators induced by `R`: `R̄` on `S²`, the operator of the
//! second kind `𝓡 = pr_{S²₀} ∘ R̄|_{S²₀}`, the operator of the first kind `𝔉`
//! on `Λ²`, Ricci and scalar curvature, and spectra.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::{
    canonical_s02_basis, full_s2_basis, CanonicalS02Basis, CurvatureTensor, GeneralTensor, MultiIndex,
    SymTwoTensor,
};

/// Basis an [`OperatorMatrix`] is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisTag {
    /// φ_ij (i<j) then ψ_k, see [`canonical_s02_basis`].
    S02Canonical,
    /// Unit wedges `e_i ∧ e_j`, `i < j`, lexicographic.
    Lambda2Canonical,
    /// Unit wedges `e_I/√p!` over sorted multi-indices of length `p`.
    LambdaPCanonical { p: usize },
    /// `e^i⊗e^i` then φ_ij, see [`full_s2_basis`].
    S2Canonical,
}

/// Dense symmetric matrix of a self-adjoint operator.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix<T> {
    dim: usize,
    entries: Vec<T>,
    basis: BasisTag,
}

impl<T: Scalar> OperatorMatrix<T> {
    /// Rejects matrices that are not symmetric to `1e-12·max|entry|`.
    pub fn new(dim: usize, entries: Vec<T>, basis: BasisTag) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::ShapeMismatch { expected: dim * dim, found: entries.len() });
        }
        let scale = entries.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        let mut residual = T::zero();
        for i in 0..dim {
            for j in i + 1..dim {
                residual = residual.max((entries[i * dim + j] - entries[j * dim + i]).abs());
            }
        }
        if residual > T::tolerance(1e-12) * scale {
            return Err(Error::NotSymmetric { residual: residual.as_f64() });
        }
        Ok(OperatorMatrix { dim, entries, basis })
    }

    /// Fills the upper triangle from `f` and mirrors it.
    pub(crate) fn from_upper(dim: usize, basis: BasisTag, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = vec![T::zero(); dim * dim];
        for a in 0..dim {
            for b in a..dim {
                let v = f(a, b);
                entries[a * dim + b] = v;
                entries[b * dim + a] = v;
            }
        }
        OperatorMatrix { dim, entries, basis }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, a: usize, b: usize) -> T {
        self.entries[a * self.dim + b]
    }

    pub fn trace(&self) -> T {
        (0..self.dim).map(|a| self.get(a, a)).sum()
    }

    pub fn max_abs(&self) -> T {
        self.entries.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// `xᵀ M x`.
    pub fn quadratic_form(&self, x: &[T]) -> T {
        let mut acc = T::zero();
        for a in 0..self.dim {
            let row: T = (0..self.dim).map(|b| self.get(a, b) * x[b]).sum();
            acc = acc + x[a] * row;
        }
        acc
    }

    pub fn eigen(&self) -> EigenDecomposition<T> {
        let (values, vectors) = T::symmetric_eigen(self.dim, &self.entries);
        EigenDecomposition { values: Spectrum { values }, vectors }
    }
}

/// Eigenvalues `λ_1 ≤ … ≤ λ_N` of a self-adjoint operator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum<T> {
    values: Vec<T>,
}

/// Eigenvalue cluster with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Multiplicity<T> {
    pub value: T,
    pub multiplicity: usize,
}

impl<T: Scalar> Spectrum<T> {
    /// Sorts the given values ascending.
    pub fn from_values(mut values: Vec<T>) -> Self {
        values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        Spectrum { values }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> Option<T> {
        self.values.first().copied()
    }

    pub fn max(&self) -> Option<T> {
        self.values.last().copied()
    }

    pub fn spectral_radius(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Default clustering tolerance `1e-7·(1 + ρ)`.
    pub fn cluster_tolerance(&self) -> T {
        T::tolerance(1e-7) * (T::one() + self.spectral_radius())
    }

    /// Groups consecutive eigenvalues closer than `tol`; each cluster is
    /// reported by its mean.
    pub fn clusters(&self, tol: T) -> Vec<Multiplicity<T>> {
        let mut out: Vec<(T, T, usize)> = Vec::new();
        for &v in &self.values {
            match out.last_mut() {
                Some((last, sum, count)) if v - *last <= tol => {
                    *last = v;
                    *sum = *sum + v;
                    *count += 1;
                }
                _ => out.push((v, v, 1)),
            }
        }
        out.into_iter()
            .map(|(_, sum, count)| Multiplicity { value: sum / T::from_int(count as i64), multiplicity: count })
            .collect()
    }

    pub fn multiplicities(&self) -> Vec<Multiplicity<T>> {
        self.clusters(self.cluster_tolerance())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Spectrum<U> {
        Spectrum::from_values(self.values.iter().map(|&v| f(v)).collect())
    }
}

#[derive(Clone, Debug)]
pub struct EigenDecomposition<T> {
    pub values: Spectrum<T>,
    /// Unit eigenvector per eigenvalue, same order as `values`.
    pub vectors: Vec<Vec<T>>,
}

impl<T: Scalar> EigenDecomposition<T> {
    /// `‖M − QΛQᵀ‖_max`.
    pub fn reconstruction_residual(&self, m: &OperatorMatrix<T>) -> T {
        let d = m.dim();
        let mut worst = T::zero();
        for a in 0..d {
            for b in 0..d {
                let rec: T = self.values.values().iter().zip(&self.vectors).map(|(&l, v)| l * v[a] * v[b]).sum();
                worst = worst.max((rec - m.get(a, b)).abs());
            }
        }
        worst
    }
}

pub fn spectrum<T: Scalar>(m: &OperatorMatrix<T>) -> Spectrum<T> {
    m.eigen().values
}

/// Ricci tensor, scalar curvature and `‖Ric − (scal/n) g‖`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureSummary<T> {
    pub ricci: SymTwoTensor<T>,
    pub scalar: T,
    pub einstein_defect: T,
}

impl<T: Scalar> CurvatureSummary<T> {
    pub fn ricci_eigenvalues(&self) -> Vec<T> {
        self.ricci.eigen().0
    }

    /// Einstein to `tol·(1 + |scal|)`.
    pub fn is_einstein(&self, tol: T) -> bool {
        self.einstein_defect <= tol * (T::one() + self.scalar.abs())
    }
}

pub fn ricci_scalar<T: Scalar>(r: &CurvatureTensor<T>) -> CurvatureSummary<T> {
    let n = r.n();
    let ricci = r.ricci();
    let scalar = ricci.trace();
    let shifted = ricci.sub(&SymTwoTensor::identity(n).scale(scalar / T::from_int(n as i64)));
    CurvatureSummary { einstein_defect: shifted.norm_sq().sqrt(), ricci, scalar }
}

/// `(R̄h)_{ij} = Σ_{k,l} R_{iklj} h_{kl}`.
pub fn rbar_apply<T: Scalar>(r: &CurvatureTensor<T>, h: &SymTwoTensor<T>) -> Result<SymTwoTensor<T>> {
    if r.n() != h.n() {
        return Err(Error::DimensionMismatch { left: r.n(), right: h.n() });
    }
    let n = r.n();
    Ok(SymTwoTensor::from_upper(n, |i, j| {
        let mut acc = T::zero();
        for k in 0..n {
            for l in 0..n {
                let hkl = h.get(k, l);
                if hkl != T::zero() {
                    acc = acc + r.get(i, k, l, j) * hkl;
                }
            }
        }
        acc
    }))
}

fn gram_of_rbar<T: Scalar>(r: &CurvatureTensor<T>, basis: &CanonicalS02Basis<T>, tag: BasisTag) -> OperatorMatrix<T> {
    let images: Vec<SymTwoTensor<T>> =
        basis.elements().iter().map(|s| rbar_apply(r, s).expect("basis built for r.n()")).collect();
    OperatorMatrix::from_upper(basis.len(), tag, |a, b| images[a].inner(basis.get(b)))
}

/// Matrix of `𝓡` in the canonical orthonormal basis of `S²₀`.
///
/// The projection onto `S²₀` drops out because the basis is trace-free, so
/// entries are `⟨R̄ S_α, S_β⟩`.
pub fn second_kind_matrix<T: Scalar>(r: &CurvatureTensor<T>) -> OperatorMatrix<T> {
    let basis = canonical_s02_basis(r.n());
    gram_of_rbar(r, &basis, BasisTag::S02Canonical)
}

/// Matrix of `R̄` on the full `S²` (basis [`full_s2_basis`]).
pub fn rbar_matrix<T: Scalar>(r: &CurvatureTensor<T>) -> OperatorMatrix<T> {
    let basis = full_s2_basis(r.n());
    gram_of_rbar(r, &basis, BasisTag::S2Canonical)
}

/// Matrix of `𝔉` on `Λ²` in the unit-norm basis `{e_i∧e_j}_{i<j}`:
/// entry `((i,j),(k,l))` is `R_{ijkl}`.
pub fn first_kind_matrix<T: Scalar>(r: &CurvatureTensor<T>) -> OperatorMatrix<T> {
    let pairs = MultiIndex::all(r.n(), 2);
    OperatorMatrix::from_upper(pairs.len(), BasisTag::Lambda2Canonical, |a, b| {
        let (ij, kl) = (pairs[a].entries(), pairs[b].entries());
        r.get(ij[0], ij[1], kl[0], kl[1])
    })
}

/// Relative residual of `g(R̄(T^{S²₀}), T^{S²₀}) = g(𝓡(T^{S²₀}), T^{S²₀})`.
///
/// The left side builds `T^{S²₀} = T^{S²} − (k/n) T ⊗ g` from the full `S²`
/// basis and applies `R̄` to its `S²` factor; the right side contracts
/// `g(S_α T, S_β T)` against the matrix of `𝓡`.
pub fn quadratic_form_identity_check<T: Scalar>(r: &CurvatureTensor<T>, t: &GeneralTensor<T>) -> Result<T> {
    let n = r.n();
    if t.n() != n {
        return Err(Error::DimensionMismatch { left: n, right: t.n() });
    }
    let k = T::from_int(t.order() as i64);
    let nn = T::from_int(n as i64);

    // lhs: X[I] ∈ S² for every component multi-index I
    let full = full_s2_basis::<T>(n);
    let acted: Vec<GeneralTensor<T>> = full.elements().iter().map(|e| t.act_sym(e)).collect::<Result<_>>()?;
    let mut lhs = T::zero();
    for flat in 0..t.data().len() {
        let mut x = SymTwoTensor::identity(n).scale(-(k / nn) * t.data()[flat]);
        for (e, et) in full.elements().iter().zip(&acted) {
            x = x.add(&e.scale(et.data()[flat]));
        }
        lhs = lhs + rbar_apply(r, &x)?.inner(&x);
    }

    // rhs: Σ_{αβ} g(S_α T, S_β T) 𝓡_{αβ}
    let basis = canonical_s02_basis::<T>(n);
    let m = second_kind_matrix(r);
    let st: Vec<GeneralTensor<T>> = basis.elements().iter().map(|s| t.act_sym(s)).collect::<Result<_>>()?;
    let mut rhs = T::zero();
    for a in 0..st.len() {
        for b in 0..st.len() {
            rhs = rhs + st[a].dot(&st[b]) * m.get(a, b);
        }
    }
    Ok((lhs - rhs).abs() / (T::one() + lhs.abs()))
}
