use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Symmetric `(0,2)`-tensor, stored as a full row-major `n × n` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTwoTensor<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> SymTwoTensor<T> {
    /// Accepts a row-major matrix that is symmetric to `1e-12·max|S|`.
    pub fn new(n: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::ShapeMismatch { expected: n * n, found: data.len() });
        }
        let scale = data.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        let tol = T::tolerance(1e-12) * scale;
        let mut residual = T::zero();
        for i in 0..n {
            for j in i + 1..n {
                residual = residual.max((data[i * n + j] - data[j * n + i]).abs());
            }
        }
        if residual > tol {
            return Err(Error::NotSymmetric { residual: residual.as_f64() });
        }
        Ok(SymTwoTensor { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        SymTwoTensor { n, data: vec![T::zero(); n * n] }
    }

    /// The metric `g = Σ e^i ⊗ e^i`.
    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![T::one(); n])
    }

    pub fn diagonal(diag: &[T]) -> Self {
        let n = diag.len();
        let mut s = Self::zeros(n);
        for (i, &d) in diag.iter().enumerate() {
            s.data[i * n + i] = d;
        }
        s
    }

    /// Builds from the upper triangle `f(i, j)`, `i ≤ j`.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut s = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                s.data[i * n + j] = v;
                s.data[j * n + i] = v;
            }
        }
        s
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self::from_upper(n, |_, _| T::lit(rng.gen_range(-1.0..1.0)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn trace(&self) -> T {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// `⟨A, B⟩ = Σ A_ij B_ij`.
    pub fn inner(&self, other: &Self) -> T {
        self.data.iter().zip(&other.data).map(|(&a, &b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> T {
        self.inner(self)
    }

    pub fn scale(&self, s: T) -> Self {
        SymTwoTensor { n: self.n, data: self.data.iter().map(|&v| v * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        SymTwoTensor { n: self.n, data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-T::one()))
    }

    pub fn is_trace_free(&self, eps: T) -> bool {
        self.trace().abs() <= eps
    }

    /// Orthogonal projection onto `S²₀`: `S − (tr S / n) g`.
    pub fn trace_free_part(&self) -> Self {
        let shift = self.trace() / T::from_int(self.n as i64);
        let mut out = self.clone();
        for i in 0..self.n {
            out.data[i * self.n + i] = out.data[i * self.n + i] - shift;
        }
        out
    }

    /// Eigenvalues (ascending) and orthonormal eigenvectors.
    pub fn eigen(&self) -> (Vec<T>, Vec<Vec<T>>) {
        T::symmetric_eigen(self.n, &self.data)
    }

    /// Components `Qᵀ S Q` in the frame spanned by the columns of `q`.
    pub fn rotate(&self, q: &[T]) -> Self {
        let n = self.n;
        Self::from_upper(n, |a, b| {
            let mut acc = T::zero();
            for i in 0..n {
                for j in 0..n {
                    acc = acc + q[i * n + a] * self.get(i, j) * q[j * n + b];
                }
            }
            acc
        })
    }
}

pub fn trace_free_project<T: Scalar>(s: &SymTwoTensor<T>) -> SymTwoTensor<T> {
    s.trace_free_part()
}

/// Which family an element of [`CanonicalS02Basis`] belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisLabel {
    /// `φ_ij = (e^i⊗e^j + e^j⊗e^i)/√2`, `i < j`.
    Phi(usize, usize),
    /// `ψ_k` for `k = 1, …, n−1`.
    Psi(usize),
    /// `e^i ⊗ e^i`, only in the full `S²` basis.
    Diagonal(usize),
}

/// Orthonormal basis of `S²₀`: all `φ_ij` (`i < j`, lexicographic), then
/// `ψ_1, …, ψ_{n−1}` with
/// `ψ_k = (−(n−k) e^k⊗e^k + Σ_{l>k} e^l⊗e^l) / √((n−k+1)(n−k))`.
#[derive(Clone, Debug)]
pub struct CanonicalS02Basis<T> {
    n: usize,
    elements: Vec<SymTwoTensor<T>>,
    labels: Vec<BasisLabel>,
}

impl<T: Scalar> CanonicalS02Basis<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[SymTwoTensor<T>] {
        &self.elements
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn get(&self, alpha: usize) -> &SymTwoTensor<T> {
        &self.elements[alpha]
    }

    /// Gram matrix `⟨S_α, S_β⟩`, row-major.
    pub fn gram(&self) -> Vec<T> {
        let m = self.len();
        let mut g = vec![T::zero(); m * m];
        for a in 0..m {
            for b in 0..m {
                g[a * m + b] = self.elements[a].inner(&self.elements[b]);
            }
        }
        g
    }

    /// Coordinates of a tensor in this basis.
    pub fn coordinates(&self, s: &SymTwoTensor<T>) -> Vec<T> {
        self.elements.iter().map(|e| e.inner(s)).collect()
    }

    /// `Σ_α c_α S_α`.
    pub fn combine(&self, coeffs: &[T]) -> SymTwoTensor<T> {
        let mut out = SymTwoTensor::zeros(self.n);
        for (e, &c) in self.elements.iter().zip(coeffs) {
            out = out.add(&e.scale(c));
        }
        out
    }
}

fn phi<T: Scalar>(n: usize, i: usize, j: usize) -> SymTwoTensor<T> {
    let mut s = SymTwoTensor::zeros(n);
    let v = T::one() / T::lit(2.0).sqrt();
    s.data[i * n + j] = v;
    s.data[j * n + i] = v;
    s
}

pub fn canonical_s02_basis<T: Scalar>(n: usize) -> CanonicalS02Basis<T> {
    let mut elements = Vec::with_capacity((n.saturating_sub(1)) * (n + 2) / 2);
    let mut labels = Vec::with_capacity(elements.capacity());
    for i in 0..n {
        for j in i + 1..n {
            elements.push(phi(n, i, j));
            labels.push(BasisLabel::Phi(i, j));
        }
    }
    for k in 1..n {
        let tail = n - k;
        let norm = T::from_int(((tail + 1) * tail) as i64).sqrt();
        let mut diag = vec![T::zero(); n];
        diag[k - 1] = -T::from_int(tail as i64) / norm;
        for d in diag.iter_mut().skip(k) {
            *d = T::one() / norm;
        }
        elements.push(SymTwoTensor::diagonal(&diag));
        labels.push(BasisLabel::Psi(k));
    }
    CanonicalS02Basis { n, elements, labels }
}

/// Orthonormal basis of the full `S²`: `e^i⊗e^i` then `φ_ij`.
pub fn full_s2_basis<T: Scalar>(n: usize) -> CanonicalS02Basis<T> {
    let mut elements = Vec::with_capacity(n * (n + 1) / 2);
    let mut labels = Vec::with_capacity(elements.capacity());
    for i in 0..n {
        let mut d = vec![T::zero(); n];
        d[i] = T::one();
        elements.push(SymTwoTensor::diagonal(&d));
        labels.push(BasisLabel::Diagonal(i));
    }
    for i in 0..n {
        for j in i + 1..n {
            elements.push(phi(n, i, j));
            labels.push(BasisLabel::Phi(i, j));
        }
    }
    CanonicalS02Basis { n, elements, labels }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gram_defect(b: &CanonicalS02Basis<f64>) -> f64 {
        let m = b.len();
        b.gram()
            .iter()
            .enumerate()
            .map(|(k, &v)| (v - if k / m == k % m { 1.0 } else { 0.0 }).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn n2_basis_is_phi_and_psi() {
        let b = canonical_s02_basis::<f64>(2);
        assert_eq!(b.len(), 2);
        let r = 1.0 / 2f64.sqrt();
        assert_eq!(b.labels(), &[BasisLabel::Phi(0, 1), BasisLabel::Psi(1)]);
        assert_eq!(b.get(0).data(), &[0.0, r, r, 0.0]);
        let psi = b.get(1).data();
        assert!((psi[0] + r).abs() < 1e-15 && (psi[3] - r).abs() < 1e-15);
        assert_eq!(psi[1], 0.0);
    }

    #[test]
    fn n3_gram_identity() {
        let b = canonical_s02_basis::<f64>(3);
        assert_eq!(b.len(), 5);
        assert!(gram_defect(&b) < 1e-12);
    }

    #[test]
    fn n5_psi_orthogonal() {
        let b = canonical_s02_basis::<f64>(5);
        assert_eq!(b.len(), 14);
        let psi1 = b.labels().iter().position(|l| *l == BasisLabel::Psi(1)).unwrap();
        let psi2 = b.labels().iter().position(|l| *l == BasisLabel::Psi(2)).unwrap();
        assert!(b.get(psi1).inner(b.get(psi2)).abs() < 1e-15);
    }

    #[test]
    fn orthonormal_and_trace_free_up_to_12() {
        for n in 2..=12 {
            let b = canonical_s02_basis::<f64>(n);
            assert_eq!(b.len(), (n - 1) * (n + 2) / 2);
            assert!(gram_defect(&b) < 1e-12, "n = {n}");
            assert!(b.elements().iter().all(|e| e.is_trace_free(1e-14)));
            assert!(gram_defect(&full_s2_basis::<f64>(n)) < 1e-12);
        }
    }

    #[test]
    fn trace_free_examples() {
        let g = SymTwoTensor::<f64>::identity(3);
        assert!(trace_free_project(&g).norm_sq() < 1e-30);
        let s = SymTwoTensor::diagonal(&[1.0f64, 0.0, 0.0]);
        let p = trace_free_project(&s);
        let want = [2.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0];
        for (i, w) in want.iter().enumerate() {
            assert!((p.get(i, i) - w).abs() < 1e-15);
        }
        let again = trace_free_project(&p);
        assert!(again.sub(&p).norm_sq() < 1e-30);
    }

    #[test]
    fn rejects_asymmetric() {
        let err = SymTwoTensor::<f64>::new(2, vec![1.0, 2.0, 3.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::NotSymmetric { .. }));
    }
}
