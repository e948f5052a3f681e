use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::dimension::factorial;
use super::general::GeneralTensor;
use super::multi_index::{sort_with_sign, MultiIndex};
use super::sym::SymTwoTensor;

/// Alternating `(0,p)`-tensor stored by its components `ω_{i_1…i_p}` on
/// sorted multi-indices `i_1 < … < i_p`.
///
/// The norm is the one inherited from `⊗^p`, so
/// `|ω|² = p! Σ_{i_1<…<i_p} ω²_{i_1…i_p}` and `|e^1∧…∧e^p|² = p!`.
#[derive(Clone, Debug, PartialEq)]
pub struct PForm<T> {
    n: usize,
    p: usize,
    indices: Vec<MultiIndex>,
    coeffs: Vec<T>,
}

impl<T: Scalar> PForm<T> {
    pub fn zero(n: usize, p: usize) -> Self {
        let indices = MultiIndex::all(n, p);
        let coeffs = vec![T::zero(); indices.len()];
        PForm { n, p, indices, coeffs }
    }

    pub fn from_coeffs(n: usize, p: usize, coeffs: Vec<T>) -> Result<Self> {
        if p > n {
            return Err(Error::POutOfRange { p, n });
        }
        let indices = MultiIndex::all(n, p);
        if coeffs.len() != indices.len() {
            return Err(Error::ShapeMismatch { expected: indices.len(), found: coeffs.len() });
        }
        Ok(PForm { n, p, indices, coeffs })
    }

    /// `e^{i_1} ∧ … ∧ e^{i_p}`.
    pub fn wedge(n: usize, factors: &[usize]) -> Result<Self> {
        let p = factors.len();
        if p > n || factors.iter().any(|&i| i >= n) {
            return Err(Error::InvalidMultiIndex { entries: factors.to_vec(), n });
        }
        let mut form = Self::zero(n, p);
        if let Some((sorted, sign)) = sort_with_sign(factors) {
            let rank = MultiIndex::new(n, sorted)?.rank(n);
            form.coeffs[rank] = T::from_int(sign as i64);
        }
        Ok(form)
    }

    pub fn random<R: Rng + ?Sized>(n: usize, p: usize, rng: &mut R) -> Self {
        let mut form = Self::zero(n, p);
        for c in form.coeffs.iter_mut() {
            *c = T::lit(rng.gen_range(-1.0..1.0));
        }
        form
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    /// Component on an arbitrary index tuple via the alternating extension.
    pub fn get(&self, idx: &[usize]) -> T {
        match sort_with_sign(idx) {
            None => T::zero(),
            Some((sorted, sign)) => {
                let rank = MultiIndex(sorted).rank(self.n);
                let c = self.coeffs[rank];
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Inner product from `⊗^p`: `p! Σ_sorted ω_I η_I`.
    pub fn dot(&self, other: &Self) -> T {
        let s: T = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| a * b).sum();
        s * T::from_int(factorial(self.p) as i64)
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    pub fn scale(&self, s: T) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c = *c * s);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, &d) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *c = *c + d;
        }
        out
    }

    /// The full `n^p` antisymmetric array.
    pub fn to_dense(&self) -> GeneralTensor<T> {
        GeneralTensor::from_fn(self.n, self.p, |idx| self.get(idx))
    }

    /// Reads the sorted components of a dense tensor; fails unless the tensor
    /// is alternating to `1e-12` relative.
    pub fn from_dense(t: &GeneralTensor<T>) -> Result<Self> {
        let (n, p) = (t.n(), t.order());
        let scale = t.data().iter().fold(T::zero(), |m, v| num_traits::Float::max(m, num_traits::Float::abs(*v)));
        let defect = t.alternating_defect();
        if defect > T::tolerance(1e-12) * (T::one() + scale) {
            return Err(Error::NotSymmetric { residual: defect.as_f64() });
        }
        let mut form = Self::zero(n, p);
        for (c, mi) in form.coeffs.iter_mut().zip(&form.indices) {
            *c = t.get(mi.entries());
        }
        Ok(form)
    }

    /// `(Sω)_{i_1…i_p} = Σ_r Σ_m S_{m i_r} ω_{i_1…m…i_p}`; again a p-form.
    pub fn act_sym(&self, s: &SymTwoTensor<T>) -> Result<Self> {
        if s.n() != self.n {
            return Err(Error::DimensionMismatch { left: s.n(), right: self.n });
        }
        let mut out = Self::zero(self.n, self.p);
        let mut idx = vec![0; self.p];
        for (k, mi) in self.indices.iter().enumerate() {
            idx.copy_from_slice(mi.entries());
            let mut acc = T::zero();
            for r in 0..self.p {
                let orig = idx[r];
                for m in 0..self.n {
                    let smi = s.get(m, orig);
                    if smi != T::zero() {
                        idx[r] = m;
                        acc = acc + smi * self.get(&idx);
                    }
                }
                idx[r] = orig;
            }
            out.coeffs[k] = acc;
        }
        Ok(out)
    }

    /// Components in the frame spanned by the columns of `q`.
    pub fn rotate(&self, q: &[T]) -> Self {
        let dense = self.to_dense().rotate(q);
        let mut form = Self::zero(self.n, self.p);
        for (c, mi) in form.coeffs.iter_mut().zip(&form.indices) {
            *c = dense.get(mi.entries());
        }
        form
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn wedge_norm_is_factorial() {
        let w = PForm::<f64>::wedge(4, &[0, 1]).unwrap();
        assert_eq!(w.norm_sq(), 2.0);
        let v = PForm::<f64>::wedge(5, &[2, 0, 4]).unwrap();
        assert_eq!(v.get(&[0, 2, 4]), -1.0);
        assert_eq!(v.norm_sq(), 6.0);
        assert_eq!(PForm::<f64>::wedge(3, &[1, 1]).unwrap().norm_sq(), 0.0);
    }

    #[test]
    fn dense_norm_matches_sorted_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, p) in [(3, 1), (4, 2), (5, 3), (6, 4), (5, 5)] {
            let w = PForm::<f64>::random(n, p, &mut rng);
            let dense = w.to_dense().norm_sq();
            assert!((dense - w.norm_sq()).abs() <= 1e-12 * dense.max(1.0));
            assert_eq!(PForm::from_dense(&w.to_dense()).unwrap(), w);
        }
    }

    #[test]
    fn metric_action_scales_by_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let w = PForm::<f64>::random(5, 3, &mut rng);
        let gw = w.act_sym(&SymTwoTensor::identity(5)).unwrap();
        for (a, b) in gw.coeffs().iter().zip(w.coeffs()) {
            assert!((a - 3.0 * b).abs() < 1e-14);
        }
    }

    #[test]
    fn diagonal_action_sums_eigenvalues() {
        let s = SymTwoTensor::diagonal(&[1.0, -1.0, 0.0, 0.0]);
        let w = PForm::<f64>::wedge(4, &[0, 1]).unwrap();
        assert!(w.act_sym(&s).unwrap().norm_sq() < 1e-30);
        let s = SymTwoTensor::diagonal(&[0.5, 2.0, -1.0, 3.0]);
        let w = PForm::<f64>::wedge(4, &[1, 3]).unwrap();
        let sw = w.act_sym(&s).unwrap();
        assert!((sw.get(&[1, 3]) - 5.0).abs() < 1e-15);
    }

    #[test]
    fn action_agrees_with_dense_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = SymTwoTensor::<f64>::random(5, &mut rng);
        let w = PForm::<f64>::random(5, 2, &mut rng);
        let a = w.act_sym(&s).unwrap().to_dense();
        let b = w.to_dense().act_sym(&s).unwrap();
        for (x, y) in a.data().iter().zip(b.data()) {
            assert!((x - y).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(PForm::<f64>::from_coeffs(4, 2, vec![0.0; 5]).is_err());
        assert!(PForm::<f64>::from_coeffs(3, 4, vec![]).is_err());
        let t = GeneralTensor::<f64>::from_fn(3, 2, |i| (i[0] + i[1]) as f64);
        assert!(PForm::from_dense(&t).is_err());
    }
}
