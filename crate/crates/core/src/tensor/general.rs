use num_traits::Float;
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::sym::SymTwoTensor;

/// Dense `(0,k)`-tensor on `ℝⁿ`, row-major over `(i_1, …, i_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralTensor<T> {
    n: usize,
    order: usize,
    data: Vec<T>,
}

impl<T: Scalar> GeneralTensor<T> {
    pub fn zeros(n: usize, order: usize) -> Self {
        GeneralTensor { n, order, data: vec![T::zero(); n.pow(order as u32)] }
    }

    pub fn from_data(n: usize, order: usize, data: Vec<T>) -> Result<Self> {
        let expected = n.pow(order as u32);
        if data.len() != expected {
            return Err(Error::ShapeMismatch { expected, found: data.len() });
        }
        Ok(GeneralTensor { n, order, data })
    }

    pub fn from_fn(n: usize, order: usize, mut f: impl FnMut(&[usize]) -> T) -> Self {
        let mut t = Self::zeros(n, order);
        let mut idx = vec![0; order];
        for flat in 0..t.data.len() {
            t.decode_into(flat, &mut idx);
            t.data[flat] = f(&idx);
        }
        t
    }

    /// Entries uniform in `[-1, 1)`.
    pub fn random<R: Rng + ?Sized>(n: usize, order: usize, rng: &mut R) -> Self {
        Self::from_fn(n, order, |_| T::lit(rng.gen_range(-1.0..1.0)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.order);
        idx.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    pub fn decode_into(&self, mut flat: usize, idx: &mut [usize]) {
        for slot in (0..self.order).rev() {
            idx[slot] = flat % self.n;
            flat /= self.n;
        }
    }

    pub fn get(&self, idx: &[usize]) -> T {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: T) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    pub fn dot(&self, other: &Self) -> T {
        self.data.iter().zip(&other.data).map(|(&a, &b)| a * b).sum()
    }

    /// Standard `⊗`-norm squared: sum of squares of all components.
    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    pub fn scale(&self, s: T) -> Self {
        GeneralTensor { n: self.n, order: self.order, data: self.data.iter().map(|&v| v * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        GeneralTensor {
            n: self.n,
            order: self.order,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        }
    }

    /// Derivation action `(ST)(X_1, …, X_k) = Σ_r T(X_1, …, S X_r, …, X_k)`.
    pub fn act_sym(&self, s: &SymTwoTensor<T>) -> Result<Self> {
        if s.n() != self.n {
            return Err(Error::DimensionMismatch { left: s.n(), right: self.n });
        }
        let n = self.n;
        let mut out = Self::zeros(n, self.order);
        let mut idx = vec![0; self.order];
        for flat in 0..self.data.len() {
            self.decode_into(flat, &mut idx);
            let mut acc = T::zero();
            for r in 0..self.order {
                let orig = idx[r];
                for m in 0..n {
                    let smi = s.get(m, orig);
                    if smi != T::zero() {
                        idx[r] = m;
                        acc = acc + smi * self.get(&idx);
                    }
                }
                idx[r] = orig;
            }
            out.data[flat] = acc;
        }
        Ok(out)
    }

    /// Components in the frame whose `a`-th vector is column `a` of the
    /// orthogonal `n × n` row-major matrix `q`.
    pub fn rotate(&self, q: &[T]) -> Self {
        let n = self.n;
        let mut cur = self.clone();
        let mut idx = vec![0; self.order];
        for slot in 0..self.order {
            let mut next = Self::zeros(n, self.order);
            for flat in 0..cur.data.len() {
                cur.decode_into(flat, &mut idx);
                let a = idx[slot];
                let mut acc = T::zero();
                for i in 0..n {
                    idx[slot] = i;
                    acc = acc + q[i * n + a] * cur.get(&idx);
                }
                next.data[flat] = acc;
            }
            cur = next;
        }
        cur
    }

    /// Largest deviation from total antisymmetry over adjacent slot swaps.
    pub fn alternating_defect(&self) -> T {
        let mut worst = T::zero();
        let mut idx = vec![0; self.order];
        for flat in 0..self.data.len() {
            self.decode_into(flat, &mut idx);
            for r in 1..self.order {
                let mut swapped = idx.clone();
                swapped.swap(r - 1, r);
                worst = worst.max(Float::abs(self.data[flat] + self.get(&swapped)));
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_action_multiplies_by_order() {
        let mut rng = rand::thread_rng();
        let t = GeneralTensor::<f64>::random(3, 3, &mut rng);
        let g = SymTwoTensor::identity(3);
        let gt = t.act_sym(&g).unwrap();
        for (a, b) in gt.data().iter().zip(t.data()) {
            assert!((a - 3.0 * b).abs() < 1e-14);
        }
    }

    #[test]
    fn offsets_round_trip() {
        let t = GeneralTensor::<f64>::zeros(4, 3);
        let mut idx = [0; 3];
        for flat in 0..64 {
            t.decode_into(flat, &mut idx);
            assert_eq!(t.offset(&idx), flat);
        }
    }

    #[test]
    fn shape_checked() {
        assert!(GeneralTensor::<f64>::from_data(3, 2, vec![0.0; 8]).is_err());
    }
}
