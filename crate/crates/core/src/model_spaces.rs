//! Curvature tensors of the model spaces: constant curvature, `S¹ × S^{n−1}`,
//! `SU(3)/SO(3)`, Kulkarni–Nomizu products and constant-curvature
//! perturbations, plus random algebraic curvature tensors for sweeps.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::{CurvatureTensor, SymTwoTensor};

/// JSON constructor vocabulary, tagged by `kind`.
///
/// ```
/// use curvkind_core::ModelSpec;
/// let spec: ModelSpec = serde_json::from_str(r#"{"kind":"product_sphere","n":5}"#).unwrap();
/// assert_eq!(spec.dimension(), Some(5));
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    ConstantCurvature { n: usize, kappa: f64 },
    ProductSphere { n: usize },
    #[serde(rename = "su3_so3")]
    Su3So3,
    /// `h ⌀ k` for symmetric matrices given row by row.
    KnProduct { h: Vec<Vec<f64>>, k: Vec<Vec<f64>> },
    Perturbed { base: Box<ModelSpec>, kappa: f64 },
    Dense { n: usize, components: Vec<f64> },
}

impl ModelSpec {
    /// Ambient dimension, when it can be read off without building.
    pub fn dimension(&self) -> Option<usize> {
        match self {
            ModelSpec::ConstantCurvature { n, .. } | ModelSpec::ProductSphere { n } | ModelSpec::Dense { n, .. } => {
                Some(*n)
            }
            ModelSpec::Su3So3 => Some(5),
            ModelSpec::KnProduct { h, .. } => Some(h.len()),
            ModelSpec::Perturbed { base, .. } => base.dimension(),
        }
    }

    pub fn build<T: Scalar>(&self) -> Result<CurvatureTensor<T>> {
        match self {
            ModelSpec::ConstantCurvature { n, kappa } => {
                check_dim(*n, 2)?;
                Ok(constant_curvature(*n, T::lit(*kappa)))
            }
            ModelSpec::ProductSphere { n } => {
                check_dim(*n, 3)?;
                Ok(product_sphere(*n))
            }
            ModelSpec::Su3So3 => Ok(su3_so3()),
            ModelSpec::KnProduct { h, k } => {
                let h = sym_from_rows(h)?;
                let k = sym_from_rows(k)?;
                check_dim(h.n(), 2)?;
                kn_product(&h, &k)
            }
            ModelSpec::Perturbed { base, kappa } => Ok(perturb_constant(&base.build()?, T::lit(*kappa))),
            ModelSpec::Dense { n, components } => {
                check_dim(*n, 2)?;
                CurvatureTensor::new(*n, components.iter().map(|&c| T::lit(c)).collect())
            }
        }
    }
}

fn check_dim(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidDimension { n, reason: format!("this model needs n ≥ {min}") });
    }
    Ok(())
}

fn sym_from_rows<T: Scalar>(rows: &[Vec<f64>]) -> Result<SymTwoTensor<T>> {
    let n = rows.len();
    let mut data = Vec::with_capacity(n * n);
    for row in rows {
        if row.len() != n {
            return Err(Error::ShapeMismatch { expected: n, found: row.len() });
        }
        data.extend(row.iter().map(|&v| T::lit(v)));
    }
    SymTwoTensor::new(n, data)
}

/// `R_{ijkl} = κ(δ_ik δ_jl − δ_il δ_jk)`.
pub fn constant_curvature<T: Scalar>(n: usize, kappa: T) -> CurvatureTensor<T> {
    let mut data = vec![T::zero(); n.pow(4)];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                data[((i * n + j) * n + i) * n + j] = kappa;
                data[((i * n + j) * n + j) * n + i] = -kappa;
            }
        }
    }
    CurvatureTensor::from_raw(n, data)
}

/// `S¹ × S^{n−1}` with unit factors; index 0 is the flat direction.
pub fn product_sphere<T: Scalar>(n: usize) -> CurvatureTensor<T> {
    let mut data = vec![T::zero(); n.pow(4)];
    for i in 1..n {
        for j in 1..n {
            if i != j {
                data[((i * n + j) * n + i) * n + j] = T::one();
                data[((i * n + j) * n + j) * n + i] = -T::one();
            }
        }
    }
    CurvatureTensor::from_raw(n, data)
}

fn mat3_mul<T: Scalar>(a: &[T; 9], b: &[T; 9]) -> [T; 9] {
    let mut out = [T::zero(); 9];
    for i in 0..3 {
        for j in 0..3 {
            out[i * 3 + j] = (0..3).map(|m| a[i * 3 + m] * b[m * 3 + j]).sum();
        }
    }
    out
}

fn bracket<T: Scalar>(a: &[T; 9], b: &[T; 9]) -> [T; 9] {
    let (ab, ba) = (mat3_mul(a, b), mat3_mul(b, a));
    let mut out = [T::zero(); 9];
    for m in 0..9 {
        out[m] = ab[m] - ba[m];
    }
    out
}

/// The symmetric space `SU(3)/SO(3)`.
///
/// Tangent vectors are `X = iA` with `A` real, symmetric and trace-free,
/// `⟨X,Y⟩ = −tr(XY) = tr(AB)` and `R(X,Y,Z,W) = −tr([X,Y][Z,W])`. Since
/// `[X,Y] = −[A,B]` everything stays real: `R = −tr([A,B][C,D])`.
pub fn su3_so3<T: Scalar>() -> CurvatureTensor<T> {
    let z = T::zero();
    let (s6, s2) = (T::one() / T::lit(6.0).sqrt(), T::one() / T::lit(2.0).sqrt());
    let basis: [[T; 9]; 5] = [
        [-T::lit(2.0) * s6, z, z, z, s6, z, z, z, s6],
        [z, z, z, z, s2, z, z, z, -s2],
        [z, s2, z, s2, z, z, z, z, z],
        [z, z, s2, z, z, z, s2, z, z],
        [z, z, z, z, z, s2, z, s2, z],
    ];
    let n: usize = 5;
    let mut data = vec![z; n.pow(4)];
    for i in 0..n {
        for j in 0..n {
            let xy = bracket(&basis[i], &basis[j]);
            for k in 0..n {
                for l in 0..n {
                    let zw = bracket(&basis[k], &basis[l]);
                    let prod = mat3_mul(&xy, &zw);
                    data[((i * n + j) * n + k) * n + l] = -(prod[0] + prod[4] + prod[8]);
                }
            }
        }
    }
    CurvatureTensor::from_raw(n, data)
}

/// `base + κ/2 · g⌀g`.
pub fn perturb_constant<T: Scalar>(base: &CurvatureTensor<T>, kappa: T) -> CurvatureTensor<T> {
    base.add(&constant_curvature(base.n(), kappa)).expect("same dimension")
}

pub fn kn_product<T: Scalar>(h: &SymTwoTensor<T>, k: &SymTwoTensor<T>) -> Result<CurvatureTensor<T>> {
    CurvatureTensor::kulkarni_nomizu(h, k)
}

/// Random algebraic curvature tensor: a uniform 4-tensor projected onto
/// `Sym²(Λ²)` and then onto the kernel of the Bianchi map.
pub fn random_curvature<T: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> CurvatureTensor<T> {
    let at = |i: usize, j: usize, k: usize, l: usize| ((i * n + j) * n + k) * n + l;
    let raw: Vec<T> = (0..n.pow(4)).map(|_| T::lit(rng.gen_range(-1.0..1.0))).collect();
    let mut a = vec![T::zero(); raw.len()];
    let quarter = T::lit(0.25);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    a[at(i, j, k, l)] =
                        (raw[at(i, j, k, l)] - raw[at(j, i, k, l)] - raw[at(i, j, l, k)] + raw[at(j, i, l, k)]) * quarter;
                }
            }
        }
    }
    let half = T::lit(0.5);
    let mut s = vec![T::zero(); raw.len()];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    s[at(i, j, k, l)] = (a[at(i, j, k, l)] + a[at(k, l, i, j)]) * half;
                }
            }
        }
    }
    let third = T::one() / T::lit(3.0);
    let mut out = vec![T::zero(); raw.len()];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let b = (s[at(i, j, k, l)] + s[at(j, k, i, l)] + s[at(k, i, j, l)]) * third;
                    out[at(i, j, k, l)] = s[at(i, j, k, l)] - b;
                }
            }
        }
    }
    CurvatureTensor::from_raw(n, out)
}

/// Random Einstein tensor: a constant-curvature part plus a random tensor
/// whose Ricci contraction has been removed by Kulkarni–Nomizu correction.
pub fn random_einstein<T: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> CurvatureTensor<T> {
    let r = random_curvature::<T, R>(n, rng);
    // R − (1/(n−2)) Ric̊ ⌀ g has vanishing trace-free Ricci part
    let g = SymTwoTensor::identity(n);
    let ric0 = r.ricci().trace_free_part();
    let corr = CurvatureTensor::kulkarni_nomizu(&ric0, &g).expect("same n");
    let e = r.add(&corr.scale(-T::one() / T::from_int(n as i64 - 2))).expect("same n");
    perturb_constant(&e, T::lit(rng.gen_range(-1.0..1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{first_kind_matrix, ricci_scalar, second_kind_matrix, spectrum};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constructors_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 3..=7 {
            assert!(constant_curvature::<f64>(n, -0.7).validate().is_ok());
            assert!(product_sphere::<f64>(n).validate().is_ok());
            assert!(random_curvature::<f64, _>(n, &mut rng).validate().is_ok());
            assert!(random_einstein::<f64, _>(n, &mut rng).validate().is_ok());
        }
        assert!(su3_so3::<f64>().validate().is_ok());
    }

    #[test]
    fn random_einstein_is_einstein() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 3..=6 {
            let s = ricci_scalar(&random_einstein::<f64, _>(n, &mut rng));
            assert!(s.einstein_defect < 1e-12, "{}", s.einstein_defect);
        }
    }

    #[test]
    fn constant_curvature_examples() {
        assert_eq!(constant_curvature::<f64>(4, 0.0).max_abs(), 0.0);
        let spec = spectrum(&second_kind_matrix(&constant_curvature::<f64>(4, -1.0)));
        assert_eq!(spec.len(), 9);
        assert!(spec.values().iter().all(|v| (v + 1.0).abs() < 1e-12));
    }

    #[test]
    fn product_sphere_spectrum_and_ricci() {
        let r = product_sphere::<f64>(5);
        let c = spectrum(&second_kind_matrix(&r)).multiplicities();
        assert_eq!(c.len(), 3);
        assert!((c[0].value + 0.6).abs() < 1e-10 && c[0].multiplicity == 1);
        assert!(c[1].value.abs() < 1e-10 && c[1].multiplicity == 4);
        assert!((c[2].value - 1.0).abs() < 1e-10 && c[2].multiplicity == 9);
        let ric = r.ricci();
        assert_eq!(ric.get(0, 0), 0.0);
        assert_eq!(ric.get(3, 3), 3.0);
    }

    #[test]
    fn su3_so3_spectra() {
        let r = su3_so3::<f64>();
        let s = ricci_scalar(&r);
        assert!(s.ricci.sub(&SymTwoTensor::identity(5).scale(3.0)).norm_sq().sqrt() < 1e-12);
        let second = spectrum(&second_kind_matrix(&r)).multiplicities();
        assert_eq!(second.len(), 2);
        assert!((second[0].value + 1.5).abs() < 1e-10 && second[0].multiplicity == 5);
        assert!((second[1].value - 2.0).abs() < 1e-10 && second[1].multiplicity == 9);
        let first = spectrum(&first_kind_matrix(&r)).multiplicities();
        assert!(first[0].value.abs() < 1e-10 && first[0].multiplicity == 7);
        assert!((first[1].value - 2.5).abs() < 1e-10 && first[1].multiplicity == 3);
    }

    #[test]
    fn perturbation_examples() {
        let base = product_sphere::<f64>(4);
        assert_eq!(perturb_constant(&base, 0.0), base);
        let flat = perturb_constant(&constant_curvature::<f64>(5, 1.0), -1.0);
        assert_eq!(flat.max_abs(), 0.0);
    }

    #[test]
    fn spec_json_roundtrip() {
        let spec = ModelSpec::Perturbed { base: Box::new(ModelSpec::Su3So3), kappa: -0.25 };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"kind":"perturbed","base":{"kind":"su3_so3"},"kappa":-0.25}"#);
        assert_eq!(serde_json::from_str::<ModelSpec>(&json).unwrap(), spec);
        let kn: ModelSpec = serde_json::from_str(r#"{"kind":"kn_product","h":[[1,0],[0,0]],"k":[[1,0],[0,1]]}"#).unwrap();
        let r = kn.build::<f64>().unwrap();
        assert_eq!(r.get(0, 1, 0, 1), 1.0);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert!(matches!(ModelSpec::ProductSphere { n: 2 }.build::<f64>(), Err(Error::InvalidDimension { .. })));
        let dense = ModelSpec::Dense { n: 2, components: vec![1.0; 16] };
        assert!(matches!(dense.build::<f64>(), Err(Error::InvalidCurvature(_))));
        let short = ModelSpec::Dense { n: 2, components: vec![0.0; 3] };
        assert!(matches!(short.build::<f64>(), Err(Error::ShapeMismatch { .. })));
    }
}
