//! The Lichnerowicz curvature term `Ric_L` on `p`-forms and its
//! decomposition through the curvature operator of the second kind:
//!
//! `(3/2) g(Ric_L ω, ω) = g(𝓡(ω^{S²₀}), ω^{S²₀}) + (p(n−2p)/n) Σ R_jk ω_{j…} ω_{k…} + (p²/n²) scal |ω|²`,
//!
//! where `ω^{S²₀} = Σ_α S_α ω ⊗ S_α` over an orthonormal basis of `S²₀`.


use crate::error::{Error, Result};
use crate::operators::{ricci_scalar, second_kind_matrix, BasisTag, OperatorMatrix};
use crate::scalar::Scalar;
use crate::tensor::{canonical_s02_basis, sort_with_sign, CurvatureTensor, GeneralTensor, MultiIndex, PForm, SymTwoTensor};

/// `Sω`, the derivation action of `S ∈ S²` on a form.
pub fn act_sym_on_form<T: Scalar>(s: &SymTwoTensor<T>, omega: &PForm<T>) -> Result<PForm<T>> {
    omega.act_sym(s)
}

/// `ω^{S²₀}` in the canonical basis: the forms `S_α ω` and their norms.
#[derive(Clone, Debug, PartialEq)]
pub struct FormS02Expansion<T> {
    pub form: PForm<T>,
    pub coefficients: Vec<PForm<T>>,
    /// `|S_α ω|²`.
    pub weights: Vec<T>,
    /// `|ω^{S²₀}|² = Σ_α |S_α ω|²`.
    pub total: T,
}

impl<T: Scalar> FormS02Expansion<T> {
    /// `Σ_{αβ} M_{αβ} g(S_α ω, S_β ω)` for a matrix over the same basis.
    pub fn pair_with(&self, m: &OperatorMatrix<T>) -> T {
        let c = &self.coefficients;
        let mut acc = T::zero();
        for a in 0..c.len() {
            acc = acc + m.get(a, a) * self.weights[a];
            for b in a + 1..c.len() {
                acc = acc + T::lit(2.0) * m.get(a, b) * c[a].dot(&c[b]);
            }
        }
        acc
    }
}

pub fn form_s02_expansion<T: Scalar>(omega: &PForm<T>) -> FormS02Expansion<T> {
    let basis = canonical_s02_basis::<T>(omega.n());
    let coefficients: Vec<PForm<T>> =
        basis.elements().iter().map(|s| omega.act_sym(s).expect("basis built for ω.n()")).collect();
    let weights: Vec<T> = coefficients.iter().map(PForm::norm_sq).collect();
    let total = weights.iter().copied().sum();
    FormS02Expansion { form: omega.clone(), coefficients, weights, total }
}

/// `Σ_{j,k} Ric_jk Σ ω_{j i_2…i_p} ω_{k i_2…i_p}` with the inner sum over all
/// ordered tuples.
fn ricci_contraction<T: Scalar>(ric: &SymTwoTensor<T>, dense: &GeneralTensor<T>) -> T {
    let n = dense.n();
    let stride = dense.data().len() / n;
    let d = dense.data();
    let mut acc = T::zero();
    for j in 0..n {
        for k in 0..n {
            let rjk = ric.get(j, k);
            if rjk == T::zero() {
                continue;
            }
            let row: T = (0..stride).map(|m| d[j * stride + m] * d[k * stride + m]).sum();
            acc = acc + rjk * row;
        }
    }
    acc
}

/// `g(Ric_L ω, ω) = p Σ R_ij ω_{i…}ω_{j…} − (p(p−1)/2) Σ R_ijkl ω_{ij…}ω_{kl…}`,
/// evaluated on the dense antisymmetric extension of `ω`.
pub fn ric_l_quadratic<T: Scalar>(r: &CurvatureTensor<T>, omega: &PForm<T>) -> Result<T> {
    let n = r.n();
    if omega.n() != n {
        return Err(Error::DimensionMismatch { left: n, right: omega.n() });
    }
    let p = omega.degree();
    if p == 0 {
        return Ok(T::zero());
    }
    let dense = omega.to_dense();
    let first = T::from_int(p as i64) * ricci_contraction(&r.ricci(), &dense);
    if p == 1 {
        return Ok(first);
    }
    let stride = dense.data().len() / (n * n);
    let d = dense.data();
    let mut second = T::zero();
    for ij in 0..n * n {
        for kl in 0..n * n {
            let rv = r.get(ij / n, ij % n, kl / n, kl % n);
            if rv == T::zero() {
                continue;
            }
            let row: T = (0..stride).map(|m| d[ij * stride + m] * d[kl * stride + m]).sum();
            second = second + rv * row;
        }
    }
    Ok(first - T::from_int((p * (p - 1) / 2) as i64) * second)
}

/// Ranks of `{i} ∪ A` for every `i ∉ A`, with the sign of the sorting
/// permutation of `(i, A…)`.
fn insertions(n: usize, a: &[usize], extra: &[usize]) -> Option<(usize, i8)> {
    let mut v = extra.to_vec();
    v.extend_from_slice(a);
    let (sorted, sign) = sort_with_sign(&v)?;
    Some((MultiIndex::new(n, sorted).ok()?.rank(n), sign))
}

/// Matrix of `Ric_L` on `Λ^p` in the orthonormal basis `e_I/√p!`, obtained by
/// polarizing [`ric_l_quadratic`] over sorted multi-indices.
pub fn ric_l_matrix<T: Scalar>(r: &CurvatureTensor<T>, p: usize) -> Result<OperatorMatrix<T>> {
    let n = r.n();
    if p > n {
        return Err(Error::POutOfRange { p, n });
    }
    let dim = crate::tensor::binomial(n, p);
    let mut m = vec![T::zero(); dim * dim];
    let tag = BasisTag::LambdaPCanonical { p };
    if p == 0 {
        return OperatorMatrix::new(dim, m, tag);
    }
    let ric = r.ricci();
    for a in MultiIndex::all(n, p - 1) {
        let rows: Vec<(usize, usize, i8)> = (0..n)
            .filter_map(|i| insertions(n, a.entries(), &[i]).map(|(rank, s)| (i, rank, s)))
            .collect();
        for &(i, ri, si) in &rows {
            for &(j, rj, sj) in &rows {
                let v = ric.get(i, j);
                m[ri * dim + rj] = m[ri * dim + rj] + T::from_int((si * sj) as i64) * v;
            }
        }
    }
    if p >= 2 {
        let two = T::lit(2.0);
        for b in MultiIndex::all(n, p - 2) {
            let mut pairs = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if let Some((rank, s)) = insertions(n, b.entries(), &[i, j]) {
                        pairs.push((i, j, rank, s));
                    }
                }
            }
            for &(i, j, ra, sa) in &pairs {
                for &(k, l, rb, sb) in &pairs {
                    let v = r.get(i, j, k, l);
                    m[ra * dim + rb] = m[ra * dim + rb] - two * T::from_int((sa * sb) as i64) * v;
                }
            }
        }
    }
    OperatorMatrix::new(dim, m, tag)
}

/// Slot-wise `Ric_L` on a `(0,p)`-tensor:
/// `(Ric_L T)_I = Σ_r Σ_d Ric_{i_r d} T_{I[r→d]} − Σ_{r≠s} Σ_{j,d} R_{i_r j i_s d} T_{I[r→j, s→d]}`.
pub fn ric_l_apply<T: Scalar>(r: &CurvatureTensor<T>, t: &GeneralTensor<T>) -> Result<GeneralTensor<T>> {
    let n = r.n();
    if t.n() != n {
        return Err(Error::DimensionMismatch { left: n, right: t.n() });
    }
    let order = t.order();
    let ric = r.ricci();
    let mut out = GeneralTensor::zeros(n, order);
    let mut idx = vec![0; order];
    let mut work = vec![0; order];
    for flat in 0..t.data().len() {
        t.decode_into(flat, &mut idx);
        let mut acc = T::zero();
        for rr in 0..order {
            work.copy_from_slice(&idx);
            for d in 0..n {
                work[rr] = d;
                acc = acc + ric.get(idx[rr], d) * t.get(&work);
            }
            for s in 0..order {
                if s == rr {
                    continue;
                }
                work.copy_from_slice(&idx);
                for j in 0..n {
                    for d in 0..n {
                        let rv = r.get(idx[rr], j, idx[s], d);
                        if rv != T::zero() {
                            work[rr] = j;
                            work[s] = d;
                            acc = acc - rv * t.get(&work);
                        }
                    }
                }
            }
        }
        out.set(&idx, acc);
    }
    Ok(out)
}

/// The terms of the decomposition for one form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BochnerReport<T> {
    /// `(3/2) g(Ric_L ω, ω)`.
    pub lhs: T,
    /// `g(𝓡(ω^{S²₀}), ω^{S²₀})`.
    pub term_operator: T,
    /// `(p(n−2p)/n) Σ R_jk ω_{j…} ω_{k…}`.
    pub term_ricci: T,
    /// `(p²/n²) scal |ω|²`.
    pub term_scal: T,
    /// `|lhs − rhs| / (1 + |lhs|)`.
    pub residual: T,
}

impl<T: Scalar> BochnerReport<T> {
    fn assemble(lhs: T, term_operator: T, term_ricci: T, term_scal: T) -> Self {
        let residual = (lhs - (term_operator + term_ricci + term_scal)).abs() / (T::one() + lhs.abs());
        BochnerReport { lhs, term_operator, term_ricci, term_scal, residual }
    }
}

fn check_dims<T: Scalar>(r: &CurvatureTensor<T>, omega: &PForm<T>) -> Result<()> {
    if r.n() != omega.n() {
        return Err(Error::DimensionMismatch { left: r.n(), right: omega.n() });
    }
    Ok(())
}

pub fn bochner_decomposition<T: Scalar>(r: &CurvatureTensor<T>, omega: &PForm<T>) -> Result<BochnerReport<T>> {
    check_dims(r, omega)?;
    let (n, p) = (T::from_int(r.n() as i64), T::from_int(omega.degree() as i64));
    if omega.degree() == 0 {
        return Ok(BochnerReport::assemble(T::zero(), T::zero(), T::zero(), T::zero()));
    }
    let summary = ricci_scalar(r);
    let lhs = T::lit(1.5) * ric_l_quadratic(r, omega)?;
    let term_operator = form_s02_expansion(omega).pair_with(&second_kind_matrix(r));
    let term_ricci = p * (n - T::lit(2.0) * p) / n * ricci_contraction(&summary.ricci, &omega.to_dense());
    let term_scal = p * p / (n * n) * summary.scalar * omega.norm_sq();
    Ok(BochnerReport::assemble(lhs, term_operator, term_ricci, term_scal))
}

/// Residual of the Einstein form
/// `(3/2) g(Ric_L ω, ω) = g(𝓡(ω^{S²₀}), ω^{S²₀}) + (p(n−p)/n²) scal |ω|²`.
pub fn einstein_short_form<T: Scalar>(r: &CurvatureTensor<T>, omega: &PForm<T>) -> Result<T> {
    check_dims(r, omega)?;
    let (n, p) = (T::from_int(r.n() as i64), T::from_int(omega.degree() as i64));
    let lhs = T::lit(1.5) * ric_l_quadratic(r, omega)?;
    let op = form_s02_expansion(omega).pair_with(&second_kind_matrix(r));
    let scal = r.scalar_curvature();
    let rhs = op + p * (n - p) / (n * n) * scal * omega.norm_sq();
    Ok((lhs - rhs).abs() / (T::one() + lhs.abs()))
}

/// Orthogonal frame diagonalizing `Ric`: row-major `q` whose columns are
/// eigenvectors, with the eigenvalues.
pub fn ricci_frame<T: Scalar>(r: &CurvatureTensor<T>) -> (Vec<T>, Vec<T>) {
    let n = r.n();
    let (values, vectors) = r.ricci().eigen();
    let mut q = vec![T::zero(); n * n];
    for (a, v) in vectors.iter().enumerate() {
        for i in 0..n {
            q[i * n + a] = v[i];
        }
    }
    (values, q)
}

/// The decomposition evaluated after rotating `R` and `ω` into a frame that
/// diagonalizes `Ric`, where the Ricci term reads
/// `(p(n−2p)/n) Σ_j ρ_j Σ ω²_{j…}`.
pub fn bochner_in_ricci_frame<T: Scalar>(r: &CurvatureTensor<T>, omega: &PForm<T>) -> Result<BochnerReport<T>> {
    check_dims(r, omega)?;
    let (rho, q) = ricci_frame(r);
    let (rr, w) = (r.rotate(&q), omega.rotate(&q));
    let (n, p) = (T::from_int(r.n() as i64), T::from_int(omega.degree() as i64));
    if omega.degree() == 0 {
        return Ok(BochnerReport::assemble(T::zero(), T::zero(), T::zero(), T::zero()));
    }
    let lhs = T::lit(1.5) * ric_l_quadratic(&rr, &w)?;
    let term_operator = form_s02_expansion(&w).pair_with(&second_kind_matrix(&rr));
    let dense = w.to_dense();
    let stride = dense.data().len() / rr.n();
    let diag: T = rho
        .iter()
        .enumerate()
        .map(|(j, &rj)| rj * dense.data()[j * stride..(j + 1) * stride].iter().map(|&x| x * x).sum::<T>())
        .sum();
    let term_ricci = p * (n - T::lit(2.0) * p) / n * diag;
    let term_scal = p * p / (n * n) * rho.iter().copied().sum::<T>() * w.norm_sq();
    Ok(BochnerReport::assemble(lhs, term_operator, term_ricci, term_scal))
}

/// `g(𝓡(ω^{S²₀}), ω^{S²₀}) = Σ_α λ_α |Ŝ_α ω|²` over an eigenbasis `Ŝ_α` of `𝓡`.
pub fn operator_term_eigen<T: Scalar>(r: &CurvatureTensor<T>, omega: &PForm<T>) -> Result<T> {
    check_dims(r, omega)?;
    let basis = canonical_s02_basis::<T>(r.n());
    let eig = second_kind_matrix(r).eigen();
    let mut acc = T::zero();
    for (&lambda, v) in eig.values.values().iter().zip(&eig.vectors) {
        let s = basis.combine(v);
        acc = acc + lambda * omega.act_sym(&s)?.norm_sq();
    }
    Ok(acc)
}

/// `e^i ⊙ e^j = e^i⊗e^j + e^j⊗e^i − (2/n) δ_ij g`.
fn odot<T: Scalar>(n: usize, i: usize, j: usize) -> SymTwoTensor<T> {
    let mut s = SymTwoTensor::from_upper(n, |a, b| {
        let hit = (a == i && b == j) || (a == j && b == i);
        if !hit {
            T::zero()
        } else if i == j {
            T::lit(2.0)
        } else {
            T::one()
        }
    });
    if i == j {
        s = s.sub(&SymTwoTensor::identity(n).scale(T::lit(2.0) / T::from_int(n as i64)));
    }
    s
}

/// `(1/4) Σ_{ijkl} g((e^i⊙e^l)ω, (e^j⊙e^k)ω) R_ijkl`.
pub fn ogiue_tachibana_term<T: Scalar>(r: &CurvatureTensor<T>, omega: &PForm<T>) -> Result<T> {
    check_dims(r, omega)?;
    let n = r.n();
    let mut acted = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            acted.push(omega.act_sym(&odot(n, i, j))?);
        }
    }
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let rv = r.get(i, j, k, l);
                    if rv != T::zero() {
                        acc = acc + rv * acted[i * n + l].dot(&acted[j * n + k]);
                    }
                }
            }
        }
    }
    Ok(acc * T::lit(0.25))
}

/// Terms of the decomposition for a general `(0,p)`-tensor, which carries
/// the extra term `Σ_{r≠s} Σ T_{I^{rs}_{ij}} T_{I^{rs}_{kl}} (R_kijl + R_kjil)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneralBochnerCheck<T> {
    pub lhs: T,
    pub term_operator: T,
    pub term_ricci: T,
    pub term_scal: T,
    pub extra: T,
    pub residual: T,
}

/// `T^{rs}_{ij}` contracted against `T^{rs}_{kl}` over the remaining slots.
fn extra_term<T: Scalar>(r: &CurvatureTensor<T>, t: &GeneralTensor<T>) -> T {
    let (n, order) = (t.n(), t.order());
    let mut acc = T::zero();
    if order < 2 {
        return acc;
    }
    let rest = n.pow(order as u32 - 2);
    let mut idx = vec![0; order];
    let mut other = vec![0; order];
    for rs in 0..order {
        for s in 0..order {
            if rs == s {
                continue;
            }
            let free: Vec<usize> = (0..order).filter(|&x| x != rs && x != s).collect();
            for m in 0..rest {
                let mut mm = m;
                for &slot in free.iter().rev() {
                    idx[slot] = mm % n;
                    mm /= n;
                }
                other.copy_from_slice(&idx);
                for i in 0..n {
                    for j in 0..n {
                        idx[rs] = i;
                        idx[s] = j;
                        let a = t.get(&idx);
                        if a == T::zero() {
                            continue;
                        }
                        for k in 0..n {
                            for l in 0..n {
                                other[rs] = k;
                                other[s] = l;
                                acc = acc + a * t.get(&other) * (r.get(k, i, j, l) + r.get(k, j, i, l));
                            }
                        }
                    }
                }
            }
        }
    }
    acc
}

/// Checks `(3/2) g(Ric_L T, T) = Σ 𝓡_{αβ} g(S_α T, S_β T) + ((n−2p)/n) Σ_r Σ Ric_jk T_{…j…} T_{…k…} + (p²/n²) scal |T|² + extra`,
/// with `Ric_L` from [`ric_l_apply`].
pub fn general_tensor_bochner_check<T: Scalar>(r: &CurvatureTensor<T>, t: &GeneralTensor<T>) -> Result<GeneralBochnerCheck<T>> {
    let n_us = r.n();
    if t.n() != n_us {
        return Err(Error::DimensionMismatch { left: n_us, right: t.n() });
    }
    let (n, p) = (T::from_int(n_us as i64), T::from_int(t.order() as i64));
    let summary = ricci_scalar(r);
    let lhs = T::lit(1.5) * ric_l_apply(r, t)?.dot(t);

    let basis = canonical_s02_basis::<T>(n_us);
    let m = second_kind_matrix(r);
    let st: Vec<GeneralTensor<T>> = basis.elements().iter().map(|s| t.act_sym(s)).collect::<Result<_>>()?;
    let mut term_operator = T::zero();
    for a in 0..st.len() {
        for b in 0..st.len() {
            term_operator = term_operator + m.get(a, b) * st[a].dot(&st[b]);
        }
    }

    // Σ_r: contract slot r against Ric by moving it to the front
    let mut slots = T::zero();
    let mut idx = vec![0; t.order()];
    for rr in 0..t.order() {
        let moved = GeneralTensor::from_fn(n_us, t.order(), |perm| {
            idx.copy_from_slice(perm);
            let first = idx[0];
            idx.copy_within(1..=rr, 0);
            idx[rr] = first;
            t.get(&idx)
        });
        slots = slots + ricci_contraction(&summary.ricci, &moved);
    }
    let term_ricci = (n - T::lit(2.0) * p) / n * slots;
    let term_scal = p * p / (n * n) * summary.scalar * t.norm_sq();
    let extra = extra_term(r, t);
    let rhs = term_operator + term_ricci + term_scal + extra;
    Ok(GeneralBochnerCheck {
        lhs,
        term_operator,
        term_ricci,
        term_scal,
        extra,
        residual: (lhs - rhs).abs() / (T::one() + lhs.abs()),
    })
}
