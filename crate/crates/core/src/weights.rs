//! Weighted eigenvalue sums.
//!
//! A spectrum `λ_1 ≤ … ≤ λ_N` is *k-nonnegative* (*k-positive*) when
//! `λ_1 + … + λ_⌊k⌋ + (k − ⌊k⌋) λ_{⌊k⌋+1}` is `≥ 0` (`> 0`). The bracket
//! `[𝓡, Ω, 𝒮]` collects all sums `Σ ω_i λ_i` with `0 ≤ ω_i ≤ Ω` and
//! `Σ ω_i = 𝒮`; its minimum is `Ω` times the `𝒮/Ω` partial sum. The
//! constants, Ricci bounds and Lichnerowicz-term bounds below are all
//! expressed through such brackets, and [`certify`] turns them into
//! vanishing certificates.
//!
//! Everything except the certificate layer is generic over [`Field`], so
//! constants and partial sums can be evaluated in exact rational
//! arithmetic:
//!
//! ```
//! use curvkind_core::weights::constants;
//! use num_rational::Rational64;
//!
//! let c = constants::<Rational64>(8, 4).unwrap();
//! assert_eq!(c.c_p, Rational64::from_integer(10));
//! assert_eq!(c.c_p, c.n_einstein);
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{ricci_scalar, second_kind_matrix, spectrum, CurvatureSummary};
use crate::scalar::{Field, Scalar};
use crate::tensor::CurvatureTensor;

/// Highest weight `Ω > 0` and total weight `𝒮 ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightBound<T> {
    omega: T,
    total: T,
}

impl<T: Field> WeightBound<T> {
    pub fn new(omega: T, total: T) -> Result<Self> {
        let ok = omega.partial_cmp(&T::zero()) == Some(std::cmp::Ordering::Greater)
            && total.partial_cmp(&T::zero()).is_some_and(|o| o.is_ge());
        if !ok {
            return Err(Error::InvalidWeights { highest: omega.as_f64(), total: total.as_f64() });
        }
        Ok(WeightBound { omega, total })
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn total(&self) -> T {
        self.total
    }

    /// `𝒮/Ω`.
    pub fn ratio(&self) -> T {
        self.total / self.omega
    }

    pub fn scaled(&self, c: T) -> Result<Self> {
        Self::new(self.omega * c, self.total * c)
    }

    /// `min [λ, Ω, 𝒮]`, see [`min_weighted_sum`].
    pub fn evaluate(&self, values: &[T]) -> Result<T> {
        min_weighted_sum(values, self)
    }
}

/// `λ_1 + … + λ_⌊k⌋ + (k − ⌊k⌋) λ_{⌊k⌋+1}` over ascending `values`.
///
/// Fails with [`Error::KOutOfRange`] once the sum would need more than `N`
/// eigenvalues; `k = N` itself is the full sum.
pub fn k_partial_sum<T: Field>(values: &[T], k: T) -> Result<T> {
    let len = values.len();
    let err = || Error::KOutOfRange { k: k.as_f64(), len };
    let m = k.floor_index().ok_or_else(err)?;
    if m > len {
        return Err(err());
    }
    let frac = k - T::from_int(m as i64);
    let mut sum = values[..m].iter().fold(T::zero(), |acc, &v| acc + v);
    if frac != T::zero() {
        let next = values.get(m).ok_or_else(err)?;
        sum = sum + frac * *next;
    }
    Ok(sum)
}

/// `min Σ ω_i λ_i` over `0 ≤ ω_i ≤ Ω`, `Σ ω_i = 𝒮`, i.e. `Ω` times the
/// `𝒮/Ω` partial sum.
pub fn min_weighted_sum<T: Field>(values: &[T], b: &WeightBound<T>) -> Result<T> {
    let len = values.len();
    let cap = b.omega * T::from_int(len as i64);
    if b.total > cap {
        return Err(Error::InfeasibleWeights { total: b.total.as_f64(), highest: b.omega.as_f64(), len });
    }
    if b.total == cap {
        return Ok(b.omega * values.iter().fold(T::zero(), |acc, &v| acc + v));
    }
    Ok(b.omega * k_partial_sum(values, b.ratio())?)
}

/// The thresholds attached to a dimension `n` and degree `p ≤ n/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constants<T> {
    pub n: usize,
    pub p: usize,
    /// `C_p = (3/2) n(n+2)p(n−p) / (n²p − np² − 2np + 2n² + 2n − 4p)`.
    pub c_p: T,
    /// `N = (3n/2)(n+2)/(n+4)`.
    pub n_einstein: T,
    /// `(n+2)/2`.
    pub threshold_a: T,
}

pub fn constants<T: Field>(n: usize, p: usize) -> Result<Constants<T>> {
    if p == 0 || 2 * p > n {
        return Err(Error::POutOfRange { p, n });
    }
    Ok(Constants { n, p, c_p: c_p(n, p), n_einstein: n_einstein(n), threshold_a: threshold_a(n) })
}

fn int<T: Field>(v: usize) -> T {
    T::from_int(v as i64)
}

/// `C_p`, without range checks.
pub fn c_p<T: Field>(n: usize, p: usize) -> T {
    total_weight::<T>(n, p) / omega_improved::<T>(n, p)
}

pub fn n_einstein<T: Field>(n: usize) -> T {
    int::<T>(3 * n * (n + 2)) / int::<T>(2 * (n + 4))
}

pub fn threshold_a<T: Field>(n: usize) -> T {
    int::<T>(n + 2) / int::<T>(2)
}

/// Total weight `(3/2) p(n−p)` of the general estimates.
pub fn total_weight<T: Field>(n: usize, p: usize) -> T {
    int::<T>(3 * p * (n - p)) / int::<T>(2)
}

fn omega_with<T: Field>(n: usize, p: usize, lin_n: i64, lin_p: i64) -> T {
    let (ni, pi) = (n as i64, p as i64);
    T::from_int(ni * ni * pi - ni * pi * pi - 2 * ni * pi + 2 * ni * ni + lin_n * ni + lin_p * pi)
        / T::from_int(ni * (ni + 2))
}

/// `(n²p − np² − 2np + 2n² + 4n − 8p) / (n(n+2))`.
pub fn omega_weak<T: Field>(n: usize, p: usize) -> T {
    omega_with(n, p, 4, -8)
}

/// `(n²p − np² − 2np + 2n² + 2n − 4p) / (n(n+2))`.
pub fn omega_improved<T: Field>(n: usize, p: usize) -> T {
    omega_with(n, p, 2, -4)
}

/// Lower bound for `Σ_{i≤p} R_ii` over orthonormal `p`-frames from the
/// spectrum of `𝓡`: `[𝓡, 1, n−1]` for `p = 1`, `[𝓡, 2, p(n−1)]` otherwise.
pub fn ricci_lower_bound_weak<T: Field>(values: &[T], n: usize, p: usize) -> Result<T> {
    match p {
        0 => Err(Error::POutOfRange { p, n }),
        1 => min_weighted_sum(values, &WeightBound::new(T::one(), int(n - 1))?),
        _ => min_weighted_sum(values, &WeightBound::new(int(2), int(p * (n - 1)))?),
    }
}

/// The sharper bound mixing in `scal`:
/// `((n−1)/(n+1))[𝓡,1,n] + scal/(n(n+1))` for `p = 1` and
/// `((n−p+1)/(n−p+2))[𝓡,2,p(n−1)] + p·scal/(n(n−p+2))` otherwise.
pub fn ricci_lower_bound_improved<T: Field>(values: &[T], scal: T, n: usize, p: usize) -> Result<T> {
    match p {
        0 => Err(Error::POutOfRange { p, n }),
        1 => {
            let m = min_weighted_sum(values, &WeightBound::new(T::one(), int(n))?)?;
            Ok(int::<T>(n - 1) / int::<T>(n + 1) * m + scal / int::<T>(n * (n + 1)))
        }
        _ if p > n => Err(Error::POutOfRange { p, n }),
        _ => {
            let m = min_weighted_sum(values, &WeightBound::new(int(2), int(p * (n - 1)))?)?;
            Ok(int::<T>(n - p + 1) / int::<T>(n - p + 2) * m + int::<T>(p) * scal / int::<T>(n * (n - p + 2)))
        }
    }
}

/// Which eigenvalue estimate for the Lichnerowicz term to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Weak,
    Improved,
    OneForm,
    Einstein,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Weak, Variant::Improved, Variant::OneForm, Variant::Einstein];

    /// `(Ω, 𝒮)` with `(3/2) g(Ric_L ω, ω) ≥ [𝓡, Ω, 𝒮] |ω|²`.
    pub fn weights<T: Field>(self, n: usize, p: usize) -> Result<WeightBound<T>> {
        match self {
            Variant::Weak => WeightBound::new(omega_weak(n, p), total_weight(n, p)),
            Variant::Improved => WeightBound::new(omega_improved(n, p), total_weight(n, p)),
            Variant::OneForm => WeightBound::new(int::<T>(2 * n - 1) / int::<T>(n + 2), int::<T>(3 * (n - 1)) / int::<T>(2)),
            Variant::Einstein => {
                let c = int::<T>(p * (n - p)) / int::<T>(n);
                WeightBound::new(c * int::<T>(n + 4) / int::<T>(n + 2), c * int::<T>(3 * n) / int::<T>(2))
            }
        }
    }
}

/// Einstein defect allowed for [`Variant::Einstein`], relative to `1 + |scal|`.
pub const EINSTEIN_TOLERANCE: f64 = 1e-10;

/// A constant `L` with `g(Ric_L ω, ω) ≥ L |ω|²` for every `p`-form,
/// `L = (2/3) min [𝓡, Ω, 𝒮]` for the variant's weights.
pub fn ric_l_lower_bound<T: Scalar>(
    values: &[T],
    summary: &CurvatureSummary<T>,
    n: usize,
    p: usize,
    variant: Variant,
) -> Result<T> {
    if p == 0 || 2 * p > n {
        return Err(Error::POutOfRange { p, n });
    }
    match variant {
        Variant::OneForm if p != 1 => {
            return Err(Error::VariantPreconditionFailed(format!("one_form needs p = 1, got p = {p}")));
        }
        Variant::Einstein if !summary.is_einstein(T::tolerance(EINSTEIN_TOLERANCE)) => {
            return Err(Error::VariantPreconditionFailed(format!(
                "einstein needs an Einstein tensor, defect {:e}",
                summary.einstein_defect.as_f64()
            )));
        }
        _ => {}
    }
    let b = variant.weights::<T>(n, p)?;
    Ok(T::lit(2.0 / 3.0) * min_weighted_sum(values, &b)?)
}

/// `λ_1 + … + λ_⌊(n+2)/2⌋ (+ ½ λ_{⌊(n+2)/2⌋+1} for odd n) ≥ (n+2)/2 · κ`.
pub fn theorem_d_hypothesis<T: Field>(values: &[T], n: usize, kappa: T) -> Result<bool> {
    let k = threshold_a::<T>(n);
    Ok(k_partial_sum(values, k)? >= k * kappa)
}

/// Smallest integers `k` for which a spectrum is `k`-positive and
/// `k`-nonnegative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityProfile {
    pub least_positive: Option<usize>,
    pub least_nonnegative: Option<usize>,
}

impl PositivityProfile {
    pub fn of(values: &[f64]) -> Self {
        let tol = Tolerances::of(values);
        let mut profile = PositivityProfile { least_positive: None, least_nonnegative: None };
        let mut sum = 0.0;
        for (i, &v) in values.iter().enumerate() {
            sum += v;
            if profile.least_nonnegative.is_none() && sum >= -tol.cert {
                profile.least_nonnegative = Some(i + 1);
            }
            if profile.least_positive.is_none() && sum > tol.strict {
                profile.least_positive = Some(i + 1);
            }
        }
        profile
    }

    /// E.g. `"9-positive, not 8-nonnegative"`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        match self.least_positive {
            Some(k) => parts.push(format!("{k}-positive")),
            None => parts.push("not positive for any k".to_string()),
        }
        match self.least_nonnegative {
            Some(1) => parts.push("nonnegative".to_string()),
            Some(k) => parts.push(format!("not {}-nonnegative", k - 1)),
            None => parts.push("not nonnegative for any k".to_string()),
        }
        parts.join(", ")
    }
}

/// `εstrict = 1e-12 (1 + ρ)` and `εcert = 1e-10 ρ` for spectral radius `ρ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub strict: f64,
    pub cert: f64,
}

impl Tolerances {
    pub fn of(values: &[f64]) -> Self {
        let rho = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        Tolerances { strict: 1e-12 * (1.0 + rho), cert: 1e-10 * rho }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    A,
    B,
    C,
    #[serde(rename = "D-hypothesis")]
    DHypothesis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
}

/// How the witnessing sums combine into the hypothesis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Combine {
    All,
    Any,
}

/// One evaluated partial sum `value` at `k`, compared against `bound`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessSum {
    pub k: f64,
    pub value: f64,
    pub bound: f64,
    pub strict: bool,
}

impl WitnessSum {
    pub fn holds(&self) -> bool {
        if self.strict {
            self.value > self.bound
        } else {
            self.value >= self.bound
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub theorem: Theorem,
    pub part: String,
    pub p_range: Vec<usize>,
    pub hypothesis: String,
    pub combine: Combine,
    pub sums: Vec<WitnessSum>,
    pub verdict: Verdict,
    pub conclusion: String,
}

impl Certificate {
    /// Recomputes the verdict from the stored sums.
    pub fn reproduce(&self) -> Verdict {
        let ok = match self.combine {
            Combine::All => self.sums.iter().all(WitnessSum::holds),
            Combine::Any => self.sums.iter().any(WitnessSum::holds),
        };
        if ok {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

fn fmt_k(k: f64) -> String {
    let s = format!("{k:.6}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Inputs to the certificate layer, already reduced to `f64`.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifyInput {
    pub n: usize,
    /// Ascending spectrum of `𝓡`.
    pub spectrum: Vec<f64>,
    pub einstein: bool,
    pub flat: bool,
    pub kappa: Option<f64>,
}

struct Builder<'a> {
    values: &'a [f64],
    tol: Tolerances,
}

impl Builder<'_> {
    fn sum(&self, k: f64) -> f64 {
        k_partial_sum(self.values, k).expect("k within the spectrum")
    }

    fn positive(&self, k: f64) -> WitnessSum {
        WitnessSum { k, value: self.sum(k), bound: self.tol.strict, strict: true }
    }

    fn nonnegative(&self, k: f64) -> WitnessSum {
        WitnessSum { k, value: self.sum(k), bound: -self.tol.cert, strict: false }
    }

    fn at_least(&self, k: f64, rhs: f64) -> WitnessSum {
        WitnessSum { k, value: self.sum(k), bound: rhs - self.tol.cert, strict: false }
    }

    #[allow(clippy::too_many_arguments)]
    fn cert(
        &self,
        theorem: Theorem,
        part: &str,
        p_range: Vec<usize>,
        hypothesis: String,
        combine: Combine,
        sums: Vec<WitnessSum>,
        conclusion: String,
    ) -> Certificate {
        let mut c = Certificate {
            theorem,
            part: part.to_string(),
            p_range,
            hypothesis,
            combine,
            sums,
            verdict: Verdict::Fails,
            conclusion: String::new(),
        };
        c.verdict = c.reproduce();
        c.conclusion = if c.holds() { conclusion } else { "no conclusion".to_string() };
        c
    }

    /// Three-part family for threshold `t`: positive, `t′ < t` nonnegative,
    /// nonnegative.
    fn family(&self, theorem: Theorem, t: f64, p_range: Vec<usize>, conclusions: [String; 3]) -> Vec<Certificate> {
        let [ca, cb, cc] = conclusions;
        vec![
            self.cert(theorem, "a", p_range.clone(), format!("{}-positive", fmt_k(t)), Combine::All, vec![self.positive(t)], ca),
            self.cert(
                theorem,
                "b",
                p_range.clone(),
                format!("t-nonnegative for some t < {}", fmt_k(t)),
                Combine::Any,
                vec![self.nonnegative(1.0), self.positive(t)],
                cb,
            ),
            self.cert(theorem, "c", p_range, format!("{}-nonnegative", fmt_k(t)), Combine::All, vec![self.nonnegative(t)], cc),
        ]
    }
}

/// Evaluates every vanishing hypothesis on a spectrum of `𝓡`.
pub fn certify_spectrum(input: &CertifyInput) -> Vec<Certificate> {
    let n = input.n;
    let b = Builder { values: &input.spectrum, tol: Tolerances::of(&input.spectrum) };
    let all_p: Vec<usize> = (1..n).collect();
    let mut out = Vec::new();

    let ta = threshold_a::<f64>(n);
    let sphere_or_flat = if input.flat { "flat" } else { "rational homology sphere" };
    out.push(b.cert(
        Theorem::A,
        "main",
        all_p.clone(),
        format!("{}-nonnegative", fmt_k(ta)),
        Combine::All,
        vec![b.nonnegative(ta)],
        sphere_or_flat.to_string(),
    ));
    if n >= 4 {
        let c = if input.flat { "flat" } else { "diffeomorphic to a spherical space form" };
        out.push(b.cert(Theorem::A, "corollary", all_p.clone(), "3-nonnegative".to_string(), Combine::All, vec![b.nonnegative(3.0)], c.to_string()));
    }

    let ne = n_einstein::<f64>(n);
    if input.einstein {
        out.extend(b.family(
            Theorem::B,
            ne,
            all_p.clone(),
            [
                "rational homology sphere".to_string(),
                "flat or rational homology sphere".to_string(),
                "all harmonic forms parallel".to_string(),
            ],
        ));
    }

    for p in 1..=n / 2 {
        out.extend(b.family(
            Theorem::C,
            c_p::<f64>(n, p),
            vec![p],
            [
                format!("b_{p} vanishes"),
                format!("b_{p} vanishes unless flat"),
                format!("harmonic {p}-forms parallel"),
            ],
        ));
    }

    if let Some(kappa) = input.kappa {
        let text = "b_p ≤ C(n,p)·exp(C(n,κD²)·√(−κD²p(n−p))) when diam < D; C(n,κD²) not explicit".to_string();
        out.push(b.cert(
            Theorem::DHypothesis,
            "main",
            (0..=n).collect(),
            format!("{}-sum ≥ {}·κ", fmt_k(ta), fmt_k(ta)),
            Combine::All,
            vec![b.at_least(ta, ta * kappa)],
            text.clone(),
        ));
        if input.einstein {
            out.push(b.cert(
                Theorem::DHypothesis,
                "einstein",
                (0..=n).collect(),
                format!("{}-sum ≥ {}·κ", fmt_k(ne), fmt_k(ne)),
                Combine::All,
                vec![b.at_least(ne, ne * kappa)],
                text,
            ));
        }
    }
    out
}

/// [`CertifyInput`] for a curvature tensor.
pub fn certify_input<T: Scalar>(r: &CurvatureTensor<T>, kappa: Option<f64>) -> CertifyInput {
    let summary = ricci_scalar(r);
    let spec = spectrum(&second_kind_matrix(r));
    CertifyInput {
        n: r.n(),
        spectrum: spec.values().iter().map(|v| v.as_f64()).collect(),
        einstein: summary.is_einstein(T::tolerance(EINSTEIN_TOLERANCE)),
        flat: r.max_abs() == T::zero(),
        kappa,
    }
}

/// Certificates for theorems A, B (Einstein inputs only), C for every
/// `p ≤ n/2` and, when `kappa` is given, the hypothesis of theorem D.
pub fn certify<T: Scalar>(r: &CurvatureTensor<T>, kappa: Option<f64>) -> Vec<Certificate> {
    certify_spectrum(&certify_input(r, kappa))
}
