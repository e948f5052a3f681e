//! Randomized identity sweeps behind `curvkind selftest`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bochner::{bochner_decomposition, form_s02_expansion, ogiue_tachibana_term, ric_l_matrix, ric_l_quadratic};
use crate::model_spaces::{constant_curvature, product_sphere, random_curvature, random_einstein, su3_so3};
use crate::operators::{first_kind_matrix, quadratic_form_identity_check, ricci_scalar, second_kind_matrix, spectrum};
use crate::tensor::{factorial, GeneralTensor, PForm};
use crate::weights::{min_weighted_sum, ric_l_lower_bound, Variant, WeightBound};

pub const DEFAULT_SEED: u64 = 20_221_014;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestConfig {
    pub seed: u64,
    /// Random draws per `(n, p)` case.
    pub draws: usize,
    pub n_max: usize,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig { seed: DEFAULT_SEED, draws: 20, n_max: 6 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub config: SelftestConfig,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

struct Check {
    name: &'static str,
    tolerance: f64,
    cases: usize,
    worst: f64,
}

impl Check {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Check { name, tolerance, cases: 0, worst: 0.0 }
    }

    fn record(&mut self, v: f64) {
        self.cases += 1;
        if v > self.worst || v.is_nan() {
            self.worst = v;
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name.to_string(),
            cases: self.cases,
            worst: self.worst,
            tolerance: self.tolerance,
            passed: self.worst <= self.tolerance,
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + b.abs())
}

/// Greedy minimizer of `Σ ω_i λ_i` over `0 ≤ ω_i ≤ Ω`, `Σ ω_i = 𝒮`.
fn greedy(values: &[f64], omega: f64, total: f64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut left = total;
    let mut acc = 0.0;
    for v in sorted {
        let w = left.min(omega);
        acc += w * v;
        left -= w;
    }
    acc
}

pub fn run(config: &SelftestConfig) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let dims: Vec<usize> = (3..=config.n_max.max(3)).collect();

    let mut traces = Check::new("trace identities", 1e-10);
    let mut quad = Check::new("quadratic form identity", 1e-10);
    let mut boch = Check::new("bochner decomposition", 1e-9);
    let mut ot = Check::new("ogiue-tachibana agreement", 1e-10);
    let mut total = Check::new("total weight", 1e-10);
    let mut matrix = Check::new("ric_l matrix vs quadratic form", 1e-10);
    let mut sound = Check::new("lower bound soundness", 1e-9);
    let mut oracle = Check::new("weighted sum oracle", 1e-10);
    let mut models = Check::new("model spectra", 1e-8);

    for &n in &dims {
        for _ in 0..config.draws {
            let r = random_curvature::<f64, _>(n, &mut rng);
            let s = ricci_scalar(&r);
            let nf = n as f64;
            let scale = 1.0 + s.scalar.abs();
            traces.record((second_kind_matrix(&r).trace() - (nf + 2.0) / (2.0 * nf) * s.scalar).abs() / scale);
            traces.record((first_kind_matrix(&r).trace() - s.scalar / 2.0).abs() / scale);
            for k in 1..=3 {
                let t = GeneralTensor::random(n, k, &mut rng);
                quad.record(quadratic_form_identity_check(&r, &t).expect("same n"));
            }
            for p in 1..n {
                let w = PForm::random(n, p, &mut rng);
                boch.record(bochner_decomposition(&r, &w).expect("same n").residual);
                let exp = form_s02_expansion(&w);
                let pf = p as f64;
                total.record(rel(exp.total, pf * (nf - pf) * (nf + 2.0) / (2.0 * nf) * w.norm_sq()));
                let m = second_kind_matrix(&r);
                ot.record(rel(ogiue_tachibana_term(&r, &w).expect("same n"), exp.pair_with(&m)));
                let lm = ric_l_matrix(&r, p).expect("p ≤ n");
                let x: Vec<f64> = w.coeffs().iter().map(|c| c * (factorial(p) as f64).sqrt()).collect();
                matrix.record(rel(lm.quadratic_form(&x), ric_l_quadratic(&r, &w).expect("same n")));
            }
            let e = random_einstein::<f64, _>(n, &mut rng);
            for (tensor, einstein) in [(&r, false), (&e, true)] {
                let summary = ricci_scalar(tensor);
                let spec = spectrum(&second_kind_matrix(tensor));
                for p in 1..=n / 2 {
                    let min_eig = ric_l_matrix(tensor, p).expect("p ≤ n").eigen().values.values()[0];
                    for v in Variant::ALL {
                        if (v == Variant::OneForm && p != 1) || (v == Variant::Einstein && !einstein) {
                            continue;
                        }
                        let l = ric_l_lower_bound(spec.values(), &summary, n, p, v).expect("preconditions checked");
                        sound.record((l - min_eig).max(0.0));
                    }
                }
            }
        }
    }

    for _ in 0..config.draws * 10 {
        let len = rng.gen_range(1..=10);
        let values: Vec<f64> = (0..len).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let omega = rng.gen_range(0.05..2.0);
        let tot = rng.gen_range(0.0..omega * len as f64);
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        let b = WeightBound::new(omega, tot).expect("positive weights");
        oracle.record(rel(min_weighted_sum(&sorted, &b).expect("feasible"), greedy(&values, omega, tot)));
    }

    for &n in &dims {
        let ones = spectrum(&second_kind_matrix(&constant_curvature::<f64>(n, 1.0)));
        ones.values().iter().for_each(|v| models.record((v - 1.0).abs()));
        let ps = spectrum(&second_kind_matrix(&product_sphere::<f64>(n)));
        let nf = n as f64;
        for (i, v) in ps.values().iter().enumerate() {
            let want = if i == 0 { -(nf - 2.0) / nf } else if i < n { 0.0 } else { 1.0 };
            models.record((v - want).abs());
        }
    }
    let su3 = spectrum(&second_kind_matrix(&su3_so3::<f64>()));
    for (i, v) in su3.values().iter().enumerate() {
        models.record((v - if i < 5 { -1.5 } else { 2.0 }).abs());
    }

    let checks: Vec<CheckResult> =
        [traces, quad, boch, ot, total, matrix, sound, oracle, models].into_iter().map(Check::finish).collect();
    let passed = checks.iter().all(|c| c.passed);
    SelftestReport { config: *config, checks, passed }
}
