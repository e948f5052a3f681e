use curvkind_core::bochner::{bochner_decomposition, bochner_in_ricci_frame, ric_l_matrix, ricci_frame};
use curvkind_core::model_spaces::{constant_curvature, random_curvature, random_einstein};
use curvkind_core::operators::{rbar_apply, ricci_scalar, second_kind_matrix, spectrum};
use curvkind_core::tensor::trace_free_project;
use curvkind_core::weights::{k_partial_sum, min_weighted_sum, ricci_lower_bound_improved, ricci_lower_bound_weak, WeightBound};
use curvkind_core::{PForm, SymTwoTensor};
use num_rational::Rational64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn spectra() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-4.0f64..4.0, 1..=10).prop_map(|mut v| {
        v.sort_by(f64::total_cmp);
        v
    })
}

/// Sums of the smallest `p` Ricci eigenvalues, i.e. the minimum of `Σ_{i≤p} R_ii`.
fn ricci_partial(r: &curvkind_core::CurvatureTensor<f64>, p: usize) -> f64 {
    r.ricci().eigen().0[..p].iter().sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_free_projection_idempotent_orthogonal(seed in any::<u64>(), n in 2usize..9) {
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let s = SymTwoTensor::<f64>::random(n, &mut g);
        let p = trace_free_project(&s);
        prop_assert!(p.trace().abs() <= 1e-14 * (1.0 + s.trace().abs()));
        prop_assert!(trace_free_project(&p).sub(&p).norm_sq() < 1e-28);
        prop_assert!(s.sub(&p).inner(&p).abs() <= 1e-12 * s.norm_sq());
    }

    #[test]
    fn form_norm_matches_dense(seed in any::<u64>(), n in 2usize..7, p in 0usize..7) {
        prop_assume!(p <= n);
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let w = PForm::<f64>::random(n, p, &mut g);
        let dense: f64 = w.to_dense().data().iter().map(|x| x * x).sum();
        prop_assert!((dense - w.norm_sq()).abs() <= 1e-12 * (1.0 + dense));
    }

    #[test]
    fn second_kind_is_linear(seed in any::<u64>(), n in 3usize..7, a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let (r1, r2) = (random_curvature::<f64, _>(n, &mut g), random_curvature::<f64, _>(n, &mut g));
        let combo = second_kind_matrix(&r1.scale(a).add(&r2.scale(b)).unwrap());
        let (m1, m2) = (second_kind_matrix(&r1), second_kind_matrix(&r2));
        for (k, v) in combo.entries().iter().enumerate() {
            prop_assert!((v - (a * m1.entries()[k] + b * m2.entries()[k])).abs() <= 1e-13);
        }
    }

    #[test]
    fn einstein_preserves_trace_free(seed in any::<u64>(), n in 3usize..7) {
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let e = random_einstein::<f64, _>(n, &mut g);
        prop_assert!(ricci_scalar(&e).einstein_defect <= 1e-12);
        let h = SymTwoTensor::random(n, &mut g).trace_free_part();
        prop_assert!(rbar_apply(&e, &h).unwrap().trace().abs() <= 1e-11);
    }

    #[test]
    fn rotation_invariance(seed in any::<u64>(), n in 3usize..6, p in 1usize..4) {
        prop_assume!(p < n);
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let r = random_curvature::<f64, _>(n, &mut g);
        let w = PForm::random(n, p, &mut g);
        let (_, q) = ricci_frame(&random_curvature::<f64, _>(n, &mut g));
        let (rr, wr) = (r.rotate(&q), w.rotate(&q));
        prop_assert!(rr.validate().is_ok());
        prop_assert!((wr.norm_sq() - w.norm_sq()).abs() <= 1e-10 * (1.0 + w.norm_sq()));
        let (a, b) = (bochner_decomposition(&r, &w).unwrap(), bochner_decomposition(&rr, &wr).unwrap());
        prop_assert!((a.lhs - b.lhs).abs() <= 1e-10 * (1.0 + a.lhs.abs()));
        prop_assert!((a.term_operator - b.term_operator).abs() <= 1e-10 * (1.0 + a.term_operator.abs()));
        let s1 = spectrum(&second_kind_matrix(&r));
        let s2 = spectrum(&second_kind_matrix(&rr));
        for (x, y) in s1.values().iter().zip(s2.values()) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
        let c = bochner_in_ricci_frame(&r, &w).unwrap();
        prop_assert!(c.residual <= 1e-9);
        prop_assert!((c.term_ricci - a.term_ricci).abs() <= 1e-9 * (1.0 + a.term_ricci.abs()));
    }

    #[test]
    fn poincare_duality_of_ric_l(seed in any::<u64>(), n in 3usize..7, p in 0usize..7) {
        prop_assume!(p <= n);
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let r = random_curvature::<f64, _>(n, &mut g);
        let a = ric_l_matrix(&r, p).unwrap().eigen().values;
        let b = ric_l_matrix(&r, n - p).unwrap().eigen().values;
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
    }

    #[test]
    fn ricci_bounds_are_sound(seed in any::<u64>(), n in 4usize..7) {
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let r = random_curvature::<f64, _>(n, &mut g);
        let spec = spectrum(&second_kind_matrix(&r));
        let scal = ricci_scalar(&r).scalar;
        for p in 1..=n / 2 {
            let truth = ricci_partial(&r, p);
            prop_assert!(ricci_lower_bound_weak(spec.values(), n, p).unwrap() <= truth + 1e-9);
            prop_assert!(ricci_lower_bound_improved(spec.values(), scal, n, p).unwrap() <= truth + 1e-9);
        }
    }

    #[test]
    fn monotone_in_highest_weight(v in spectra(), o1 in 0.1f64..2.0, o2 in 0.1f64..2.0, t in 0.0f64..1.0) {
        let (lo, hi) = if o1 <= o2 { (o1, o2) } else { (o2, o1) };
        let total = t * lo * v.len() as f64;
        let a = min_weighted_sum(&v, &WeightBound::new(lo, total).unwrap()).unwrap();
        let b = min_weighted_sum(&v, &WeightBound::new(hi, total).unwrap()).unwrap();
        prop_assert!(a >= b - 1e-12);
    }

    #[test]
    fn superadditive(v in spectra(), o1 in 0.1f64..2.0, o2 in 0.1f64..2.0, t1 in 0.0f64..1.0, t2 in 0.0f64..1.0) {
        let len = v.len() as f64;
        let (s1, s2) = (t1 * o1 * len, t2 * o2 * len);
        let a = min_weighted_sum(&v, &WeightBound::new(o1, s1).unwrap()).unwrap();
        let b = min_weighted_sum(&v, &WeightBound::new(o2, s2).unwrap()).unwrap();
        let c = min_weighted_sum(&v, &WeightBound::new(o1 + o2, s1 + s2).unwrap()).unwrap();
        prop_assert!(a + b >= c - 1e-10);
    }

    #[test]
    fn dichotomy(v in spectra(), k1 in 0.0f64..1.0, k2 in 0.0f64..1.0) {
        let len = v.len() as f64;
        let (a, b) = (1.0 + k1 * (len - 1.0), 1.0 + k2 * (len - 1.0));
        let (kp, k) = if a < b { (a, b) } else { (b, a) };
        prop_assume!(kp < k);
        if k_partial_sum(&v, kp).unwrap() >= 0.0 {
            prop_assert!(k_partial_sum(&v, k).unwrap() > 0.0 || v[0] >= 0.0);
        }
    }

    #[test]
    fn exact_partial_sums(v in prop::collection::vec(-20i64..20, 1..10), num in 0i64..40) {
        let mut v: Vec<Rational64> = v.into_iter().map(Rational64::from_integer).collect();
        v.sort();
        let k = Rational64::new(num, 4);
        prop_assume!(k <= Rational64::from_integer(v.len() as i64));
        let b = WeightBound::new(Rational64::new(3, 2), k * Rational64::new(3, 2)).unwrap();
        prop_assert_eq!(min_weighted_sum(&v, &b).unwrap(), Rational64::new(3, 2) * k_partial_sum(&v, k).unwrap());
    }
}

#[test]
fn adversarial_dichotomy() {
    let cases: [&[f64]; 4] = [&[0.0, 0.0, 0.0, 1.0], &[-1.0, 0.5, 0.5, 0.5], &[0.0; 5], &[-1e-300, 1.0, 1.0]];
    for v in cases {
        for i in 1..=v.len() {
            for j in i + 1..=v.len() {
                let (kp, k) = (i as f64, j as f64);
                if k_partial_sum(v, kp).unwrap() >= 0.0 {
                    assert!(k_partial_sum(v, k).unwrap() > 0.0 || v[0] >= 0.0, "{v:?} {kp} {k}");
                }
            }
        }
    }
}

#[test]
fn single_precision_sphere() {
    let m = second_kind_matrix(&constant_curvature::<f32>(5, 1.0));
    let spec = spectrum(&m);
    assert!(spec.values().iter().all(|v| (v - 1.0).abs() < 1e-5));
}
