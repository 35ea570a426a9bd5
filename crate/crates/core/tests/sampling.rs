mod common;

use common::{random_rank_k, to_na};
use proptest::prelude::*;
use relcur::linalg::{frobenius_norm, rank, svd_truncated, DEFAULT_RANK_TOL};
use relcur::sampling::{
    apply_column_sample, apply_row_sample, column_subspace_probs, row_subspace_probs, sample,
    sample_exactly, sample_expected, Method, SubspaceProbs,
};
use relcur::synth::gaussian;
use relcur::DenseMatrix;

#[test]
fn column_probs_small_example() {
    let a = DenseMatrix::from_rows(&[[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]]).unwrap();
    let t = svd_truncated(&a, 2, DEFAULT_RANK_TOL).unwrap();
    let p = column_subspace_probs(&t).unwrap();
    for (got, want) in p.probs().iter().zip([0.25, 0.25, 0.5]) {
        assert!((got - want).abs() < 1e-12);
    }
    assert_eq!(p.k(), 2);
}

#[test]
fn column_probs_reset_k_on_rank_deficiency() {
    let a = random_rank_k(8, 6, 2, 3);
    let t = svd_truncated(&a, 4, DEFAULT_RANK_TOL).unwrap();
    assert_eq!(t.effective_rank, 2);
    let p = column_subspace_probs(&t).unwrap();
    assert_eq!(p.k(), 2);
    assert!((p.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn row_probs_match_oracle_basis() {
    let c = gaussian(9, 3, 14);
    let p = row_subspace_probs(&c).unwrap();
    // Leverage scores from the orthogonal projector C (CᵀC)⁻¹ Cᵀ.
    let na = to_na(&c);
    let proj = &na * (na.transpose() * &na).try_inverse().unwrap() * na.transpose();
    for i in 0..9 {
        assert!((p.probs()[i] - proj[(i, i)] / 3.0).abs() < 1e-12);
    }
    // A rank-deficient C normalizes by its rank.
    let c = DenseMatrix::from_columns(&[c.column(0), c.column(0), c.column(1)]);
    let p = row_subspace_probs(&c).unwrap();
    assert_eq!(p.k(), 2);
    assert!((p.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn exactly_frequencies_in_multinomial_bands() {
    let p = SubspaceProbs::new(vec![0.5, 0.2, 0.15, 0.1, 0.05, 0.0], 1, 1.0).unwrap();
    let c = 10_000;
    let plan = sample_exactly(&p, c, 99).unwrap();
    let mut counts = [0usize; 6];
    for &i in &plan.indices {
        counts[i] += 1;
    }
    for (j, &pj) in p.probs().iter().enumerate() {
        let mean = c as f64 * pj;
        let sd = (c as f64 * pj * (1.0 - pj)).sqrt();
        assert!((counts[j] as f64 - mean).abs() <= 3.0 * sd + 1e-12, "index {j}: {}", counts[j]);
    }
    for (&i, &s) in plan.indices.iter().zip(&plan.scales) {
        assert_eq!(s, 1.0 / (c as f64 * p.probs()[i]).sqrt());
    }
}

#[test]
fn expected_sizes_and_inclusion_rates() {
    let p = SubspaceProbs::uniform(100).unwrap();
    let runs = 5000;
    let mut sizes = Vec::with_capacity(runs);
    let mut hits = vec![0usize; 100];
    for s in 0..runs {
        let plan = sample_expected(&p, 20, s as u64).unwrap();
        sizes.push(plan.len() as f64);
        plan.indices.iter().for_each(|&i| hits[i] += 1);
        assert!(plan.scales.iter().all(|&x| (x - 1.0 / 0.2f64.sqrt()).abs() < 1e-15));
    }
    let mean = sizes.iter().sum::<f64>() / runs as f64;
    let sd = (100.0 * 0.2 * 0.8 / runs as f64).sqrt();
    assert!((mean - 20.0).abs() <= 3.0 * sd, "mean size {mean}");
    let rate_sd = (0.2 * 0.8 / runs as f64).sqrt();
    for h in hits {
        assert!((h as f64 / runs as f64 - 0.2).abs() <= 5.0 * rate_sd);
    }
}

#[test]
fn expected_saturation_and_forced_inclusion() {
    let p = SubspaceProbs::uniform(4).unwrap();
    let plan = sample_expected(&p, 8, 1).unwrap();
    assert_eq!(plan.indices, vec![0, 1, 2, 3]);
    assert_eq!(plan.scales, vec![1.0; 4]);
    let p = SubspaceProbs::new(vec![1.0, 0.0], 1, 1.0).unwrap();
    let plan = sample_expected(&p, 1, 1).unwrap();
    assert_eq!((plan.indices, plan.scales), (vec![0], vec![1.0]));
}

#[test]
fn applied_samples_match_direct_indexing() {
    let a = gaussian(6, 5, 42);
    let p = SubspaceProbs::new(vec![0.1, 0.3, 0.2, 0.25, 0.15], 2, 1.0).unwrap();
    let plan = sample_exactly(&p, 4, 7).unwrap();
    let c = apply_column_sample(&a, &plan).unwrap();
    for i in 0..6 {
        for t in 0..4 {
            assert_eq!(c[(i, t)], plan.scales[t] * a[(i, plan.indices[t])]);
        }
    }
    let p = SubspaceProbs::uniform(6).unwrap();
    let plan = sample_exactly(&p, 3, 8).unwrap();
    let r = apply_row_sample(&a, &plan).unwrap();
    for t in 0..3 {
        for j in 0..5 {
            assert_eq!(r[(t, j)], plan.scales[t] * a[(plan.indices[t], j)]);
        }
    }
    assert!(apply_column_sample(&a, &plan).is_err());
}

#[test]
fn identity_plan_is_a_no_op() {
    let a = gaussian(3, 4, 2);
    let plan = sample_expected(&SubspaceProbs::uniform(4).unwrap(), 4, 0).unwrap();
    assert_eq!(apply_column_sample(&a, &plan).unwrap(), a);
    let single = relcur::SamplingPlan {
        method: Method::Exactly,
        seed: 0,
        source_dim: 2,
        c_requested: 1,
        indices: vec![1],
        scales: vec![2.0],
        attempt: 0,
    };
    let col = apply_column_sample(&DenseMatrix::identity(2), &single).unwrap();
    assert_eq!(col.as_slice(), &[0.0, 2.0]);
}

#[test]
fn rank_capture_with_twenty_k_rows() {
    for k in 1..=5 {
        let a = random_rank_k(60, 12, k, 100 + k as u64);
        let t = svd_truncated(&a, k, DEFAULT_RANK_TOL).unwrap();
        let p = row_subspace_probs(&t.u_k).unwrap();
        let hits = (0..200)
            .filter(|&s| {
                let plan = sample_exactly(&p, 20 * k, s).unwrap();
                rank(&apply_row_sample(&t.u_k, &plan).unwrap(), 1e-10).unwrap() == k
            })
            .count();
        assert!(hits >= 190, "k = {k}: {hits}/200");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn prop_plans_are_deterministic(seed in any::<u64>(), c in 1usize..40, expected in any::<bool>()) {
        let method = if expected { Method::Expected } else { Method::Exactly };
        let p = SubspaceProbs::new(vec![0.4, 0.3, 0.2, 0.1], 1, 1.0).unwrap();
        let a = sample(&p, c, method, seed).unwrap();
        let b = sample(&p, c, method, seed).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.scales.iter().all(|s| s.is_finite() && *s > 0.0));
        prop_assert!(a.indices.iter().all(|&i| i < 4));
    }

    #[test]
    fn prop_leverage_sums_to_k(seed in any::<u64>(), m in 2usize..15, n in 2usize..15, k0 in 1usize..15) {
        let a = gaussian(m, n, seed);
        let k = k0.min(m.min(n));
        let t = svd_truncated(&a, k, DEFAULT_RANK_TOL).unwrap();
        let p = column_subspace_probs(&t).unwrap();
        let total: f64 = p.probs().iter().map(|x| x * k as f64).sum();
        prop_assert!((total - k as f64).abs() < 1e-10);
        prop_assert!(p.probs().iter().all(|&x| x >= 0.0));
        prop_assert!(p.satisfies_leverage_bound(&t.v_k, 1e-12));
    }

    #[test]
    fn prop_row_probs_normalized(seed in any::<u64>(), m in 1usize..15, n in 1usize..6) {
        let c = gaussian(m, n, seed);
        let p = row_subspace_probs(&c).unwrap();
        prop_assert!((p.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(frobenius_norm(&c) > 0.0);
    }
}
