//! Behavioural checks of the angle optimizers: candidate sets must never
//! lose to dense grids, every reported optimum must reproduce under
//! re-evaluation, subdivision must agree with exhaustive search at its
//! certified tolerance, and the ensemble closed forms must have the
//! documented shape.

use std::f64::consts::PI;

use qaoa1::analytic::{build_index, CoefficientTriple};
use qaoa1::ising::{generate_erdos_renyi, with_random_fields, IsingModel, WeightDist};
use qaoa1::optimize::{
    beta_candidates_with_fields, field_free_optimal_value, gradient_descent_near_zero,
    line_search, optimal_beta_field_free, predicted_gamma_star, scaled_expected_cost,
    subdivision_optimize, univariate_cost, FieldMode, MomentSummary,
};
use qaoa1::spectral::sampling_plan;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn with_fields_value(c: CoefficientTriple, beta: f64) -> f64 {
    let s2 = (2.0 * beta).sin();
    c.a * s2 + c.b * (4.0 * beta).sin() + c.c * s2 * s2
}

fn field_free_value(c: CoefficientTriple, beta: f64) -> f64 {
    let s2 = (2.0 * beta).sin();
    c.a * (4.0 * beta).sin() - c.b * s2 * s2
}

#[test]
fn candidate_sets_are_small_sorted_and_optimal() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut triples: Vec<CoefficientTriple> = (0..40)
        .map(|_| CoefficientTriple {
            a: rng.random_range(-5.0..5.0),
            b: rng.random_range(-5.0..5.0),
            c: rng.random_range(-5.0..5.0),
        })
        .collect();
    // Degenerate shapes: every coefficient pattern that collapses the
    // quartic to something lower-order or with multiple roots.
    triples.extend([
        CoefficientTriple { a: 0.0, b: 0.0, c: 0.0 },
        CoefficientTriple { a: 2.0, b: 0.0, c: 0.0 },
        CoefficientTriple { a: 0.0, b: 1.5, c: 0.0 },
        CoefficientTriple { a: 0.0, b: 0.0, c: -3.0 },
        CoefficientTriple { a: 1.0, b: -0.5, c: 0.0 },
        CoefficientTriple { a: -2.0, b: 1.0, c: 0.0 },
        CoefficientTriple { a: 2.0, b: 1.0, c: 1e-16 },
    ]);
    for (k, &coeffs) in triples.iter().enumerate() {
        let candidates = beta_candidates_with_fields(coeffs);
        assert!(!candidates.is_empty(), "empty candidate set on triple {k}");
        assert!(candidates.len() <= 8, "oversized candidate set on triple {k}");
        assert!(
            candidates.windows(2).all(|w| w[0] <= w[1]),
            "candidates not sorted on triple {k}"
        );
        assert!(
            candidates
                .iter()
                .all(|&b| (-PI / 2.0 - 1e-12..=PI / 2.0 + 1e-12).contains(&b)),
            "candidate outside the principal range on triple {k}"
        );

        let best = candidates
            .iter()
            .map(|&b| with_fields_value(coeffs, b))
            .fold(f64::INFINITY, f64::min);
        let grid = (0..10_000)
            .map(|i| with_fields_value(coeffs, -PI / 2.0 + PI * i as f64 / 10_000.0))
            .fold(f64::INFINITY, f64::min);
        assert!(
            best <= grid + 1e-7,
            "candidate minimum {best} loses to grid {grid} on triple {k}"
        );
    }
}

/// Coefficient triples whose quartic spans an extreme dynamic range (the
/// coupling term dwarfs the quadratic ones by dozens of orders, as happens
/// when deep elimination steps drive cosine products toward underflow)
/// must still yield finite, sound candidate sets.
#[test]
fn candidate_sets_survive_extreme_coefficient_ratios() {
    let triples = [
        // Observed in a deep recursive-elimination run: the quartic's
        // leading coefficient sits ~56 orders below its middle one.
        CoefficientTriple { a: -4.3e1, b: -8.764004768818763e-28, c: -5.061652435003682e-43 },
        CoefficientTriple { a: 1.0, b: 1e-300, c: 0.0 },
        CoefficientTriple { a: 1e8, b: 1e-20, c: 1e-30 },
        CoefficientTriple { a: -7.0, b: 4e-160, c: 3e-200 },
        CoefficientTriple { a: 0.0, b: 1e-150, c: 1e-150 },
        CoefficientTriple { a: 1e-140, b: 5.0, c: 1e-140 },
    ];
    for (k, &coeffs) in triples.iter().enumerate() {
        let candidates = beta_candidates_with_fields(coeffs);
        assert!(!candidates.is_empty(), "empty candidate set on triple {k}");
        assert!(candidates.len() <= 8, "oversized candidate set on triple {k}");
        assert!(
            candidates.iter().all(|b| b.is_finite()),
            "non-finite candidate on triple {k}: {candidates:?}"
        );
        let best = candidates
            .iter()
            .map(|&b| with_fields_value(coeffs, b))
            .fold(f64::INFINITY, f64::min);
        let grid = (0..10_000)
            .map(|i| with_fields_value(coeffs, -PI / 2.0 + PI * i as f64 / 10_000.0))
            .fold(f64::INFINITY, f64::min);
        assert!(
            best <= grid + 1e-7 * (1.0 + grid.abs()),
            "candidate minimum {best} loses to grid {grid} on triple {k}"
        );
    }
}

#[test]
fn closed_form_beta_matches_a_dense_grid_field_free() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for k in 0..40 {
        let coeffs = CoefficientTriple {
            a: rng.random_range(-5.0..5.0),
            b: rng.random_range(-5.0..5.0),
            c: 0.0,
        };
        let beta = optimal_beta_field_free(coeffs);
        let value = field_free_optimal_value(coeffs);
        assert!(
            (field_free_value(coeffs, beta) - value).abs() <= 1e-12,
            "value formula disagrees with its own argmin on pair {k}"
        );
        let grid = (0..10_000)
            .map(|i| field_free_value(coeffs, PI * i as f64 / 10_000.0))
            .fold(f64::INFINITY, f64::min);
        assert!(
            value <= grid + 1e-8,
            "closed form {value} loses to grid {grid} on pair {k}"
        );
    }
}

fn tuned_models() -> Vec<IsingModel> {
    let dist = WeightDist::UniformInt { lo: -4, hi: 4 };
    (0..6u64)
        .map(|k| {
            let base = generate_erdos_renyi(6 + (k % 3) as usize, 0.6, &dist, 2000 + k)
                .expect("generator");
            if k % 2 == 1 {
                with_random_fields(&base, &dist, 2100 + k).expect("field overlay")
            } else {
                base
            }
        })
        .collect()
}

#[test]
fn every_optimizer_result_reproduces_under_reevaluation() {
    for (k, model) in tuned_models().iter().enumerate() {
        let index = build_index(model);
        let mode = FieldMode::for_model(model);
        let results = [
            line_search(model, &index, true).expect("line search"),
            gradient_descent_near_zero(model, &index).expect("descent"),
            subdivision_optimize(model, &index, 1e-6).expect("subdivision"),
        ];
        for r in results {
            let (direct, _) =
                univariate_cost(model, &index, r.gamma_star, mode).expect("evaluation");
            assert!(
                (direct - r.value).abs() <= 1e-12 * (1.0 + direct.abs()),
                "reported value {} does not reproduce ({direct}) on model {k}",
                r.value
            );
        }
    }
}

#[test]
fn subdivision_matches_exhaustive_search_and_stays_cheap() {
    for (k, model) in tuned_models().iter().enumerate() {
        let index = build_index(model);
        let epsilon = 1e-6;
        let sub = subdivision_optimize(model, &index, epsilon).expect("subdivision");
        let dense = line_search(model, &index, true).expect("line search");
        assert!(
            (sub.value - dense.value).abs() <= 1e-4 * (1.0 + dense.value.abs()),
            "subdivision value {} vs exhaustive {} on model {k}",
            sub.value,
            dense.value
        );
        // Cost bound: the subdivision budget grows like ω/√ε; the constant
        // is frozen from observed behaviour with generous headroom.
        let plan = sampling_plan(model, &index);
        let budget = 3.0 * plan.omega_max / epsilon.sqrt();
        assert!(
            (sub.evaluations as f64) <= budget,
            "subdivision spent {} evaluations, budget {budget}, on model {k}",
            sub.evaluations
        );
    }
}

#[test]
fn ensemble_cost_is_unimodal_around_the_predicted_optimum() {
    // Single-frequency shape: the cost at β = 3π/8 falls monotonically to
    // the predicted scaled optimum α* = 1/(2√E[J²]) and rises after it.
    let m = MomentSummary {
        ej: 0.0,
        ej2: 1.0,
        d: 64.0,
        a: 1.0,
        b: 0.0,
        lambda: 1.0,
        mu: 0.0,
    };
    let beta = 3.0 * PI / 8.0;
    let alpha_star = 0.5;
    let mut previous = f64::INFINITY;
    for i in 1..=1000 {
        let alpha = 3.0 * i as f64 / 1000.0;
        let value = scaled_expected_cost(alpha, beta, &m).expect("b = 0 case");
        if alpha <= alpha_star {
            assert!(
                value < previous + 1e-15,
                "cost not decreasing at α = {alpha}"
            );
        } else if alpha - 3.0 / 1000.0 >= alpha_star {
            assert!(
                value > previous - 1e-15,
                "cost not increasing at α = {alpha}"
            );
        }
        previous = value;
    }

    let predicted = predicted_gamma_star(&m).expect("b = 0 case");
    assert!(
        (predicted - 1.0 / 16.0).abs() <= 1e-12,
        "zero-mean prediction should be 1/(2√D) = 1/16, got {predicted}"
    );
}
