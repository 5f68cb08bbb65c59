//! Acceptance gate: ten numbered end-to-end criteria covering oracle
//! equivalence, β elimination, frequency bounds, Nyquist reconstruction,
//! subdivision search, ensemble concentration, the scaled closed form,
//! the recursive solvers, transform exactness, and the spectrum gap.
//!
//! Each test prints exactly one `criterion N (...): PASS/FAIL (...)` line
//! (visible with `cargo test --test acceptance -- --nocapture`) and
//! enforces its own wall-clock budget.

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use qaoa1::analytic::{build_index, expectation_with_fields, Evaluator, QaoaAngles};
use qaoa1::ising::{
    eliminate_fields, from_qubo, generate_d_regular, generate_erdos_renyi, with_random_fields,
    IsingModel, QuboModel, SpinAssignment, WeightDist,
};
use qaoa1::optimize::{
    beta_candidates_with_fields, field_free_optimal_value, gradient_descent_near_zero,
    line_search, scaled_expected_cost, subdivision_optimize, MomentSummary,
};
use qaoa1::oracle::{brute_force, statevector_expectation};
use qaoa1::recursive::{iter_qaoa, qaoa1_expected_baseline, rqaoa, FieldStrategy, Tuner, TunerMethod};
use qaoa1::spectral::{
    empirical_bandwidth, hp_spectrum_range, max_angular_frequency, reconstruct, sample_landscape,
    sampling_plan, BetaPolicy, LandscapeSamples,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Prints the one-line verdict and enforces the runtime budget.
fn conclude(
    criterion: &str,
    budget_secs: f64,
    started: Instant,
    outcome: Result<String, String>,
) {
    let elapsed = started.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("{criterion}: PASS ({detail}; {elapsed:.1}s)");
            assert!(
                elapsed < budget_secs,
                "{criterion}: runtime {elapsed:.1}s exceeds the {budget_secs}s budget"
            );
        }
        Err(detail) => {
            println!("{criterion}: FAIL ({detail}; {elapsed:.1}s)");
            panic!("{criterion}: {detail}");
        }
    }
}

/// Complete bipartite K_{D,D} with seeded ±1 weights (D-regular,
/// triangle-free by construction).
fn bipartite_regular_pm1(d: usize, seed: u64) -> IsingModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(d * d);
    for u in 0..d {
        for v in 0..d {
            let w = if rng.random_range(0..2) == 0 { 1.0 } else { -1.0 };
            edges.push((u, d + v, w));
        }
    }
    IsingModel::new(2 * d, edges, vec![0.0; 2 * d], 0.0).expect("valid model")
}

/// D-regular generation with seed retries (the pairing construction may
/// reject a seed).
fn regular_model(n: usize, d: usize, dist: &WeightDist, seed: u64) -> IsingModel {
    for attempt in 0..50 {
        if let Ok(m) = generate_d_regular(n, d, dist, seed + 1000 * attempt) {
            return m;
        }
    }
    panic!("no {d}-regular graph found on {n} vertices after 50 seeds")
}

/// The benchmark tuning configuration: near-zero gradient descent with
/// native field handling. The robustness comparison between the two
/// recursive solvers is defined at this configuration — a globally
/// optimal tuner would mask exactly the tuning sensitivity it measures.
fn gradient_tuner() -> Tuner {
    Tuner {
        method: TunerMethod::GradientNearZero,
        field_strategy: FieldStrategy::Native,
    }
}

#[test]
fn criterion_01_closed_form_matches_the_statevector() {
    let started = Instant::now();
    let dist = WeightDist::UniformInt { lo: -5, hi: 5 };
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    for k in 0..100u64 {
        let n = 2 + (k % 9) as usize;
        let base = generate_erdos_renyi(n, 0.5, &dist, 5000 + k).expect("generator");
        let model = if k % 2 == 1 {
            with_random_fields(&base, &dist, 5100 + k).expect("field overlay")
        } else {
            base
        };
        let index = build_index(&model);
        for _ in 0..5 {
            let angles = QaoaAngles {
                gamma: rng.random_range(0.0..PI),
                beta: rng.random_range(0.0..PI),
            };
            let analytic = expectation_with_fields(&model, &index, angles);
            let simulated = statevector_expectation(&model, angles).expect("within capacity");
            worst = worst.max((analytic - simulated).abs());
        }
    }
    let outcome = if worst <= 1e-9 {
        Ok(format!("100 models × 5 angles, max |Δ| = {worst:.2e}"))
    } else {
        Err(format!("max |Δ| = {worst:.2e} exceeds 1e-9"))
    };
    conclude("criterion 1 (closed form vs statevector)", 30.0, started, outcome);
}

#[test]
fn criterion_02_beta_elimination_never_loses_to_a_dense_grid() {
    let started = Instant::now();
    let dist = WeightDist::UniformInt { lo: -5, hi: 5 };
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut worst_ff = f64::NEG_INFINITY;
    let mut worst_wf = f64::NEG_INFINITY;
    for k in 0..50u64 {
        let n = 3 + (k % 7) as usize;
        let base = generate_erdos_renyi(n, 0.6, &dist, 5200 + k).expect("generator");
        let gamma = rng.random_range(0.0..PI);
        if k % 2 == 0 {
            let index = build_index(&base);
            let coeffs = Evaluator::new(&base, &index)
                .coefficients_field_free(gamma)
                .expect("field-free model");
            let closed = field_free_optimal_value(coeffs);
            let grid = (0..10_000)
                .map(|i| {
                    let beta = PI * i as f64 / 10_000.0;
                    let s2 = (2.0 * beta).sin();
                    coeffs.a * (4.0 * beta).sin() - coeffs.b * s2 * s2
                })
                .fold(f64::INFINITY, f64::min);
            worst_ff = worst_ff.max(closed - grid);
        } else {
            let model = with_random_fields(&base, &dist, 5300 + k).expect("field overlay");
            let index = build_index(&model);
            let coeffs = Evaluator::new(&model, &index).coefficients_with_fields(gamma);
            let eval = |beta: f64| {
                let s2 = (2.0 * beta).sin();
                coeffs.a * s2 + coeffs.b * (4.0 * beta).sin() + coeffs.c * s2 * s2
            };
            let best = beta_candidates_with_fields(coeffs)
                .iter()
                .map(|&b| eval(b))
                .fold(f64::INFINITY, f64::min);
            let grid = (0..10_000)
                .map(|i| eval(-PI / 2.0 + PI * i as f64 / 10_000.0))
                .fold(f64::INFINITY, f64::min);
            worst_wf = worst_wf.max(best - grid);
        }
    }
    let outcome = if worst_ff <= 1e-8 && worst_wf <= 1e-7 {
        Ok(format!(
            "50 (model, γ) pairs; worst field-free gap {worst_ff:.2e}, with-fields {worst_wf:.2e}"
        ))
    } else {
        Err(format!(
            "field-free gap {worst_ff:.2e} (limit 1e-8) / with-fields {worst_wf:.2e} (limit 1e-7)"
        ))
    };
    conclude("criterion 2 (analytic β elimination)", 60.0, started, outcome);
}

#[test]
fn criterion_03_frequency_bound_is_sound_and_tight() {
    let started = Instant::now();
    let dist = WeightDist::UniformInt { lo: -5, hi: 5 };
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut worst_excess = f64::NEG_INFINITY;
    for k in 0..50u64 {
        let n = 3 + (k % 8) as usize;
        let base = generate_erdos_renyi(n, 0.5, &dist, 5400 + k).expect("generator");
        let model = if k % 2 == 1 {
            with_random_fields(&base, &dist, 5500 + k).expect("field overlay")
        } else {
            base
        };
        let index = build_index(&model);
        let plan = sampling_plan(&model, &index);
        let beta = rng.random_range(0.1..1.4);
        let samples = sample_landscape(&model, &plan, BetaPolicy::Fixed(beta)).expect("periodic");
        let measured = empirical_bandwidth(&samples).expect("uniform grid");
        let bin = TAU / plan.period.expect("integer class");
        worst_excess = worst_excess.max(measured - plan.omega_max - bin);
    }

    let mut tight = true;
    for d in [3usize, 4, 5] {
        let model = bipartite_regular_pm1(d, 90 + d as u64);
        let omega = max_angular_frequency(&model, &build_index(&model));
        tight &= omega == 2.0 * d as f64;
    }

    let outcome = if worst_excess <= 1e-9 && tight {
        Ok(format!(
            "50 models inside the bound (worst excess {worst_excess:.2e}); \
             triangle-free regular bound equals 2D for D ∈ {{3, 4, 5}}"
        ))
    } else {
        Err(format!(
            "worst excess over bound+bin = {worst_excess:.2e}, 2D equality = {tight}"
        ))
    };
    conclude("criterion 3 (frequency soundness/tightness)", 60.0, started, outcome);
}

#[test]
fn criterion_04_alias_free_grids_reconstruct_and_halved_grids_do_not() {
    let started = Instant::now();
    let dist = WeightDist::UniformInt { lo: -5, hi: 5 };
    let mut worst_sup = 0.0f64;
    let mut worst_aliased = 0.0f64;
    for k in 0..20u64 {
        let n = 4 + (k % 6) as usize;
        let p = if k % 3 == 0 { 0.9 } else { 0.6 };
        let model = generate_erdos_renyi(n, p, &dist, 5600 + k).expect("generator");
        let index = build_index(&model);
        let plan = sampling_plan(&model, &index);
        let beta = 0.9;
        let samples = sample_landscape(&model, &plan, BetaPolicy::Fixed(beta)).expect("periodic");
        let interp = reconstruct(&samples).expect("full period");
        let period = plan.period.expect("integer class");
        let mut ev = Evaluator::new(&model, &index);
        let mut sup = 0.0f64;
        for i in 0..1000 {
            let gamma = period * (i as f64 + 0.43) / 1000.0;
            let direct = ev.expectation_with_fields(QaoaAngles { gamma, beta });
            sup = sup.max((interp.value(gamma) - direct).abs());
        }
        worst_sup = worst_sup.max(sup);

        if samples.gammas.len().is_multiple_of(2) {
            let halved = LandscapeSamples {
                gammas: samples.gammas.iter().copied().step_by(2).collect(),
                values: samples.values.iter().copied().step_by(2).collect(),
                beta_stars: None,
                plan: samples.plan,
            };
            let aliased = reconstruct(&halved).expect("still covers the period");
            let mut sup_aliased = 0.0f64;
            for i in 0..1000 {
                let gamma = period * (i as f64 + 0.43) / 1000.0;
                let direct = ev.expectation_with_fields(QaoaAngles { gamma, beta });
                sup_aliased = sup_aliased.max((aliased.value(gamma) - direct).abs());
            }
            worst_aliased = worst_aliased.max(sup_aliased);
        }
    }
    let outcome = if worst_sup <= 1e-6 && worst_aliased > 1e-3 {
        Ok(format!(
            "20 models, reconstruction sup ≤ {worst_sup:.2e}; \
             doubled spacing aliases up to {worst_aliased:.2e}"
        ))
    } else {
        Err(format!(
            "reconstruction sup {worst_sup:.2e} (limit 1e-6), \
             aliasing witness {worst_aliased:.2e} (must exceed 1e-3)"
        ))
    };
    conclude("criterion 4 (Nyquist reconstruction)", 60.0, started, outcome);
}

#[test]
fn criterion_05_subdivision_agrees_with_exhaustive_search() {
    let started = Instant::now();
    let dist = WeightDist::UniformInt { lo: -5, hi: 5 };
    let epsilon = 1e-6;
    let mut worst_gap = 0.0f64;
    let mut worst_cost_ratio = 0.0f64;
    for k in 0..20u64 {
        let n = 6 + (k % 7) as usize; // 6..=12
        let base = generate_erdos_renyi(n, 0.5, &dist, 5700 + k).expect("generator");
        let model = if k % 2 == 1 {
            with_random_fields(&base, &dist, 5800 + k).expect("field overlay")
        } else {
            base
        };
        let index = build_index(&model);
        let sub = subdivision_optimize(&model, &index, epsilon).expect("subdivision");
        let dense = line_search(&model, &index, true).expect("line search");
        worst_gap = worst_gap.max((sub.value - dense.value).abs() / (1.0 + dense.value.abs()));
        let plan = sampling_plan(&model, &index);
        worst_cost_ratio = worst_cost_ratio
            .max(sub.evaluations as f64 * epsilon.sqrt() / plan.omega_max);
    }
    // The evaluation bound's ensemble constant, frozen with headroom.
    let c = 3.0;
    let outcome = if worst_gap <= 1e-4 && worst_cost_ratio <= c {
        Ok(format!(
            "20 models, worst value gap {worst_gap:.2e}, \
             worst normalized cost {worst_cost_ratio:.2} ≤ c = {c}"
        ))
    } else {
        Err(format!(
            "value gap {worst_gap:.2e} (limit 1e-4), \
             normalized cost {worst_cost_ratio:.2} (limit {c})"
        ))
    };
    conclude("criterion 5 (subdivision vs dense search)", 300.0, started, outcome);
}

fn canonical_gamma(gamma: f64, period: f64) -> f64 {
    let g = gamma.rem_euclid(period);
    g.min(period - g)
}

#[test]
fn criterion_06_first_local_minimum_concentrates_on_the_global_one() {
    let started = Instant::now();
    let dist = WeightDist::GaussianRounded { mean: 0.0, var: 100.0 };
    let mut report = Vec::new();
    let mut ok = true;
    for &n in &[16usize, 32, 64] {
        for family in ["3-regular", "er-0.5"] {
            let mut disagreements = 0usize;
            for k in 0..50u64 {
                let seed = 6000 + 17 * n as u64 + 211 * (family.len() as u64) + k;
                let model = if family == "3-regular" {
                    regular_model(n, 3, &dist, seed)
                } else {
                    generate_erdos_renyi(n, 0.5, &dist, seed).expect("generator")
                };
                let index = build_index(&model);
                let plan = sampling_plan(&model, &index);
                let near = gradient_descent_near_zero(&model, &index).expect("descent");
                let full = line_search(&model, &index, true).expect("line search");
                let period = plan.period.expect("integer class");
                let delta = (canonical_gamma(near.gamma_star, period)
                    - canonical_gamma(full.gamma_star, period))
                .abs();
                if delta > plan.delta_gamma / 2.0 {
                    disagreements += 1;
                }
            }
            let fraction = disagreements as f64 / 50.0;
            report.push(format!("{family} n={n}: {fraction:.2}"));
            if n >= 32 {
                ok &= fraction <= 0.05;
            }
        }
    }
    let detail = report.join(", ");
    let outcome = if ok {
        Ok(format!("disagreement fractions {detail}"))
    } else {
        Err(format!(
            "disagreement fraction above 5% for n ≥ 32: {detail}"
        ))
    };
    conclude("criterion 6 (ensemble concentration)", 600.0, started, outcome);
}

#[test]
fn criterion_07_scaled_ensemble_optimum_matches_the_closed_form() {
    let started = Instant::now();
    let beta = 3.0 * PI / 8.0;
    let mut report = Vec::new();
    let mut ok = true;
    for (&d, &tolerance) in [16usize, 64, 256].iter().zip(&[0.25, 0.15, 0.10]) {
        let eta = 1.0 / (2.0 * (d as f64).sqrt());
        // Quarter-wavelength coarse grid over (0, π), then a fine pass.
        let coarse_step = PI / (4.0 * 2.0 * d as f64);
        let coarse_count = (PI / coarse_step) as usize;
        let draws = 50u64;
        let mut sums = vec![0.0f64; coarse_count];
        for draw in 0..draws {
            let model = bipartite_regular_pm1(d, 7000 + 31 * d as u64 + draw);
            let index = build_index(&model);
            let mut ev = Evaluator::new(&model, &index);
            for (i, sum) in sums.iter_mut().enumerate() {
                let gamma = coarse_step * (i as f64 + 1.0);
                *sum += ev.expectation_with_fields(QaoaAngles { gamma, beta });
            }
        }
        let coarse_best = (1..=coarse_count)
            .min_by(|&i, &j| {
                sums[i - 1]
                    .partial_cmp(&sums[j - 1])
                    .expect("finite landscape")
            })
            .expect("nonempty grid") as f64
            * coarse_step;

        let fine_step = eta / 100.0;
        let fine_lo = (coarse_best - coarse_step).max(fine_step);
        let fine_count = (2.0 * coarse_step / fine_step).ceil() as usize + 1;
        let mut fine_sums = vec![0.0f64; fine_count];
        for draw in 0..draws {
            let model = bipartite_regular_pm1(d, 7000 + 31 * d as u64 + draw);
            let index = build_index(&model);
            let mut ev = Evaluator::new(&model, &index);
            for (i, sum) in fine_sums.iter_mut().enumerate() {
                let gamma = fine_lo + fine_step * i as f64;
                *sum += ev.expectation_with_fields(QaoaAngles { gamma, beta });
            }
        }
        let best_index = (0..fine_count)
            .min_by(|&i, &j| fine_sums[i].partial_cmp(&fine_sums[j]).expect("finite"))
            .expect("nonempty grid");
        let gamma_star = fine_lo + fine_step * best_index as f64;
        let rel = (gamma_star - eta).abs() / eta;
        report.push(format!(
            "D={d}: argmin {gamma_star:.5} vs η {eta:.5} (rel {rel:.3})"
        ));
        ok &= rel <= tolerance;
    }

    // Leading-order single-frequency term: ternary search over the scaled
    // step length must land on α* = 1/(2√E[J²]) = 1/2.
    let m = MomentSummary { ej: 0.0, ej2: 1.0, d: 64.0, a: 1.0, b: 0.0, lambda: 1.0, mu: 0.0 };
    let (mut lo, mut hi) = (1e-3, 3.0);
    for _ in 0..200 {
        let third = (hi - lo) / 3.0;
        let (l, r) = (lo + third, hi - third);
        let fl = scaled_expected_cost(l, beta, &m).expect("single-frequency case");
        let fr = scaled_expected_cost(r, beta, &m).expect("single-frequency case");
        if fl < fr {
            hi = r;
        } else {
            lo = l;
        }
    }
    let alpha_star = 0.5 * (lo + hi);
    let alpha_ok = (alpha_star - 0.5).abs() <= 1e-6;
    ok &= alpha_ok;

    let detail = format!("{}; α* = {alpha_star:.8}", report.join(", "));
    let outcome = if ok { Ok(detail.clone()) } else { Err(detail) };
    conclude("criterion 7 (scaled ensemble closed form)", 600.0, started, outcome);
}

/// Known result: the linear-only-vs-full-elimination leg does not hold at
/// this scale. With eight greedy steps and an exact eight-vertex remainder
/// solve, the full solver is near-perfect under either field strategy
/// (most instances reach ratio 1), so the tuning-robustness advantage of
/// single-spin rounding — a long-recursion phenomenon — has nothing to
/// beat, and hard assignments pay their information cost. The assertion
/// is kept faithful rather than tuned to pass; the correlators feeding
/// both solvers are verified against the dense simulation elsewhere.
#[test]
fn criterion_08_recursive_solvers_beat_their_baselines() {
    let started = Instant::now();
    let weight_dist = WeightDist::GaussianRounded { mean: 50.0, var: 30.0 };
    let field_dist = WeightDist::GaussianRounded { mean: 40.0, var: 20.0 };
    let tuner = gradient_tuner();
    let steps = 8; // leaves an 8-vertex remainder for the exact stage

    let mut exact_mismatch = 0usize;
    let mut ratio_violations = 0usize;
    let mut rqaoa_wins_ff = 0usize;
    let mut iter_wins_f = 0usize;

    for k in 0..50u64 {
        let ff = generate_erdos_renyi(16, 0.5, &weight_dist, 8000 + k).expect("generator");
        let truth_ff = brute_force(&ff).expect("n = 16");
        let (assignment, _, report) = rqaoa(&ff, steps, &tuner, k).expect("solver");
        if ff.energy(&assignment).expect("length") - ff.constant() != report.energy {
            exact_mismatch += 1;
        }
        let rqaoa_ratio = report.approximation_ratio.expect("negative minimum");
        let (baseline_value, _) = qaoa1_expected_baseline(&ff, &tuner).expect("baseline");
        let baseline_ratio = baseline_value / truth_ff.e_min;
        if rqaoa_ratio >= baseline_ratio {
            rqaoa_wins_ff += 1;
        }
        for r in [rqaoa_ratio, baseline_ratio] {
            if r > 1.0 + 1e-12 {
                ratio_violations += 1;
            }
        }

        let field_model = with_random_fields(&ff, &field_dist, 8100 + k).expect("fields");
        let (f_assign, _, f_report) = rqaoa(&field_model, steps, &tuner, k).expect("solver");
        if field_model.energy(&f_assign).expect("length") - field_model.constant()
            != f_report.energy
        {
            exact_mismatch += 1;
        }
        let (i_assign, _, i_report) = iter_qaoa(&field_model, steps, &tuner, k).expect("solver");
        if field_model.energy(&i_assign).expect("length") - field_model.constant()
            != i_report.energy
        {
            exact_mismatch += 1;
        }
        let f_ratio = f_report.approximation_ratio.expect("negative minimum");
        let i_ratio = i_report.approximation_ratio.expect("negative minimum");
        if i_ratio >= f_ratio {
            iter_wins_f += 1;
        }
        for r in [f_ratio, i_ratio] {
            if r > 1.0 + 1e-12 {
                ratio_violations += 1;
            }
        }
    }

    let ok = exact_mismatch == 0
        && ratio_violations == 0
        && rqaoa_wins_ff >= 40
        && iter_wins_f >= 30;
    let detail = format!(
        "exact mismatches {exact_mismatch}, ratio violations {ratio_violations}, \
         recursive ≥ expectation baseline on {rqaoa_wins_ff}/50 field-free, \
         linear-only ≥ full elimination on {iter_wins_f}/50 field instances"
    );
    let outcome = if ok { Ok(detail.clone()) } else { Err(detail) };
    conclude("criterion 8 (recursive solvers)", 600.0, started, outcome);
}

#[test]
fn criterion_09_transforms_are_exhaustively_exact() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut failures = 0usize;

    for k in 0..20u64 {
        let n = 2 + (k % 9) as usize; // 2..=10
        let mut a = vec![0.0f64; n * n];
        for i in 0..n {
            a[i * n + i] = rng.random_range(-5..=5) as f64;
            for j in (i + 1)..n {
                let w = rng.random_range(-5..=5) as f64;
                a[i * n + j] = w;
                a[j * n + i] = w;
            }
        }
        let b: Vec<f64> = (0..n).map(|_| rng.random_range(-5..=5) as f64).collect();
        let q = QuboModel::new(n, a, b).expect("symmetric");
        let m = from_qubo(&q).expect("mapping");
        for bits in 0u64..(1 << n) {
            let x: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
            let spins: Vec<i8> = x.iter().map(|&v| if v { 1 } else { -1 }).collect();
            let s = SpinAssignment::new(spins).expect("±1 entries");
            if q.objective(&x).expect("length") != m.energy(&s).expect("length") {
                failures += 1;
            }
        }
    }

    let dist = WeightDist::UniformInt { lo: -5, hi: 5 };
    for k in 0..20u64 {
        let n = 2 + (k % 8) as usize; // stays ≤ 10 after the ancilla
        let base = generate_erdos_renyi(n, 0.5, &dist, 8200 + k).expect("generator");
        let model = with_random_fields(&base, &dist, 8300 + k).expect("fields");
        let eliminated = eliminate_fields(&model);
        for bits in 0u64..(1 << n) {
            let spins: Vec<i8> = (0..n)
                .map(|i| if bits >> i & 1 == 1 { 1 } else { -1 })
                .collect();
            let s = SpinAssignment::new(spins.clone()).expect("±1 entries");
            let mut extended = spins;
            extended.push(1);
            let s_ext = SpinAssignment::new(extended).expect("±1 entries");
            if model.energy(&s).expect("length") != eliminated.energy(&s_ext).expect("length") {
                failures += 1;
            }
        }
    }

    let outcome = if failures == 0 {
        Ok("20 binary-quadratic + 20 field-elimination instances, all states exact".into())
    } else {
        Err(format!("{failures} exhaustive states differ"))
    };
    conclude("criterion 9 (transform exactness)", 30.0, started, outcome);
}

#[test]
fn criterion_10_exact_spectrum_range_exceeds_the_frequency_bound() {
    let started = Instant::now();
    let dist = WeightDist::GaussianRounded { mean: 50.0, var: 25.0 };
    let mut min_margin = f64::INFINITY;
    for &n in &[8usize, 12, 16] {
        for k in 0..10u64 {
            let model = regular_model(n, 4, &dist, 8400 + 13 * n as u64 + k);
            let range = hp_spectrum_range(&model).expect("n ≤ 24");
            let omega = max_angular_frequency(&model, &build_index(&model));
            min_margin = min_margin.min(range - omega);
        }
    }
    let outcome = if min_margin > 0.0 {
        Ok(format!(
            "30 instances, smallest (range − bound) margin {min_margin:.1}"
        ))
    } else {
        Err(format!("margin {min_margin:.1} is not positive"))
    };
    conclude("criterion 10 (cost spectrum gap)", 120.0, started, outcome);
}
