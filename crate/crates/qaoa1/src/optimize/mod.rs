//! Angle optimization: closed-form β elimination, quartic β candidates for
//! field models, a certified subdivision search over γ, near-zero gradient
//! descent, and dense line searches.
//!
//! Every routine works on the *univariate* cost: for each γ the mixing
//! angle is eliminated analytically (closed form without fields, quartic
//! candidate set with fields), leaving a one-dimensional problem in γ. The
//! univariate value is constant-free and ≤ 0 everywhere (β = 0 always
//! achieves 0), which is what makes the squared-cost subdivision search
//! sound.

mod ensemble;

pub use ensemble::{predicted_gamma_star, scaled_expected_cost, MomentSummary};

use crate::analytic::{CoefficientTriple, Evaluator, NeighborhoodIndex};
use crate::error::{Error, Result};
use crate::ising::{IsingModel, WeightClass};
use crate::spectral::sampling_plan;

/// Which closed-form family the β elimination uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldMode {
    /// Sinusoidal elimination `β* = ¼(atan2(2A, B) + π)`; requires a
    /// field-free model.
    FieldFree,
    /// Quartic candidate set; valid for any model (fields or not).
    WithFields,
}

impl FieldMode {
    /// The natural mode for a model: quartic candidates only when external
    /// fields are present.
    pub fn for_model(model: &IsingModel) -> FieldMode {
        if model.has_fields() {
            FieldMode::WithFields
        } else {
            FieldMode::FieldFree
        }
    }
}

/// How an [`OptimizationResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Subdivision,
    GradientNearZero,
    LineSearch,
    ClosedForm,
}

/// A tuned angle pair with its certificate data.
#[derive(Debug, Clone, Copy)]
pub struct OptimizationResult {
    pub gamma_star: f64,
    pub beta_star: f64,
    /// Constant-free expectation at `(gamma_star, beta_star)`.
    pub value: f64,
    /// Number of univariate cost evaluations spent.
    pub evaluations: usize,
    pub method: Method,
}

/// Optimal mixing angle for a field-free coefficient pair, in `[0, π)`.
///
/// The landscape at fixed γ is `a·sin 4β − b·sin²2β`, minimized at
/// `β* = ¼(atan2(2a, b) + π)`. The doubly degenerate case `a = b = 0`
/// returns 0 by convention.
///
/// # Examples
///
/// ```
/// use qaoa1::analytic::CoefficientTriple;
/// use qaoa1::optimize::optimal_beta_field_free;
///
/// let beta = optimal_beta_field_free(CoefficientTriple { a: 1.0, b: 0.0, c: 0.0 });
/// assert!((beta - 3.0 * std::f64::consts::FRAC_PI_8).abs() < 1e-15);
/// ```
pub fn optimal_beta_field_free(coeffs: CoefficientTriple) -> f64 {
    if coeffs.a == 0.0 && coeffs.b == 0.0 {
        return 0.0;
    }
    0.25 * (f64::atan2(2.0 * coeffs.a, coeffs.b) + std::f64::consts::PI)
}

/// Minimum over β of the field-free fixed-γ landscape:
/// `−√(a² + b²/4) − b/2`.
pub fn field_free_optimal_value(coeffs: CoefficientTriple) -> f64 {
    -(coeffs.a * coeffs.a + 0.25 * coeffs.b * coeffs.b).sqrt() - 0.5 * coeffs.b
}

/// Stationary mixing angles for a field-model coefficient triple.
///
/// The stationary condition in `x = cos 2β` is the quartic
///
/// ```text
/// (16b² + 4c²)x⁴ + 8abx³ + (a² − 16b² − 4c²)x² − 4abx + 4b² = 0,
/// ```
///
/// whose real roots in `[−1, 1]` yield candidates `±½·arccos x`. The
/// quartic comes from squaring the stationarity equation, so spurious
/// roots are possible; the minimizing β must be selected by evaluating
/// the landscape over the whole set, never by root inspection. At most
/// 8 candidates are returned; the all-zero triple yields `{0}`.
pub fn beta_candidates_with_fields(coeffs: CoefficientTriple) -> Vec<f64> {
    let (a, b, c) = (coeffs.a, coeffs.b, coeffs.c);
    if a == 0.0 && b == 0.0 && c == 0.0 {
        return vec![0.0];
    }
    // Ascending coefficients of the quartic in x.
    let poly = [
        4.0 * b * b,
        -4.0 * a * b,
        a * a - 16.0 * b * b - 4.0 * c * c,
        8.0 * a * b,
        16.0 * b * b + 4.0 * c * c,
    ];
    let mut roots = stationary_x_candidates(&poly);
    // The endpoints x = ±1 are roots exactly when a = ∓2b; a boundary
    // double root may be located imprecisely, so they are added directly.
    let scale = 1.0 + a.abs() + b.abs();
    if (a + 2.0 * b).abs() <= 1e-9 * scale {
        roots.push(1.0);
    }
    if (a - 2.0 * b).abs() <= 1e-9 * scale {
        roots.push(-1.0);
    }
    roots.sort_by(|p, q| p.partial_cmp(q).expect("roots are finite"));
    roots.dedup_by(|p, q| (*p - *q).abs() <= 1e-12);

    let mut candidates: Vec<f64> = Vec::with_capacity(2 * roots.len());
    for x in roots {
        let beta = 0.5 * x.acos();
        candidates.push(beta);
        candidates.push(-beta);
    }
    candidates.sort_by(|p, q| p.partial_cmp(q).expect("candidates are finite"));
    candidates.dedup_by(|p, q| (*p - *q).abs() <= 1e-12);
    if candidates.len() > 8 {
        // Keep the eight best by achieved value; the minimizer survives.
        candidates.sort_by(|p, q| {
            let vp = with_fields_beta_value(coeffs, *p);
            let vq = with_fields_beta_value(coeffs, *q);
            vp.partial_cmp(&vq).expect("values are finite")
        });
        candidates.truncate(8);
        candidates.sort_by(|p, q| p.partial_cmp(q).expect("candidates are finite"));
    }
    candidates
}

/// Candidate `x = cos 2β` values: the real parts of every root of an
/// ascending-coefficient polynomial, clamped into `[−1, 1]`.
///
/// All roots are located simultaneously by Weierstrass–Durand–Kerner
/// iteration with a hard iteration cap (eigenvalue-based alternatives can
/// stall on the double roots that are routine here, since the quartic is
/// built from a squared equation). A real double root can only be located
/// to ~√ε ≈ 1e-8 in double precision — the polynomial value near it is
/// dominated by rounding noise — so its conjugate-pair split survives
/// Newton polishing, and any imaginary-magnitude filter would make the
/// candidate set flicker as coefficients vary continuously (a real pair
/// crossing into a complex pair, or back). Keeping every root's real part
/// avoids the flicker and costs nothing: a spurious candidate is merely
/// evaluated, while every true interior stationary point is a real root
/// whose real part is itself.
fn stationary_x_candidates(poly: &[f64]) -> Vec<f64> {
    let mut roots = Vec::new();
    let max_mag = poly.iter().fold(0.0f64, |m, &c| m.max(c.abs()));
    if max_mag == 0.0 {
        return roots;
    }
    // A leading coefficient many orders below the largest one pushes the
    // monic form through a near-zero division, exploding the iteration's
    // dynamic range until iterates overflow. The roots such a coefficient
    // contributes have magnitude ≥ (max/lead)^(1/k) ≫ 1 and can never
    // enter the unit interval, so it is trimmed instead; any root the trim
    // perturbs inside [−1, 1] moves by far less than the double-root
    // location noise that is already tolerated.
    let negligible = 1e-12 * max_mag;
    let mut degree = poly.len() - 1;
    while degree > 0 && poly[degree].abs() <= negligible {
        degree -= 1;
    }
    // An exactly zero constant term means an exact root at x = 0; divide
    // it out so the solver never sees a multiple zero root.
    let mut lo = 0;
    while lo < degree && poly[lo] == 0.0 {
        lo += 1;
    }
    if lo > 0 {
        roots.push(0.0);
    }
    if degree == lo {
        return roots;
    }
    let trimmed = &poly[lo..=degree];
    for z in all_roots(trimmed) {
        let z = polish_root(trimmed, z);
        if z.re.is_finite() {
            roots.push(z.re.clamp(-1.0, 1.0));
        }
    }
    roots
}

/// Weierstrass–Durand–Kerner: every complex root of an ascending
/// polynomial with a nonzero leading and constant coefficient.
fn all_roots(poly: &[f64]) -> Vec<num_complex::Complex64> {
    use num_complex::Complex64;
    let lead = poly[poly.len() - 1];
    let monic: Vec<f64> = poly.iter().map(|&c| c / lead).collect();
    let degree = monic.len() - 1;
    // Cauchy bound on the root radius seeds the iterates on a circle that
    // encloses every root; the seed angle avoids the real axis and any
    // symmetry of the coefficients.
    let radius = 1.0
        + monic[..degree]
            .iter()
            .fold(0.0f64, |acc, &c| acc.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut iterates: Vec<Complex64> = (0..degree)
        .map(|k| seed.powu(k as u32 + 1) / seed.norm().powi(k as i32 + 1) * radius * 0.9)
        .collect();
    let horner = |z: Complex64| {
        monic
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    };
    for _ in 0..200 {
        let mut widest = 0.0f64;
        for i in 0..degree {
            let zi = iterates[i];
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, &zj) in iterates.iter().enumerate() {
                if j != i {
                    denom *= zi - zj;
                }
            }
            if denom.norm() < 1e-300 {
                continue; // collided iterates; the others will separate them
            }
            let correction = horner(zi) / denom;
            let updated = zi - correction;
            if !updated.is_finite() {
                continue; // overflowed step; the neighbours move first
            }
            iterates[i] = updated;
            widest = widest.max(correction.norm());
        }
        if widest <= 1e-14 * (1.0 + radius) {
            break;
        }
    }
    iterates
}

/// A few Newton steps on `poly` from a complex start. Near a real double
/// root the iteration contracts linearly (factor ½), shrinking the
/// spurious imaginary part below the realness tolerance.
fn polish_root(poly: &[f64], mut z: num_complex::Complex64) -> num_complex::Complex64 {
    for _ in 0..60 {
        let mut p = num_complex::Complex64::new(0.0, 0.0);
        let mut dp = num_complex::Complex64::new(0.0, 0.0);
        for &c in poly.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        if dp.norm() < 1e-300 {
            break;
        }
        let step = p / dp;
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// Evaluates the fixed-γ landscape of a field model at one β.
fn with_fields_beta_value(coeffs: CoefficientTriple, beta: f64) -> f64 {
    let s2 = (2.0 * beta).sin();
    coeffs.a * s2 + coeffs.b * (4.0 * beta).sin() + coeffs.c * s2 * s2
}

/// β-eliminated cost at one γ: `(value, beta_star)`, constant-free.
///
/// `field_mode` selects the elimination family; [`FieldMode::FieldFree`]
/// on a model with fields is an input error, while
/// [`FieldMode::WithFields`] is valid for any model.
///
/// # Examples
///
/// ```
/// use qaoa1::analytic::build_index;
/// use qaoa1::ising::IsingModel;
/// use qaoa1::optimize::{univariate_cost, FieldMode};
///
/// let m = IsingModel::new(2, vec![(0, 1, 1.0)], vec![0.0, 0.0], 0.0).unwrap();
/// let index = build_index(&m);
/// let (value, beta) =
///     univariate_cost(&m, &index, std::f64::consts::FRAC_PI_4, FieldMode::FieldFree).unwrap();
/// assert!((value + 1.0).abs() < 1e-12);
/// assert!((beta - 3.0 * std::f64::consts::FRAC_PI_8).abs() < 1e-12);
/// ```
pub fn univariate_cost(
    model: &IsingModel,
    index: &NeighborhoodIndex,
    gamma: f64,
    field_mode: FieldMode,
) -> Result<(f64, f64)> {
    let mut ev = Evaluator::new(model, index);
    univariate_in(&mut ev, field_mode, gamma)
}

/// Shared implementation of [`univariate_cost`] reusing a prepared
/// evaluator (one trig table per γ, no per-call allocation).
pub(crate) fn univariate_in(
    ev: &mut Evaluator<'_>,
    field_mode: FieldMode,
    gamma: f64,
) -> Result<(f64, f64)> {
    match field_mode {
        FieldMode::FieldFree => {
            let coeffs = ev.coefficients_field_free(gamma)?;
            let beta = optimal_beta_field_free(coeffs);
            Ok((field_free_optimal_value(coeffs), beta))
        }
        FieldMode::WithFields => {
            let coeffs = ev.coefficients_with_fields(gamma);
            let candidates = beta_candidates_with_fields(coeffs);
            let mut best = (f64::INFINITY, 0.0);
            for beta in candidates.iter().copied() {
                let value = with_fields_beta_value(coeffs, beta);
                if value < best.0 {
                    best = (value, beta);
                }
            }
            if !best.0.is_finite() {
                return Err(Error::numeric(format!(
                    "β elimination produced no finite value at γ = {gamma} \
                     (coefficients ({}, {}, {}), candidates {candidates:?})",
                    coeffs.a, coeffs.b, coeffs.c
                )));
            }
            Ok(best)
        }
    }
}

/// An evaluator bound to one model that counts univariate evaluations.
struct UnivariateEvaluator<'m> {
    ev: Evaluator<'m>,
    mode: FieldMode,
    evaluations: usize,
}

impl<'m> UnivariateEvaluator<'m> {
    fn new(model: &'m IsingModel, index: &'m NeighborhoodIndex) -> Self {
        UnivariateEvaluator {
            ev: Evaluator::new(model, index),
            mode: FieldMode::for_model(model),
            evaluations: 0,
        }
    }

    fn cost(&mut self, gamma: f64) -> Result<(f64, f64)> {
        self.evaluations += 1;
        let out = univariate_in(&mut self.ev, self.mode, gamma)?;
        if !out.0.is_finite() {
            return Err(Error::numeric(format!(
                "univariate cost is not finite at γ = {gamma}"
            )));
        }
        Ok(out)
    }
}

/// Value-guarded steepest descent on the univariate cost.
///
/// Gradients are central finite differences with step
/// `min(scale·10⁻³, 10⁻⁵(1 + |γ|))`; trial steps start at `initial_step`
/// and backtrack by halving under an Armijo test (constant 10⁻⁴), so the
/// iterates never move more than `initial_step` at once and the cost never
/// increases. Stops when the gradient or the accepted step underflows its
/// tolerance. Returns `(gamma, value, beta)`.
fn local_descent(
    uni: &mut UnivariateEvaluator<'_>,
    gamma0: f64,
    initial_step: f64,
    scale: f64,
    keep_positive: bool,
) -> Result<(f64, f64, f64)> {
    let (mut value, mut beta) = uni.cost(gamma0)?;
    let mut gamma = gamma0;
    let min_step = 1e-10 * scale;
    let mut stale = 0usize;
    for _ in 0..10_000 {
        let h = (scale * 1e-3).min(1e-5 * (1.0 + gamma.abs()));
        let (above, _) = uni.cost(gamma + h)?;
        let (below, _) = uni.cost(gamma - h)?;
        let grad = (above - below) / (2.0 * h);
        // The tolerance must sit above the rounding noise of the central
        // difference (~1e-12·|value|/h), or descent degenerates into a
        // random walk on noise-accepted steps until the iteration cap.
        if grad.abs() <= 1e-7 * (1.0 + value.abs()) {
            break;
        }
        let direction = -grad.signum();
        let mut step = initial_step;
        let mut accepted = 0.0;
        let prev = value;
        while step >= min_step {
            let trial = gamma + direction * step;
            if keep_positive && trial <= 0.0 {
                step *= 0.5;
                continue;
            }
            let (trial_value, trial_beta) = uni.cost(trial)?;
            if trial_value <= value - 1e-4 * step * grad.abs() {
                gamma = trial;
                value = trial_value;
                beta = trial_beta;
                accepted = step;
                break;
            }
            step *= 0.5;
        }
        if accepted <= 1e-8 * scale {
            break; // backtracked to (or accepted at) a negligible step
        }
        // On a steep landscape the gradient tolerance can be unreachable:
        // within the ULP-resolution neighbourhood of the minimum the cost
        // cannot register improvement, yet the gradient stays at κ·(γ
        // error), which grows with the curvature κ. Once improvements sit
        // at rounding level several times in a row, descent is done.
        if prev - value <= 8.0 * f64::EPSILON * (1.0 + value.abs()) {
            stale += 1;
            if stale >= 3 {
                break;
            }
        } else {
            stale = 0;
        }
    }
    Ok((gamma, value, beta))
}

/// Gradient descent from `γ₀ = Δγ/2`, converging to the first local
/// minimum of the univariate cost on γ > 0.
///
/// Works for any weight class (no periodicity is needed — only the
/// frequency bound enters, through Δγ). On a flat landscape the start
/// point is returned unchanged.
///
/// # Examples
///
/// ```
/// use qaoa1::analytic::build_index;
/// use qaoa1::ising::IsingModel;
/// use qaoa1::optimize::gradient_descent_near_zero;
///
/// let m = IsingModel::new(2, vec![(0, 1, 1.0)], vec![0.0, 0.0], 0.0).unwrap();
/// let r = gradient_descent_near_zero(&m, &build_index(&m)).unwrap();
/// assert!((r.gamma_star - std::f64::consts::FRAC_PI_4).abs() < 1e-6);
/// assert!((r.value + 1.0).abs() < 1e-8);
/// ```
pub fn gradient_descent_near_zero(
    model: &IsingModel,
    index: &NeighborhoodIndex,
) -> Result<OptimizationResult> {
    let plan = sampling_plan(model, index);
    let delta = plan.delta_gamma;
    let mut uni = UnivariateEvaluator::new(model, index);
    let (gamma, value, beta) = local_descent(&mut uni, 0.5 * delta, 0.25 * delta, delta, true)?;
    Ok(OptimizationResult {
        gamma_star: gamma,
        beta_star: beta,
        value,
        evaluations: uni.evaluations,
        method: Method::GradientNearZero,
    })
}

/// Shared grid scan: best (earliest within 1e-12) univariate cost over
/// `count` points spaced by `step` from 0, optionally descent-refined.
fn grid_search(
    uni: &mut UnivariateEvaluator<'_>,
    step: f64,
    count: usize,
    refine: bool,
) -> Result<(f64, f64, f64)> {
    let mut best = (0.0, f64::INFINITY, 0.0); // (gamma, value, beta)
    for k in 0..count {
        let gamma = k as f64 * step;
        let (value, beta) = uni.cost(gamma)?;
        // Strict improvement only: equal-valued minima resolve to the
        // smallest γ, keeping results deterministic.
        if value < best.1 - 1e-12 {
            best = (gamma, value, beta);
        }
    }
    if refine {
        let (gamma, value, beta) = local_descent(uni, best.0, 0.25 * step, step, false)?;
        if value < best.1 {
            best = (gamma, value, beta);
        }
    }
    Ok(best)
}

/// Dense line search over one landscape period at the alias-free grid
/// resolution, optionally refined by bounded local descent.
///
/// Requires an integer weight class (a known period); for real weights
/// use [`line_search_coarse`], which fixes the window to `[0, π)`.
pub fn line_search(
    model: &IsingModel,
    index: &NeighborhoodIndex,
    refine: bool,
) -> Result<OptimizationResult> {
    let plan = sampling_plan(model, index);
    let Some(count) = plan.num_samples else {
        return Err(Error::Input(
            "real weight class has no finite period; use line_search_coarse".into(),
        ));
    };
    let mut uni = UnivariateEvaluator::new(model, index);
    let (gamma, value, beta) = grid_search(&mut uni, plan.grid_step(), count, refine)?;
    Ok(OptimizationResult {
        gamma_star: gamma,
        beta_star: beta,
        value,
        evaluations: uni.evaluations,
        method: Method::LineSearch,
    })
}

/// Line search with a caller-chosen number of samples over one period
/// (or `[0, π)` when no period is known). `count = 20` without refinement
/// is the classic coarse baseline configuration.
pub fn line_search_coarse(
    model: &IsingModel,
    index: &NeighborhoodIndex,
    count: usize,
    refine: bool,
) -> Result<OptimizationResult> {
    if count == 0 {
        return Err(Error::Input("line search needs at least one sample".into()));
    }
    let plan = sampling_plan(model, index);
    let span = plan.period.unwrap_or(std::f64::consts::PI);
    let mut uni = UnivariateEvaluator::new(model, index);
    let (gamma, value, beta) = grid_search(&mut uni, span / count as f64, count, refine)?;
    Ok(OptimizationResult {
        gamma_star: gamma,
        beta_star: beta,
        value,
        evaluations: uni.evaluations,
        method: Method::LineSearch,
    })
}

/// Certified global search for γ* by interval subdivision on the squared
/// univariate cost `q(γ) = value(γ)²`.
///
/// `q` inherits the angular-frequency bound `2·ω_max` from the landscape,
/// so an interval of width `w` whose midpoint satisfies
/// `q(mid) < q̃·cos(2ω_max·w)` cannot contain the global maximizer of `q`
/// and is discarded; survivors are halved until
/// `q̃·(sec(2ω_max·w) − 1) < ε`, certifying `max q − q̃ < ε`. Because the
/// univariate value is ≤ 0, maximizing `q` minimizes the cost; a sign
/// guard re-checks the unsquared value at the winner and falls back to
/// the most negative midpoint seen if squaring ever promoted a positive
/// value (it cannot for exact arithmetic, but the guard is cheap).
///
/// Midpoint evaluations within one round are independent of each other
/// and could run in parallel; pruning only uses the round's completed
/// maximum.
///
/// # Errors
///
/// Real weight classes (no finite period) and `epsilon ≤ 0` are input
/// errors; failure to certify within 600 halvings is a numeric error.
pub fn subdivision_optimize(
    model: &IsingModel,
    index: &NeighborhoodIndex,
    epsilon: f64,
) -> Result<OptimizationResult> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::Input(format!(
            "subdivision tolerance must be positive and finite, got {epsilon}"
        )));
    }
    let WeightClass::Integer { .. } = model.weight_class() else {
        return Err(Error::Input(
            "subdivision requires a periodic landscape (integer weight class)".into(),
        ));
    };
    let plan = sampling_plan(model, index);
    let period = plan.period.expect("integer weight class has a period");
    let nq = 2.0 * plan.omega_max; // frequency bound of the squared cost

    // Initial tiling: at least the alias-free resolution, and fine enough
    // that nq·width < π, the validity range of the rejection bound.
    let mut count = (period / plan.delta_gamma).ceil() as usize;
    if nq > 0.0 {
        count = count.max((nq * period / std::f64::consts::PI).floor() as usize + 1);
    }
    let mut width = period / count as f64;
    let mut midpoints: Vec<f64> = (0..count).map(|k| (k as f64 + 0.5) * width).collect();

    let mut uni = UnivariateEvaluator::new(model, index);
    // Most negative unsquared value ever seen: (gamma, value, beta).
    let mut deepest = (0.5 * width, 0.0, 0.0_f64);
    let mut seen_any = false;

    for _round in 0..600 {
        let mut evaluated: Vec<(f64, f64, f64)> = Vec::with_capacity(midpoints.len());
        let mut q_tilde = f64::NEG_INFINITY;
        for &mid in &midpoints {
            let (value, beta) = uni.cost(mid)?;
            if !seen_any || value < deepest.1 {
                deepest = (mid, value, beta);
                seen_any = true;
            }
            evaluated.push((mid, value, beta));
            q_tilde = q_tilde.max(value * value);
        }

        let arg = nq * width;
        if arg < std::f64::consts::FRAC_PI_2 && q_tilde * (1.0 / arg.cos() - 1.0) < epsilon {
            // First maximal midpoint wins ties (midpoints stay ascending).
            let mut best = evaluated[0];
            for e in &evaluated[1..] {
                if e.1 * e.1 > best.1 * best.1 {
                    best = *e;
                }
            }
            let (gamma, value, beta) = best;
            let (gamma, value, beta) = if value <= 0.0 {
                (gamma, value, beta)
            } else {
                deepest
            };
            return Ok(OptimizationResult {
                gamma_star: gamma,
                beta_star: beta,
                value,
                evaluations: uni.evaluations,
                method: Method::Subdivision,
            });
        }

        let threshold = q_tilde * arg.cos();
        let mut next = Vec::with_capacity(2 * evaluated.len());
        for &(mid, value, _) in &evaluated {
            if value * value >= threshold {
                next.push(mid - 0.25 * width);
                next.push(mid + 0.25 * width);
            }
        }
        if next.is_empty() {
            return Err(Error::numeric(
                "subdivision pruned every interval; the landscape may be ill-conditioned",
            ));
        }
        midpoints = next;
        width *= 0.5;
    }
    Err(Error::numeric(format!(
        "subdivision did not certify tolerance {epsilon} within 600 rounds"
    )))
}
