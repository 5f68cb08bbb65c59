//! Angular-frequency bounds of the γ landscape, Nyquist sampling plans,
//! landscape sampling, DFT reconstruction, and comparison with the full
//! cost spectrum.
//!
//! Every γ-dependent term of the depth-1 expectation is a trigonometric
//! polynomial in γ whose maximum angular frequency follows from the weight
//! magnitudes: a vertex term oscillates no faster than `2(|h_i| + Σ|J_ik|)`
//! and an edge term no faster than the larger of its two branch bounds (see
//! [`max_angular_frequency`]). A landscape whose angular frequencies are
//! bounded by ω can be pinned down from uniformly spaced samples at spacing
//! `Δγ = 1/(2ν + 1)` with `ν = ω/2π`; for integer weight classes the
//! landscape is also `π·scale`-periodic, making exact trigonometric
//! (DFT-based) reconstruction possible from one period of samples.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::analytic::{build_index, Evaluator, NeighborhoodIndex, QaoaAngles};
use crate::error::{Error, Result};
use crate::ising::{eliminate_fields, IsingModel, WeightClass};
use crate::optimize::{self, FieldMode};
use crate::oracle::brute_force;

/// Relative threshold separating true spectral mass from roundoff.
const SPECTRAL_MASS_THRESHOLD: f64 = 1e-8;

/// Everything needed to sample a landscape without aliasing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingPlan {
    /// Upper bound on the angular frequency of every γ-dependent term.
    pub omega_max: f64,
    /// Ordinary frequency bound, `omega_max / 2π`.
    pub nu_max: f64,
    /// Largest permissible sample spacing, `1 / (2·nu_max + 1)`.
    pub delta_gamma: f64,
    /// Landscape period `π·scale` for integer weight classes; `None` when
    /// no finite period is guaranteed.
    pub period: Option<f64>,
    /// `⌈period / delta_gamma⌉` when the period is known.
    pub num_samples: Option<usize>,
}

impl SamplingPlan {
    /// Actual grid spacing used by the samplers: `period / num_samples`
    /// when periodic (slightly below `delta_gamma`, so the grid tiles the
    /// period exactly), otherwise `delta_gamma` itself.
    pub fn grid_step(&self) -> f64 {
        match (self.period, self.num_samples) {
            (Some(t), Some(n)) => t / n as f64,
            _ => self.delta_gamma,
        }
    }
}

/// Choice of mixing angle while sampling a landscape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BetaPolicy {
    /// Evaluate at one fixed β (a single bandlimited signal — required for
    /// reconstruction).
    Fixed(f64),
    /// Eliminate β at every γ by the closed-form optimum.
    AnalyticOptimal,
}

/// A uniformly spaced γ grid with the landscape values on it.
#[derive(Debug, Clone)]
pub struct LandscapeSamples {
    /// Sample abscissae, ascending, spaced by [`SamplingPlan::grid_step`].
    pub gammas: Vec<f64>,
    /// Landscape value at each abscissa (constant included).
    pub values: Vec<f64>,
    /// Optimal β per abscissa when sampled with
    /// [`BetaPolicy::AnalyticOptimal`]; `None` for fixed β.
    pub beta_stars: Option<Vec<f64>>,
    /// The plan the grid was derived from.
    pub plan: SamplingPlan,
}

impl LandscapeSamples {
    /// Renders the samples as CSV with header `gamma,value[,beta_star]`
    /// and 17 significant digits per float.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match &self.beta_stars {
            Some(betas) => {
                out.push_str("gamma,value,beta_star\n");
                for ((g, v), b) in self.gammas.iter().zip(&self.values).zip(betas) {
                    out.push_str(&format!("{g:.16e},{v:.16e},{b:.16e}\n"));
                }
            }
            None => {
                out.push_str("gamma,value\n");
                for (g, v) in self.gammas.iter().zip(&self.values) {
                    out.push_str(&format!("{g:.16e},{v:.16e}\n"));
                }
            }
        }
        out
    }
}

/// Minimal numeric interface shared by the exact (scaled-integer) and
/// floating-point frequency computations.
trait Weight:
    Copy + PartialOrd + std::ops::Add<Output = Self> + std::ops::Sub<Output = Self>
{
    const ZERO: Self;
    fn abs_w(self) -> Self;
    fn is_zero(self) -> bool;
}

impl Weight for f64 {
    const ZERO: f64 = 0.0;
    fn abs_w(self) -> f64 {
        self.abs()
    }
    fn is_zero(self) -> bool {
        self == 0.0
    }
}

impl Weight for i64 {
    const ZERO: i64 = 0;
    fn abs_w(self) -> i64 {
        self.abs()
    }
    fn is_zero(self) -> bool {
        self == 0
    }
}

fn max2<T: PartialOrd>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

/// Largest of the per-term half-frequencies `|h_i| + Σ|J_ik|` (vertices)
/// and the two per-edge branch bounds; the caller doubles it.
fn half_omega<T: Weight>(index: &NeighborhoodIndex, vals: &[T]) -> T {
    let n = index.vertex_count();
    let h: Vec<T> = (0..n)
        .map(|i| vals[index.field_value_index(i) as usize])
        .collect();
    let habs: Vec<T> = h.iter().map(|&x| x.abs_w()).collect();
    let jsum: Vec<T> = (0..n)
        .map(|i| {
            index
                .incident_value_indices(i)
                .iter()
                .fold(T::ZERO, |acc, &id| acc + vals[id as usize].abs_w())
        })
        .collect();

    let mut best = T::ZERO;
    for i in 0..n {
        // A vertex with h_i = 0 contributes no single-site term at all, so
        // it is excluded rather than bounded.
        if !h[i].is_zero() {
            best = max2(best, habs[i] + jsum[i]);
        }
    }
    for entry in index.edge_entries() {
        let (u, v) = (entry.u, entry.v);
        let ja = vals[entry.j as usize].abs_w();
        let e_sum = jsum[v] - ja; // Σ_{w∈e}|J_wv|
        let d_sum = jsum[u] - ja; // Σ_{w∈d}|J_uw|
        best = max2(best, ja + max2(habs[v] + e_sum, habs[u] + d_sum));

        // The second branch of the edge term is identically zero unless the
        // endpoints share a neighbour or both carry a field, so its bound
        // only counts when the term exists.
        if entry.shared.is_empty() && (h[u].is_zero() || h[v].is_zero()) {
            continue;
        }
        let mut f_u = T::ZERO;
        let mut f_v = T::ZERO;
        let mut f_plus = T::ZERO;
        let mut f_minus = T::ZERO;
        for &(_, ju_id, jv_id) in &entry.shared {
            let ju = vals[ju_id as usize];
            let jv = vals[jv_id as usize];
            f_u = f_u + ju.abs_w();
            f_v = f_v + jv.abs_w();
            f_plus = f_plus + (ju + jv).abs_w();
            f_minus = f_minus + (ju - jv).abs_w();
        }
        let e_no_f = e_sum - f_v;
        let d_no_f = d_sum - f_u;
        let plus = (h[u] + h[v]).abs_w() + f_plus;
        let minus = (h[u] - h[v]).abs_w() + f_minus;
        best = max2(best, e_no_f + d_no_f + max2(plus, minus));
    }
    best
}

/// Upper bound on the angular frequency (in γ) of every term of the
/// depth-1 expectation:
///
/// ```text
/// vertex i (h_i ≠ 0):   2(|h_i| + Σ_k |J_ik|)
/// edge {u,v}, branch 1:  2(|J_uv| + max{|h_v| + Σ_e |J_wv|, |h_u| + Σ_d |J_uw|})
/// edge {u,v}, branch 2:  2(Σ_{e∖F}|J_wv| + Σ_{d∖F}|J_uw|
///                          + max_±{|h_u ± h_v| + Σ_F |J_uf ± J_vf|})
/// ```
///
/// Sums of absolute values are computed in exact scaled-integer arithmetic
/// whenever the weight class permits.
///
/// # Examples
///
/// ```
/// use qaoa1::analytic::build_index;
/// use qaoa1::ising::IsingModel;
/// use qaoa1::spectral::max_angular_frequency;
///
/// let m = IsingModel::new(2, vec![(0, 1, 1.0)], vec![0.0, 0.0], 0.0).unwrap();
/// assert_eq!(max_angular_frequency(&m, &build_index(&m)), 2.0);
/// ```
pub fn max_angular_frequency(model: &IsingModel, index: &NeighborhoodIndex) -> f64 {
    match model.weight_class() {
        WeightClass::Integer { scale } => {
            let vals: Vec<i64> = index
                .values()
                .iter()
                .map(|&w| (w * scale as f64).round() as i64)
                .collect();
            2.0 * half_omega(index, &vals) as f64 / scale as f64
        }
        WeightClass::Real => {
            let vals: Vec<f64> = index.values().to_vec();
            2.0 * half_omega(index, &vals)
        }
    }
}

/// Derives the alias-free sampling plan of a model's γ landscape.
///
/// # Examples
///
/// ```
/// use qaoa1::analytic::build_index;
/// use qaoa1::ising::IsingModel;
/// use qaoa1::spectral::sampling_plan;
///
/// // Edgeless field-free model: constant landscape.
/// let m = IsingModel::new(3, vec![], vec![0.0; 3], 0.0).unwrap();
/// let plan = sampling_plan(&m, &build_index(&m));
/// assert_eq!(plan.omega_max, 0.0);
/// assert_eq!(plan.delta_gamma, 1.0);
/// assert_eq!(plan.period, Some(std::f64::consts::PI));
/// assert_eq!(plan.num_samples, Some(4));
/// ```
pub fn sampling_plan(model: &IsingModel, index: &NeighborhoodIndex) -> SamplingPlan {
    let omega_max = max_angular_frequency(model, index);
    let nu_max = omega_max / std::f64::consts::TAU;
    let delta_gamma = 1.0 / (2.0 * nu_max + 1.0);
    let (period, num_samples) = match model.weight_class() {
        WeightClass::Integer { scale } => {
            let t = std::f64::consts::PI * scale as f64;
            let n = (t / delta_gamma).ceil() as usize;
            (Some(t), Some(n.max(1)))
        }
        WeightClass::Real => (None, None),
    };
    SamplingPlan {
        omega_max,
        nu_max,
        delta_gamma,
        period,
        num_samples,
    }
}

/// Ratio of the permissible sample spacing before and after field
/// elimination, `Δγ(model) / Δγ(eliminate_fields(model))`. Values above 1
/// quantify how much denser the eliminated model must be sampled (the
/// ancilla vertex becomes a hub whose terms oscillate faster).
pub fn sampling_ratio_after_field_elimination(model: &IsingModel) -> Result<f64> {
    if !model.has_fields() {
        return Err(Error::Input(
            "model has no external fields; the elimination ratio is undefined".into(),
        ));
    }
    let original = sampling_plan(model, &build_index(model));
    let eliminated_model = eliminate_fields(model);
    let eliminated = sampling_plan(&eliminated_model, &build_index(&eliminated_model));
    Ok(original.delta_gamma / eliminated.delta_gamma)
}

fn sample_at(
    model: &IsingModel,
    plan: &SamplingPlan,
    beta_policy: BetaPolicy,
    gammas: Vec<f64>,
) -> Result<LandscapeSamples> {
    let index = build_index(model);
    let mut ev = Evaluator::new(model, &index);
    let mut values = Vec::with_capacity(gammas.len());
    let mut beta_stars = match beta_policy {
        BetaPolicy::Fixed(_) => None,
        BetaPolicy::AnalyticOptimal => Some(Vec::with_capacity(gammas.len())),
    };
    let mode = if model.has_fields() {
        FieldMode::WithFields
    } else {
        FieldMode::FieldFree
    };
    for &gamma in &gammas {
        match beta_policy {
            BetaPolicy::Fixed(beta) => {
                values.push(ev.expectation_with_fields(QaoaAngles { gamma, beta }));
            }
            BetaPolicy::AnalyticOptimal => {
                let (value, beta_star) = optimize::univariate_in(&mut ev, mode, gamma)?;
                values.push(value + model.constant());
                beta_stars.as_mut().expect("allocated above").push(beta_star);
            }
        }
    }
    Ok(LandscapeSamples {
        gammas,
        values,
        beta_stars,
        plan: *plan,
    })
}

/// Samples the landscape on the plan's grid over one period `[0, period)`.
///
/// Requires a periodic (integer weight class) plan; for real weights use
/// [`sample_landscape_interval`] with a caller-chosen window.
///
/// # Examples
///
/// ```
/// use qaoa1::analytic::build_index;
/// use qaoa1::ising::IsingModel;
/// use qaoa1::spectral::{sample_landscape, sampling_plan, BetaPolicy};
///
/// let m = IsingModel::new(2, vec![(0, 1, 1.0)], vec![0.0, 0.0], 0.0).unwrap();
/// let plan = sampling_plan(&m, &build_index(&m));
/// let beta = 3.0 * std::f64::consts::FRAC_PI_8;
/// let s = sample_landscape(&m, &plan, BetaPolicy::Fixed(beta)).unwrap();
/// // ⟨H⟩ = sin 4β · sin 2γ = -sin 2γ at this β.
/// for (g, v) in s.gammas.iter().zip(&s.values) {
///     assert!((v - (-(2.0 * g).sin())).abs() < 1e-12);
/// }
/// ```
pub fn sample_landscape(
    model: &IsingModel,
    plan: &SamplingPlan,
    beta_policy: BetaPolicy,
) -> Result<LandscapeSamples> {
    let (Some(_), Some(num)) = (plan.period, plan.num_samples) else {
        return Err(Error::Input(
            "plan has no finite period (real weight class); \
             use sample_landscape_interval with an explicit window"
                .into(),
        ));
    };
    let step = plan.grid_step();
    let gammas = (0..num).map(|k| k as f64 * step).collect();
    sample_at(model, plan, beta_policy, gammas)
}

/// Samples the landscape on `count` points starting at `start`, spaced by
/// the plan's grid step.
pub fn sample_landscape_interval(
    model: &IsingModel,
    plan: &SamplingPlan,
    beta_policy: BetaPolicy,
    start: f64,
    count: usize,
) -> Result<LandscapeSamples> {
    if count == 0 {
        return Err(Error::Input("cannot sample an empty window".into()));
    }
    if !start.is_finite() {
        return Err(Error::Input("window start must be finite".into()));
    }
    let step = plan.grid_step();
    let gammas = (0..count).map(|k| start + k as f64 * step).collect();
    sample_at(model, plan, beta_policy, gammas)
}

/// Infers the common spacing of `gammas`, erroring on non-uniform input.
fn uniform_step(gammas: &[f64]) -> Result<f64> {
    if gammas.len() < 2 {
        return Err(Error::Input(
            "at least two samples are required to infer a spacing".into(),
        ));
    }
    let step = (gammas[gammas.len() - 1] - gammas[0]) / (gammas.len() - 1) as f64;
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::Input(format!("invalid sample spacing {step}")));
    }
    for w in gammas.windows(2) {
        if ((w[1] - w[0]) - step).abs() > 1e-9 * (1.0 + step.abs()) {
            return Err(Error::Input(format!(
                "samples are not uniformly spaced: gap {} differs from step {}",
                w[1] - w[0],
                step
            )));
        }
    }
    Ok(step)
}

/// A trigonometric interpolant of a sampled periodic landscape.
#[derive(Debug, Clone)]
pub struct LandscapeInterpolant {
    /// DFT coefficients divided by N, index k ↔ signed harmonic.
    coeffs: Vec<Complex64>,
    base: f64,
    /// Fundamental angular frequency `2π / period`.
    omega0: f64,
}

impl LandscapeInterpolant {
    /// Evaluates the interpolant at an arbitrary γ.
    pub fn value(&self, gamma: f64) -> f64 {
        let n = self.coeffs.len() as i64;
        let d = gamma - self.base;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            let ks = if (k as i64) <= n / 2 {
                k as i64
            } else {
                k as i64 - n
            };
            acc += c * Complex64::from_polar(1.0, ks as f64 * self.omega0 * d);
        }
        acc.re
    }
}

/// Builds the exact trigonometric interpolant of fixed-β samples covering
/// one full period.
///
/// The samples must be uniformly spaced, span the plan's period, and come
/// from a fixed-β policy (β elimination produces a different, generally
/// non-bandlimited signal). Spacing above the plan bound is *not* rejected:
/// reconstructing deliberately under-sampled data is how aliasing is
/// demonstrated.
///
/// # Examples
///
/// ```
/// use qaoa1::analytic::build_index;
/// use qaoa1::ising::IsingModel;
/// use qaoa1::spectral::{reconstruct, sample_landscape, sampling_plan, BetaPolicy};
///
/// let m = IsingModel::new(2, vec![(0, 1, 1.0)], vec![0.0, 0.0], 0.0).unwrap();
/// let plan = sampling_plan(&m, &build_index(&m));
/// let beta = 3.0 * std::f64::consts::FRAC_PI_8;
/// let s = sample_landscape(&m, &plan, BetaPolicy::Fixed(beta)).unwrap();
/// let f = reconstruct(&s).unwrap();
/// for k in 0..100 {
///     let g = 0.031 * k as f64;
///     assert!((f.value(g) - (-(2.0 * g).sin())).abs() < 1e-9);
/// }
/// ```
pub fn reconstruct(samples: &LandscapeSamples) -> Result<LandscapeInterpolant> {
    if samples.beta_stars.is_some() {
        return Err(Error::Input(
            "reconstruction requires fixed-β samples (β elimination does not \
             produce a single bandlimited signal)"
                .into(),
        ));
    }
    if samples.gammas.len() != samples.values.len() {
        return Err(Error::Input("sample vectors have mismatched lengths".into()));
    }
    let Some(period) = samples.plan.period else {
        return Err(Error::Input(
            "only periodic (integer weight class) landscapes are reconstructed".into(),
        ));
    };
    let step = uniform_step(&samples.gammas)?;
    let n = samples.gammas.len();
    let covered = step * n as f64;
    if (covered - period).abs() > 1e-6 * period {
        return Err(Error::Input(format!(
            "samples cover {covered} but the landscape period is {period}; \
             a full period is required"
        )));
    }
    let mut buf: Vec<Complex64> = samples
        .values
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    for c in &mut buf {
        *c *= scale;
    }
    Ok(LandscapeInterpolant {
        coeffs: buf,
        base: samples.gammas[0],
        omega0: std::f64::consts::TAU / period,
    })
}

/// Largest angular frequency carrying discrete-Fourier mass above 1e-8 of
/// the total, for uniform samples over a full period. Returns 0 for a
/// constant landscape.
///
/// # Examples
///
/// ```
/// use qaoa1::analytic::build_index;
/// use qaoa1::ising::IsingModel;
/// use qaoa1::spectral::{empirical_bandwidth, sample_landscape, sampling_plan, BetaPolicy};
///
/// let m = IsingModel::new(2, vec![(0, 1, 1.0)], vec![0.0, 0.0], 0.0).unwrap();
/// let plan = sampling_plan(&m, &build_index(&m));
/// let s = sample_landscape(&m, &plan, BetaPolicy::Fixed(0.9)).unwrap();
/// // Pure sin 2γ content: bandwidth exactly 2.
/// assert!((empirical_bandwidth(&s).unwrap() - 2.0).abs() < 1e-9);
/// ```
pub fn empirical_bandwidth(samples: &LandscapeSamples) -> Result<f64> {
    if samples.gammas.len() != samples.values.len() {
        return Err(Error::Input("sample vectors have mismatched lengths".into()));
    }
    let step = uniform_step(&samples.gammas)?;
    let n = samples.gammas.len();
    let omega0 = std::f64::consts::TAU / (step * n as f64);
    let mut buf: Vec<Complex64> = samples
        .values
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let mass: f64 = buf.iter().map(|c| c.norm()).sum();
    if mass == 0.0 {
        return Ok(0.0);
    }
    let threshold = SPECTRAL_MASS_THRESHOLD * mass;
    let mut best = 0.0f64;
    for (k, c) in buf.iter().enumerate().skip(1) {
        if c.norm() > threshold {
            let ks = if (k as i64) <= (n as i64) / 2 {
                k as i64
            } else {
                k as i64 - n as i64
            };
            best = best.max(ks.unsigned_abs() as f64 * omega0);
        }
    }
    Ok(best)
}

/// Spread `λ_max − λ_min` of the constant-free cost over all assignments,
/// by exhaustive enumeration (n ≤ 24).
///
/// # Examples
///
/// ```
/// use qaoa1::ising::IsingModel;
/// use qaoa1::spectral::hp_spectrum_range;
///
/// let m = IsingModel::new(2, vec![(0, 1, 1.0)], vec![0.0, 0.0], 0.0).unwrap();
/// assert_eq!(hp_spectrum_range(&m).unwrap(), 2.0);
/// ```
pub fn hp_spectrum_range(model: &IsingModel) -> Result<f64> {
    let truth = brute_force(model)?;
    Ok(truth.e_max - truth.e_min)
}
