//! Ground-truth engines: dense statevector simulation of the depth-1
//! circuit, exhaustive ground-state enumeration, and approximation ratios.
//!
//! These are the slow-but-certain references the analytic evaluators are
//! checked against. The statevector path builds all 2ⁿ amplitudes and is
//! capped at 20 qubits; enumeration is capped at 24 vertices.

use num_complex::Complex64;

use crate::analytic::QaoaAngles;
use crate::error::{Error, Result};
use crate::ising::{IsingModel, SpinAssignment};

/// Hard qubit ceiling of the statevector engine (2²⁰ amplitudes ≙ 16 MiB).
pub const STATEVECTOR_MAX_QUBITS: usize = 20;

/// Hard vertex ceiling of exhaustive enumeration.
pub const BRUTE_FORCE_MAX_VERTICES: usize = 24;

/// Tolerance on the statevector norm after both circuit layers.
const UNITARITY_TOL: f64 = 1e-12;

/// Exact extremal energies of a model, constant-free.
#[derive(Debug, Clone)]
pub struct GroundTruth {
    /// Minimum of `Σ J_uv s_u s_v + Σ h_i s_i` over all assignments.
    pub e_min: f64,
    /// Maximum of the same quantity.
    pub e_max: f64,
    /// First minimizing assignment in scan order.
    pub argmin: SpinAssignment,
    /// Number of assignments attaining `e_min` (over the full 2ⁿ space).
    pub degeneracy: u64,
}

/// Z-basis correlators of the depth-1 state: one `⟨Z_i⟩` per vertex and
/// one `⟨Z_u Z_v⟩` per stored edge.
#[derive(Debug, Clone)]
pub struct StatevectorCorrelators {
    /// `⟨Z_i⟩` for every vertex in order.
    pub z: Vec<f64>,
    /// `⟨Z_u Z_v⟩` for every edge in canonical order, keyed by `(u, v)`.
    pub zz: Vec<((usize, usize), f64)>,
}

/// Constant-free cost of every basis state; bit `i` of the index encodes
/// spin `i`, with bit value 0 meaning `s_i = +1`.
fn cost_table(model: &IsingModel) -> Vec<f64> {
    let n = model.n();
    let dim = 1usize << n;
    let mut cost = vec![0.0; dim];
    for (u, v, w) in model.edges() {
        for (z, c) in cost.iter_mut().enumerate() {
            if (z >> u ^ z >> v) & 1 == 1 {
                *c -= w;
            } else {
                *c += w;
            }
        }
    }
    for i in 0..n {
        let h = model.field(i);
        if h != 0.0 {
            for (z, c) in cost.iter_mut().enumerate() {
                if z >> i & 1 == 1 {
                    *c -= h;
                } else {
                    *c += h;
                }
            }
        }
    }
    cost
}

/// Builds the depth-1 state: uniform superposition, diagonal phase
/// `e^{-iγ·cost(z)}`, then one X-rotation per qubit applied as in-place
/// butterflies `(a₀, a₁) → (cos β·a₀ − i sin β·a₁, −i sin β·a₀ + cos β·a₁)`.
fn qaoa_state(model: &IsingModel, angles: QaoaAngles) -> Result<(Vec<Complex64>, Vec<f64>)> {
    let n = model.n();
    if n > STATEVECTOR_MAX_QUBITS {
        return Err(Error::Capacity(format!(
            "statevector simulation supports at most {STATEVECTOR_MAX_QUBITS} qubits, got {n}"
        )));
    }
    let cost = cost_table(model);
    let dim = cost.len();
    let amp0 = 1.0 / (dim as f64).sqrt();
    let mut amps: Vec<Complex64> = cost
        .iter()
        .map(|&c| Complex64::from_polar(amp0, -angles.gamma * c))
        .collect();
    let cb = Complex64::new(angles.beta.cos(), 0.0);
    let msb = Complex64::new(0.0, -angles.beta.sin());
    for q in 0..n {
        let step = 1usize << q;
        for base in (0..dim).step_by(step << 1) {
            for i in base..base + step {
                let j = i + step;
                let (a, b) = (amps[i], amps[j]);
                amps[i] = cb * a + msb * b;
                amps[j] = msb * a + cb * b;
            }
        }
    }
    Ok((amps, cost))
}

/// Checks that the squared amplitudes sum to 1 within `1e-12`.
fn check_norm(probs_sum: f64) -> Result<()> {
    if (probs_sum - 1.0).abs() > UNITARITY_TOL {
        return Err(Error::Numeric(format!(
            "statevector norm drifted to {probs_sum}; the mixer butterflies must stay unitary"
        )));
    }
    Ok(())
}

/// Expectation `⟨γ,β| H_P |γ,β⟩` of the constant-free cost operator in the
/// depth-1 state, by dense simulation.
///
/// # Examples
///
/// ```
/// use qaoa1::analytic::QaoaAngles;
/// use qaoa1::ising::IsingModel;
/// use qaoa1::oracle::statevector_expectation;
///
/// let m = IsingModel::new(2, vec![(0, 1, 1.0)], vec![0.0, 0.0], 0.0).unwrap();
/// // γ = 0 leaves the uniform distribution; every term averages to zero.
/// let e = statevector_expectation(&m, QaoaAngles { gamma: 0.0, beta: 0.7 }).unwrap();
/// assert!(e.abs() < 1e-12);
/// ```
pub fn statevector_expectation(model: &IsingModel, angles: QaoaAngles) -> Result<f64> {
    let (amps, cost) = qaoa_state(model, angles)?;
    let mut expectation = 0.0;
    let mut norm = 0.0;
    for (a, &c) in amps.iter().zip(cost.iter()) {
        let p = a.norm_sqr();
        norm += p;
        expectation += p * c;
    }
    check_norm(norm)?;
    Ok(expectation)
}

/// Single-site and edge Z-correlators of the depth-1 state, by dense
/// simulation.
pub fn statevector_correlators(
    model: &IsingModel,
    angles: QaoaAngles,
) -> Result<StatevectorCorrelators> {
    let (amps, _) = qaoa_state(model, angles)?;
    let n = model.n();
    let mut norm = 0.0;
    let mut z = vec![0.0; n];
    let mut zz: Vec<((usize, usize), f64)> =
        model.edges().map(|(u, v, _)| ((u, v), 0.0)).collect();
    for (state, a) in amps.iter().enumerate() {
        let p = a.norm_sqr();
        norm += p;
        for (i, zi) in z.iter_mut().enumerate() {
            if state >> i & 1 == 1 {
                *zi -= p;
            } else {
                *zi += p;
            }
        }
        for &mut ((u, v), ref mut c) in zz.iter_mut() {
            if (state >> u ^ state >> v) & 1 == 1 {
                *c -= p;
            } else {
                *c += p;
            }
        }
    }
    check_norm(norm)?;
    Ok(StatevectorCorrelators { z, zz })
}

/// Exact extremal energies by exhaustive scan of all assignments.
///
/// Field-free models are scanned over half the space with the last spin
/// pinned to `+1`; the global flip symmetry supplies the other half (the
/// degeneracy count is doubled accordingly).
///
/// # Examples
///
/// ```
/// use qaoa1::ising::IsingModel;
/// use qaoa1::oracle::brute_force;
///
/// // Frustrated triangle: one edge must stay unsatisfied.
/// let m = IsingModel::new(3, vec![(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)],
///                         vec![0.0; 3], 0.0).unwrap();
/// let t = brute_force(&m).unwrap();
/// assert_eq!(t.e_min, -1.0);
/// assert_eq!(t.e_max, 3.0);
/// assert_eq!(t.degeneracy, 6);
/// ```
pub fn brute_force(model: &IsingModel) -> Result<GroundTruth> {
    let n = model.n();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::Capacity(format!(
            "exhaustive enumeration supports at most {BRUTE_FORCE_MAX_VERTICES} vertices, got {n}"
        )));
    }
    let halved = !model.has_fields();
    let bits = if halved { n - 1 } else { n };
    let edges: Vec<(usize, usize, f64)> = model.edges().collect();
    let field_terms: Vec<(usize, f64)> = (0..n)
        .map(|i| (i, model.field(i)))
        .filter(|&(_, h)| h != 0.0)
        .collect();

    let mut e_min = f64::INFINITY;
    let mut e_max = f64::NEG_INFINITY;
    let mut argmin_state = 0u64;
    let mut degeneracy = 0u64;
    for state in 0..(1u64 << bits) {
        let mut e = 0.0;
        for &(u, v, w) in &edges {
            if (state >> u ^ state >> v) & 1 == 1 {
                e -= w;
            } else {
                e += w;
            }
        }
        for &(i, h) in &field_terms {
            if state >> i & 1 == 1 {
                e -= h;
            } else {
                e += h;
            }
        }
        if e < e_min {
            e_min = e;
            argmin_state = state;
            degeneracy = 1;
        } else if e == e_min {
            degeneracy += 1;
        }
        if e > e_max {
            e_max = e;
        }
    }
    if halved {
        degeneracy *= 2;
    }
    let spins: Vec<i8> = (0..n)
        .map(|i| if argmin_state >> i & 1 == 1 { -1 } else { 1 })
        .collect();
    Ok(GroundTruth {
        e_min,
        e_max,
        argmin: SpinAssignment::new(spins)?,
        degeneracy,
    })
}

/// Quality of an achieved constant-free energy relative to the exact
/// minimum: `achieved / e_min`. Equals 1 at the optimum, 0 at the level of
/// uniform random guessing, and is negative for worse-than-random results.
///
/// # Examples
///
/// ```
/// use qaoa1::ising::IsingModel;
/// use qaoa1::oracle::{approximation_ratio, brute_force};
///
/// let m = IsingModel::new(2, vec![(0, 1, 1.0)], vec![0.0, 0.0], 0.0).unwrap();
/// let t = brute_force(&m).unwrap(); // e_min = -1
/// assert_eq!(approximation_ratio(-1.0, &t).unwrap(), 1.0);
/// assert_eq!(approximation_ratio(0.0, &t).unwrap(), 0.0);
/// ```
pub fn approximation_ratio(achieved: f64, truth: &GroundTruth) -> Result<f64> {
    if truth.e_min >= 0.0 {
        return Err(Error::Domain(format!(
            "degenerate instance: minimum constant-free energy {} is nonnegative, \
             so the ratio is undefined",
            truth.e_min
        )));
    }
    Ok(achieved / truth.e_min)
}
