//! Recursive variable elimination driven by tuned depth-1 correlators.
//!
//! Each round tunes (γ*, β*) on the current model, computes the one- and
//! two-point correlators in closed form, and eliminates the variable with
//! the strongest signal: either by fixing it outright (`assign`) or by
//! locking it to a neighbour's value (`substitute`), folding its terms
//! into the surviving model. After the requested number of eliminations
//! the remainder is solved exhaustively and the eliminations are replayed
//! backwards to produce a full assignment.
//!
//! Two elimination policies are provided: [`rqaoa`] considers vertices and
//! edges, [`iter_qaoa`] only vertices (it needs external fields to make
//! progress and falls back to a field-sign heuristic when none remain).

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use crate::analytic::{build_index, Evaluator, NeighborhoodIndex, QaoaAngles};
use crate::error::{Error, Result};
use crate::ising::{eliminate_fields, IsingModel, SpinAssignment};
use crate::optimize::{
    gradient_descent_near_zero, line_search, line_search_coarse, subdivision_optimize,
    OptimizationResult,
};
use crate::oracle::{approximation_ratio, brute_force, GroundTruth, BRUTE_FORCE_MAX_VERTICES};
use crate::report::{json_f64, weight_class_label, PlanSummary, SolverReport};
use crate::spectral::sampling_plan;

/// Which optimizer tunes the angles at every reduction step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TunerMethod {
    /// First local minimum from γ = Δγ/2.
    GradientNearZero,
    /// Grid scan; `samples: None` uses the alias-free grid over one
    /// period, `Some(k)` uses k points (20 is the classic coarse setting).
    LineSearch { samples: Option<usize>, refine: bool },
    /// Certified subdivision search to additive tolerance `epsilon` on
    /// the squared cost.
    Subdivision { epsilon: f64 },
}

/// How models with external fields are tuned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldStrategy {
    /// Tune directly on the field model (quartic β elimination).
    Native,
    /// Tune on the field-free equivalent (ancilla vertex), then apply the
    /// angles to the field model. Denser sampling, simpler β elimination.
    EliminateFirst,
}

/// Complete tuning configuration for a recursive solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tuner {
    pub method: TunerMethod,
    pub field_strategy: FieldStrategy,
}

impl Tuner {
    /// Canonical configuration label echoed in reports.
    pub fn label(&self) -> String {
        let method = match self.method {
            TunerMethod::GradientNearZero => "gradient_near_zero".to_string(),
            TunerMethod::LineSearch { samples, refine } => match samples {
                Some(k) => format!("line_search(samples={k}, refine={refine})"),
                None => format!("line_search(refine={refine})"),
            },
            TunerMethod::Subdivision { epsilon } => format!("subdivision(epsilon={epsilon})"),
        };
        let strategy = match self.field_strategy {
            FieldStrategy::Native => "native",
            FieldStrategy::EliminateFirst => "eliminate_first",
        };
        format!("{method}, fields={strategy}")
    }
}

/// One elimination, as recorded in a trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepKind {
    /// `s_vertex := sign`.
    Assign { vertex: usize, sign: i8 },
    /// `s_eliminated := sign · s_survivor`.
    Substitute { eliminated: usize, survivor: usize, sign: i8 },
}

/// A recorded elimination with the evidence that triggered it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionStep {
    pub step_index: usize,
    pub kind: StepKind,
    /// |M| value that won the argmax at this step.
    pub magnitude: f64,
    /// Angles the step was tuned to.
    pub gamma_star: f64,
    pub beta_star: f64,
}

/// Everything needed to replay a recursive solve.
#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    /// Total constant picked up by eliminations (excluded from
    /// `final_model`, so `final_truth.e_min + constant_accumulated` is the
    /// full achieved energy).
    pub constant_accumulated: f64,
    /// The reduced model over `survivors.len()` relabeled vertices; its
    /// constant is the original model's constant.
    pub final_model: IsingModel,
    /// Exhaustive ground truth of `final_model`.
    pub final_truth: GroundTruth,
    /// Original vertex ids of the survivors, ascending; index `i` of a
    /// remainder solution refers to `survivors[i]`.
    pub survivors: Vec<usize>,
    pub original_n: usize,
}

impl ReductionTrace {
    /// Serializes the trace as a single JSON object.
    pub fn to_json(&self) -> String {
        let mut out = String::with_capacity(256 + 160 * self.steps.len());
        out.push_str(&format!(
            "{{\"schema\":1,\"original_n\":{},\"constant_accumulated\":{},\"survivors\":[",
            self.original_n,
            json_f64(self.constant_accumulated)
        ));
        for (i, s) in self.survivors.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&s.to_string());
        }
        out.push_str("],\"steps\":[");
        for (i, step) in self.steps.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            match step.kind {
                StepKind::Assign { vertex, sign } => out.push_str(&format!(
                    "{{\"step_index\":{},\"kind\":\"assign\",\"vertex\":{vertex},\"sign\":{sign},",
                    step.step_index
                )),
                StepKind::Substitute { eliminated, survivor, sign } => out.push_str(&format!(
                    "{{\"step_index\":{},\"kind\":\"substitute\",\"eliminated\":{eliminated},\
                     \"survivor\":{survivor},\"sign\":{sign},",
                    step.step_index
                )),
            }
            out.push_str(&format!(
                "\"magnitude\":{},\"gamma_star\":{},\"beta_star\":{}}}",
                json_f64(step.magnitude),
                json_f64(step.gamma_star),
                json_f64(step.beta_star)
            ));
        }
        out.push_str(&format!(
            "],\"final\":{{\"n\":{},\"e_min\":{},\"e_max\":{},\"degeneracy\":{}}}}}",
            self.final_model.n(),
            json_f64(self.final_truth.e_min),
            json_f64(self.final_truth.e_max),
            self.final_truth.degeneracy
        ));
        out
    }
}

/// An edge correlator tagged with the endpoints it belongs to.
pub type EdgeCorrelator = ((usize, usize), f64);

/// Closed-form tuned correlators: per-vertex `M_i = ⟨Z_i⟩` (with the field
/// prefactor removed — identically 0 where `h_i = 0`) and per-stored-edge
/// `M_uv = ⟨Z_u Z_v⟩` (coupling prefactor removed), in canonical edge
/// order.
///
/// # Examples
///
/// ```
/// use qaoa1::analytic::{build_index, QaoaAngles};
/// use qaoa1::ising::IsingModel;
/// use qaoa1::recursive::correlators;
///
/// let m = IsingModel::new(2, vec![(0, 1, 1.0)], vec![0.0, 0.0], 0.0).unwrap();
/// let index = build_index(&m);
/// let angles = QaoaAngles {
///     gamma: std::f64::consts::FRAC_PI_4,
///     beta: 3.0 * std::f64::consts::FRAC_PI_8,
/// };
/// let (m_i, m_uv) = correlators(&m, &index, angles);
/// assert!(m_i.iter().all(|&v| v == 0.0)); // field-free
/// assert!((m_uv[0].1 + 1.0).abs() < 1e-12); // antiparallel alignment
/// ```
pub fn correlators(
    model: &IsingModel,
    index: &NeighborhoodIndex,
    angles: QaoaAngles,
) -> (Vec<f64>, Vec<EdgeCorrelator>) {
    let mut ev = Evaluator::new(model, index);
    let (vertex_units, edge_units) = ev.correlator_units(angles.gamma);
    let s2 = (2.0 * angles.beta).sin();
    let s4 = (4.0 * angles.beta).sin();
    let m_i = vertex_units.iter().map(|t| s2 * t).collect();
    let m_uv = edge_units
        .iter()
        .enumerate()
        .map(|(k, &(tb, tc))| (index.edge_endpoints(k), s4 * tb + s2 * s2 * tc))
        .collect();
    (m_i, m_uv)
}

/// Runs the configured optimizer, tuning either natively or on the
/// field-free equivalent.
fn tune_once(
    model: &IsingModel,
    index: &NeighborhoodIndex,
    tuner: &Tuner,
) -> Result<(QaoaAngles, usize)> {
    let run = |m: &IsingModel, idx: &NeighborhoodIndex| -> Result<OptimizationResult> {
        match tuner.method {
            TunerMethod::GradientNearZero => gradient_descent_near_zero(m, idx),
            TunerMethod::LineSearch { samples: None, refine } => line_search(m, idx, refine),
            TunerMethod::LineSearch { samples: Some(k), refine } => {
                line_search_coarse(m, idx, k, refine)
            }
            TunerMethod::Subdivision { epsilon } => subdivision_optimize(m, idx, epsilon),
        }
    };
    let result = match tuner.field_strategy {
        FieldStrategy::Native => run(model, index)?,
        FieldStrategy::EliminateFirst => {
            let eliminated = eliminate_fields(model);
            let elim_index = build_index(&eliminated);
            run(&eliminated, &elim_index)?
        }
    };
    Ok((
        QaoaAngles { gamma: result.gamma_star, beta: result.beta_star },
        result.evaluations,
    ))
}

/// Full expected energy (constant included) of depth-1 QAOA at angles
/// tuned by `tuner` — the non-recursive baseline.
pub fn qaoa1_expected_baseline(model: &IsingModel, tuner: &Tuner) -> Result<(f64, QaoaAngles)> {
    let index = build_index(model);
    let (angles, _) = tune_once(model, &index, tuner)?;
    let mut ev = Evaluator::new(model, &index);
    Ok((ev.expectation_with_fields(angles), angles))
}

fn sign_of(x: f64) -> i8 {
    if x < 0.0 {
        -1
    } else {
        1
    }
}

/// Mutable elimination state keyed by *original* vertex ids.
struct WorkModel {
    active: BTreeSet<usize>,
    fields: BTreeMap<usize, f64>,
    adjacency: BTreeMap<usize, BTreeMap<usize, f64>>,
    base_constant: f64,
    accumulated: f64,
}

impl WorkModel {
    fn new(model: &IsingModel) -> Self {
        let mut adjacency: BTreeMap<usize, BTreeMap<usize, f64>> =
            (0..model.n()).map(|u| (u, BTreeMap::new())).collect();
        for (u, v, j) in model.edges() {
            adjacency.get_mut(&u).expect("vertex row").insert(v, j);
            adjacency.get_mut(&v).expect("vertex row").insert(u, j);
        }
        WorkModel {
            active: (0..model.n()).collect(),
            fields: (0..model.n()).map(|u| (u, model.field(u))).collect(),
            adjacency,
            base_constant: model.constant(),
            accumulated: 0.0,
        }
    }

    /// Fixes `s_u := sign`: couplings become field shifts, the field
    /// becomes constant.
    fn assign(&mut self, u: usize, sign: f64) {
        let neighbors: Vec<(usize, f64)> =
            self.adjacency[&u].iter().map(|(&j, &w)| (j, w)).collect();
        for (j, juj) in neighbors {
            *self.fields.get_mut(&j).expect("active neighbor") += sign * juj;
            self.adjacency.get_mut(&j).expect("active neighbor").remove(&u);
        }
        self.accumulated += sign * self.fields[&u];
        self.adjacency.remove(&u);
        self.fields.remove(&u);
        self.active.remove(&u);
    }

    /// Locks `s_u := sign · s_v`: u's couplings merge into v's (exact
    /// zero merges are deleted), u's field merges into v's, and the (u,v)
    /// coupling itself becomes constant.
    fn substitute(&mut self, u: usize, v: usize, sign: f64) {
        let neighbors: Vec<(usize, f64)> =
            self.adjacency[&u].iter().map(|(&j, &w)| (j, w)).collect();
        for (j, juj) in neighbors {
            self.adjacency.get_mut(&j).expect("active neighbor").remove(&u);
            if j == v {
                self.accumulated += sign * juj;
                continue;
            }
            let merged = self.adjacency[&v].get(&j).copied().unwrap_or(0.0) + sign * juj;
            if merged == 0.0 {
                self.adjacency.get_mut(&v).expect("survivor").remove(&j);
                self.adjacency.get_mut(&j).expect("active neighbor").remove(&v);
            } else {
                self.adjacency.get_mut(&v).expect("survivor").insert(j, merged);
                self.adjacency.get_mut(&j).expect("active neighbor").insert(v, merged);
            }
        }
        let hu = self.fields[&u];
        *self.fields.get_mut(&v).expect("survivor") += sign * hu;
        self.adjacency.remove(&u);
        self.fields.remove(&u);
        self.active.remove(&u);
    }

    /// Builds the current model over relabeled vertices; returns it with
    /// the ascending original ids of the survivors.
    fn materialize(&self) -> Result<(IsingModel, Vec<usize>)> {
        let labels: Vec<usize> = self.active.iter().copied().collect();
        let slot = |orig: usize| labels.binary_search(&orig).expect("active vertex");
        let mut edges = Vec::new();
        for (&u, row) in &self.adjacency {
            for (&v, &j) in row {
                if u < v {
                    edges.push((slot(u), slot(v), j));
                }
            }
        }
        let fields = labels.iter().map(|&u| self.fields[&u]).collect();
        let model = IsingModel::new(labels.len(), edges, fields, self.base_constant)?;
        Ok((model, labels))
    }
}

/// Replays a trace backwards over a solution of the reduced model,
/// producing a full assignment of the original variables.
///
/// # Examples
///
/// ```
/// use qaoa1::ising::IsingModel;
/// use qaoa1::recursive::{rqaoa, backtrack, FieldStrategy, Tuner, TunerMethod};
///
/// let m = IsingModel::new(2, vec![(0, 1, -1.0)], vec![0.0, 0.0], 0.0).unwrap();
/// let tuner = Tuner {
///     method: TunerMethod::LineSearch { samples: None, refine: true },
///     field_strategy: FieldStrategy::Native,
/// };
/// let (solution, trace, _) = rqaoa(&m, 1, &tuner, 0).unwrap();
/// // Replaying the reduced solve reproduces the reported assignment.
/// assert_eq!(backtrack(&trace, &trace.final_truth.argmin).unwrap(), solution);
/// ```
pub fn backtrack(trace: &ReductionTrace, remainder: &SpinAssignment) -> Result<SpinAssignment> {
    if remainder.len() != trace.survivors.len() {
        return Err(Error::Input(format!(
            "remainder assigns {} variables but {} survive the reduction",
            remainder.len(),
            trace.survivors.len()
        )));
    }
    let mut spins = vec![0i8; trace.original_n];
    for (slot, &orig) in trace.survivors.iter().enumerate() {
        spins[orig] = remainder.spin(slot);
    }
    for step in trace.steps.iter().rev() {
        match step.kind {
            StepKind::Assign { vertex, sign } => spins[vertex] = sign,
            StepKind::Substitute { eliminated, survivor, sign } => {
                if spins[survivor] == 0 {
                    return Err(Error::Input(format!(
                        "survivor {survivor} is unassigned when replaying step {}",
                        step.step_index
                    )));
                }
                spins[eliminated] = sign * spins[survivor];
            }
        }
    }
    if let Some(hole) = spins.iter().position(|&s| s == 0) {
        return Err(Error::Input(format!(
            "trace does not determine vertex {hole}"
        )));
    }
    SpinAssignment::new(spins)
}

/// Shared recursion driver; `linear_only` restricts elimination to the
/// vertex correlators.
fn run_recursive(
    model: &IsingModel,
    steps: usize,
    tuner: &Tuner,
    rng_seed: u64,
    linear_only: bool,
    method_name: &str,
) -> Result<(SpinAssignment, ReductionTrace, SolverReport)> {
    let n = model.n();
    if steps + 1 > n {
        return Err(Error::Input(format!(
            "cannot eliminate {steps} of {n} variables; at most n − 1 = {}",
            n - 1
        )));
    }
    let remainder = n - steps;
    if remainder > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::Input(format!(
            "{remainder} surviving variables exceed the exhaustive-solve limit of \
             {BRUTE_FORCE_MAX_VERTICES}; increase steps"
        )));
    }

    let started = Instant::now();
    let mut work = WorkModel::new(model);
    let mut trace_steps = Vec::with_capacity(steps);
    let mut total_evaluations = 0usize;
    let mut first_angles: Option<QaoaAngles> = None;

    for t in 0..steps {
        let (current, labels) = work.materialize()?;
        let index = build_index(&current);
        let (angles, evaluations) = tune_once(&current, &index, tuner)?;
        total_evaluations += evaluations;
        first_angles.get_or_insert(angles);
        let (m_i, m_uv) = correlators(&current, &index, angles);

        let mut best_vertex = (0usize, 0.0f64, f64::NEG_INFINITY); // (slot, signed, |m|)
        for (i, &m) in m_i.iter().enumerate() {
            if m.abs() > best_vertex.2 {
                best_vertex = (i, m, m.abs());
            }
        }
        let mut best_edge: Option<((usize, usize), f64, f64)> = None;
        if !linear_only {
            for &((u, v), m) in &m_uv {
                if best_edge.is_none_or(|(_, _, abs)| m.abs() > abs) {
                    best_edge = Some(((u, v), m, m.abs()));
                }
            }
        }

        let kind;
        let magnitude;
        match best_edge {
            Some((edge, m_edge, abs_edge)) if abs_edge > best_vertex.2 => {
                let sign = sign_of(m_edge);
                let (eliminated, survivor) = (labels[edge.0], labels[edge.1]);
                work.substitute(eliminated, survivor, sign as f64);
                kind = StepKind::Substitute { eliminated, survivor, sign };
                magnitude = abs_edge;
            }
            _ => {
                let (slot, signed, abs) = best_vertex;
                let (vertex, sign, mag) = if linear_only && abs == 0.0 {
                    // No linear signal left (e.g. a field-free residual):
                    // fall back to the strongest field, aligned against it.
                    let mut fallback = (0usize, 0.0f64);
                    for i in 0..current.n() {
                        if current.field(i).abs() > fallback.1.abs() {
                            fallback = (i, current.field(i));
                        }
                    }
                    log::warn!(
                        "step {t}: all vertex correlators vanish; assigning vertex {} by \
                         field sign instead",
                        labels[fallback.0]
                    );
                    (labels[fallback.0], -sign_of(fallback.1), 0.0)
                } else {
                    (labels[slot], sign_of(signed), abs)
                };
                work.assign(vertex, sign as f64);
                kind = StepKind::Assign { vertex, sign };
                magnitude = mag;
            }
        }
        trace_steps.push(ReductionStep {
            step_index: t,
            kind,
            magnitude,
            gamma_star: angles.gamma,
            beta_star: angles.beta,
        });
    }

    let (final_model, survivors) = work.materialize()?;
    let final_truth = brute_force(&final_model)?;
    let trace = ReductionTrace {
        steps: trace_steps,
        constant_accumulated: work.accumulated,
        final_model,
        final_truth,
        survivors,
        original_n: n,
    };
    let solution = backtrack(&trace, &trace.final_truth.argmin)?;
    let achieved = model.energy(&solution)?;

    let approximation = if n <= BRUTE_FORCE_MAX_VERTICES {
        match brute_force(model).and_then(|truth| approximation_ratio(achieved, &truth)) {
            Ok(ratio) => Some(ratio),
            Err(err) => {
                log::warn!("approximation ratio unavailable: {err}");
                None
            }
        }
    } else {
        None
    };

    let plan = sampling_plan(model, &build_index(model));
    let angles = first_angles.unwrap_or(QaoaAngles { gamma: 0.0, beta: 0.0 });
    let report = SolverReport {
        n,
        edge_count: model.edge_count(),
        weight_class: weight_class_label(model.weight_class()),
        seed: rng_seed,
        method: method_name.to_string(),
        configuration: tuner.label(),
        gamma_star: angles.gamma,
        beta_star: angles.beta,
        energy: achieved - model.constant(),
        constant: model.constant(),
        approximation_ratio: approximation,
        evaluations: total_evaluations,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
        plan: PlanSummary::from(&plan),
    };
    Ok((solution, trace, report))
}

/// Recursive QAOA: eliminates `steps` variables by the strongest of the
/// vertex and edge correlators, then solves the remainder exhaustively.
///
/// Requires `steps ≤ n − 1` and `n − steps ≤ 24`. `rng_seed` is echoed in
/// the report; the algorithm itself is deterministic (argmax ties break
/// to the smallest vertex index / lexicographically first edge, and
/// `sign(0) = +1`).
pub fn rqaoa(
    model: &IsingModel,
    steps: usize,
    tuner: &Tuner,
    rng_seed: u64,
) -> Result<(SpinAssignment, ReductionTrace, SolverReport)> {
    run_recursive(model, steps, tuner, rng_seed, false, "rqaoa")
}

/// Iterative linear-only QAOA: eliminates by the vertex correlators alone
/// (fixing one spin per step), falling back to field signs with a logged
/// warning when every linear correlator vanishes.
pub fn iter_qaoa(
    model: &IsingModel,
    steps: usize,
    tuner: &Tuner,
    rng_seed: u64,
) -> Result<(SpinAssignment, ReductionTrace, SolverReport)> {
    run_recursive(model, steps, tuner, rng_seed, true, "iter_qaoa")
}
