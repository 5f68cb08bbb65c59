//! Weighted Ising models with external fields, spin assignments, and the
//! transforms between problem encodings.
//!
//! A model over `n` spins `s_i ∈ {-1, +1}` has energy
//!
//! ```text
//! E(s) = Σ_{u<v} J_uv s_u s_v  +  Σ_i h_i s_i  +  constant
//! ```
//!
//! where each unordered edge `{u, v}` stores a single coupling `J_uv`: the
//! full, effective coefficient multiplying `s_u s_v` in the energy. All
//! per-edge quantities elsewhere in the crate (angular frequencies, phase
//! arguments `2 J_uv γ`, correlator normalisations) refer to this stored
//! value. Zero couplings are never stored, so the edge set is exactly the
//! interaction graph.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Largest admissible common denominator when testing whether all weights
/// of a model are rational with a small common scale.
const MAX_RATIONAL_SCALE: u64 = 1_000_000;

/// Classification of a model's weights, fixing the landscape periodicity.
///
/// When every coupling and field becomes an integer after multiplication
/// by a common positive integer `scale ≤ 10^6`, the γ-landscape of the
/// model is periodic with period `π · scale`. Otherwise no finite period
/// is guaranteed and the weights are treated as generic reals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightClass {
    /// All weights are integer multiples of `1/scale`; the γ-period is
    /// `π · scale`.
    Integer {
        /// Smallest common denominator of all weights.
        scale: u64,
    },
    /// No common denominator `≤ 10^6` exists; no finite period is assumed.
    Real,
}

/// A complete spin configuration: one value in `{-1, +1}` per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinAssignment(Vec<i8>);

impl SpinAssignment {
    /// Wraps a vector of spins, checking that every entry is `±1`.
    ///
    /// # Examples
    ///
    /// ```
    /// use qaoa1::ising::SpinAssignment;
    ///
    /// let s = SpinAssignment::new(vec![1, -1, 1]).unwrap();
    /// assert_eq!(s.len(), 3);
    /// assert_eq!(s.spin(1), -1);
    /// assert!(SpinAssignment::new(vec![1, 0]).is_err());
    /// ```
    pub fn new(spins: Vec<i8>) -> Result<Self> {
        for (i, &s) in spins.iter().enumerate() {
            if s != 1 && s != -1 {
                return Err(Error::Input(format!(
                    "spin {i} is {s}; every spin must be +1 or -1"
                )));
            }
        }
        Ok(SpinAssignment(spins))
    }

    /// Number of spins.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True when the assignment is empty.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Spin at vertex `i` (panics if out of range).
    pub fn spin(&self, i: usize) -> i8 {
        self.0[i]
    }

    /// All spins in vertex order.
    pub fn spins(&self) -> &[i8] {
        &self.0
    }

    /// The globally flipped configuration `s ↦ -s`.
    pub fn flipped(&self) -> SpinAssignment {
        SpinAssignment(self.0.iter().map(|s| -s).collect())
    }
}

/// A weighted Ising model with per-vertex external fields.
///
/// Construction validates the vertex range, forbids self-loops and
/// duplicate edges, requires finite weights, and classifies the weights
/// (see [`WeightClass`]). Edges are kept in canonical sorted order with
/// `u < v`, and zero couplings are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingModel {
    n: usize,
    /// Canonically ordered couplings; keys satisfy `u < v`, values are
    /// finite and nonzero.
    couplings: BTreeMap<(usize, usize), f64>,
    fields: Vec<f64>,
    constant: f64,
    weight_class: WeightClass,
}

impl IsingModel {
    /// Builds a model from an edge list, per-vertex fields, and an additive
    /// constant.
    ///
    /// Edges may be given in either orientation; they are normalised to
    /// `u < v`. An edge weight of exactly zero is discarded. Duplicate
    /// edges (in any orientation) and self-loops are rejected, as are
    /// non-finite weights and a field vector whose length differs from `n`.
    ///
    /// # Examples
    ///
    /// ```
    /// use qaoa1::ising::{IsingModel, WeightClass};
    ///
    /// let m = IsingModel::new(2, vec![(0, 1, 1.0)], vec![0.0, 0.0], 0.0).unwrap();
    /// assert_eq!(m.n(), 2);
    /// assert_eq!(m.edge_count(), 1);
    /// assert_eq!(m.weight_class(), WeightClass::Integer { scale: 1 });
    /// ```
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
        fields: Vec<f64>,
        constant: f64,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("a model needs at least one vertex".into()));
        }
        if fields.len() != n {
            return Err(Error::Input(format!(
                "field vector has length {} but the model has {} vertices",
                fields.len(),
                n
            )));
        }
        for (i, h) in fields.iter().enumerate() {
            if !h.is_finite() {
                return Err(Error::Input(format!("field at vertex {i} is not finite")));
            }
        }
        if !constant.is_finite() {
            return Err(Error::Input("constant term is not finite".into()));
        }
        let mut couplings = BTreeMap::new();
        for (a, b, w) in edges {
            if a == b {
                return Err(Error::Input(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::Input(format!(
                    "edge ({a}, {b}) references a vertex outside 0..{n}"
                )));
            }
            if !w.is_finite() {
                return Err(Error::Input(format!(
                    "coupling on edge ({a}, {b}) is not finite"
                )));
            }
            let key = (a.min(b), a.max(b));
            if couplings.contains_key(&key) {
                return Err(Error::Input(format!(
                    "duplicate edge ({}, {})",
                    key.0, key.1
                )));
            }
            if w != 0.0 {
                couplings.insert(key, w);
            }
        }
        let weight_class = classify_weights(
            couplings.values().copied().chain(fields.iter().copied()),
        );
        Ok(IsingModel {
            n,
            couplings,
            fields,
            constant,
            weight_class,
        })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored (nonzero) edges.
    pub fn edge_count(&self) -> usize {
        self.couplings.len()
    }

    /// Iterates over edges in canonical order as `(u, v, J_uv)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.couplings.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    /// Coupling on `{u, v}` in either orientation; zero when absent.
    pub fn coupling(&self, u: usize, v: usize) -> f64 {
        if u == v {
            return 0.0;
        }
        let key = (u.min(v), u.max(v));
        self.couplings.get(&key).copied().unwrap_or(0.0)
    }

    /// External field at vertex `i`.
    pub fn field(&self, i: usize) -> f64 {
        self.fields[i]
    }

    /// All external fields in vertex order.
    pub fn fields(&self) -> &[f64] {
        &self.fields
    }

    /// True when at least one field is nonzero.
    pub fn has_fields(&self) -> bool {
        self.fields.iter().any(|&h| h != 0.0)
    }

    /// Additive constant of the energy.
    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// Weight classification (see [`WeightClass`]).
    pub fn weight_class(&self) -> WeightClass {
        self.weight_class
    }

    /// Total energy of a spin assignment, including the constant.
    ///
    /// # Examples
    ///
    /// ```
    /// use qaoa1::ising::{IsingModel, SpinAssignment};
    ///
    /// let m = IsingModel::new(2, vec![(0, 1, 1.0)], vec![0.5, 0.0], 2.0).unwrap();
    /// let s = SpinAssignment::new(vec![1, -1]).unwrap();
    /// // 1·1·(-1) + 0.5·1 + 2.0
    /// assert_eq!(m.energy(&s).unwrap(), 1.5);
    /// ```
    pub fn energy(&self, s: &SpinAssignment) -> Result<f64> {
        if s.len() != self.n {
            return Err(Error::Input(format!(
                "assignment has {} spins but the model has {} vertices",
                s.len(),
                self.n
            )));
        }
        let mut e = self.constant;
        for (&(u, v), &w) in &self.couplings {
            e += w * f64::from(s.spin(u) * s.spin(v));
        }
        for (i, &h) in self.fields.iter().enumerate() {
            e += h * f64::from(s.spin(i));
        }
        Ok(e)
    }
}

/// A quadratic binary optimisation problem `f(x) = xᵀ A x + bᵀ x` over
/// `x ∈ {0, 1}^n` with a symmetric coefficient matrix `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboModel {
    n: usize,
    /// Row-major symmetric matrix, `n × n`.
    a: Vec<f64>,
    b: Vec<f64>,
}

impl QuboModel {
    /// Builds a problem from a row-major symmetric matrix and a linear term.
    ///
    /// The matrix must be exactly symmetric (`a[i][j] == a[j][i]` as floats)
    /// and all entries finite.
    pub fn new(n: usize, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("a problem needs at least one variable".into()));
        }
        if a.len() != n * n {
            return Err(Error::Input(format!(
                "matrix has {} entries but an {n}×{n} problem needs {}",
                a.len(),
                n * n
            )));
        }
        if b.len() != n {
            return Err(Error::Input(format!(
                "linear term has length {} but the problem has {n} variables",
                b.len()
            )));
        }
        if a.iter().chain(b.iter()).any(|x| !x.is_finite()) {
            return Err(Error::Input("all coefficients must be finite".into()));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if a[i * n + j] != a[j * n + i] {
                    return Err(Error::Input(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(QuboModel { n, a, b })
    }

    /// Number of binary variables.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Matrix entry `A[i][j]`.
    pub fn a(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    /// Linear coefficient `b[i]`.
    pub fn b(&self, i: usize) -> f64 {
        self.b[i]
    }

    /// Objective value at a binary point.
    ///
    /// # Examples
    ///
    /// ```
    /// use qaoa1::ising::QuboModel;
    ///
    /// // f(x) = x0 x1  via A = [[0, 1/2], [1/2, 0]]
    /// let q = QuboModel::new(2, vec![0.0, 0.5, 0.5, 0.0], vec![0.0, 0.0]).unwrap();
    /// assert_eq!(q.objective(&[true, true]).unwrap(), 1.0);
    /// assert_eq!(q.objective(&[true, false]).unwrap(), 0.0);
    /// ```
    pub fn objective(&self, x: &[bool]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::Input(format!(
                "point has {} entries but the problem has {} variables",
                x.len(),
                self.n
            )));
        }
        let xf: Vec<f64> = x.iter().map(|&xi| if xi { 1.0 } else { 0.0 }).collect();
        let mut f = 0.0;
        for i in 0..self.n {
            let mut row = 0.0;
            for (j, &xj) in xf.iter().enumerate() {
                row += self.a(i, j) * xj;
            }
            f += xf[i] * row + self.b[i] * xf[i];
        }
        Ok(f)
    }
}

/// Converts a quadratic binary problem to the equivalent Ising model under
/// the variable change `x_i = (1 + s_i) / 2`.
///
/// The resulting model satisfies `energy(s) = objective(x)` exactly in
/// exact arithmetic: couplings become `(A_uv + A_vu) / 4` per unordered
/// pair, fields `h_j = b_j / 2 + Σ_k A_jk / 2`, and the constant absorbs
/// `Σ_{jk} A_jk / 4 + tr(A) / 4 + Σ_j b_j / 2`. Diagonal entries of `A`
/// contribute only to fields and constant because `s_j² = 1`.
///
/// # Examples
///
/// ```
/// use qaoa1::ising::{from_qubo, QuboModel, SpinAssignment};
///
/// let q = QuboModel::new(2, vec![0.0, 0.5, 0.5, 0.0], vec![0.0, 0.0]).unwrap();
/// let m = from_qubo(&q).unwrap();
/// // x = (1, 1) maps to s = (+1, +1)
/// let s = SpinAssignment::new(vec![1, 1]).unwrap();
/// assert_eq!(m.energy(&s).unwrap(), 1.0);
/// ```
pub fn from_qubo(q: &QuboModel) -> Result<IsingModel> {
    let n = q.n();
    let mut edges = Vec::new();
    let mut sum_a = 0.0;
    let mut trace = 0.0;
    let mut fields = vec![0.0; n];
    for (j, field) in fields.iter_mut().enumerate() {
        trace += q.a(j, j);
        let mut row = 0.0;
        for k in 0..n {
            row += q.a(j, k);
            sum_a += q.a(j, k);
        }
        *field = 0.5 * q.b(j) + 0.5 * row;
    }
    for u in 0..n {
        for v in (u + 1)..n {
            let w = 0.25 * (q.a(u, v) + q.a(v, u));
            if w != 0.0 {
                edges.push((u, v, w));
            }
        }
    }
    let sum_b: f64 = (0..n).map(|j| q.b(j)).sum();
    let constant = 0.25 * (sum_a + trace) + 0.5 * sum_b;
    IsingModel::new(n, edges, fields, constant)
}

/// Removes external fields by adding one ancilla vertex pinned to `+1`.
///
/// Every nonzero field `h_j` becomes a coupling of the same value between
/// vertex `j` and the new vertex `n`; the constant is unchanged. For any
/// assignment of the original model, extending it with `s_n = +1` gives
/// the same energy in the new model, while the global flip symmetry of the
/// field-free model makes the two ground energies equal. A model that
/// already has no fields is returned unchanged (no ancilla).
///
/// # Examples
///
/// ```
/// use qaoa1::ising::{eliminate_fields, IsingModel, SpinAssignment};
///
/// let m = IsingModel::new(2, vec![(0, 1, 1.0)], vec![0.5, 0.0], 0.0).unwrap();
/// let g = eliminate_fields(&m);
/// assert_eq!(g.n(), 3);
/// assert!(!g.has_fields());
/// let s = SpinAssignment::new(vec![1, -1]).unwrap();
/// let t = SpinAssignment::new(vec![1, -1, 1]).unwrap();
/// assert_eq!(m.energy(&s).unwrap(), g.energy(&t).unwrap());
/// ```
pub fn eliminate_fields(model: &IsingModel) -> IsingModel {
    if !model.has_fields() {
        return model.clone();
    }
    let n = model.n();
    let mut edges: Vec<(usize, usize, f64)> = model.edges().collect();
    for j in 0..n {
        let h = model.field(j);
        if h != 0.0 {
            edges.push((j, n, h));
        }
    }
    IsingModel::new(n + 1, edges, vec![0.0; n + 1], model.constant())
        .expect("field elimination preserves validity")
}

/// Classifies an iterator of weights (see [`WeightClass`]).
fn classify_weights(weights: impl Iterator<Item = f64>) -> WeightClass {
    let mut scale: u64 = 1;
    let mut seen = Vec::new();
    for w in weights {
        seen.push(w);
        let q = match smallest_denominator(w, MAX_RATIONAL_SCALE) {
            Some(q) => q,
            None => return WeightClass::Real,
        };
        scale = match lcm(scale, q) {
            Some(s) if s <= MAX_RATIONAL_SCALE => s,
            _ => return WeightClass::Real,
        };
    }
    // The least common multiple of per-weight denominators must still
    // round-trip each weight exactly; rounding in the division can in
    // principle spoil a multiple, so verify before committing.
    for w in seen {
        if !round_trips(w, scale) {
            return WeightClass::Real;
        }
    }
    WeightClass::Integer { scale }
}

/// True when `w` equals `round(w · q) / q` exactly in floating point.
fn round_trips(w: f64, q: u64) -> bool {
    let scaled = (w * q as f64).round();
    scaled.abs() <= 2f64.powi(62) && scaled / q as f64 == w
}

/// Smallest positive `q ≤ cap` such that `w` round-trips through `q`
/// (continued-fraction search), or `None`.
fn smallest_denominator(w: f64, cap: u64) -> Option<u64> {
    if !w.is_finite() {
        return None;
    }
    if w == 0.0 {
        return Some(1);
    }
    let x = w.abs();
    // Convergent denominators of the continued fraction of x are the
    // canonical candidates for a minimal denominator.
    let (mut q0, mut q1) = (0u64, 1u64);
    let mut frac = x.fract();
    loop {
        if q1 > cap {
            return None;
        }
        if round_trips(w, q1) {
            return Some(q1);
        }
        if frac == 0.0 {
            return None;
        }
        let r = 1.0 / frac;
        if !r.is_finite() || r >= 2f64.powi(62) {
            return None;
        }
        let a = r.floor();
        frac = r - a;
        let next = (a as u64).checked_mul(q1)?.checked_add(q0)?;
        q0 = q1;
        q1 = next;
    }
}

/// Least common multiple with overflow checking.
fn lcm(a: u64, b: u64) -> Option<u64> {
    (a / gcd(a, b)).checked_mul(b)
}

/// Greatest common divisor (Euclid).
fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}
