//! Closed-form evaluation of the depth-1 expectation value and of the
//! univariate coefficient functions A(γ), B(γ), C(γ).
//!
//! The depth-1 expectation of a weighted Ising model decomposes into one
//! closed term per vertex and per edge. Writing 𝒩 for neighbourhoods and,
//! for an edge `{u, v}`, `e = 𝒩(v)∖{u}`, `d = 𝒩(u)∖{v}`, `F = 𝒩(u)∩𝒩(v)`,
//! with phase arguments `γ′_uv = 2 J_uv γ` and `γ′_i = 2 h_i γ`:
//!
//! ```text
//! ⟨C_i⟩  = h_i sin 2β · sin γ′_i · Π_{k∈𝒩(i)} cos γ′_ik
//!
//! ⟨C_uv⟩ = (J_uv/2) sin 4β · sin γ′_uv · (cos γ′_v Π_{w∈e} cos γ′_wv
//!                                        + cos γ′_u Π_{w∈d} cos γ′_uw)
//!        − (J_uv/2) sin²2β · Π_{w∈e∖F} cos γ′_wv · Π_{w∈d∖F} cos γ′_uw
//!            · [ cos(γ′_u + γ′_v) Π_{f∈F} cos(γ′_uf + γ′_vf)
//!              − cos(γ′_u − γ′_v) Π_{f∈F} cos(γ′_uf − γ′_vf) ]
//!
//! ⟨H_P⟩  = Σ_{u<v} ⟨C_uv⟩ + Σ_i ⟨C_i⟩
//! ```
//!
//! Collecting β factors yields `⟨H⟩ = A sin 2β + B sin 4β + C sin²2β` with
//! γ-only coefficients. In the field-free case the single-site terms and
//! the `cos γ′` field factors drop out and the conventional grouping is
//! `⟨H⟩ = A sin 4β − B sin²2β` (see [`coefficients_field_free`]).
//!
//! Evaluation cost is `O(|V| + |E| + Σ_edges |F_uv|)` per γ after a
//! one-time [`NeighborhoodIndex`] build: per-vertex cosine products are
//! aggregated once and per-edge products obtained by dividing out single
//! factors, with exact zeros tracked by count so the division never
//! faults. (Log-space accumulation would be an alternative only when all
//! factors are bounded away from zero; cosines are not, so direct
//! multiplication with zero tracking is used throughout.)

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ising::IsingModel;

/// A depth-1 parameter pair. Both angles are unbounded finite reals: every
/// formula is π-periodic in β, and γ-periodicity depends on the weight
/// class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QaoaAngles {
    /// Phase angle γ.
    pub gamma: f64,
    /// Mixing angle β.
    pub beta: f64,
}

/// Values of the univariate coefficient functions at one γ.
///
/// With external fields the expectation is
/// `⟨H⟩ = a·sin 2β + b·sin 4β + c·sin²2β + constant`.
/// In the field-free grouping (see [`coefficients_field_free`]) it is
/// `⟨H⟩ = a·sin 4β − b·sin²2β + constant` and `c` is zero and unused.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientTriple {
    /// Coefficient of sin 2β (with fields) or of sin 4β (field-free).
    pub a: f64,
    /// Coefficient of sin 4β (with fields) or of −sin²2β (field-free).
    pub b: f64,
    /// Coefficient of sin²2β (with fields); zero in the field-free case.
    pub c: f64,
}

/// Precomputed neighbourhood structure of a model's interaction graph.
///
/// Stores sorted adjacency lists, an interned table of distinct weight
/// values (couplings and fields), and per-edge records of the shared
/// neighbourhood `F_uv` with the value indices of both incident couplings.
/// The one-sided sets `e_uv = 𝒩(v)∖{u}` and `d_uv = 𝒩(u)∖{v}` are
/// represented implicitly through the adjacency lists (materialising them
/// per edge would need quadratic memory on dense graphs); [`Self::edge_sets`]
/// builds them on demand.
#[derive(Debug, Clone)]
pub struct NeighborhoodIndex {
    neighbors: Vec<Vec<usize>>,
    /// Distinct weight values in first-interned order.
    values: Vec<f64>,
    /// Per vertex: index into `values` of the field h_i.
    field_value: Vec<u32>,
    /// Per vertex: index into `values` of J_ik, aligned with `neighbors`.
    incident_value: Vec<Vec<u32>>,
    edges: Vec<EdgeEntry>,
}

/// Per-edge record: endpoints, coupling value index, and the shared
/// neighbourhood with both coupling value indices per shared vertex.
#[derive(Debug, Clone)]
pub(crate) struct EdgeEntry {
    pub(crate) u: usize,
    pub(crate) v: usize,
    /// Index into the value table of J_uv.
    pub(crate) j: u32,
    /// `(f, index of J_uf, index of J_vf)` for f ∈ F_uv, ascending in f.
    pub(crate) shared: Vec<(usize, u32, u32)>,
}

/// Interns f64 values by bit pattern so repeated weights share one trig
/// evaluation per γ.
struct Interner {
    values: Vec<f64>,
    ids: HashMap<u64, u32>,
}

impl Interner {
    fn new() -> Self {
        Interner {
            values: Vec::new(),
            ids: HashMap::new(),
        }
    }

    fn intern(&mut self, w: f64) -> u32 {
        if let Some(&id) = self.ids.get(&w.to_bits()) {
            return id;
        }
        let id = self.values.len() as u32;
        self.values.push(w);
        self.ids.insert(w.to_bits(), id);
        id
    }
}

/// Builds the neighbourhood index of a model.
///
/// # Examples
///
/// ```
/// use qaoa1::analytic::build_index;
/// use qaoa1::ising::IsingModel;
///
/// // Triangle: for any edge, the third vertex is shared.
/// let k3 = IsingModel::new(3, vec![(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)],
///                          vec![0.0; 3], 0.0).unwrap();
/// let idx = build_index(&k3);
/// let (e, d, f) = idx.edge_sets(0); // edge (0, 1)
/// assert_eq!(e, vec![2]);
/// assert_eq!(d, vec![2]);
/// assert_eq!(f, vec![2]);
/// ```
pub fn build_index(model: &IsingModel) -> NeighborhoodIndex {
    let n = model.n();
    let mut interner = Interner::new();
    let field_value: Vec<u32> = (0..n).map(|i| interner.intern(model.field(i))).collect();

    let mut adjacency: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    for (u, v, w) in model.edges() {
        let id = interner.intern(w);
        adjacency[u].push((v, id));
        adjacency[v].push((u, id));
    }
    for list in &mut adjacency {
        list.sort_unstable_by_key(|&(k, _)| k);
    }

    let edges = model
        .edges()
        .map(|(u, v, w)| {
            let j = interner.intern(w);
            // Two-pointer intersection of the sorted adjacency lists.
            let (au, av) = (&adjacency[u], &adjacency[v]);
            let mut shared = Vec::new();
            let (mut i, mut k) = (0, 0);
            while i < au.len() && k < av.len() {
                let (fu, ju) = au[i];
                let (fv, jv) = av[k];
                match fu.cmp(&fv) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => k += 1,
                    std::cmp::Ordering::Equal => {
                        shared.push((fu, ju, jv));
                        i += 1;
                        k += 1;
                    }
                }
            }
            EdgeEntry { u, v, j, shared }
        })
        .collect();

    let mut neighbors = Vec::with_capacity(n);
    let mut incident_value = Vec::with_capacity(n);
    for list in adjacency {
        neighbors.push(list.iter().map(|&(k, _)| k).collect());
        incident_value.push(list.iter().map(|&(_, id)| id).collect());
    }

    NeighborhoodIndex {
        neighbors,
        values: interner.values,
        field_value,
        incident_value,
        edges,
    }
}

impl NeighborhoodIndex {
    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.neighbors.len()
    }

    /// Number of edges, in the model's canonical order.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted neighbours of vertex `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    /// Endpoints `(u, v)` of the `k`-th edge, `u < v`.
    pub fn edge_endpoints(&self, k: usize) -> (usize, usize) {
        (self.edges[k].u, self.edges[k].v)
    }

    /// Shared neighbourhood `F_uv` of the `k`-th edge, ascending.
    pub fn shared_neighbors(&self, k: usize) -> Vec<usize> {
        self.edges[k].shared.iter().map(|&(f, _, _)| f).collect()
    }

    /// The sets `(e_uv, d_uv, F_uv)` of the `k`-th edge, each ascending:
    /// `e = 𝒩(v)∖{u}`, `d = 𝒩(u)∖{v}`, `F = 𝒩(u)∩𝒩(v)`.
    pub fn edge_sets(&self, k: usize) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let (u, v) = self.edge_endpoints(k);
        let e = self.neighbors[v].iter().copied().filter(|&w| w != u).collect();
        let d = self.neighbors[u].iter().copied().filter(|&w| w != v).collect();
        (e, d, self.shared_neighbors(k))
    }

    pub(crate) fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn edge_entries(&self) -> &[EdgeEntry] {
        &self.edges
    }

    pub(crate) fn field_value_index(&self, i: usize) -> u32 {
        self.field_value[i]
    }

    pub(crate) fn incident_value_indices(&self, i: usize) -> &[u32] {
        &self.incident_value[i]
    }
}

/// A running product that tracks exact-zero factors by count, so that
/// removing a factor by division is always safe.
#[derive(Debug, Clone, Copy)]
struct Prod {
    nz: f64,
    zeros: u32,
}

impl Prod {
    const ONE: Prod = Prod { nz: 1.0, zeros: 0 };

    fn mul(mut self, f: f64) -> Prod {
        if f == 0.0 {
            self.zeros += 1;
        } else {
            self.nz *= f;
        }
        self
    }

    /// Removes a factor previously multiplied in.
    fn div(mut self, f: f64) -> Prod {
        if f == 0.0 {
            self.zeros -= 1;
        } else {
            self.nz /= f;
        }
        self
    }

    fn value(self) -> f64 {
        if self.zeros == 0 {
            self.nz
        } else {
            0.0
        }
    }
}

/// Reusable evaluation state for one `(model, index)` pair.
///
/// Holds the per-γ trigonometric table (one `cos(2wγ)`/`sin(2wγ)` pair per
/// distinct weight value) and per-vertex cosine aggregates. Reusing an
/// `Evaluator` across many γ values avoids reallocating these buffers in
/// optimizer and sampling loops; the free functions of this module are
/// convenience wrappers that build a throwaway instance.
pub struct Evaluator<'m> {
    model: &'m IsingModel,
    index: &'m NeighborhoodIndex,
    cos: Vec<f64>,
    sin: Vec<f64>,
    agg: Vec<Prod>,
}

impl<'m> Evaluator<'m> {
    /// Creates an evaluator. `index` must have been built from `model`.
    pub fn new(model: &'m IsingModel, index: &'m NeighborhoodIndex) -> Evaluator<'m> {
        debug_assert_eq!(model.n(), index.vertex_count());
        debug_assert_eq!(model.edge_count(), index.edge_count());
        Evaluator {
            model,
            index,
            cos: vec![0.0; index.values.len()],
            sin: vec![0.0; index.values.len()],
            agg: vec![Prod::ONE; index.vertex_count()],
        }
    }

    /// Fills the trig table and vertex aggregates for one γ.
    fn prepare(&mut self, gamma: f64) {
        for (k, &w) in self.index.values.iter().enumerate() {
            let (s, c) = (2.0 * w * gamma).sin_cos();
            self.sin[k] = s;
            self.cos[k] = c;
        }
        for (i, agg) in self.agg.iter_mut().enumerate() {
            let mut p = Prod::ONE;
            for &id in &self.index.incident_value[i] {
                p = p.mul(self.cos[id as usize]);
            }
            *agg = p;
        }
    }

    /// Unit single-site term `sin γ′_i · Π_{k∈𝒩(i)} cos γ′_ik`;
    /// `⟨C_i⟩ = h_i sin 2β ·` this.
    fn vertex_unit(&self, i: usize) -> f64 {
        self.sin[self.index.field_value[i] as usize] * self.agg[i].value()
    }

    /// Unit edge terms `(t_b, t_c)` with
    /// `⟨C_uv⟩ = J_uv (t_b sin 4β + t_c sin²2β)`.
    fn edge_units(&self, entry: &EdgeEntry) -> (f64, f64) {
        let cj = self.cos[entry.j as usize];
        let sj = self.sin[entry.j as usize];
        let fu = self.index.field_value[entry.u] as usize;
        let fv = self.index.field_value[entry.v] as usize;
        let (ch_u, sh_u) = (self.cos[fu], self.sin[fu]);
        let (ch_v, sh_v) = (self.cos[fv], self.sin[fv]);

        let pe = self.agg[entry.v].div(cj);
        let pd = self.agg[entry.u].div(cj);
        let t_b = 0.5 * sj * (ch_v * pe.value() + ch_u * pd.value());

        let mut pe_no_f = pe;
        let mut pd_no_f = pd;
        let mut prod_plus = 1.0;
        let mut prod_minus = 1.0;
        for &(_, ju, jv) in &entry.shared {
            let (cu, su) = (self.cos[ju as usize], self.sin[ju as usize]);
            let (cv, sv) = (self.cos[jv as usize], self.sin[jv as usize]);
            pe_no_f = pe_no_f.div(cv);
            pd_no_f = pd_no_f.div(cu);
            // cos(γ′_uf ± γ′_vf) by the angle-addition identities.
            prod_plus *= cu * cv - su * sv;
            prod_minus *= cu * cv + su * sv;
        }
        let cos_sum = ch_u * ch_v - sh_u * sh_v;
        let cos_diff = ch_u * ch_v + sh_u * sh_v;
        let bracket = cos_sum * prod_plus - cos_diff * prod_minus;
        let t_c = -0.5 * pe_no_f.value() * pd_no_f.value() * bracket;
        (t_b, t_c)
    }

    fn ensure_field_free(&self) -> Result<()> {
        if self.model.has_fields() {
            return Err(Error::Input(
                "model has a nonzero external field; use the with-fields evaluator".into(),
            ));
        }
        Ok(())
    }

    /// Expectation `⟨H⟩(γ, β) + constant` for a model with (possibly zero)
    /// external fields, assembled term by term.
    pub fn expectation_with_fields(&mut self, angles: QaoaAngles) -> f64 {
        self.prepare(angles.gamma);
        let sin2b = (2.0 * angles.beta).sin();
        let sin4b = (4.0 * angles.beta).sin();
        let sin2b_sq = sin2b * sin2b;
        let mut total = self.model.constant();
        for i in 0..self.model.n() {
            let h = self.model.field(i);
            if h != 0.0 {
                total += h * sin2b * self.vertex_unit(i);
            }
        }
        for entry in &self.index.edges {
            let (t_b, t_c) = self.edge_units(entry);
            let j = self.index.values[entry.j as usize];
            total += j * (t_b * sin4b + t_c * sin2b_sq);
        }
        total
    }

    /// Expectation `⟨H⟩(γ, β) + constant` for a field-free model.
    pub fn expectation_field_free(&mut self, angles: QaoaAngles) -> Result<f64> {
        self.ensure_field_free()?;
        self.prepare(angles.gamma);
        let sin4b = (4.0 * angles.beta).sin();
        let sin2b = (2.0 * angles.beta).sin();
        let sin2b_sq = sin2b * sin2b;
        let mut total = self.model.constant();
        for entry in &self.index.edges {
            let (t_b, t_c) = self.edge_units(entry);
            let j = self.index.values[entry.j as usize];
            total += j * (t_b * sin4b + t_c * sin2b_sq);
        }
        Ok(total)
    }

    /// Coefficients `(A, B, C)` with
    /// `⟨H⟩ = A sin 2β + B sin 4β + C sin²2β + constant`.
    pub fn coefficients_with_fields(&mut self, gamma: f64) -> CoefficientTriple {
        self.prepare(gamma);
        let mut a = 0.0;
        for i in 0..self.model.n() {
            let h = self.model.field(i);
            if h != 0.0 {
                a += h * self.vertex_unit(i);
            }
        }
        let mut b = 0.0;
        let mut c = 0.0;
        for entry in &self.index.edges {
            let (t_b, t_c) = self.edge_units(entry);
            let j = self.index.values[entry.j as usize];
            b += j * t_b;
            c += j * t_c;
        }
        CoefficientTriple { a, b, c }
    }

    /// Coefficients `(A, B, 0)` of the field-free grouping
    /// `⟨H⟩ = A sin 4β − B sin²2β + constant`.
    pub fn coefficients_field_free(&mut self, gamma: f64) -> Result<CoefficientTriple> {
        self.ensure_field_free()?;
        self.prepare(gamma);
        let mut a = 0.0;
        let mut b = 0.0;
        for entry in &self.index.edges {
            let (t_b, t_c) = self.edge_units(entry);
            let j = self.index.values[entry.j as usize];
            a += j * t_b;
            b -= j * t_c;
        }
        Ok(CoefficientTriple { a, b, c: 0.0 })
    }

    /// Unit correlator terms at one γ: per-vertex
    /// `t_a(i) = sin γ′_i Π cos γ′_ik` (so `⟨Z_i⟩ = sin 2β · t_a`) and
    /// per-edge `(t_b, t_c)` (so `⟨Z_u Z_v⟩ = t_b sin 4β + t_c sin²2β`),
    /// in vertex and canonical edge order.
    pub(crate) fn correlator_units(&mut self, gamma: f64) -> (Vec<f64>, Vec<(f64, f64)>) {
        self.prepare(gamma);
        let vertex: Vec<f64> = (0..self.model.n()).map(|i| self.vertex_unit(i)).collect();
        let edge: Vec<(f64, f64)> = self
            .index
            .edges
            .iter()
            .map(|entry| self.edge_units(entry))
            .collect();
        (vertex, edge)
    }
}

/// Expectation `⟨H⟩(γ, β) + constant` of a model with external fields.
///
/// # Examples
///
/// ```
/// use qaoa1::analytic::{build_index, expectation_with_fields, QaoaAngles};
/// use qaoa1::ising::IsingModel;
///
/// // Single spin with h = 1: ⟨H⟩ = sin 2β sin 2γ = 1 at (π/4, π/4).
/// let m = IsingModel::new(1, vec![], vec![1.0], 0.0).unwrap();
/// let idx = build_index(&m);
/// let pi4 = std::f64::consts::FRAC_PI_4;
/// let e = expectation_with_fields(&m, &idx, QaoaAngles { gamma: pi4, beta: pi4 });
/// assert!((e - 1.0).abs() < 1e-15);
/// ```
pub fn expectation_with_fields(
    model: &IsingModel,
    index: &NeighborhoodIndex,
    angles: QaoaAngles,
) -> f64 {
    Evaluator::new(model, index).expectation_with_fields(angles)
}

/// Expectation `⟨H⟩(γ, β) + constant` of a field-free model; errors if any
/// field is nonzero.
///
/// # Examples
///
/// ```
/// use qaoa1::analytic::{build_index, expectation_field_free, QaoaAngles};
/// use qaoa1::ising::IsingModel;
///
/// // Single edge J = 1: ⟨H⟩ = sin 4β sin 2γ = -1 at (π/4, 3π/8).
/// let m = IsingModel::new(2, vec![(0, 1, 1.0)], vec![0.0, 0.0], 0.0).unwrap();
/// let idx = build_index(&m);
/// let angles = QaoaAngles {
///     gamma: std::f64::consts::FRAC_PI_4,
///     beta: 3.0 * std::f64::consts::FRAC_PI_8,
/// };
/// let e = expectation_field_free(&m, &idx, angles).unwrap();
/// assert!((e - (-1.0)).abs() < 1e-15);
/// ```
pub fn expectation_field_free(
    model: &IsingModel,
    index: &NeighborhoodIndex,
    angles: QaoaAngles,
) -> Result<f64> {
    Evaluator::new(model, index).expectation_field_free(angles)
}

/// Field-free coefficients `(A, B, 0)` with
/// `⟨H⟩ = A sin 4β − B sin²2β + constant`; errors if any field is nonzero.
pub fn coefficients_field_free(
    model: &IsingModel,
    index: &NeighborhoodIndex,
    gamma: f64,
) -> Result<CoefficientTriple> {
    Evaluator::new(model, index).coefficients_field_free(gamma)
}

/// With-fields coefficients `(A, B, C)` with
/// `⟨H⟩ = A sin 2β + B sin 4β + C sin²2β + constant`.
pub fn coefficients_with_fields(
    model: &IsingModel,
    index: &NeighborhoodIndex,
    gamma: f64,
) -> CoefficientTriple {
    Evaluator::new(model, index).coefficients_with_fields(gamma)
}
