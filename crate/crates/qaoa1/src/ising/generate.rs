//! Seeded random instance generators.
//!
//! Both graph families draw weights from a [`WeightDist`]; sampled zeros
//! are rejected and redrawn so the stored edge set always equals the
//! combinatorial graph. All generators are deterministic in the seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::ising::model::IsingModel;

/// Maximum consecutive zero draws tolerated before giving up on a
/// distribution that cannot produce a nonzero weight.
const ZERO_REDRAW_CAP: u32 = 1000;

/// Maximum attempts to realise a simple D-regular graph by stub pairing.
const PAIRING_RETRY_CAP: u32 = 1000;

/// Weight distribution for couplings and fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightDist {
    /// Normal with the given mean and variance, rounded to the nearest
    /// integer; zero is redrawn.
    GaussianRounded {
        /// Mean of the underlying normal.
        mean: f64,
        /// Variance (not standard deviation) of the underlying normal.
        var: f64,
    },
    /// Uniform over the integers `lo..=hi`; zero is redrawn.
    UniformInt {
        /// Inclusive lower bound.
        lo: i64,
        /// Inclusive upper bound.
        hi: i64,
    },
    /// Uniform over `{-1, +1}`.
    PmOne,
}

impl WeightDist {
    fn validate(&self) -> Result<()> {
        match *self {
            WeightDist::GaussianRounded { mean, var } => {
                if !mean.is_finite() || !var.is_finite() || var < 0.0 {
                    return Err(Error::Input(format!(
                        "gaussian weight distribution needs finite mean and nonnegative \
                         variance, got mean {mean}, variance {var}"
                    )));
                }
            }
            WeightDist::UniformInt { lo, hi } => {
                if lo > hi {
                    return Err(Error::Input(format!(
                        "uniform integer range [{lo}, {hi}] is empty"
                    )));
                }
                if lo == 0 && hi == 0 {
                    return Err(Error::Input(
                        "uniform integer range [0, 0] cannot produce a nonzero weight".into(),
                    ));
                }
            }
            WeightDist::PmOne => {}
        }
        Ok(())
    }

    /// Draws one nonzero weight.
    fn sample<R: Rng>(&self, rng: &mut R) -> Result<f64> {
        for _ in 0..ZERO_REDRAW_CAP {
            let w = match *self {
                WeightDist::GaussianRounded { mean, var } => {
                    let normal = Normal::new(mean, var.sqrt())
                        .map_err(|e| Error::Input(format!("invalid gaussian: {e}")))?;
                    normal.sample(rng).round()
                }
                WeightDist::UniformInt { lo, hi } => rng.random_range(lo..=hi) as f64,
                WeightDist::PmOne => {
                    if rng.random_bool(0.5) {
                        1.0
                    } else {
                        -1.0
                    }
                }
            };
            if w != 0.0 {
                return Ok(w);
            }
        }
        Err(Error::Input(format!(
            "weight distribution produced {ZERO_REDRAW_CAP} consecutive zeros"
        )))
    }
}

/// Generates an Erdős–Rényi model: each of the `n·(n-1)/2` possible edges
/// is included independently with probability `p` and given a weight drawn
/// from `dist`. Fields are zero and the constant is zero.
///
/// # Examples
///
/// ```
/// use qaoa1::ising::{generate_erdos_renyi, WeightDist};
///
/// let dist = WeightDist::UniformInt { lo: -5, hi: 5 };
/// let a = generate_erdos_renyi(10, 0.5, &dist, 7).unwrap();
/// let b = generate_erdos_renyi(10, 0.5, &dist, 7).unwrap();
/// assert_eq!(a, b);
/// assert_eq!(generate_erdos_renyi(4, 1.0, &dist, 0).unwrap().edge_count(), 6);
/// assert_eq!(generate_erdos_renyi(4, 0.0, &dist, 0).unwrap().edge_count(), 0);
/// ```
pub fn generate_erdos_renyi(
    n: usize,
    p: f64,
    dist: &WeightDist,
    seed: u64,
) -> Result<IsingModel> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Input(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    dist.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                edges.push((u, v, dist.sample(&mut rng)?));
            }
        }
    }
    IsingModel::new(n, edges, vec![0.0; n], 0.0)
}

/// Generates a simple D-regular model via the pairing (configuration)
/// model: D stubs per vertex are shuffled and matched, and pairings with
/// self-loops or repeated edges are rejected and retried (up to 1000
/// times). Weights are drawn from `dist` in canonical edge order after a
/// simple pairing is found.
///
/// # Examples
///
/// ```
/// use qaoa1::ising::{generate_d_regular, WeightDist};
///
/// let m = generate_d_regular(4, 3, &WeightDist::PmOne, 1).unwrap();
/// assert_eq!(m.edge_count(), 6); // the only 3-regular graph on 4 vertices is K₄
/// assert!(generate_d_regular(5, 3, &WeightDist::PmOne, 1).is_err()); // n·D odd
/// ```
pub fn generate_d_regular(
    n: usize,
    d: usize,
    dist: &WeightDist,
    seed: u64,
) -> Result<IsingModel> {
    if n == 0 {
        return Err(Error::Input("a model needs at least one vertex".into()));
    }
    if d >= n {
        return Err(Error::Input(format!(
            "degree {d} is infeasible on {n} vertices"
        )));
    }
    if n % 2 == 1 && d % 2 == 1 {
        return Err(Error::Input(format!(
            "no {d}-regular graph exists on {n} vertices (odd stub total)"
        )));
    }
    dist.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut edge_keys: Option<Vec<(usize, usize)>> = None;
    for _ in 0..PAIRING_RETRY_CAP {
        stubs.shuffle(&mut rng);
        let mut keys = Vec::with_capacity(stubs.len() / 2);
        let mut simple = true;
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0], pair[1]);
            if a == b {
                simple = false;
                break;
            }
            keys.push((a.min(b), a.max(b)));
        }
        if simple {
            keys.sort_unstable();
            if keys.windows(2).all(|w| w[0] != w[1]) {
                edge_keys = Some(keys);
                break;
            }
        }
    }
    let Some(keys) = edge_keys else {
        return Err(Error::Input(format!(
            "could not realise a simple {d}-regular graph on {n} vertices \
             in {PAIRING_RETRY_CAP} pairing attempts"
        )));
    };
    let mut edges = Vec::with_capacity(keys.len());
    for (u, v) in keys {
        edges.push((u, v, dist.sample(&mut rng)?));
    }
    IsingModel::new(n, edges, vec![0.0; n], 0.0)
}

/// Returns a copy of `model` whose fields are all redrawn (nonzero) from
/// `dist`, leaving couplings and constant untouched.
///
/// # Examples
///
/// ```
/// use qaoa1::ising::{generate_erdos_renyi, with_random_fields, WeightDist};
///
/// let dist = WeightDist::UniformInt { lo: -3, hi: 3 };
/// let m = generate_erdos_renyi(6, 0.5, &dist, 2).unwrap();
/// let f = with_random_fields(&m, &dist, 3).unwrap();
/// assert!(f.has_fields());
/// assert_eq!(f.edge_count(), m.edge_count());
/// ```
pub fn with_random_fields(
    model: &IsingModel,
    dist: &WeightDist,
    seed: u64,
) -> Result<IsingModel> {
    dist.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fields = Vec::with_capacity(model.n());
    for _ in 0..model.n() {
        fields.push(dist.sample(&mut rng)?);
    }
    IsingModel::new(model.n(), model.edges(), fields, model.constant())
}
