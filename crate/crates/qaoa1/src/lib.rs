//! Analytic level-1 QAOA for weighted Ising models.
//!
//! The crate evaluates the depth-1 QAOA energy expectation of an Ising
//! model in closed form (linear time in the number of edges instead of
//! exponential statevector simulation), bounds the γ-landscape's angular
//! frequency content to derive Nyquist-safe sampling plans, eliminates the
//! mixing angle β analytically, and finds near-optimal parameters by
//! subdivision search, local descent, or exhaustive line search. On top of
//! these primitives it implements recursive solvers that round correlators
//! to spin assignments, plus brute-force and statevector oracles used for
//! self-verification.
//!
//! # Quick start
//!
//! ```
//! use qaoa1::analytic::{build_index, NeighborhoodIndex};
//! use qaoa1::ising::IsingModel;
//! use qaoa1::optimize::{line_search, FieldMode};
//!
//! // A single antiferromagnetic edge: the optimum value is -1.
//! let m = IsingModel::new(2, vec![(0, 1, 1.0)], vec![0.0, 0.0], 0.0).unwrap();
//! let index = build_index(&m);
//! let best = line_search(&m, &index, true).unwrap();
//! assert!((best.value - (-1.0)).abs() < 1e-9);
//! ```

pub mod analytic;
pub mod error;
pub mod ising;
pub mod optimize;
pub mod oracle;
pub mod recursive;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
