//! Ising models, QUBO problems, transforms, random generators, and file I/O.

mod format;
mod generate;
mod model;

pub use format::{load_model, parse, save, save_model};
pub use generate::{generate_d_regular, generate_erdos_renyi, with_random_fields, WeightDist};
pub use model::{eliminate_fields, from_qubo, IsingModel, QuboModel, SpinAssignment, WeightClass};
