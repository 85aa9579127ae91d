//! Identification of fractional-order processes `1/(a1 s^α + a2 s^β + a3)`
//! from sampled unit-step responses.
//!
//! The pieces, bottom-up:
//!
//! - [`gl`]: Grünwald–Letnikov weights and differintegrals of sampled signals.
//! - [`sim`]: step-response simulation of the three-term model.
//! - [`identify`]: the three all-integral equations in `(a1, a2, a3)` and their
//!   solution for fixed `(α, β)`.
//! - [`noise`]: reproducible uniform measurement noise.
//! - [`search`]: uniform-grid and buffered-refinement searches over `(α, β)`.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gl;
pub mod grid;
pub mod identify;
pub mod noise;
pub mod search;
pub mod sim;

pub use error::{Error, Result};
pub use gl::{differintegrate_at_end, differintegrate_series, gl_weights, WeightSequence};
pub use grid::{SamplingGrid, Signal};
pub use identify::{
    build_equations, identify_fixed_powers, integral_order_shift, solve_coefficients, EquationSystem,
    IdentificationResult,
};
pub use noise::{attenuation_table, corrupt, uniform_noise, NoiseSpec};
pub use search::{
    algorithm1, algorithm2, early_abandon_sweep, fitness, grid_nominals, Execution, PowerRange,
    RankedCandidate, RefinementSchedule, SearchProblem,
};
pub use sim::{simulate_response, step_response, unit_step, FractionalModel};
