//! Transfer matrices, Bogoliubov coefficients and rigorous bounds for the
//! parametric oscillator `φ̈ + ω²(t)φ = 0`.
//!
//! The same machinery answers one-dimensional scattering questions: replace
//! time by position and ω² by `k² = 2m(E − V)/ħ²`.

// NaN must fail these range checks, and the quadrature nodes are quoted
// to their published precision.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bogoliubov;
pub mod bounds;
pub mod interaction;
pub mod interp;
pub mod probe_optimizer;
pub mod profiles;
pub mod propagator;
pub mod quadrature;
pub mod verify;

pub use bogoliubov::{extract, normalization_residual, scattering, BogoliubovCoefficients, ScatteringCoefficients};
pub use bounds::{
    elementary_bound, interpolating_bound, lower_bound_beta, probe_bound, triangle_bound, BoundKind, BoundReport,
    LowerBound,
};
pub use interaction::{
    compose, compose_coefficients, composition_bounds, evolve_delta, split, PhaseStrippedPair, ProfileSplit,
};
pub use probe_optimizer::{
    action, optimality_diagnostics, optimize_probe, OptimizedProbe, OptimizerConfig, OptimizerDiagnostics,
    ProbeFunction,
};
pub use profiles::{make_profile, FrequencyProfile, ProfileKind, ProfileSpec, Support};
pub use propagator::{evolve, Evolution, SolverConfig, StateVector, TransferMatrix};
pub use quadrature::QuadConfig;
