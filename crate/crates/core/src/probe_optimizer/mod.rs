//! Variational tightening of the probe bound.
//!
//! With Ω = ω₀e^θ the probe integrand becomes the Lagrangian
//! `L = √(θ̇² + V²)`, `V = ω₀(e^θ − (ω²/ω₀²)e^{−θ})`, and the bound exponent
//! is the action `S = ∫L dt`. Any admissible θ yields a valid bound, so the
//! optimizer only has to produce a good feasible point.
//!
//! The discrete action uses `N` uniform cells: `θ̇` is the cell difference
//! quotient and θ, ω² are taken at the cell midpoint, so its gradient is
//! exact and descent is monotone.

mod lbfgs;
mod probe;

pub use lbfgs::{minimize, LbfgsConfig, Minimum};
pub use probe::{ProbeError, ProbeFunction, ENDPOINT_TOL, THETA_LIMIT};

use crate::bounds::{probe_bound, BoundError, BoundReport};
use crate::profiles::FrequencyProfile;
use crate::quadrature::{integrate, sign_changes, QuadConfig, QuadError};

/// Smallest accepted number of cells.
pub const MIN_NODES: usize = 16;

/// Cells used to diagnose probes that carry no node grid of their own.
pub const DIAGNOSTIC_CELLS: usize = 512;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OptimizerError {
    #[error("need at least {MIN_NODES} cells, got {0}")]
    NodeCountTooSmall(usize),
    #[error("optimizer stopped after {iterations} iterations with gradient {grad_inf:e}")]
    DidNotConverge { iterations: usize, grad_inf: f64 },
    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Probe(#[from] ProbeError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub max_iter: usize,
    /// Target for the infinity-norm of the discrete Euler–Lagrange residual.
    pub grad_tol: f64,
    pub memory: usize,
    pub armijo: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self { max_iter: 5000, grad_tol: 1e-6, memory: 10, armijo: 1e-4 }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<(), OptimizerError> {
        if self.max_iter == 0 {
            return Err(OptimizerError::InvalidConfig("max_iter must be positive".into()));
        }
        if !(self.grad_tol > 0.0 && self.grad_tol.is_finite()) {
            return Err(OptimizerError::InvalidConfig(format!("grad_tol {} must be > 0", self.grad_tol)));
        }
        if self.memory == 0 {
            return Err(OptimizerError::InvalidConfig("memory must be positive".into()));
        }
        if !(self.armijo > 0.0 && self.armijo < 0.5) {
            return Err(OptimizerError::InvalidConfig(format!("armijo {} outside (0, 0.5)", self.armijo)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerDiagnostics {
    /// Discrete action of the probe's node values.
    pub action_value: f64,
    pub el_residual_inf: f64,
    /// π = θ̇/L at `(t_i, t_f)`.
    pub endpoint_momentum: (f64, f64),
    /// H = −V²/L at `(t_i, t_f)`.
    pub endpoint_hamiltonian: (f64, f64),
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone)]
pub struct OptimizedProbe {
    pub probe: ProbeFunction,
    pub report: BoundReport,
    pub diagnostics: OptimizerDiagnostics,
    /// Discrete action after every accepted iteration.
    pub history: Vec<f64>,
    /// Label of the ε-family member the descent started from.
    pub initial: String,
}

impl OptimizedProbe {
    pub fn require_converged(self) -> Result<Self, OptimizerError> {
        if self.diagnostics.converged {
            Ok(self)
        } else {
            Err(OptimizerError::DidNotConverge {
                iterations: self.diagnostics.iterations,
                grad_inf: self.diagnostics.el_residual_inf,
            })
        }
    }
}

/// Uniform cell grid with ω²/ω₀² sampled at the cell midpoints.
#[derive(Debug, Clone)]
pub struct DiscreteAction {
    omega0: f64,
    start: f64,
    h: f64,
    ratio: Vec<f64>,
}

impl DiscreteAction {
    pub fn new(profile: &FrequencyProfile, cells: usize) -> Self {
        let s = profile.support();
        let h = s.length() / cells as f64;
        let w0sq = profile.omega0().powi(2);
        let ratio = (0..cells).map(|k| profile.omega_sq(s.start + (k as f64 + 0.5) * h) / w0sq).collect();
        Self { omega0: profile.omega0(), start: s.start, h, ratio }
    }

    pub fn cells(&self) -> usize {
        self.ratio.len()
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    fn cell(&self, k: usize, left: f64, right: f64) -> (f64, f64, f64) {
        let d = (right - left) / self.h;
        let mid = 0.5 * (left + right);
        let (ep, em) = (mid.exp(), (-mid).exp());
        let r = self.ratio[k];
        let v = self.omega0 * (ep - r * em);
        let dv = self.omega0 * (ep + r * em);
        (d, v, dv)
    }

    /// `S = h·Σ √(D² + V²)` over all `N + 1` node values.
    pub fn value(&self, theta: &[f64]) -> f64 {
        (0..self.cells())
            .map(|k| {
                let (d, v, _) = self.cell(k, theta[k], theta[k + 1]);
                d.hypot(v)
            })
            .sum::<f64>()
            * self.h
    }

    /// Value and gradient with respect to all `N + 1` nodes. Cells where
    /// L vanishes contribute zero (a subgradient).
    pub fn value_and_gradient(&self, theta: &[f64], grad: &mut [f64]) -> f64 {
        grad.iter_mut().for_each(|g| *g = 0.0);
        let mut s = 0.0;
        for k in 0..self.cells() {
            let (d, v, dv) = self.cell(k, theta[k], theta[k + 1]);
            let l = d.hypot(v);
            s += l;
            if l > 0.0 {
                let kin = d / l;
                let pot = 0.5 * self.h * v * dv / l;
                grad[k] += pot - kin;
                grad[k + 1] += pot + kin;
            }
        }
        s * self.h
    }

    /// Interior Euler–Lagrange residual `∂S/∂θ_k / h`.
    pub fn el_residual(&self, theta: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; theta.len()];
        self.value_and_gradient(theta, &mut g);
        g[1..g.len() - 1].iter().map(|v| v / self.h).collect()
    }

    /// θ = (ε/2)·ln(ω²/ω₀²) at the nodes with pinned endpoints.
    fn family_member(&self, profile: &FrequencyProfile, epsilon: f64) -> Vec<f64> {
        let n = self.cells();
        let w0sq = self.omega0 * self.omega0;
        let mut theta: Vec<f64> =
            (0..=n).map(|k| 0.5 * epsilon * (profile.omega_sq(self.start + k as f64 * self.h) / w0sq).ln()).collect();
        theta[0] = 0.0;
        theta[n] = 0.0;
        theta
    }
}

/// The continuous action `∫√(θ̇² + ω₀²(e^θ − (ω²/ω₀²)e^{−θ})²) dt`.
pub fn action(profile: &FrequencyProfile, probe: &ProbeFunction, quad: &QuadConfig) -> Result<f64, OptimizerError> {
    probe.check_admissible(profile)?;
    let w0 = profile.omega0();
    let s = profile.support();
    let potential = |t: f64| {
        let th = probe.theta(t);
        w0 * (th.exp() - profile.omega_sq(t) / (w0 * w0) * (-th).exp())
    };
    let rate = |t: f64| probe.theta_rate(t);
    let mut breaks = profile.discontinuities();
    breaks.extend(profile.knots());
    breaks.extend(probe.knots());
    breaks.extend(sign_changes(potential, s.start, s.end, 1000));
    breaks.extend(sign_changes(rate, s.start, s.end, 1000));
    let q = integrate(|t| rate(t).hypot(potential(t)), s.start, s.end, &breaks, quad)?;
    Ok(q.value)
}

fn lagrangian_parts(profile: &FrequencyProfile, probe: &ProbeFunction, t: f64) -> (f64, f64, f64) {
    let w0 = profile.omega0();
    let th = probe.theta(t);
    let v = w0 * (th.exp() - profile.omega_sq(t) / (w0 * w0) * (-th).exp());
    let d = probe.theta_rate(t);
    (d, v, d.hypot(v))
}

/// π = ∂L/∂θ̇ = θ̇/L; zero where L vanishes.
pub fn momentum_at(profile: &FrequencyProfile, probe: &ProbeFunction, t: f64) -> f64 {
    let (d, _, l) = lagrangian_parts(profile, probe, t);
    if l > 0.0 {
        d / l
    } else {
        0.0
    }
}

/// H = πθ̇ − L = −V²/L; zero where L vanishes.
pub fn hamiltonian_at(profile: &FrequencyProfile, probe: &ProbeFunction, t: f64) -> f64 {
    let (_, v, l) = lagrangian_parts(profile, probe, t);
    if l > 0.0 {
        -v * v / l
    } else {
        0.0
    }
}

/// Evaluates the discrete action and Euler–Lagrange residual on the probe's
/// node grid (or [`DIAGNOSTIC_CELLS`] uniform cells), and π, H at the
/// endpoints. Nothing is asserted about the endpoint values.
pub fn optimality_diagnostics(profile: &FrequencyProfile, probe: &ProbeFunction) -> OptimizerDiagnostics {
    let theta = match probe.theta_nodes() {
        Some(nodes) => nodes.to_vec(),
        None => probe.sample(DIAGNOSTIC_CELLS),
    };
    let grid = DiscreteAction::new(profile, theta.len() - 1);
    diagnostics_on(profile, probe, &grid, &theta, 0, OptimizerConfig::default().grad_tol)
}

fn diagnostics_on(
    profile: &FrequencyProfile,
    probe: &ProbeFunction,
    grid: &DiscreteAction,
    theta: &[f64],
    iterations: usize,
    grad_tol: f64,
) -> OptimizerDiagnostics {
    let residual = grid.el_residual(theta);
    let el_residual_inf = residual.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let (a, b) = probe.interval();
    OptimizerDiagnostics {
        action_value: grid.value(theta),
        el_residual_inf,
        endpoint_momentum: (momentum_at(profile, probe, a), momentum_at(profile, probe, b)),
        endpoint_hamiltonian: (hamiltonian_at(profile, probe, a), hamiltonian_at(profile, probe, b)),
        iterations,
        converged: el_residual_inf < grad_tol,
    }
}

/// Minimizes the discrete action over the interior θ nodes of `cells`
/// uniform cells.
///
/// Descent starts from the best of θ ≡ 0 and, for positive profiles, the
/// sampled family `Ω = ω^ε ω₀^{1−ε}`, `ε ∈ {¼, ½, ¾, 1}`. A run that hits
/// `max_iter` still returns its best iterate with `converged = false`.
pub fn optimize_probe(
    profile: &FrequencyProfile,
    cells: usize,
    config: &OptimizerConfig,
    quad: &QuadConfig,
) -> Result<OptimizedProbe, OptimizerError> {
    if cells < MIN_NODES {
        return Err(OptimizerError::NodeCountTooSmall(cells));
    }
    config.validate()?;
    let grid = DiscreteAction::new(profile, cells);

    let mut starts = vec![("constant".to_string(), vec![0.0; cells + 1])];
    if profile.everywhere_positive() {
        for eps in [0.25, 0.5, 0.75, 1.0] {
            starts.push((format!("power({eps})"), grid.family_member(profile, eps)));
        }
    }
    let (initial, theta0) = starts
        .into_iter()
        .map(|(label, th)| (grid.value(&th), label, th))
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, label, th)| (label, th))
        .expect("θ ≡ 0 is always a candidate");

    let h = grid.step();
    let lcfg = LbfgsConfig {
        max_iter: config.max_iter,
        grad_tol: config.grad_tol,
        grad_scale: 1.0 / h,
        memory: config.memory,
        armijo: config.armijo,
        max_first_step: 0.1,
    };
    let mut full = theta0.clone();
    let mut full_grad = vec![0.0; cells + 1];
    let objective = |interior: &[f64], grad: &mut [f64]| {
        full[1..cells].copy_from_slice(interior);
        let s = grid.value_and_gradient(&full, &mut full_grad);
        grad.copy_from_slice(&full_grad[1..cells]);
        s
    };
    let min = minimize(objective, theta0[1..cells].to_vec(), &lcfg);

    let mut theta = vec![0.0; cells + 1];
    theta[1..cells].copy_from_slice(&min.x);
    let (start, end) = (profile.support().start, profile.support().end);
    let probe = ProbeFunction::from_nodes(profile.omega0(), start, end, theta.clone())?;
    let report = probe_bound(profile, &probe, quad)?;
    let mut diagnostics = diagnostics_on(profile, &probe, &grid, &theta, min.iterations, config.grad_tol);
    diagnostics.converged = min.converged;
    Ok(OptimizedProbe { probe, report, diagnostics, history: min.history, initial })
}
