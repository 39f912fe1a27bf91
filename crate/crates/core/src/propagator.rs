//! Transfer matrices as time-ordered exponentials of traceless 2×2
//! generators.
//!
//! The state `(φ, π/ω₀)` obeys `d/dt s = G(t) s` with
//! `G = [[0, ω₀], [−ω²/ω₀, 0]]`; in the frame of a probe Ω(t) the state
//! `(φ√Ω, π/√Ω)` obeys the same equation with
//! `G = [[½Ω̇/Ω, Ω], [−ω²/Ω, −½Ω̇/Ω]]`.
//!
//! [`evolve`] forms the ordered product of single-step exponentials
//! `exp(G(t + h/2)·h)`, later times on the left. Each factor has
//! determinant one up to rounding, so `det T = 1` holds by construction and
//! is only ever *checked*, never restored. Step sizes are chosen by step
//! doubling: one step of size `h` against two of size `h/2`.

use std::ops::Mul;

use crate::probe_optimizer::{ProbeError, ProbeFunction};
use crate::profiles::FrequencyProfile;

/// Step errors below this multiple of `‖T‖` are indistinguishable from
/// rounding in the step-doubling comparison.
const ROUNDING_FLOOR: f64 = 8.0 * f64::EPSILON;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PropagatorError {
    #[error("generator is not finite at t = {t}")]
    NonFiniteGenerator { t: f64 },
    #[error("step limit {max_steps} reached at t = {t} before {t_end}")]
    StepLimitExceeded { max_steps: usize, t: f64, t_end: f64 },
    #[error("step size underflow at t = {t}")]
    StepSizeUnderflow { t: f64 },
    #[error("|det T − 1| = {drift:e} exceeds the allowed {allowed:e}")]
    DeterminantDrift { drift: f64, allowed: f64 },
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("inadmissible probe: {0}")]
    InadmissibleProbe(#[from] ProbeError),
}

/// Real 2×2 matrix `[[a, b], [c, d]]`, unimodular when produced by this crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl TransferMatrix {
    pub const IDENTITY: Self = Self { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    /// Rotation `[[cos φ, sin φ], [−sin φ, cos φ]]`: free evolution by
    /// phase φ = ω₀·τ.
    pub fn rotation(phase: f64) -> Self {
        let (s, c) = phase.sin_cos();
        Self { a: c, b: s, c: -s, d: c }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn det_drift(&self) -> f64 {
        (self.det() - 1.0).abs()
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// `tr(T Tᵀ) = a² + b² + c² + d²`.
    pub fn frobenius_sq(&self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    pub fn transpose(&self) -> Self {
        Self { a: self.a, b: self.c, c: self.b, d: self.d }
    }

    /// Inverse of a unimodular matrix: the adjugate `[[d, −b], [−c, a]]`.
    pub fn unimodular_inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn max_norm(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
            .max((self.d - other.d).abs())
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }

    pub fn apply(&self, s: StateVector) -> StateVector {
        StateVector { phi: self.a * s.phi + self.b * s.pi_scaled, pi_scaled: self.c * s.phi + self.d * s.pi_scaled }
    }
}

impl Mul for TransferMatrix {
    type Output = TransferMatrix;

    fn mul(self, r: TransferMatrix) -> TransferMatrix {
        TransferMatrix {
            a: self.a * r.a + self.b * r.c,
            b: self.a * r.b + self.b * r.d,
            c: self.c * r.a + self.d * r.c,
            d: self.c * r.b + self.d * r.d,
        }
    }
}

/// `(φ, π/ω₀)`: both components carry the same engineering dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector {
    pub phi: f64,
    pub pi_scaled: f64,
}

/// Traceless generator `[[g11, g12], [g21, −g11]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Generator {
    pub g11: f64,
    pub g12: f64,
    pub g21: f64,
}

impl Generator {
    pub fn is_finite(&self) -> bool {
        self.g11.is_finite() && self.g12.is_finite() && self.g21.is_finite()
    }

    /// `exp(G·dt)` in closed form.
    ///
    /// With `μ² = −det(G·dt)` the exponential is
    /// `C(μ²)·I + S(μ²)·G·dt`, where `C = cosh μ`, `S = sinh μ / μ` for
    /// `μ² > 0` and the trigonometric continuation for `μ² < 0`. Small
    /// `|μ²|` uses the power series, which covers both signs at once.
    pub fn exp(&self, dt: f64) -> TransferMatrix {
        let (x, y, z) = (self.g11 * dt, self.g12 * dt, self.g21 * dt);
        let mu_sq = x * x + y * z;
        let (c, s) = if mu_sq.abs() < 1e-3 {
            // Σ (μ²)^k / (2k)!  and  Σ (μ²)^k / (2k+1)!
            let m = mu_sq;
            let c = 1.0 + m / 2.0 * (1.0 + m / 12.0 * (1.0 + m / 30.0 * (1.0 + m / 56.0 * (1.0 + m / 90.0))));
            let s = 1.0 + m / 6.0 * (1.0 + m / 20.0 * (1.0 + m / 42.0 * (1.0 + m / 72.0 * (1.0 + m / 110.0))));
            (c, s)
        } else if mu_sq > 0.0 {
            let mu = mu_sq.sqrt();
            (mu.cosh(), mu.sinh() / mu)
        } else {
            let nu = (-mu_sq).sqrt();
            (nu.cos(), nu.sin() / nu)
        };
        TransferMatrix { a: c + s * x, b: s * y, c: s * z, d: c - s * x }
    }
}

/// `exp([[g11, g12], [g21, −g11]]·dt)`.
pub fn step_exponential(g11: f64, g12: f64, g21: f64, dt: f64) -> Result<TransferMatrix, PropagatorError> {
    let g = Generator { g11, g12, g21 };
    if !g.is_finite() || !dt.is_finite() {
        return Err(PropagatorError::NonFiniteGenerator { t: f64::NAN });
    }
    Ok(g.exp(dt))
}

/// A time-dependent traceless generator on a finite interval.
pub trait GeneratorField {
    fn interval(&self) -> (f64, f64);
    fn generator(&self, t: f64) -> Generator;
    /// Points where the generator is discontinuous or loses smoothness;
    /// steps end exactly there.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// `G = [[0, ω₀], [−ω²/ω₀, 0]]`.
#[derive(Debug, Clone, Copy)]
pub struct PlainFrame<'a> {
    pub profile: &'a FrequencyProfile,
}

impl GeneratorField for PlainFrame<'_> {
    fn interval(&self) -> (f64, f64) {
        let s = self.profile.support();
        (s.start, s.end)
    }

    fn generator(&self, t: f64) -> Generator {
        let w0 = self.profile.omega0();
        Generator { g11: 0.0, g12: w0, g21: -self.profile.omega_sq(t) / w0 }
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.profile.discontinuities()
    }
}

/// `G = [[½Ω̇/Ω, Ω], [−ω²/Ω, −½Ω̇/Ω]]` with `Ω̇/Ω = θ̇`.
#[derive(Debug, Clone, Copy)]
pub struct ProbeFrame<'a> {
    pub profile: &'a FrequencyProfile,
    pub probe: &'a ProbeFunction,
}

impl GeneratorField for ProbeFrame<'_> {
    fn interval(&self) -> (f64, f64) {
        let s = self.profile.support();
        (s.start, s.end)
    }

    fn generator(&self, t: f64) -> Generator {
        let omega = self.probe.omega(t);
        Generator { g11: 0.5 * self.probe.theta_rate(t), g12: omega, g21: -self.profile.omega_sq(t) / omega }
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut b = self.profile.discontinuities();
        b.extend(self.probe.knots());
        b
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// First trial step; `None` picks 1/64 of the interval.
    pub initial_step: Option<f64>,
    pub max_steps: usize,
    pub record_trajectory: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-9, abs_tol: 1e-12, initial_step: None, max_steps: 10_000_000, record_trajectory: false }
    }
}

impl SolverConfig {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self { rel_tol, abs_tol: rel_tol * 1e-3, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), PropagatorError> {
        let ok = |v: f64| v > 0.0 && v <= 1e-2;
        if !ok(self.rel_tol) {
            return Err(PropagatorError::InvalidConfig(format!("rel_tol {} outside (0, 1e-2]", self.rel_tol)));
        }
        if !ok(self.abs_tol) {
            return Err(PropagatorError::InvalidConfig(format!("abs_tol {} outside (0, 1e-2]", self.abs_tol)));
        }
        if self.max_steps < 16 {
            return Err(PropagatorError::InvalidConfig(format!("max_steps {} < 16", self.max_steps)));
        }
        if let Some(h) = self.initial_step {
            if !(h.is_finite() && h > 0.0) {
                return Err(PropagatorError::InvalidConfig(format!("initial_step {h} must be > 0")));
            }
        }
        Ok(())
    }
}

/// Result of an adaptive run.
#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    pub matrix: TransferMatrix,
    pub t_start: f64,
    pub t_end: f64,
    pub det_drift: f64,
    /// `det_drift ≤ 100·rel_tol`.
    pub unimodular: bool,
    pub allowed_drift: f64,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    /// `(t, T(t))` after every accepted step, when requested.
    pub trajectory: Option<Vec<(f64, TransferMatrix)>>,
}

impl Evolution {
    /// Turns a flagged determinant drift into an error.
    pub fn require_unimodular(self) -> Result<Self, PropagatorError> {
        if self.unimodular {
            Ok(self)
        } else {
            Err(PropagatorError::DeterminantDrift { drift: self.det_drift, allowed: self.allowed_drift })
        }
    }
}

/// Transfer matrix across the profile's support, in the plain frame or in
/// the frame of `probe`.
pub fn evolve(
    profile: &FrequencyProfile,
    config: &SolverConfig,
    probe: Option<&ProbeFunction>,
) -> Result<Evolution, PropagatorError> {
    match probe {
        None => evolve_field(&PlainFrame { profile }, config),
        Some(probe) => {
            probe.check_admissible(profile)?;
            evolve_field(&ProbeFrame { profile, probe }, config)
        }
    }
}

pub fn evolve_field<F: GeneratorField>(field: &F, config: &SolverConfig) -> Result<Evolution, PropagatorError> {
    let (t0, t1) = field.interval();
    evolve_field_between(field, t0, t1, config)
}

/// Adaptive time-ordered exponential of `field` from `t0` to `t1 > t0`.
pub fn evolve_field_between<F: GeneratorField>(
    field: &F,
    t0: f64,
    t1: f64,
    config: &SolverConfig,
) -> Result<Evolution, PropagatorError> {
    config.validate()?;
    let span = t1 - t0;
    if !(span > 0.0) {
        return Err(PropagatorError::InvalidConfig(format!("empty interval [{t0}, {t1}]")));
    }

    let mut stops: Vec<f64> = field.breakpoints().into_iter().filter(|&b| b > t0 && b < t1).collect();
    stops.sort_by(f64::total_cmp);
    stops.dedup();
    stops.push(t1);

    let gen_at = |t: f64| {
        let g = field.generator(t);
        if g.is_finite() {
            Ok(g)
        } else {
            Err(PropagatorError::NonFiniteGenerator { t })
        }
    };

    let mut t = t0;
    let mut m = TransferMatrix::IDENTITY;
    let mut h = config.initial_step.unwrap_or(span / 64.0).min(span);
    let min_step = 1e-14 * span.max(t0.abs()).max(t1.abs());
    let mut accepted = 0usize;
    let mut rejected = 0usize;
    let mut trajectory = config.record_trajectory.then(|| vec![(t0, m)]);

    for &stop in &stops {
        while t < stop {
            if accepted + rejected >= config.max_steps {
                return Err(PropagatorError::StepLimitExceeded { max_steps: config.max_steps, t, t_end: t1 });
            }
            let remaining = stop - t;
            let last = h >= remaining * (1.0 - 1e-12);
            let step = if last { remaining } else { h };

            let full = gen_at(t + 0.5 * step)?.exp(step);
            let first = gen_at(t + 0.25 * step)?.exp(0.5 * step);
            let second = gen_at(t + 0.75 * step)?.exp(0.5 * step);
            let coarse = full * m;
            let fine = second * (first * m);

            let err = coarse.max_abs_diff(&fine);
            // error per unit length, so the global error stays near the tolerance
            let tol = ((config.abs_tol + config.rel_tol * m.max_norm()) * step / span)
                // below this the comparison only sees rounding
                .max(ROUNDING_FLOOR * m.max_norm());
            if err <= tol || step <= min_step {
                if !fine.is_finite() {
                    return Err(PropagatorError::NonFiniteGenerator { t });
                }
                m = fine;
                t = if last { stop } else { t + step };
                accepted += 1;
                if let Some(tr) = trajectory.as_mut() {
                    tr.push((t, m));
                }
                let factor = if err == 0.0 { 5.0 } else { (0.9 * (tol / err).sqrt()).clamp(0.2, 5.0) };
                // keep the pre-truncation step when a stop shortened it
                h = if last { h.max(step * factor) } else { step * factor };
            } else {
                rejected += 1;
                h = step * (0.9 * (tol / err).sqrt()).clamp(0.1, 0.9);
                if h < min_step {
                    return Err(PropagatorError::StepSizeUnderflow { t });
                }
            }
        }
    }

    let det_drift = m.det_drift();
    let allowed_drift = 100.0 * config.rel_tol;
    Ok(Evolution {
        matrix: m,
        t_start: t0,
        t_end: t1,
        det_drift,
        unimodular: det_drift <= allowed_drift,
        allowed_drift,
        accepted_steps: accepted,
        rejected_steps: rejected,
        trajectory,
    })
}

/// Ordered product of `n` equal midpoint-exponential steps; the plain
/// second-order scheme without error control.
pub fn evolve_fixed<F: GeneratorField>(field: &F, n: usize) -> Result<TransferMatrix, PropagatorError> {
    let (t0, t1) = field.interval();
    let n = n.max(1);
    let h = (t1 - t0) / n as f64;
    let mut m = TransferMatrix::IDENTITY;
    for k in 0..n {
        let t = t0 + (k as f64 + 0.5) * h;
        let g = field.generator(t);
        if !g.is_finite() {
            return Err(PropagatorError::NonFiniteGenerator { t });
        }
        m = g.exp(h) * m;
    }
    Ok(m)
}

/// Applies the plain-frame transfer matrix to a scaled state.
pub fn evolve_state(
    initial: StateVector,
    profile: &FrequencyProfile,
    config: &SolverConfig,
) -> Result<StateVector, PropagatorError> {
    let ev = evolve(profile, config, None)?;
    Ok(ev.matrix.apply(initial))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::{make_profile, reference_gaussian, reference_hyperbolic, reference_rectangular, ProfileSpec};
    use std::f64::consts::PI;

    fn close(m: &TransferMatrix, e: &TransferMatrix, tol: f64) -> bool {
        m.max_abs_diff(e) <= tol
    }

    #[test]
    fn rotation_generator() {
        for tau in [0.0, 0.3, 1.0, 2.5, 7.0] {
            let m = step_exponential(0.0, 1.0, -1.0, tau).unwrap();
            assert!(close(&m, &TransferMatrix::rotation(tau), 1e-15));
        }
    }

    #[test]
    fn hyperbolic_generator_series_oracle() {
        // A = [[0,1],[1,0]], A² = I: exp(A) = Σ A^k/k! summed directly
        let mut even = 0.0;
        let mut odd = 0.0;
        let mut fact = 1.0;
        for k in 0..30 {
            if k > 0 {
                fact *= k as f64;
            }
            if k % 2 == 0 {
                even += 1.0 / fact;
            } else {
                odd += 1.0 / fact;
            }
        }
        let m = step_exponential(0.0, 1.0, 1.0, 1.0).unwrap();
        assert!(close(&m, &TransferMatrix::new(even, odd, odd, even), 1e-15));
        assert!((even - 1.543_08).abs() < 1e-5 && (odd - 1.175_20).abs() < 1e-5);
    }

    #[test]
    fn zero_step_is_identity_and_nan_rejected() {
        assert_eq!(step_exponential(0.3, 2.0, -5.0, 0.0).unwrap(), TransferMatrix::IDENTITY);
        assert!(step_exponential(f64::NAN, 1.0, 1.0, 1.0).is_err());
        assert!(step_exponential(0.0, f64::INFINITY, 1.0, 1.0).is_err());
    }

    #[test]
    fn nilpotent_generator() {
        let m = step_exponential(1.0, 1.0, -1.0, 0.7).unwrap();
        // μ² = 0: I + G·dt
        assert!(close(&m, &TransferMatrix::new(1.7, 0.7, -0.7, 0.3), 1e-15));
    }

    #[test]
    fn series_branch_continuity() {
        for &(g11, g12, g21) in &[(0.2, 1.0, -0.5), (0.0, 1.0, 0.9), (0.7, -0.3, 2.0)] {
            for dt in [0.009, 0.011, 0.02, 0.04, 0.06] {
                let m = step_exponential(g11, g12, g21, dt).unwrap();
                // reference: the matrix Taylor series summed term by term
                let a = TransferMatrix::new(g11 * dt, g12 * dt, g21 * dt, -g11 * dt);
                let mut term = TransferMatrix::IDENTITY;
                let mut r = TransferMatrix::IDENTITY;
                for k in 1..30 {
                    let t = term * a;
                    term = TransferMatrix::new(t.a / k as f64, t.b / k as f64, t.c / k as f64, t.d / k as f64);
                    r = TransferMatrix::new(r.a + term.a, r.b + term.b, r.c + term.c, r.d + term.d);
                }
                assert!(close(&m, &r, 1e-15), "{m:?} vs {r:?}");
                assert!((m.det() - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn evolve_constant_profile() {
        let tau = 2.3;
        let p = make_profile(&ProfileSpec::Constant { omega0: 1.0, start: 0.0, duration: tau }, 1e-8).unwrap();
        let ev = evolve(&p, &SolverConfig::default(), None).unwrap();
        assert!(close(&ev.matrix, &TransferMatrix::rotation(tau), 1e-12));
        assert!(ev.unimodular);
    }

    #[test]
    fn evolve_rectangular_closed_form() {
        let p = make_profile(&reference_rectangular(), 1e-8).unwrap();
        let ev = evolve(&p, &SolverConfig::default(), None).unwrap();
        assert!(close(&ev.matrix, &TransferMatrix::new(0.0, 0.5, -2.0, 0.0), 1e-12), "{:?}", ev.matrix);
    }

    #[test]
    fn evolve_hyperbolic_closed_form() {
        let p = make_profile(&reference_hyperbolic(), 1e-8).unwrap();
        let ev = evolve(&p, &SolverConfig::default(), None).unwrap();
        let (c, s) = (1f64.cosh(), 1f64.sinh());
        assert!(close(&ev.matrix, &TransferMatrix::new(c, s, s, c), 1e-12));
    }

    #[test]
    fn evolve_states() {
        let p = make_profile(&ProfileSpec::Constant { omega0: 1.0, start: 0.0, duration: PI / 2.0 }, 1e-8).unwrap();
        let s = evolve_state(StateVector { phi: 1.0, pi_scaled: 0.0 }, &p, &SolverConfig::default()).unwrap();
        assert!(s.phi.abs() < 1e-12 && (s.pi_scaled + 1.0).abs() < 1e-12);

        let h = make_profile(&reference_hyperbolic(), 1e-8).unwrap();
        let s = evolve_state(StateVector { phi: 1.0, pi_scaled: 0.0 }, &h, &SolverConfig::default()).unwrap();
        assert!((s.phi - 1f64.cosh()).abs() < 1e-12 && (s.pi_scaled - 1f64.sinh()).abs() < 1e-12);
    }

    #[test]
    fn plane_wave_solution() {
        // (φ, π/ω₀) = e^{iω₀t}(1, i), real and imaginary parts evolved separately
        let (w0, ti, tau) = (1.7, 0.4, 3.1);
        let p = make_profile(&ProfileSpec::Constant { omega0: w0, start: ti, duration: tau }, 1e-8).unwrap();
        let cfg = SolverConfig::default();
        let (s0, c0) = (w0 * ti).sin_cos();
        let re = evolve_state(StateVector { phi: c0, pi_scaled: -s0 }, &p, &cfg).unwrap();
        let im = evolve_state(StateVector { phi: s0, pi_scaled: c0 }, &p, &cfg).unwrap();
        let (s1, c1) = (w0 * (ti + tau)).sin_cos();
        assert!((re.phi - c1).abs() < 1e-11 && (re.pi_scaled + s1).abs() < 1e-11);
        assert!((im.phi - s1).abs() < 1e-11 && (im.pi_scaled - c1).abs() < 1e-11);
    }

    #[test]
    fn group_property_on_gaussian() {
        let p = make_profile(&reference_gaussian(), 1e-8).unwrap();
        let cfg = SolverConfig::default();
        let field = PlainFrame { profile: &p };
        let s = p.support();
        let tm = s.start + 0.37 * s.length();
        let whole = evolve_field(&field, &cfg).unwrap().matrix;
        let left = evolve_field_between(&field, s.start, tm, &cfg).unwrap().matrix;
        let right = evolve_field_between(&field, tm, s.end, &cfg).unwrap().matrix;
        let scale = whole.max_norm().max(1.0);
        assert!(whole.max_abs_diff(&(right * left)) <= 10.0 * cfg.rel_tol * scale);
    }

    #[test]
    fn step_limit_and_trajectory() {
        let p = make_profile(&reference_gaussian(), 1e-8).unwrap();
        let cfg = SolverConfig { max_steps: 16, ..SolverConfig::default() };
        assert!(matches!(evolve(&p, &cfg, None), Err(PropagatorError::StepLimitExceeded { .. })));

        let cfg = SolverConfig { record_trajectory: true, rel_tol: 1e-6, abs_tol: 1e-9, ..SolverConfig::default() };
        let ev = evolve(&p, &cfg, None).unwrap();
        let tr = ev.trajectory.unwrap();
        assert_eq!(tr.len(), ev.accepted_steps + 1);
        assert_eq!(tr[0].0, p.support().start);
        assert_eq!(tr.last().unwrap().0, p.support().end);
        assert!(tr.windows(2).all(|w| w[1].0 > w[0].0));
    }

    #[test]
    fn invalid_config() {
        let p = make_profile(&reference_gaussian(), 1e-8).unwrap();
        for cfg in [
            SolverConfig { rel_tol: 0.0, ..Default::default() },
            SolverConfig { abs_tol: 0.5, ..Default::default() },
            SolverConfig { max_steps: 3, ..Default::default() },
        ] {
            assert!(matches!(evolve(&p, &cfg, None), Err(PropagatorError::InvalidConfig(_))));
        }
    }
}
