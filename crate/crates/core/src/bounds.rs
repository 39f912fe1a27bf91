//! Rigorous upper and lower bounds on |β|².
//!
//! Every upper bound has the shape `|β|² ≤ sinh²(I/2)` for some integral
//! `I` of a non-negative integrand; they differ only in the integrand.
//! The lower bound comes from the transfer matrix itself.

use std::fmt;

use crate::probe_optimizer::{ProbeError, ProbeFunction};
use crate::profiles::FrequencyProfile;
use crate::propagator::TransferMatrix;
use crate::quadrature::{integrate, sign_changes, QuadConfig, QuadError, Quadrature};

/// Samples of the sign-change scan used to locate integrand kinks.
pub const KINK_SCAN_SAMPLES: usize = 1000;

/// Largest `|det T − 1|` accepted by [`lower_bound_beta`].
pub const LOWER_BOUND_DET_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BoundError {
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error("inadmissible probe: {0}")]
    InadmissibleProbe(#[from] ProbeError),
    #[error("the interpolating family needs ω² > 0 on the support (min ω² = {min})")]
    NegativeOmegaSquared { min: f64 },
    #[error("ε must lie in [0, 1], got {0}")]
    InvalidEpsilon(f64),
    #[error("transfer matrix is not unimodular: |det − 1| = {drift:e}")]
    NotUnimodular { drift: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundKind {
    Elementary,
    Probe,
    Interpolating(f64),
    Triangle,
    Lower,
}

impl BoundKind {
    pub fn name(&self) -> &'static str {
        match self {
            BoundKind::Elementary => "elementary",
            BoundKind::Probe => "probe",
            BoundKind::Interpolating(_) => "interpolating",
            BoundKind::Triangle => "triangle",
            BoundKind::Lower => "lower",
        }
    }

    pub fn epsilon(&self) -> Option<f64> {
        match self {
            BoundKind::Interpolating(e) => Some(*e),
            _ => None,
        }
    }

    pub fn is_upper(&self) -> bool {
        !matches!(self, BoundKind::Lower)
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::Interpolating(e) => write!(f, "interpolating({e})"),
            k => f.write_str(k.name()),
        }
    }
}

/// One evaluated bound.
///
/// Upper kinds fill `integral` and the four derived quantities; the lower
/// kind fills `lower_beta_sq` and leaves the upper-bound fields NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub integral: Option<f64>,
    /// sinh²(I/2).
    pub beta_sq_bound: f64,
    /// cosh²(I/2), stored as `1 + beta_sq_bound`.
    pub alpha_sq_bound: f64,
    /// sech²(I/2).
    pub transmission_lower: f64,
    /// tanh²(I/2).
    pub reflection_upper: f64,
    pub lower_beta_sq: Option<f64>,
    pub applicable: bool,
    /// Quadrature error estimate plus any truncation tolerance.
    pub quad_error: f64,
}

impl BoundReport {
    pub fn from_integral(kind: BoundKind, integral: f64, quad_error: f64) -> Self {
        let half = 0.5 * integral;
        let sh = half.sinh();
        let beta = sh * sh;
        let ch = half.cosh();
        let transmission = 1.0 / (ch * ch);
        Self {
            kind,
            integral: Some(integral),
            beta_sq_bound: beta,
            alpha_sq_bound: 1.0 + beta,
            transmission_lower: transmission,
            reflection_upper: 1.0 - transmission,
            lower_beta_sq: None,
            applicable: true,
            quad_error,
        }
    }

    pub fn from_lower(lower: &LowerBound) -> Self {
        Self {
            kind: BoundKind::Lower,
            integral: None,
            beta_sq_bound: f64::NAN,
            alpha_sq_bound: f64::NAN,
            transmission_lower: f64::NAN,
            reflection_upper: f64::NAN,
            lower_beta_sq: Some(lower.lower_beta_sq),
            applicable: lower.applicable,
            quad_error: 0.0,
        }
    }

    /// `sinh²((I + quad_error)/2)`: the bound with its error budget spent.
    pub fn beta_sq_bound_with_error(&self) -> f64 {
        match self.integral {
            Some(i) => ((i + self.quad_error) * 0.5).sinh().powi(2),
            None => f64::NAN,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBound {
    pub lower_beta_sq: f64,
    /// `|tr T| > 2`: real eigenvalues.
    pub applicable: bool,
    /// tr(T²) = (a + d)² − 2.
    pub trace_sq: f64,
}

fn budget(profile: &FrequencyProfile, q: &Quadrature) -> f64 {
    q.error + profile.truncation_tol().unwrap_or(0.0)
}

fn kinks(profile: &FrequencyProfile, fns: &[&dyn Fn(f64) -> f64], extra: Vec<f64>) -> Vec<f64> {
    let s = profile.support();
    let mut breaks = profile.discontinuities();
    breaks.extend(profile.knots());
    breaks.extend(extra);
    for g in fns {
        breaks.extend(sign_changes(g, s.start, s.end, KINK_SCAN_SAMPLES));
    }
    breaks
}

/// `I = ∫|ω₀ − ω²/ω₀| dt`.
pub fn elementary_bound(profile: &FrequencyProfile, quad: &QuadConfig) -> Result<BoundReport, BoundError> {
    quad.validate()?;
    let w0 = profile.omega0();
    let s = profile.support();
    let diff = |t: f64| w0 * w0 - profile.omega_sq(t);
    let breaks = kinks(profile, &[&diff], Vec::new());
    let q = integrate(|t| diff(t).abs() / w0, s.start, s.end, &breaks, quad)?;
    Ok(BoundReport::from_integral(BoundKind::Elementary, q.value, budget(profile, &q)))
}

/// `I = ∫ (1/|Ω|)·√(Ω̇² + (Ω² − ω²)²) dt` for an admissible probe Ω.
pub fn probe_bound(
    profile: &FrequencyProfile,
    probe: &ProbeFunction,
    quad: &QuadConfig,
) -> Result<BoundReport, BoundError> {
    quad.validate()?;
    probe.check_admissible(profile)?;
    let s = profile.support();
    let rate = |t: f64| probe.omega_rate(t);
    let gap = |t: f64| {
        let o = probe.omega(t);
        o * o - profile.omega_sq(t)
    };
    let breaks = kinks(profile, &[&rate, &gap], probe.knots());
    let integrand = |t: f64| {
        let o = probe.omega(t);
        rate(t).hypot(gap(t)) / o.abs()
    };
    let q = integrate(integrand, s.start, s.end, &breaks, quad)?;
    Ok(BoundReport::from_integral(BoundKind::Probe, q.value, budget(profile, &q)))
}

/// The `Ω = ω^ε ω₀^{1−ε}` family, evaluated through its own integrand
/// `√(ε²ω̇²/ω² + ω^{2ε}(ω₀^{2−2ε} − ω^{2−2ε})²/ω₀^{2−2ε})`.
///
/// Where ω jumps, `ε·ω̇/ω` is a delta function; each jump adds
/// `ε·|Δ ln ω|` to the integral.
pub fn interpolating_bound(
    profile: &FrequencyProfile,
    epsilon: f64,
    quad: &QuadConfig,
) -> Result<BoundReport, BoundError> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(BoundError::InvalidEpsilon(epsilon));
    }
    quad.validate()?;
    if !profile.everywhere_positive() {
        return Err(BoundError::NegativeOmegaSquared { min: profile.min_omega_sq() });
    }
    let w0 = profile.omega0();
    let s = profile.support();
    let p = 2.0 - 2.0 * epsilon;
    let w0p = w0.powf(p);
    let slope = |t: f64| profile.omega_sq_rate(t);
    let diff = |t: f64| w0 * w0 - profile.omega_sq(t);
    let breaks = kinks(profile, &[&slope, &diff], Vec::new());
    let integrand = |t: f64| {
        let w2 = profile.omega_sq(t);
        // ω̇/ω = ½(ω²)'/ω²
        let log_rate = 0.5 * slope(t) / w2;
        let kinetic = epsilon * log_rate;
        let potential_sq = w2.powf(epsilon) * (w0p - w2.powf(0.5 * p)).powi(2) / w0p;
        (kinetic * kinetic + potential_sq).sqrt()
    };
    let q = integrate(integrand, s.start, s.end, &breaks, quad)?;
    let jumps: f64 = profile
        .discontinuities()
        .into_iter()
        .map(|t| {
            let delta = 1e-9 * s.length();
            0.5 * epsilon * (profile.omega_sq(t + delta) / profile.omega_sq(t - delta)).ln().abs()
        })
        .sum();
    Ok(BoundReport::from_integral(BoundKind::Interpolating(epsilon), q.value + jumps, budget(profile, &q)))
}

/// `I = ∫|Ω̇/Ω| dt + ∫|Ω − ω²/Ω| dt`, never smaller than the probe bound.
pub fn triangle_bound(
    profile: &FrequencyProfile,
    probe: &ProbeFunction,
    quad: &QuadConfig,
) -> Result<BoundReport, BoundError> {
    quad.validate()?;
    probe.check_admissible(profile)?;
    let s = profile.support();
    let log_rate = |t: f64| probe.theta_rate(t);
    let potential = |t: f64| {
        let o = probe.omega(t);
        o - profile.omega_sq(t) / o
    };
    let breaks = kinks(profile, &[&log_rate, &potential], probe.knots());
    let q1 = integrate(|t| log_rate(t).abs(), s.start, s.end, &breaks, quad)?;
    let q2 = integrate(|t| potential(t).abs(), s.start, s.end, &breaks, quad)?;
    let err = q1.error + q2.error + 2.0 * profile.truncation_tol().unwrap_or(0.0);
    Ok(BoundReport::from_integral(BoundKind::Triangle, q1.value + q2.value, err))
}

/// `|β|² ≥ max(0, ¼(|tr T²| − 2))`, informative when `|tr T| > 2`.
pub fn lower_bound_beta(t: &TransferMatrix) -> Result<LowerBound, BoundError> {
    let drift = t.det_drift();
    if !(drift <= LOWER_BOUND_DET_TOL) {
        return Err(BoundError::NotUnimodular { drift });
    }
    let tr = t.trace();
    let trace_sq = tr * tr - 2.0;
    Ok(LowerBound { lower_beta_sq: (0.25 * (trace_sq.abs() - 2.0)).max(0.0), applicable: tr.abs() > 2.0, trace_sq })
}
