use std::f64::consts::PI;
use std::sync::Arc;

use crate::interp::MonotoneCubic;
use crate::profiles::FrequencyProfile;

/// `|θ|` above this is rejected before `e^θ` can overflow anything useful.
pub const THETA_LIMIT: f64 = 50.0;

/// How far `θ(t_i)`, `θ(t_f)` may sit from zero. Truncated profiles make the
/// adiabatic probe miss zero by about the truncation tolerance.
pub const ENDPOINT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProbeError {
    #[error("probe interval [{probe_start}, {probe_end}] differs from the profile support [{start}, {end}]")]
    SupportMismatch { probe_start: f64, probe_end: f64, start: f64, end: f64 },
    #[error("probe reference frequency {probe} differs from the profile's {profile}")]
    Omega0Mismatch { probe: f64, profile: f64 },
    #[error("θ must vanish at the endpoints; θ({t}) = {value}")]
    EndpointNotPinned { t: f64, value: f64 },
    #[error("|θ| exceeds {THETA_LIMIT} (got {0})")]
    Overflow(f64),
    #[error("non-finite θ value")]
    NonFinite,
    #[error("Ω = ω requires ω² > 0 everywhere on the support")]
    NotPositiveProfile,
    #[error("ε must lie in [0, 1], got {0}")]
    InvalidEpsilon(f64),
    #[error("need at least 2 θ nodes, got {0}")]
    TooFewNodes(usize),
}

#[derive(Clone, Debug)]
enum Shape {
    Constant,
    /// Ω = ω^ε ω₀^{1−ε}, i.e. θ = (ε/2)·ln(ω²/ω₀²).
    Adiabatic {
        profile: Box<FrequencyProfile>,
        epsilon: f64,
    },
    /// θ = A·sin²(π(t − t_i)/(t_f − t_i)).
    Bump {
        amplitude: f64,
    },
    Nodal {
        curve: Arc<MonotoneCubic>,
    },
}

/// An admissible probe frequency Ω(t) = ω₀·e^{θ(t)}.
///
/// Storing θ rather than Ω keeps Ω strictly positive; admissibility then
/// only asks for `θ(t_i) = 0 = θ(t_f)` and finiteness.
#[derive(Clone, Debug)]
pub struct ProbeFunction {
    omega0: f64,
    start: f64,
    end: f64,
    shape: Shape,
}

impl ProbeFunction {
    /// Ω ≡ ω₀ on the profile's support.
    pub fn constant(profile: &FrequencyProfile) -> Self {
        let s = profile.support();
        Self { omega0: profile.omega0(), start: s.start, end: s.end, shape: Shape::Constant }
    }

    /// Ω = ω^ε ω₀^{1−ε}; ε = 1 is the adiabatic probe Ω = ω.
    pub fn adiabatic(profile: &FrequencyProfile, epsilon: f64) -> Result<Self, ProbeError> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(ProbeError::InvalidEpsilon(epsilon));
        }
        if epsilon > 0.0 && !profile.everywhere_positive() {
            return Err(ProbeError::NotPositiveProfile);
        }
        let s = profile.support();
        Ok(Self {
            omega0: profile.omega0(),
            start: s.start,
            end: s.end,
            shape: Shape::Adiabatic { profile: Box::new(profile.clone()), epsilon },
        })
    }

    /// θ = A·sin²(π(t − t_i)/(t_f − t_i)).
    pub fn bump(profile: &FrequencyProfile, amplitude: f64) -> Result<Self, ProbeError> {
        if !amplitude.is_finite() {
            return Err(ProbeError::NonFinite);
        }
        if amplitude.abs() > THETA_LIMIT {
            return Err(ProbeError::Overflow(amplitude));
        }
        let s = profile.support();
        Ok(Self { omega0: profile.omega0(), start: s.start, end: s.end, shape: Shape::Bump { amplitude } })
    }

    /// θ at `N + 1` uniform nodes spanning `[start, end]`, joined by the
    /// monotone cubic interpolant.
    pub fn from_nodes(omega0: f64, start: f64, end: f64, theta: Vec<f64>) -> Result<Self, ProbeError> {
        if theta.len() < 2 {
            return Err(ProbeError::TooFewNodes(theta.len()));
        }
        if theta.iter().any(|v| !v.is_finite()) {
            return Err(ProbeError::NonFinite);
        }
        if let Some(&big) = theta.iter().find(|v| v.abs() > THETA_LIMIT) {
            return Err(ProbeError::Overflow(big));
        }
        let (first, last) = (theta[0], theta[theta.len() - 1]);
        if first.abs() > ENDPOINT_TOL {
            return Err(ProbeError::EndpointNotPinned { t: start, value: first });
        }
        if last.abs() > ENDPOINT_TOL {
            return Err(ProbeError::EndpointNotPinned { t: end, value: last });
        }
        let curve = MonotoneCubic::uniform(start, end, theta).map_err(|_| ProbeError::TooFewNodes(0))?;
        Ok(Self { omega0, start, end, shape: Shape::Nodal { curve: Arc::new(curve) } })
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.start, self.end)
    }

    pub fn label(&self) -> String {
        match &self.shape {
            Shape::Constant => "constant".into(),
            Shape::Adiabatic { epsilon, .. } if *epsilon == 1.0 => "adiabatic".into(),
            Shape::Adiabatic { epsilon, .. } => format!("power({epsilon})"),
            Shape::Bump { amplitude } => format!("bump({amplitude})"),
            Shape::Nodal { curve } => format!("nodal({})", curve.nodes().len()),
        }
    }

    /// θ node values, for node-based probes.
    pub fn theta_nodes(&self) -> Option<&[f64]> {
        match &self.shape {
            Shape::Nodal { curve } => Some(curve.values()),
            _ => None,
        }
    }

    /// Interpolation nodes: the probe's derivative has kinks there.
    pub fn knots(&self) -> Vec<f64> {
        match &self.shape {
            Shape::Nodal { curve } => curve.nodes().to_vec(),
            _ => Vec::new(),
        }
    }

    pub fn theta(&self, t: f64) -> f64 {
        match &self.shape {
            Shape::Constant => 0.0,
            Shape::Adiabatic { profile, epsilon } => {
                0.5 * epsilon * (profile.omega_sq(t) / (self.omega0 * self.omega0)).ln()
            }
            Shape::Bump { amplitude } => {
                let s = (PI * (t - self.start) / (self.end - self.start)).sin();
                amplitude * s * s
            }
            Shape::Nodal { curve } => curve.eval(t),
        }
    }

    /// θ̇ = Ω̇/Ω.
    pub fn theta_rate(&self, t: f64) -> f64 {
        match &self.shape {
            Shape::Constant => 0.0,
            Shape::Adiabatic { profile, epsilon } => 0.5 * epsilon * profile.omega_sq_rate(t) / profile.omega_sq(t),
            Shape::Bump { amplitude } => {
                let len = self.end - self.start;
                amplitude * PI / len * (2.0 * PI * (t - self.start) / len).sin()
            }
            Shape::Nodal { curve } => curve.derivative(t),
        }
    }

    pub fn omega(&self, t: f64) -> f64 {
        self.omega0 * self.theta(t).exp()
    }

    pub fn omega_rate(&self, t: f64) -> f64 {
        self.omega(t) * self.theta_rate(t)
    }

    /// Checks the endpoint, support and overflow conditions against `profile`.
    pub fn check_admissible(&self, profile: &FrequencyProfile) -> Result<(), ProbeError> {
        let s = profile.support();
        let slack = 1e-12 * s.length().max(s.start.abs()).max(s.end.abs());
        if (self.start - s.start).abs() > slack || (self.end - s.end).abs() > slack {
            return Err(ProbeError::SupportMismatch {
                probe_start: self.start,
                probe_end: self.end,
                start: s.start,
                end: s.end,
            });
        }
        if (self.omega0 - profile.omega0()).abs() > 1e-12 * profile.omega0() {
            return Err(ProbeError::Omega0Mismatch { probe: self.omega0, profile: profile.omega0() });
        }
        for t in [self.start, self.end] {
            let v = self.theta(t);
            if !v.is_finite() {
                return Err(ProbeError::NonFinite);
            }
            if v.abs() > ENDPOINT_TOL {
                return Err(ProbeError::EndpointNotPinned { t, value: v });
            }
        }
        if let Shape::Adiabatic { .. } = self.shape {
            let n = 2000;
            for k in 0..=n {
                let v = self.theta(self.start + (self.end - self.start) * k as f64 / n as f64);
                if !v.is_finite() {
                    return Err(ProbeError::NonFinite);
                }
                if v.abs() > THETA_LIMIT {
                    return Err(ProbeError::Overflow(v));
                }
            }
        }
        Ok(())
    }

    /// θ sampled at `n + 1` uniform nodes of the probe interval.
    pub fn sample(&self, n: usize) -> Vec<f64> {
        let h = (self.end - self.start) / n as f64;
        (0..=n).map(|k| if k == n { self.theta(self.end) } else { self.theta(self.start + h * k as f64) }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::{make_profile, reference_gaussian, reference_hyperbolic};

    #[test]
    fn adiabatic_probe_tracks_omega() {
        let p = make_profile(&reference_gaussian(), 1e-8).unwrap();
        let probe = ProbeFunction::adiabatic(&p, 1.0).unwrap();
        probe.check_admissible(&p).unwrap();
        for t in [-2.0, -0.5, 0.0, 0.3, 1.7] {
            assert!((probe.omega(t) - p.omega_sq(t).sqrt()).abs() < 1e-14);
        }
        assert!((probe.omega(0.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn adiabatic_rejected_on_forbidden_region() {
        let p = make_profile(&reference_hyperbolic(), 1e-8).unwrap();
        assert_eq!(ProbeFunction::adiabatic(&p, 1.0).unwrap_err(), ProbeError::NotPositiveProfile);
        assert!(ProbeFunction::adiabatic(&p, 0.0).is_ok());
        let g = make_profile(&reference_gaussian(), 1e-8).unwrap();
        assert_eq!(ProbeFunction::adiabatic(&g, 1.5).unwrap_err(), ProbeError::InvalidEpsilon(1.5));
    }

    #[test]
    fn bump_rate_matches_finite_difference() {
        let p = make_profile(&reference_gaussian(), 1e-8).unwrap();
        let probe = ProbeFunction::bump(&p, 0.4).unwrap();
        probe.check_admissible(&p).unwrap();
        let h = 1e-6;
        for t in [-3.0, -1.0, 0.2, 2.5] {
            let fd = (probe.theta(t + h) - probe.theta(t - h)) / (2.0 * h);
            assert!((fd - probe.theta_rate(t)).abs() < 1e-8);
            assert!((probe.omega_rate(t) - probe.omega(t) * probe.theta_rate(t)).abs() < 1e-15);
        }
    }

    #[test]
    fn nodal_probe_validation() {
        assert!(matches!(
            ProbeFunction::from_nodes(1.0, 0.0, 1.0, vec![0.1, 0.2, 0.0]),
            Err(ProbeError::EndpointNotPinned { .. })
        ));
        assert!(matches!(ProbeFunction::from_nodes(1.0, 0.0, 1.0, vec![0.0, 60.0, 0.0]), Err(ProbeError::Overflow(_))));
        assert!(matches!(
            ProbeFunction::from_nodes(1.0, 0.0, 1.0, vec![0.0, f64::NAN, 0.0]),
            Err(ProbeError::NonFinite)
        ));
        let probe = ProbeFunction::from_nodes(1.0, 0.0, 2.0, vec![0.0, 0.5, 0.25, 0.0]).unwrap();
        assert_eq!(probe.knots().len(), 4);
        assert!((probe.theta(2.0 / 3.0) - 0.5).abs() < 1e-15);
        assert!(probe.omega(1.0) > 1.0);
    }

    #[test]
    fn support_mismatch_detected() {
        let p = make_profile(&reference_gaussian(), 1e-8).unwrap();
        let probe = ProbeFunction::from_nodes(1.0, -1.0, 1.0, vec![0.0, 0.1, 0.0]).unwrap();
        assert!(matches!(probe.check_admissible(&p), Err(ProbeError::SupportMismatch { .. })));
    }
}
