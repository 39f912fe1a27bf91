//! Interaction picture: `ω² = ω_e² + ω_Δ²` with an exactly solvable `ω_e²`.
//!
//! `T = T_e·T_Δ`, where `T_Δ` is the time-ordered exponential of the
//! conjugated generator `T_e⁻¹ Q_Δ T_e`, `Q_Δ = [[0, 0], [−ω_Δ²/ω₀, 0]]`.

use num_complex::Complex64;

use crate::bogoliubov::BogoliubovCoefficients;
use crate::profiles::{make_profile, FrequencyProfile, ProfileError, ProfileKind, ProfileSpec};
use crate::propagator::{
    evolve_field, Evolution, Generator, GeneratorField, PlainFrame, PropagatorError, SolverConfig, TransferMatrix,
};

/// Largest `|det − 1|` accepted for the factors of a composition.
pub const COMPOSE_DET_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InteractionError {
    #[error("exact part lives on [{exact_start}, {exact_end}], the profile on [{start}, {end}]")]
    MismatchedSupport { exact_start: f64, exact_end: f64, start: f64, end: f64 },
    #[error("exact part has ω₀ = {exact}, the profile {full}")]
    MismatchedOmega0 { exact: f64, full: f64 },
    #[error("exact-part transfer matrix lost unit determinant: drift {drift:e}")]
    SingularExactPart { drift: f64 },
    #[error("factor is not unimodular: |det − 1| = {drift:e}")]
    NotUnimodular { drift: f64 },
    #[error("coefficient magnitudes must be non-negative, got ({0}, {1})")]
    NegativeMagnitude(f64, f64),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Propagator(#[from] PropagatorError),
}

/// A profile together with the exactly solvable part it is split against.
#[derive(Debug, Clone)]
pub struct ProfileSplit {
    pub full: FrequencyProfile,
    pub exact: FrequencyProfile,
}

impl ProfileSplit {
    /// `ω_Δ²(t) = ω²(t) − ω_e²(t)`.
    pub fn delta_sq(&self, t: f64) -> f64 {
        self.full.omega_sq(t) - self.exact.omega_sq(t)
    }
}

pub fn split(profile: &FrequencyProfile, exact_spec: &ProfileSpec) -> Result<ProfileSplit, InteractionError> {
    let exact = make_profile(exact_spec, profile.truncation_tol().unwrap_or(1e-8))?;
    let (w0, we) = (profile.omega0(), exact.omega0());
    if (w0 - we).abs() > 1e-12 * w0 {
        return Err(InteractionError::MismatchedOmega0 { exact: we, full: w0 });
    }
    let (s, e) = (profile.support(), exact.support());
    let slack = 1e-12 * s.length().max(s.start.abs()).max(s.end.abs());
    if (s.start - e.start).abs() > slack || (s.end - e.end).abs() > slack {
        return Err(InteractionError::MismatchedSupport {
            exact_start: e.start,
            exact_end: e.end,
            start: s.start,
            end: s.end,
        });
    }
    Ok(ProfileSplit { full: profile.clone(), exact })
}

/// `T_e(t)` on the support: closed form for piecewise-constant exact parts,
/// otherwise one midpoint step from the nearest point of a recorded
/// adaptive trajectory.
#[derive(Debug, Clone)]
enum ExactPropagator {
    Closed { start: f64, g21: f64, omega0: f64 },
    Tabulated { trajectory: Vec<(f64, TransferMatrix)>, exact: FrequencyProfile },
}

impl ExactPropagator {
    fn new(exact: &FrequencyProfile, config: &SolverConfig) -> Result<Self, PropagatorError> {
        let s = exact.support();
        let w0 = exact.omega0();
        match exact.kind() {
            ProfileKind::Constant | ProfileKind::Rectangular | ProfileKind::HyperbolicPulse => {
                let level = exact.omega_sq(0.5 * (s.start + s.end));
                Ok(Self::Closed { start: s.start, g21: -level / w0, omega0: w0 })
            }
            _ => {
                let cfg = SolverConfig {
                    rel_tol: 0.1 * config.rel_tol,
                    abs_tol: 0.1 * config.abs_tol,
                    record_trajectory: true,
                    ..*config
                };
                let ev = evolve_field(&PlainFrame { profile: exact }, &cfg)?;
                let trajectory = ev.trajectory.expect("trajectory was requested");
                Ok(Self::Tabulated { trajectory, exact: exact.clone() })
            }
        }
    }

    fn at(&self, t: f64) -> TransferMatrix {
        match self {
            Self::Closed { start, g21, omega0 } => Generator { g11: 0.0, g12: *omega0, g21: *g21 }.exp(t - start),
            Self::Tabulated { trajectory, exact } => {
                let k = trajectory.partition_point(|(tk, _)| *tk <= t).saturating_sub(1);
                let (tk, m) = trajectory[k];
                let dt = t - tk;
                if dt <= 0.0 {
                    return m;
                }
                let w0 = exact.omega0();
                let g = Generator { g11: 0.0, g12: w0, g21: -exact.omega_sq(tk + 0.5 * dt) / w0 };
                g.exp(dt) * m
            }
        }
    }
}

/// The conjugated generator `T_e⁻¹ Q_Δ T_e`.
pub struct DeltaField<'a> {
    split: &'a ProfileSplit,
    exact: ExactPropagator,
}

impl<'a> DeltaField<'a> {
    pub fn new(split: &'a ProfileSplit, config: &SolverConfig) -> Result<Self, PropagatorError> {
        Ok(Self { split, exact: ExactPropagator::new(&split.exact, config)? })
    }

    pub fn exact_at(&self, t: f64) -> TransferMatrix {
        self.exact.at(t)
    }
}

impl GeneratorField for DeltaField<'_> {
    fn interval(&self) -> (f64, f64) {
        let s = self.split.full.support();
        (s.start, s.end)
    }

    fn generator(&self, t: f64) -> Generator {
        let m = self.exact.at(t);
        let q = -self.split.delta_sq(t) / self.split.full.omega0();
        let g = Generator { g11: -q * m.a * m.b, g12: -q * m.b * m.b, g21: q * m.a * m.a };
        debug_assert!(m.a * m.d - m.b * m.c != 0.0);
        g
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut b = self.split.full.discontinuities();
        b.extend(self.split.full.knots());
        b.extend(self.split.exact.discontinuities());
        b.extend(self.split.exact.knots());
        b
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaEvolution {
    pub delta: Evolution,
    /// `T_e(t_f)`.
    pub exact: TransferMatrix,
}

pub fn evolve_delta(split: &ProfileSplit, config: &SolverConfig) -> Result<DeltaEvolution, InteractionError> {
    let field = DeltaField::new(split, config)?;
    let exact = field.exact_at(split.full.support().end);
    let drift = exact.det_drift();
    if !(drift <= COMPOSE_DET_TOL) {
        return Err(InteractionError::SingularExactPart { drift });
    }
    let delta = evolve_field(&field, config)?;
    Ok(DeltaEvolution { delta, exact })
}

/// `T_e·T_Δ`, both factors checked for unit determinant.
pub fn compose(exact: &TransferMatrix, delta: &TransferMatrix) -> Result<TransferMatrix, InteractionError> {
    for m in [exact, delta] {
        let drift = m.det_drift();
        if !(drift <= COMPOSE_DET_TOL) {
            return Err(InteractionError::NotUnimodular { drift });
        }
    }
    Ok(*exact * *delta)
}

/// Bogoliubov coefficients without their propagation phases:
/// `α̃ = ½[a + d + i(b − c)]`, `β̃ = ½[a − d + i(b + c)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseStrippedPair {
    pub alpha_tilde: Complex64,
    pub beta_tilde: Complex64,
}

impl PhaseStrippedPair {
    pub const TRANSPARENT: Self =
        Self { alpha_tilde: Complex64 { re: 1.0, im: 0.0 }, beta_tilde: Complex64 { re: 0.0, im: 0.0 } };

    pub fn from_matrix(t: &TransferMatrix) -> Self {
        Self {
            alpha_tilde: Complex64::new(0.5 * (t.a + t.d), 0.5 * (t.b - t.c)),
            beta_tilde: Complex64::new(0.5 * (t.a - t.d), 0.5 * (t.b + t.c)),
        }
    }

    pub fn from_coefficients(c: &BogoliubovCoefficients) -> Self {
        Self {
            alpha_tilde: c.alpha * Complex64::cis(c.omega0 * (c.t_f - c.t_i)),
            beta_tilde: c.beta * Complex64::cis(c.omega0 * (c.t_f + c.t_i)),
        }
    }

    /// `|α̃|² − |β̃|² − 1`.
    pub fn normalization_residual(&self) -> f64 {
        self.alpha_tilde.norm_sqr() - self.beta_tilde.norm_sqr() - 1.0
    }
}

/// Pair of `T_e·T_Δ` from the pairs of its factors:
/// `α̃ = α̃_e α̃_Δ + β̃_e* β̃_Δ`, `β̃ = α̃_Δ β̃_e + α̃_e* β̃_Δ`.
pub fn compose_coefficients(exact: &PhaseStrippedPair, delta: &PhaseStrippedPair) -> PhaseStrippedPair {
    PhaseStrippedPair {
        alpha_tilde: exact.alpha_tilde * delta.alpha_tilde + exact.beta_tilde.conj() * delta.beta_tilde,
        beta_tilde: delta.alpha_tilde * exact.beta_tilde + exact.alpha_tilde.conj() * delta.beta_tilde,
    }
}

/// `|√(1+|β_e|²)|β_Δ| − |β_e|√(1+|β_Δ|²)| ≤ |β| ≤ √(1+|β_e|²)|β_Δ| + |β_e|√(1+|β_Δ|²)`.
pub fn composition_bounds(beta_e: f64, beta_delta: f64) -> Result<(f64, f64), InteractionError> {
    if !(beta_e >= 0.0 && beta_delta >= 0.0) {
        return Err(InteractionError::NegativeMagnitude(beta_e, beta_delta));
    }
    let x = (1.0 + beta_e * beta_e).sqrt() * beta_delta;
    let y = beta_e * (1.0 + beta_delta * beta_delta).sqrt();
    Ok(((x - y).abs(), x + y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::{reference_gaussian, reference_hyperbolic, reference_rectangular};
    use crate::propagator::evolve;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn constant_like(p: &FrequencyProfile) -> ProfileSpec {
        let s = p.support();
        ProfileSpec::Constant { omega0: p.omega0(), start: s.start, duration: s.length() }
    }

    #[test]
    fn split_by_subtraction() {
        let rect = make_profile(&reference_rectangular(), 1e-8).unwrap();
        let own = split(&rect, &reference_rectangular()).unwrap();
        assert!((0..50).all(|k| own.delta_sq(k as f64 * 0.02) == 0.0));
        let sp = split(&rect, &constant_like(&rect)).unwrap();
        assert_eq!(sp.delta_sq(0.3), 3.0);
        assert_eq!(sp.delta_sq(-0.3), 0.0);
        let g = make_profile(&reference_gaussian(), 1e-8).unwrap();
        let sg = split(&g, &constant_like(&g)).unwrap();
        for t in [-1.0, 0.0, 0.4] {
            assert!((sg.delta_sq(t) - 3.0 * (-t * t).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn split_rejects_mismatch() {
        let rect = make_profile(&reference_rectangular(), 1e-8).unwrap();
        let other = ProfileSpec::Constant { omega0: 1.0, start: 0.0, duration: 1.0 };
        assert!(matches!(split(&rect, &other), Err(InteractionError::MismatchedSupport { .. })));
        let other = ProfileSpec::Constant { omega0: 2.0, start: 0.0, duration: PI / 4.0 };
        assert!(matches!(split(&rect, &other), Err(InteractionError::MismatchedOmega0 { .. })));
    }

    #[test]
    fn zero_perturbation_gives_identity() {
        let rect = make_profile(&reference_rectangular(), 1e-8).unwrap();
        let sp = split(&rect, &reference_rectangular()).unwrap();
        let out = evolve_delta(&sp, &SolverConfig::default()).unwrap();
        assert_eq!(out.delta.matrix, TransferMatrix::IDENTITY);
    }

    #[test]
    fn reconstruction_against_closed_forms() {
        let cfg = SolverConfig::default();
        let (c, s) = (1f64.cosh(), 1f64.sinh());
        let cases = [
            (reference_rectangular(), TransferMatrix::new(0.0, 0.5, -2.0, 0.0)),
            (reference_hyperbolic(), TransferMatrix::new(c, s, s, c)),
        ];
        for (spec, expected) in cases {
            let p = make_profile(&spec, 1e-8).unwrap();
            let sp = split(&p, &constant_like(&p)).unwrap();
            let out = evolve_delta(&sp, &cfg).unwrap();
            let full = compose(&out.exact, &out.delta.matrix).unwrap();
            assert!(full.max_abs_diff(&expected) <= 10.0 * cfg.rel_tol, "{full:?}");
        }
    }

    #[test]
    fn numerical_exact_part() {
        // Gaussian split against a Gaussian of half the amplitude: T_e has no closed form
        let cfg = SolverConfig::with_rel_tol(1e-9);
        let p = make_profile(&reference_gaussian(), 1e-8).unwrap();
        let s = p.support();
        let half = ProfileSpec::GaussianBump { omega0: 1.0, amplitude: 1.5, width: 1.0, center: 0.0 };
        let he = make_profile(&half, 1e-8).unwrap();
        assert!(he.support().length() < s.length());
        // widen the exact part's window to the full support via a tabulated copy
        let n = 400;
        let samples: Vec<(f64, f64)> =
            (0..=n).map(|k| s.start + s.length() * k as f64 / n as f64).map(|t| (t, he.omega_sq(t))).collect();
        let exact_spec = ProfileSpec::Tabulated { omega0: 1.0, samples };
        let sp = split(&p, &exact_spec).unwrap();
        let out = evolve_delta(&sp, &cfg).unwrap();
        let full = compose(&out.exact, &out.delta.matrix).unwrap();
        let direct = evolve(&p, &cfg, None).unwrap().matrix;
        assert!(full.max_abs_diff(&direct) <= 10.0 * cfg.rel_tol, "{}", full.max_abs_diff(&direct));
    }

    #[test]
    fn compose_rules() {
        let x = TransferMatrix::new(2.0, 1.0, 3.0, 2.0);
        assert_eq!(compose(&TransferMatrix::IDENTITY, &x).unwrap(), x);
        let r = compose(&TransferMatrix::rotation(0.3), &TransferMatrix::rotation(0.9)).unwrap();
        assert!(r.max_abs_diff(&TransferMatrix::rotation(1.2)) < 1e-15);
        assert!(matches!(
            compose(&x, &TransferMatrix::new(1.0, 1.0, 1.0, 1.0)),
            Err(InteractionError::NotUnimodular { .. })
        ));
    }

    #[test]
    fn composition_bound_cases() {
        assert_eq!(composition_bounds(0.0, 0.7).unwrap(), (0.7, 0.7));
        let (lo, hi) = composition_bounds(0.7, 0.7).unwrap();
        assert_eq!(lo, 0.0);
        assert!((hi - 2.0 * 0.7 * (1.0f64 + 0.49).sqrt()).abs() < 1e-15);
        assert!(composition_bounds(-0.1, 0.2).is_err());
    }

    #[test]
    fn transparent_pair_is_neutral() {
        let d = PhaseStrippedPair::from_matrix(&TransferMatrix::new(2.0, 1.0, 3.0, 2.0));
        assert_eq!(compose_coefficients(&PhaseStrippedPair::TRANSPARENT, &d), d);
        assert_eq!(compose_coefficients(&d, &PhaseStrippedPair::TRANSPARENT), d);
    }

    fn unimodular() -> impl Strategy<Value = TransferMatrix> {
        (0.2f64..4.0, -4.0f64..4.0, -4.0f64..4.0, prop::bool::ANY).prop_map(|(a, b, c, neg)| {
            let a = if neg { -a } else { a };
            TransferMatrix::new(a, b, c, (1.0 + b * c) / a)
        })
    }

    proptest! {
        #[test]
        fn pair_composition_is_a_homomorphism(e in unimodular(), d in unimodular()) {
            let composed = compose_coefficients(&PhaseStrippedPair::from_matrix(&e), &PhaseStrippedPair::from_matrix(&d));
            let direct = PhaseStrippedPair::from_matrix(&(e * d));
            let scale = direct.alpha_tilde.norm().max(1.0);
            prop_assert!((composed.alpha_tilde - direct.alpha_tilde).norm() <= 1e-12 * scale);
            prop_assert!((composed.beta_tilde - direct.beta_tilde).norm() <= 1e-12 * scale);
            prop_assert!(composed.normalization_residual().abs() <= 1e-8 * composed.alpha_tilde.norm_sqr());
        }

        #[test]
        fn sandwich_holds(e in unimodular(), d in unimodular()) {
            let be = PhaseStrippedPair::from_matrix(&e).beta_tilde.norm();
            let bd = PhaseStrippedPair::from_matrix(&d).beta_tilde.norm();
            let b = PhaseStrippedPair::from_matrix(&(e * d)).beta_tilde.norm();
            let (lo, hi) = composition_bounds(be, bd).unwrap();
            prop_assert!(lo <= b + 1e-10 * hi.max(1.0) && b <= hi + 1e-10 * hi.max(1.0));
        }
    }
}
