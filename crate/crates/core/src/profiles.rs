//! Frequency profiles ω²(t).
//!
//! A [`FrequencyProfile`] is the problem statement: ω²(t) equals ω₀² outside
//! a finite support `[t_i, t_f]` and is arbitrary (possibly negative) inside.
//! Space-domain problems use the same type with `x` in place of `t` and
//! `k²(x)` in place of `ω²(t)`; [`from_potential`] performs the Schrödinger
//! translation `k² = 2m(E − V)/ħ²`.
//!
//! Families whose deviation from ω₀² only decays asymptotically (Gaussian,
//! sech²) are truncated to the smallest symmetric window outside which the
//! relative deviation is below a caller-chosen tolerance.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::interp::{InterpError, MonotoneCubic};

/// Number of uniform samples used to decide `everywhere_positive`.
pub const POSITIVITY_SAMPLES: usize = 10_000;

/// Largest admissible truncation tolerance.
pub const MAX_TRUNCATION_TOL: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProfileError {
    #[error("reference frequency must be strictly positive, got {0}")]
    NonPositiveOmega0(f64),
    #[error("support degenerates: [{start}, {end}]")]
    EmptySupport { start: f64, end: f64 },
    #[error("tabulated profile needs at least 4 samples, got {0}")]
    TabulatedTooSparse(usize),
    #[error("energy must be positive for propagating asymptotic states, got {0}")]
    NegativeAsymptoticK(f64),
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("truncation tolerance must lie in (0, 1e-3], got {0}")]
    InvalidTruncationTol(f64),
    #[error("bad tabulated samples: {0}")]
    Samples(#[from] InterpError),
    #[error("{path}: {message}")]
    Table { path: String, message: String },
}

/// Descriptive family label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileKind {
    Constant,
    Rectangular,
    HyperbolicPulse,
    GaussianBump,
    Sech2,
    Tabulated,
    FromPotential,
}

impl ProfileKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProfileKind::Constant => "constant",
            ProfileKind::Rectangular => "rectangular",
            ProfileKind::HyperbolicPulse => "hyperbolic_pulse",
            ProfileKind::GaussianBump => "gaussian_bump",
            ProfileKind::Sech2 => "sech2",
            ProfileKind::Tabulated => "tabulated",
            ProfileKind::FromPotential => "from_potential",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "constant" => ProfileKind::Constant,
            "rectangular" => ProfileKind::Rectangular,
            "hyperbolic_pulse" => ProfileKind::HyperbolicPulse,
            "gaussian_bump" => ProfileKind::GaussianBump,
            "sech2" => ProfileKind::Sech2,
            "tabulated" => ProfileKind::Tabulated,
            "from_potential" => ProfileKind::FromPotential,
            _ => return None,
        })
    }
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Closed interval `[start, end]` with `start < end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub start: f64,
    pub end: f64,
}

impl Support {
    pub fn new(start: f64, end: f64) -> Result<Self, ProfileError> {
        if !(start.is_finite() && end.is_finite()) || start >= end {
            return Err(ProfileError::EmptySupport { start, end });
        }
        Ok(Self { start, end })
    }

    pub fn length(&self) -> f64 {
        self.end - self.start
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.start && t <= self.end
    }
}

/// Per-family construction parameters.
///
/// `width` for the Gaussian is σ in `A·exp(−((t−c)/σ)²)`; for sech² it is
/// `L` in `U₀·sech²((t−c)/L)`. Both add to ω₀², so positive amplitudes
/// raise the frequency.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileSpec {
    Constant {
        omega0: f64,
        start: f64,
        duration: f64,
    },
    Rectangular {
        omega0: f64,
        omega1: f64,
        start: f64,
        duration: f64,
    },
    /// ω² = −κ² on the pulse: a classically forbidden slab.
    HyperbolicPulse {
        omega0: f64,
        kappa: f64,
        start: f64,
        duration: f64,
    },
    GaussianBump {
        omega0: f64,
        amplitude: f64,
        width: f64,
        center: f64,
    },
    Sech2 {
        omega0: f64,
        depth: f64,
        width: f64,
        center: f64,
    },
    /// `(t, ω²)` samples, strictly increasing in `t`.
    Tabulated {
        omega0: f64,
        samples: Vec<(f64, f64)>,
    },
    /// `(x, V)` samples; V is taken to vanish outside the sampled window.
    FromPotential {
        samples: Vec<(f64, f64)>,
        energy: f64,
        mass: f64,
        hbar: f64,
    },
}

impl ProfileSpec {
    pub fn kind(&self) -> ProfileKind {
        match self {
            ProfileSpec::Constant { .. } => ProfileKind::Constant,
            ProfileSpec::Rectangular { .. } => ProfileKind::Rectangular,
            ProfileSpec::HyperbolicPulse { .. } => ProfileKind::HyperbolicPulse,
            ProfileSpec::GaussianBump { .. } => ProfileKind::GaussianBump,
            ProfileSpec::Sech2 { .. } => ProfileKind::Sech2,
            ProfileSpec::Tabulated { .. } => ProfileKind::Tabulated,
            ProfileSpec::FromPotential { .. } => ProfileKind::FromPotential,
        }
    }
}

#[derive(Clone)]
enum Shape {
    Constant,
    /// Constant value inside the support.
    Plateau {
        value: f64,
    },
    Gaussian {
        amplitude: f64,
        width: f64,
        center: f64,
    },
    Sech2 {
        depth: f64,
        width: f64,
        center: f64,
    },
    Table {
        curve: Arc<MonotoneCubic>,
    },
    /// ω² = scale·(E − V(x)); `scale = 2m/ħ²`.
    Potential {
        curve: Arc<MonotoneCubic>,
        energy: f64,
        scale: f64,
    },
}

/// ω²(t) with reference frequency ω₀ and finite support.
///
/// Immutable once built; cheap to clone (tabulated data is shared).
#[derive(Clone)]
pub struct FrequencyProfile {
    omega0: f64,
    support: Support,
    shape: Shape,
    kind: ProfileKind,
    everywhere_positive: bool,
    truncation_tol: Option<f64>,
}

impl fmt::Debug for FrequencyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FrequencyProfile")
            .field("kind", &self.kind)
            .field("omega0", &self.omega0)
            .field("support", &self.support)
            .field("everywhere_positive", &self.everywhere_positive)
            .field("truncation_tol", &self.truncation_tol)
            .finish()
    }
}

impl FrequencyProfile {
    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    pub fn everywhere_positive(&self) -> bool {
        self.everywhere_positive
    }

    /// Tolerance used to truncate an asymptotically constant family; `None`
    /// for families with exact compact support.
    pub fn truncation_tol(&self) -> Option<f64> {
        self.truncation_tol
    }

    pub fn omega_sq(&self, t: f64) -> f64 {
        let w0sq = self.omega0 * self.omega0;
        match &self.shape {
            Shape::Constant => w0sq,
            Shape::Plateau { value } => {
                if t >= self.support.start && t < self.support.end {
                    *value
                } else {
                    w0sq
                }
            }
            Shape::Gaussian { amplitude, width, center } => {
                let u = (t - center) / width;
                w0sq + amplitude * (-u * u).exp()
            }
            Shape::Sech2 { depth, width, center } => {
                let s = sech((t - center) / width);
                w0sq + depth * s * s
            }
            Shape::Table { curve } => {
                if self.support.contains(t) {
                    curve.eval(t)
                } else {
                    w0sq
                }
            }
            Shape::Potential { curve, energy, scale } => {
                if self.support.contains(t) {
                    scale * (energy - curve.eval(t))
                } else {
                    w0sq
                }
            }
        }
    }

    /// Analytic d(ω²)/dt where the family provides one.
    pub fn omega_sq_derivative(&self, t: f64) -> Option<f64> {
        match &self.shape {
            Shape::Constant | Shape::Plateau { .. } => Some(0.0),
            Shape::Gaussian { amplitude, width, center } => {
                let u = (t - center) / width;
                Some(-2.0 * amplitude * u / width * (-u * u).exp())
            }
            Shape::Sech2 { depth, width, center } => {
                let u = (t - center) / width;
                let s = sech(u);
                Some(-2.0 * depth * s * s * u.tanh() / width)
            }
            Shape::Table { .. } | Shape::Potential { .. } => None,
        }
    }

    /// d(ω²)/dt: analytic when available, centered differences otherwise.
    pub fn omega_sq_rate(&self, t: f64) -> f64 {
        if let Some(d) = self.omega_sq_derivative(t) {
            return d;
        }
        let h = 1e-6 * self.support.length();
        (self.omega_sq(t + h) - self.omega_sq(t - h)) / (2.0 * h)
    }

    /// Locations where ω² jumps (rectangular and hyperbolic pulse edges).
    pub fn discontinuities(&self) -> Vec<f64> {
        match self.shape {
            Shape::Plateau { .. } => vec![self.support.start, self.support.end],
            Shape::Table { .. } | Shape::Potential { .. } => vec![self.support.start, self.support.end],
            _ => Vec::new(),
        }
    }

    /// Interpolation nodes of tabulated profiles; the integrands of the
    /// bounds have derivative kinks there.
    pub fn knots(&self) -> Vec<f64> {
        match &self.shape {
            Shape::Table { curve } | Shape::Potential { curve, .. } => curve.nodes().to_vec(),
            _ => Vec::new(),
        }
    }

    /// Smallest ω² seen on the positivity grid and at analytic minima.
    pub fn min_omega_sq(&self) -> f64 {
        let s = self.support;
        let n = POSITIVITY_SAMPLES;
        let mut min = f64::INFINITY;
        for i in 0..=n {
            let t = s.start + s.length() * i as f64 / n as f64;
            min = min.min(self.omega_sq(t));
        }
        for t in self.analytic_extrema() {
            if s.contains(t) {
                min = min.min(self.omega_sq(t));
            }
        }
        min
    }

    fn analytic_extrema(&self) -> Vec<f64> {
        match &self.shape {
            Shape::Gaussian { center, .. } | Shape::Sech2 { center, .. } => vec![*center],
            Shape::Plateau { .. } => vec![0.5 * (self.support.start + self.support.end)],
            Shape::Table { curve } | Shape::Potential { curve, .. } => curve.nodes().to_vec(),
            Shape::Constant => Vec::new(),
        }
    }
}

fn sech(x: f64) -> f64 {
    // 1/cosh without overflow for large |x|
    let e = (-x.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

fn require_positive(name: &'static str, v: f64) -> Result<(), ProfileError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(ProfileError::InvalidParameter { name, reason: format!("must be finite and > 0, got {v}") })
    }
}

fn require_finite(name: &'static str, v: f64) -> Result<(), ProfileError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(ProfileError::InvalidParameter { name, reason: format!("must be finite, got {v}") })
    }
}

fn check_omega0(omega0: f64) -> Result<(), ProfileError> {
    if !(omega0.is_finite() && omega0 > 0.0) {
        return Err(ProfileError::NonPositiveOmega0(omega0));
    }
    Ok(())
}

/// Half-width outside which `|amplitude|·g(u) < tol·ω₀²`, where `g` is the
/// unit bump of the family.
fn truncation_half_width(
    kind: ProfileKind,
    amplitude: f64,
    width: f64,
    omega0: f64,
    tol: f64,
) -> Result<f64, ProfileError> {
    let ratio = amplitude.abs() / (tol * omega0 * omega0);
    if ratio <= 1.0 {
        return Err(ProfileError::EmptySupport { start: 0.0, end: 0.0 });
    }
    Ok(match kind {
        ProfileKind::GaussianBump => width * ratio.ln().sqrt(),
        ProfileKind::Sech2 => width * ratio.sqrt().acosh(),
        _ => unreachable!("only asymptotic families are truncated"),
    })
}

/// Builds a profile from its family parameters.
pub fn make_profile(spec: &ProfileSpec, truncation_tol: f64) -> Result<FrequencyProfile, ProfileError> {
    if !(truncation_tol > 0.0 && truncation_tol <= MAX_TRUNCATION_TOL) {
        return Err(ProfileError::InvalidTruncationTol(truncation_tol));
    }
    let kind = spec.kind();
    let (omega0, support, shape, truncated) = match *spec {
        ProfileSpec::Constant { omega0, start, duration } => {
            check_omega0(omega0)?;
            require_finite("start", start)?;
            require_positive("duration", duration)?;
            (omega0, Support::new(start, start + duration)?, Shape::Constant, false)
        }
        ProfileSpec::Rectangular { omega0, omega1, start, duration } => {
            check_omega0(omega0)?;
            require_finite("omega1", omega1)?;
            require_finite("start", start)?;
            require_positive("duration", duration)?;
            let shape = Shape::Plateau { value: omega1 * omega1 };
            (omega0, Support::new(start, start + duration)?, shape, false)
        }
        ProfileSpec::HyperbolicPulse { omega0, kappa, start, duration } => {
            check_omega0(omega0)?;
            require_finite("kappa", kappa)?;
            require_finite("start", start)?;
            require_positive("duration", duration)?;
            let shape = Shape::Plateau { value: -kappa * kappa };
            (omega0, Support::new(start, start + duration)?, shape, false)
        }
        ProfileSpec::GaussianBump { omega0, amplitude, width, center } => {
            check_omega0(omega0)?;
            require_finite("amplitude", amplitude)?;
            require_positive("width", width)?;
            require_finite("center", center)?;
            let half = truncation_half_width(kind, amplitude, width, omega0, truncation_tol)
                .map_err(|_| ProfileError::EmptySupport { start: center, end: center })?;
            let shape = Shape::Gaussian { amplitude, width, center };
            (omega0, Support::new(center - half, center + half)?, shape, true)
        }
        ProfileSpec::Sech2 { omega0, depth, width, center } => {
            check_omega0(omega0)?;
            require_finite("depth", depth)?;
            require_positive("width", width)?;
            require_finite("center", center)?;
            let half = truncation_half_width(kind, depth, width, omega0, truncation_tol)
                .map_err(|_| ProfileError::EmptySupport { start: center, end: center })?;
            let shape = Shape::Sech2 { depth, width, center };
            (omega0, Support::new(center - half, center + half)?, shape, true)
        }
        ProfileSpec::Tabulated { omega0, ref samples } => {
            check_omega0(omega0)?;
            if samples.len() < 4 {
                return Err(ProfileError::TabulatedTooSparse(samples.len()));
            }
            let (xs, ys): (Vec<f64>, Vec<f64>) = samples.iter().copied().unzip();
            let curve = MonotoneCubic::new(xs, ys)?;
            let (a, b) = curve.domain();
            (omega0, Support::new(a, b)?, Shape::Table { curve: Arc::new(curve) }, false)
        }
        ProfileSpec::FromPotential { ref samples, energy, mass, hbar } => {
            return from_potential(samples, energy, mass, hbar, truncation_tol);
        }
    };
    Ok(finish(omega0, support, shape, kind, truncated.then_some(truncation_tol)))
}

fn finish(
    omega0: f64,
    support: Support,
    shape: Shape,
    kind: ProfileKind,
    truncation_tol: Option<f64>,
) -> FrequencyProfile {
    let mut p = FrequencyProfile { omega0, support, shape, kind, everywhere_positive: false, truncation_tol };
    p.everywhere_positive = p.min_omega_sq() > 0.0;
    p
}

/// Schrödinger translation `k²(x) = 2m(E − V(x))/ħ²`, `k₀ = √(2mE)/ħ`.
///
/// The potential is interpolated between the samples and taken to vanish
/// outside them, so the support is the sampled window.
pub fn from_potential(
    samples: &[(f64, f64)],
    energy: f64,
    mass: f64,
    hbar: f64,
    truncation_tol: f64,
) -> Result<FrequencyProfile, ProfileError> {
    if !(truncation_tol > 0.0 && truncation_tol <= MAX_TRUNCATION_TOL) {
        return Err(ProfileError::InvalidTruncationTol(truncation_tol));
    }
    if !(energy.is_finite() && energy > 0.0) {
        return Err(ProfileError::NegativeAsymptoticK(energy));
    }
    require_positive("mass", mass)?;
    require_positive("hbar", hbar)?;
    if samples.len() < 4 {
        return Err(ProfileError::TabulatedTooSparse(samples.len()));
    }
    let (xs, vs): (Vec<f64>, Vec<f64>) = samples.iter().copied().unzip();
    let curve = MonotoneCubic::new(xs, vs)?;
    let (a, b) = curve.domain();
    let scale = 2.0 * mass / (hbar * hbar);
    let omega0 = (scale * energy).sqrt();
    let shape = Shape::Potential { curve: Arc::new(curve), energy, scale };
    Ok(finish(omega0, Support::new(a, b)?, shape, ProfileKind::FromPotential, None))
}

/// Parses two-column whitespace-separated text; `#` starts a comment.
pub fn parse_table(text: &str) -> Result<Vec<(f64, f64)>, String> {
    let mut rows = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut cols = line.split_whitespace();
        let (Some(x), Some(y), None) = (cols.next(), cols.next(), cols.next()) else {
            return Err(format!("line {}: expected two columns", lineno + 1));
        };
        let parse = |s: &str| s.parse::<f64>().map_err(|_| format!("line {}: `{s}` is not a number", lineno + 1));
        rows.push((parse(x)?, parse(y)?));
    }
    Ok(rows)
}

pub fn read_table(path: &Path) -> Result<Vec<(f64, f64)>, ProfileError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ProfileError::Table { path: path.display().to_string(), message: e.to_string() })?;
    parse_table(&text).map_err(|message| ProfileError::Table { path: path.display().to_string(), message })
}

/// `π/4`-long rectangular pulse with ω₁ = 2ω₀, the canonical closed-form case.
pub fn reference_rectangular() -> ProfileSpec {
    ProfileSpec::Rectangular { omega0: 1.0, omega1: 2.0, start: 0.0, duration: PI / 4.0 }
}

/// ω² = −1 on [0, 1] with ω₀ = 1; the elementary and lower bounds both
/// saturate here.
pub fn reference_hyperbolic() -> ProfileSpec {
    ProfileSpec::HyperbolicPulse { omega0: 1.0, kappa: 1.0, start: 0.0, duration: 1.0 }
}

/// `ω² = 1 + 3·exp(−t²)`.
pub fn reference_gaussian() -> ProfileSpec {
    ProfileSpec::GaussianBump { omega0: 1.0, amplitude: 3.0, width: 1.0, center: 0.0 }
}
