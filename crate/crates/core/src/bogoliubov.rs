//! Bogoliubov coefficients and their scattering translation.
//!
//! A pure `e^{+iω₀t}` mode before `t_i` leaves as `α e^{+iω₀t} + β e^{−iω₀t}`
//! after `t_f`. Both coefficients are linear in the entries of the real
//! transfer matrix; this is the only module that touches complex numbers.

use num_complex::Complex64;

use crate::propagator::TransferMatrix;

/// Largest `|det T − 1|` accepted for extraction.
pub const UNIMODULAR_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BogoliubovError {
    #[error("transfer matrix is not unimodular: |det − 1| = {drift:e}")]
    NotUnimodular { drift: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovCoefficients {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub omega0: f64,
    pub t_i: f64,
    pub t_f: f64,
    /// `tr(T Tᵀ)`, kept for the trace-route accessors.
    trace_ttt: f64,
}

impl BogoliubovCoefficients {
    /// Coefficients known without their transfer matrix (e.g. composed).
    pub fn from_parts(alpha: Complex64, beta: Complex64, omega0: f64, t_i: f64, t_f: f64) -> Self {
        let trace_ttt = 2.0 * (alpha.norm_sqr() + beta.norm_sqr());
        Self { alpha, beta, omega0, t_i, t_f, trace_ttt }
    }

    pub fn alpha_sq(&self) -> f64 {
        self.alpha.norm_sqr()
    }

    pub fn beta_sq(&self) -> f64 {
        self.beta.norm_sqr()
    }

    /// `¼ tr(T Tᵀ + I)`.
    pub fn alpha_sq_from_trace(&self) -> f64 {
        0.25 * (self.trace_ttt + 2.0)
    }

    /// `¼ tr(T Tᵀ − I)`.
    pub fn beta_sq_from_trace(&self) -> f64 {
        0.25 * (self.trace_ttt - 2.0)
    }

    /// Largest disagreement between the direct and trace routes, relative
    /// to `max(1, |α|²)`. Equals `½|det T − 1|` up to rounding.
    pub fn route_discrepancy(&self) -> f64 {
        let scale = self.alpha_sq().max(1.0);
        let da = (self.alpha_sq() - self.alpha_sq_from_trace()).abs();
        let db = (self.beta_sq() - self.beta_sq_from_trace()).abs();
        da.max(db) / scale
    }
}

/// α = ½[a + d + i(b − c)]·e^{−iω₀(t_f − t_i)},
/// β = ½[a − d + i(b + c)]·e^{−iω₀(t_f + t_i)}.
pub fn extract(t: &TransferMatrix, omega0: f64, t_i: f64, t_f: f64) -> Result<BogoliubovCoefficients, BogoliubovError> {
    let drift = t.det_drift();
    if !(drift <= UNIMODULAR_TOL) {
        return Err(BogoliubovError::NotUnimodular { drift });
    }
    let alpha = Complex64::new(0.5 * (t.a + t.d), 0.5 * (t.b - t.c)) * Complex64::cis(-omega0 * (t_f - t_i));
    let beta = Complex64::new(0.5 * (t.a - t.d), 0.5 * (t.b + t.c)) * Complex64::cis(-omega0 * (t_f + t_i));
    Ok(BogoliubovCoefficients { alpha, beta, omega0, t_i, t_f, trace_ttt: t.frobenius_sq() })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringCoefficients {
    pub transmission: f64,
    pub reflection: f64,
}

/// Space-domain reading: `T = 1/|α|²`, `R = |β|²/|α|²`.
pub fn scattering(coeffs: &BogoliubovCoefficients) -> ScatteringCoefficients {
    let a2 = coeffs.alpha_sq();
    ScatteringCoefficients { transmission: 1.0 / a2, reflection: coeffs.beta_sq() / a2 }
}

/// `|α|² − |β|² − 1`.
pub fn normalization_residual(coeffs: &BogoliubovCoefficients) -> f64 {
    coeffs.alpha_sq() - coeffs.beta_sq() - 1.0
}
