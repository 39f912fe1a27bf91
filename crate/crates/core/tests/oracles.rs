//! Closed-form scattering results checked against the adaptive solver.

use std::f64::consts::PI;

use parabound::profiles::from_potential;
use parabound::{evolve, extract, make_profile, scattering, ProfileSpec, SolverConfig};

fn beta_sq(spec: &ProfileSpec, tol: f64, cfg: &SolverConfig) -> f64 {
    let p = make_profile(spec, tol).unwrap();
    let s = p.support();
    let ev = evolve(&p, cfg, None).unwrap();
    extract(&ev.matrix, p.omega0(), s.start, s.end).unwrap().beta_sq()
}

/// ω² = ω₀² + λ·sech²(t/L):
/// |β|² = cos²(½π√(1 + 4λL²)) / sinh²(πω₀L), with cos → cosh of
/// ½π√(−1 − 4λL²) once 4λL² < −1.
fn sech2_beta_sq(omega0: f64, lambda: f64, width: f64) -> f64 {
    let disc = 1.0 + 4.0 * lambda * width * width;
    let num =
        if disc >= 0.0 { (0.5 * PI * disc.sqrt()).cos().powi(2) } else { (0.5 * PI * (-disc).sqrt()).cosh().powi(2) };
    num / (PI * omega0 * width).sinh().powi(2)
}

#[test]
fn sech2_matches_closed_form() {
    let cfg = SolverConfig::with_rel_tol(1e-10);
    for &(omega0, lambda, width) in
        &[(1.0, 1.5, 1.0), (0.5, 4.0, 0.7), (1.2, -0.2, 1.3), (0.8, -3.0, 0.6), (2.0, 10.0, 0.25)]
    {
        let spec = ProfileSpec::Sech2 { omega0, depth: lambda, width, center: 0.3 };
        let got = beta_sq(&spec, 1e-13, &cfg);
        let want = sech2_beta_sq(omega0, lambda, width);
        assert!(
            (got - want).abs() <= 1e-7 * want.max(1e-3),
            "ω₀ = {omega0}, λ = {lambda}, L = {width}: {got} vs {want}"
        );
    }
}

#[test]
fn sech2_reflectionless_well() {
    // λL² = 2 has no reflection at any frequency
    let cfg = SolverConfig::with_rel_tol(1e-10);
    for &(omega0, width) in &[(0.3, 1.0), (1.0, 1.0), (0.7, 2.0)] {
        let spec = ProfileSpec::Sech2 { omega0, depth: 2.0 / (width * width), width, center: 0.0 };
        let got = beta_sq(&spec, 1e-13, &cfg);
        assert!(got < 1e-9, "ω₀ = {omega0}, L = {width}: |β|² = {got}");
    }
}

#[test]
fn rectangular_family_closed_form() {
    // |β|² = (ω₁² − ω₀²)² / (4ω₀²ω₁²) · sin²(ω₁τ)
    let cfg = SolverConfig::with_rel_tol(1e-10);
    for &(w0, w1, tau) in &[(1.0, 2.0, PI / 4.0), (1.0, 0.5, 1.3), (2.0, 3.0, 0.4), (0.7, 1.1, 5.0)] {
        let got = beta_sq(&ProfileSpec::Rectangular { omega0: w0, omega1: w1, start: -0.2, duration: tau }, 1e-8, &cfg);
        let want = (w1 * w1 - w0 * w0).powi(2) / (4.0 * w0 * w0 * w1 * w1) * (w1 * tau).sin().powi(2);
        assert!((got - want).abs() <= 1e-8 * want.max(1.0), "{got} vs {want}");
    }
}

#[test]
fn forbidden_slab_closed_form() {
    // |β|² = (κ² + ω₀²)² / (4ω₀²κ²) · sinh²(κτ)
    let cfg = SolverConfig::with_rel_tol(1e-10);
    for &(w0, kappa, tau) in &[(1.0, 1.0, 1.0), (0.5, 2.0, 0.8), (1.5, 0.3, 2.0)] {
        let got = beta_sq(&ProfileSpec::HyperbolicPulse { omega0: w0, kappa, start: 1.0, duration: tau }, 1e-8, &cfg);
        let want = (kappa * kappa + w0 * w0).powi(2) / (4.0 * w0 * w0 * kappa * kappa) * (kappa * tau).sinh().powi(2);
        assert!((got - want).abs() <= 1e-8 * want.max(1.0), "{got} vs {want}");
    }
}

#[test]
fn square_barrier_transmission() {
    // E above and below a barrier of height V₀ and width a, with ħ = 1, m = ½
    let (v0, a) = (1.0, 1.5);
    for &energy in &[0.3, 0.8, 1.7, 4.0] {
        let samples: Vec<(f64, f64)> = (0..=8).map(|k| (a * k as f64 / 8.0, v0)).collect();
        let p = from_potential(&samples, energy, 0.5, 1.0, 1e-8).unwrap();
        let ev = evolve(&p, &SolverConfig::with_rel_tol(1e-10), None).unwrap();
        let c = extract(&ev.matrix, p.omega0(), 0.0, a).unwrap();
        let t = scattering(&c).transmission;
        let k0 = energy.sqrt();
        let want = if energy > v0 {
            let k1 = (energy - v0).sqrt();
            1.0 / (1.0 + (v0 * v0) / (4.0 * energy * (energy - v0)) * (k1 * a).sin().powi(2))
        } else {
            let q = (v0 - energy).sqrt();
            1.0 / (1.0 + (v0 * v0) / (4.0 * energy * (v0 - energy)) * (q * a).sinh().powi(2))
        };
        assert!((t - want).abs() < 1e-8, "E = {energy}: T = {t} vs {want} (k₀ = {k0})");
    }
}

#[test]
fn time_reversed_profile_has_same_beta() {
    // ω²(t) and ω²(−t) share |β|² (the transfer matrix is conjugated by diag(1, −1))
    let cfg = SolverConfig::with_rel_tol(1e-10);
    let samples: Vec<(f64, f64)> =
        (0..=40).map(|k| k as f64 * 0.1).map(|t| (t, 1.0 + 2.0 * (t * 0.7).sin().powi(2) * (4.0 - t) / 4.0)).collect();
    let reversed: Vec<(f64, f64)> = samples.iter().rev().map(|&(t, w)| (-t, w)).collect();
    let a = beta_sq(&ProfileSpec::Tabulated { omega0: 1.0, samples }, 1e-8, &cfg);
    let b = beta_sq(&ProfileSpec::Tabulated { omega0: 1.0, samples: reversed }, 1e-8, &cfg);
    assert!((a - b).abs() < 1e-8 * a.max(1.0), "{a} vs {b}");
}
