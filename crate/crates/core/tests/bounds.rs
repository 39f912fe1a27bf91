use num_complex::Complex64;
use parabound::profiles::reference_gaussian;
use parabound::verify::{dominance_violations, sweep_library};
use parabound::{
    compose, compose_coefficients, composition_bounds, elementary_bound, evolve, evolve_delta, extract,
    interpolating_bound, lower_bound_beta, make_profile, probe_bound, split, triangle_bound, BoundKind,
    PhaseStrippedPair, ProbeFunction, ProfileSpec, QuadConfig, SolverConfig,
};
use proptest::prelude::*;

#[test]
fn whole_sweep_is_dominated() {
    let specs = sweep_library();
    assert!(specs.len() >= 200);
    for spec in specs.iter().step_by(7) {
        let v = dominance_violations(spec, 1e-8).unwrap();
        assert!(v.is_empty(), "{spec:?}: {v:?}");
    }
}

#[test]
fn lower_bound_sits_below_exact() {
    let cfg = SolverConfig::with_rel_tol(1e-10);
    for spec in sweep_library().iter().step_by(11) {
        let p = make_profile(spec, 1e-10).unwrap();
        let s = p.support();
        let t = evolve(&p, &cfg, None).unwrap().matrix;
        let exact = extract(&t, p.omega0(), s.start, s.end).unwrap().beta_sq();
        let low = lower_bound_beta(&t).unwrap();
        if low.applicable {
            assert!(low.lower_beta_sq <= exact * (1.0 + 1e-8) + 1e-12, "{spec:?}: {} > {exact}", low.lower_beta_sq);
        }
    }
}

#[test]
fn report_fields_are_consistent() {
    let p = make_profile(&reference_gaussian(), 1e-10).unwrap();
    let q = QuadConfig::default();
    let probe = ProbeFunction::adiabatic(&p, 0.5).unwrap();
    for r in [
        elementary_bound(&p, &q).unwrap(),
        probe_bound(&p, &probe, &q).unwrap(),
        interpolating_bound(&p, 0.5, &q).unwrap(),
        triangle_bound(&p, &probe, &q).unwrap(),
    ] {
        assert!(r.kind.is_upper());
        assert!((r.alpha_sq_bound - r.beta_sq_bound - 1.0).abs() < 1e-12);
        assert!((r.transmission_lower + r.reflection_upper - 1.0).abs() < 1e-12);
        assert!((r.transmission_lower * r.alpha_sq_bound - 1.0).abs() < 1e-12);
        assert!(r.beta_sq_bound_with_error() >= r.beta_sq_bound);
    }
    assert_eq!(interpolating_bound(&p, 0.5, &q).unwrap().kind, BoundKind::Interpolating(0.5));
}

#[test]
fn interpolating_is_probe_bound_of_family_member() {
    let p = make_profile(&ProfileSpec::Sech2 { omega0: 1.0, depth: 1.5, width: 1.0, center: 0.0 }, 1e-10).unwrap();
    let q = QuadConfig::default();
    for eps in [0.0, 0.3, 1.0] {
        let a = interpolating_bound(&p, eps, &q).unwrap().integral.unwrap();
        let b = probe_bound(&p, &ProbeFunction::adiabatic(&p, eps).unwrap(), &q).unwrap().integral.unwrap();
        assert!((a - b).abs() <= 1e-8 * a.max(1.0), "ε = {eps}: {a} vs {b}");
    }
}

#[test]
fn coefficient_route_agrees_with_matrix_route() {
    let cfg = SolverConfig::with_rel_tol(1e-10);
    let p = make_profile(&reference_gaussian(), 1e-10).unwrap();
    let s = p.support();
    let t = evolve(&p, &cfg, None).unwrap().matrix;
    let c = extract(&t, p.omega0(), s.start, s.end).unwrap();
    let a = PhaseStrippedPair::from_matrix(&t);
    let b = PhaseStrippedPair::from_coefficients(&c);
    assert!((a.alpha_tilde - b.alpha_tilde).norm() < 1e-12);
    assert!((a.beta_tilde - b.beta_tilde).norm() < 1e-12);
}

#[test]
fn split_gaussian_recomposes() {
    let cfg = SolverConfig::with_rel_tol(1e-10);
    let p = make_profile(&reference_gaussian(), 1e-10).unwrap();
    let s = p.support();
    let exact_spec = ProfileSpec::Rectangular { omega0: 1.0, omega1: 1.2, start: s.start, duration: s.length() };
    let sp = split(&p, &exact_spec).unwrap();
    let ev = evolve_delta(&sp, &cfg).unwrap();
    let full = compose(&ev.exact, &ev.delta.matrix).unwrap();
    let direct = evolve(&p, &cfg, None).unwrap().matrix;
    assert!(full.max_abs_diff(&direct) < 1e-7, "{full:?} vs {direct:?}");
    let pair = compose_coefficients(
        &PhaseStrippedPair::from_matrix(&ev.exact),
        &PhaseStrippedPair::from_matrix(&ev.delta.matrix),
    );
    let want = extract(&direct, p.omega0(), s.start, s.end).unwrap().beta_sq();
    assert!((pair.beta_tilde.norm_sqr() - want).abs() < 1e-7 * want.max(1.0));
    let be = PhaseStrippedPair::from_matrix(&ev.exact).beta_tilde.norm();
    let bd = PhaseStrippedPair::from_matrix(&ev.delta.matrix).beta_tilde.norm();
    let (lo, hi) = composition_bounds(be, bd).unwrap();
    assert!(lo <= want.sqrt() + 1e-8 && want.sqrt() <= hi + 1e-8);
}

fn pair(r: f64, phase_a: f64, phase_b: f64) -> PhaseStrippedPair {
    PhaseStrippedPair {
        alpha_tilde: Complex64::from_polar((1.0 + r * r).sqrt(), phase_a),
        beta_tilde: Complex64::from_polar(r, phase_b),
    }
}

proptest! {
    #[test]
    fn composition_preserves_normalization(
        r1 in 0.0..5.0f64, a1 in -3.2..3.2f64, b1 in -3.2..3.2f64,
        r2 in 0.0..5.0f64, a2 in -3.2..3.2f64, b2 in -3.2..3.2f64,
    ) {
        let c = compose_coefficients(&pair(r1, a1, b1), &pair(r2, a2, b2));
        let scale = 1.0 + c.alpha_tilde.norm_sqr();
        prop_assert!(c.normalization_residual().abs() <= 1e-12 * scale);
        let (lo, hi) = composition_bounds(r1, r2).unwrap();
        let b = c.beta_tilde.norm();
        prop_assert!(lo <= b * (1.0 + 1e-12) + 1e-12 && b <= hi * (1.0 + 1e-12) + 1e-12);
    }

    #[test]
    fn transparent_is_identity(r in 0.0..5.0f64, a in -3.2..3.2f64, b in -3.2..3.2f64) {
        let p = pair(r, a, b);
        let x = compose_coefficients(&PhaseStrippedPair::TRANSPARENT, &p);
        let y = compose_coefficients(&p, &PhaseStrippedPair::TRANSPARENT);
        prop_assert!((x.alpha_tilde - p.alpha_tilde).norm() < 1e-12 && (x.beta_tilde - p.beta_tilde).norm() < 1e-12);
        prop_assert!((y.alpha_tilde - p.alpha_tilde).norm() < 1e-12 && (y.beta_tilde - p.beta_tilde).norm() < 1e-12);
    }
}
