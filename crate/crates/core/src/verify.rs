//! End-to-end checks over a built-in profile library.
//!
//! Each check returns a [`CheckOutcome`]; [`run_all`] runs them in order.
//! They are the same checks the `verify` command runs.

use std::f64::consts::{LN_2, PI};
use std::time::Instant;

use rand::{rngs::StdRng, Rng, SeedableRng};
use rayon::prelude::*;

use crate::bogoliubov::{extract, normalization_residual};
use crate::bounds::{
    elementary_bound, interpolating_bound, lower_bound_beta, probe_bound, triangle_bound, BoundReport,
};
use crate::interaction::{compose, composition_bounds, evolve_delta, split, PhaseStrippedPair};
use crate::probe_optimizer::{optimize_probe, OptimizerConfig, ProbeFunction};
use crate::profiles::{
    make_profile, reference_gaussian, reference_hyperbolic, reference_rectangular, FrequencyProfile, ProfileSpec,
};
use crate::propagator::{evolve, evolve_fixed, PlainFrame, SolverConfig, TransferMatrix};
use crate::quadrature::QuadConfig;

/// Truncation tolerance used for the library's asymptotic families.
pub const LIBRARY_TRUNCATION: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(id: u8, name: &'static str, failures: Vec<String>, summary: String) -> Self {
        let passed = failures.is_empty();
        let detail = if passed { summary } else { format!("{summary}; {}", failures.join("; ")) };
        Self { id, name, passed, detail }
    }
}

/// One representative of each family.
pub fn library() -> Vec<(&'static str, ProfileSpec)> {
    vec![
        ("constant", ProfileSpec::Constant { omega0: 1.0, start: 0.0, duration: 2.0 }),
        ("rectangular", reference_rectangular()),
        ("hyperbolic", reference_hyperbolic()),
        ("gaussian", reference_gaussian()),
        ("sech2", ProfileSpec::Sech2 { omega0: 1.0, depth: 1.5, width: 1.0, center: 0.0 }),
    ]
}

fn build(spec: &ProfileSpec) -> FrequencyProfile {
    make_profile(spec, LIBRARY_TRUNCATION).expect("library profiles are valid")
}

/// Dominance-sweep parameter grid: every family, several scales.
pub fn sweep_library() -> Vec<ProfileSpec> {
    let mut out = Vec::new();
    for &w0 in &[0.5, 1.0, 1.5, 2.0] {
        for &duration in &[0.5, 1.0, 3.0] {
            out.push(ProfileSpec::Constant { omega0: w0, start: -0.3, duration });
        }
        for &ratio in &[0.3, 0.7, 1.5, 2.0, 3.0] {
            for &duration in &[0.3, 1.0, 2.5] {
                out.push(ProfileSpec::Rectangular { omega0: w0, omega1: ratio * w0, start: 0.0, duration });
            }
        }
        for &kappa in &[0.5, 1.0, 2.0] {
            for &duration in &[0.3, 1.0, 2.0] {
                out.push(ProfileSpec::HyperbolicPulse { omega0: w0, kappa, start: 0.5, duration });
            }
        }
        for &rel in &[-1.5, -0.5, 0.5, 3.0, 8.0] {
            for &width in &[0.3, 1.0, 2.5] {
                out.push(ProfileSpec::GaussianBump { omega0: w0, amplitude: rel * w0 * w0, width, center: 0.0 });
            }
        }
        for &rel in &[-2.0, -0.5, 0.5, 1.5, 6.0] {
            for &width in &[0.3, 1.0, 2.0] {
                out.push(ProfileSpec::Sech2 { omega0: w0, depth: rel * w0 * w0, width, center: 1.0 });
            }
        }
    }
    out
}

fn beta_sq(profile: &FrequencyProfile, cfg: &SolverConfig) -> Result<(TransferMatrix, f64), String> {
    let ev = evolve(profile, cfg, None).map_err(|e| e.to_string())?;
    let s = profile.support();
    let c = extract(&ev.matrix, profile.omega0(), s.start, s.end).map_err(|e| e.to_string())?;
    Ok((ev.matrix, c.beta_sq()))
}

/// `|det T − 1| ≤ 100·rel_tol` for the library at three tolerances.
pub fn check_unimodularity() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for (name, spec) in library() {
        let p = build(&spec);
        for rel in [1e-6, 1e-8, 1e-10] {
            match evolve(&p, &SolverConfig::with_rel_tol(rel), None) {
                Ok(ev) => {
                    worst = worst.max(ev.det_drift / rel);
                    if ev.det_drift > 100.0 * rel {
                        failures.push(format!("{name} at {rel:e}: drift {:e}", ev.det_drift));
                    }
                }
                Err(e) => failures.push(format!("{name} at {rel:e}: {e}")),
            }
        }
    }
    CheckOutcome::new(1, "unimodularity", failures, format!("15 runs, worst drift/rel_tol = {worst:.3}"))
}

/// `||α|² − |β|² − 1| ≤ 1e-8` for every extraction over the library.
pub fn check_normalization() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for (name, spec) in library() {
        let p = build(&spec);
        let s = p.support();
        for rel in [1e-6, 1e-8, 1e-10] {
            let r = evolve(&p, &SolverConfig::with_rel_tol(rel), None)
                .map_err(|e| e.to_string())
                .and_then(|ev| extract(&ev.matrix, p.omega0(), s.start, s.end).map_err(|e| e.to_string()));
            match r {
                Ok(c) => {
                    let res = normalization_residual(&c).abs();
                    worst = worst.max(res);
                    if res > 1e-8 {
                        failures.push(format!("{name} at {rel:e}: residual {res:e}"));
                    }
                }
                Err(e) => failures.push(format!("{name} at {rel:e}: {e}")),
            }
        }
    }
    CheckOutcome::new(2, "normalization", failures, format!("worst residual {worst:.2e}"))
}

/// Rectangular pulse ω₁ = 2ω₀, τ = π/4 against `T = [[0, ½], [−2, 0]]`.
pub fn check_rectangular_oracle() -> CheckOutcome {
    let p = build(&reference_rectangular());
    let cfg = SolverConfig::with_rel_tol(1e-10);
    let mut failures = Vec::new();
    let mut summary = String::new();
    match evolve(&p, &cfg, None) {
        Ok(ev) => {
            let c = extract(&ev.matrix, 1.0, 0.0, PI / 4.0).expect("unimodular");
            let t = crate::bogoliubov::scattering(&c).transmission;
            let exact = TransferMatrix::new(0.0, 0.5, -2.0, 0.0);
            for (what, got, want) in [
                ("|β|²", c.beta_sq(), 0.5625),
                ("|α|²", c.alpha_sq(), 1.5625),
                ("transmission", t, 0.64),
                ("matrix", ev.matrix.max_abs_diff(&exact), 0.0),
            ] {
                if (got - want).abs() > 1e-8 {
                    failures.push(format!("{what} = {got} (expected {want})"));
                }
            }
            summary = format!("|β|² = {:.12}, T = {:.12}", c.beta_sq(), t);
        }
        Err(e) => failures.push(e.to_string()),
    }
    CheckOutcome::new(3, "rectangular oracle", failures, summary)
}

/// On ω² = −1, [0, 1]: exact, elementary and lower values all equal sinh²1.
pub fn check_hyperbolic_saturation() -> CheckOutcome {
    let p = build(&reference_hyperbolic());
    let target = 1f64.sinh().powi(2);
    let mut failures = Vec::new();
    let exact = beta_sq(&p, &SolverConfig::default());
    let elementary = elementary_bound(&p, &QuadConfig::default()).map(|r| r.beta_sq_bound).map_err(|e| e.to_string());
    let lower =
        exact.clone().and_then(|(m, _)| lower_bound_beta(&m).map(|l| l.lower_beta_sq).map_err(|e| e.to_string()));
    let mut values = Vec::new();
    for (what, v) in [("exact", exact.map(|x| x.1)), ("elementary", elementary), ("lower", lower)] {
        match v {
            Ok(v) => {
                values.push(format!("{what} {v:.10}"));
                if (v - target).abs() > 1e-6 {
                    failures.push(format!("{what} = {v} (expected {target})"));
                }
            }
            Err(e) => failures.push(format!("{what}: {e}")),
        }
    }
    CheckOutcome::new(4, "hyperbolic saturation", failures, values.join(", "))
}

/// Violations of `lower ≤ |β|² ≤ upper` for one profile.
pub fn dominance_violations(spec: &ProfileSpec, rel_tol: f64) -> Result<Vec<String>, String> {
    let p = make_profile(spec, LIBRARY_TRUNCATION).map_err(|e| e.to_string())?;
    let quad = QuadConfig::default();
    let (m, exact) = beta_sq(&p, &SolverConfig::with_rel_tol(rel_tol))?;
    let slack = 100.0 * rel_tol * exact.max(1.0);
    let mut out = Vec::new();

    let lower = lower_bound_beta(&m).map_err(|e| e.to_string())?;
    if lower.lower_beta_sq > exact + slack {
        out.push(format!("lower {} > exact {exact}", lower.lower_beta_sq));
    }

    let mut reports: Vec<BoundReport> = Vec::new();
    let err = |e: crate::bounds::BoundError| e.to_string();
    reports.push(elementary_bound(&p, &quad).map_err(err)?);
    let constant = ProbeFunction::constant(&p);
    reports.push(probe_bound(&p, &constant, &quad).map_err(err)?);
    reports.push(triangle_bound(&p, &constant, &quad).map_err(err)?);
    if p.everywhere_positive() {
        for eps in [0.25, 0.5, 0.75, 1.0] {
            reports.push(interpolating_bound(&p, eps, &quad).map_err(err)?);
        }
        if let Ok(adiabatic) = ProbeFunction::adiabatic(&p, 1.0) {
            if adiabatic.check_admissible(&p).is_ok() {
                reports.push(probe_bound(&p, &adiabatic, &quad).map_err(err)?);
                reports.push(triangle_bound(&p, &adiabatic, &quad).map_err(err)?);
            }
        }
    }
    for r in reports {
        let upper = r.beta_sq_bound_with_error();
        if exact > upper + slack {
            out.push(format!("{} bound {upper} < exact {exact}", r.kind));
        }
    }
    Ok(out)
}

/// Every applicable bound brackets the exact |β|² over ≥ 200 profiles.
pub fn check_dominance() -> CheckOutcome {
    let started = Instant::now();
    let specs = sweep_library();
    let rel_tol = 1e-8;
    let results: Vec<(usize, Result<Vec<String>, String>)> =
        specs.par_iter().enumerate().map(|(i, s)| (i, dominance_violations(s, rel_tol))).collect();
    let mut failures = Vec::new();
    for (i, r) in results {
        match r {
            Ok(v) => failures.extend(v.into_iter().map(|m| format!("{:?}: {m}", specs[i]))),
            Err(e) => failures.push(format!("{:?}: {e}", specs[i])),
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    if elapsed > 60.0 {
        failures.push(format!("took {elapsed:.1} s"));
    }
    CheckOutcome::new(5, "dominance sweep", failures, format!("{} profiles in {elapsed:.2} s", specs.len()))
}

/// Ω = ω on the reference Gaussian gives I = 2 ln 2; Ω = ω₀ gives 3√π.
pub fn check_adiabatic_tightening() -> CheckOutcome {
    let p = build(&reference_gaussian());
    let quad = QuadConfig::default();
    let mut failures = Vec::new();
    let probe = ProbeFunction::adiabatic(&p, 1.0).expect("positive profile");
    let adiabatic = probe_bound(&p, &probe, &quad);
    let elementary = elementary_bound(&p, &quad);
    let mut summary = String::new();
    match (adiabatic, elementary) {
        (Ok(a), Ok(e)) => {
            let (ia, ie) = (a.integral.unwrap(), e.integral.unwrap());
            if (ia - 2.0 * LN_2).abs() > 1e-6 {
                failures.push(format!("adiabatic I = {ia}"));
            }
            if (a.beta_sq_bound - 0.5625).abs() > 1e-6 {
                failures.push(format!("adiabatic bound = {}", a.beta_sq_bound));
            }
            if (ie - 3.0 * PI.sqrt()).abs() > 1e-4 + e.quad_error {
                failures.push(format!("elementary I = {ie}"));
            }
            summary = format!("I(Ω=ω) = {ia:.10}, I(Ω=ω₀) = {ie:.8}");
        }
        (a, e) => {
            if let Err(x) = a {
                failures.push(x.to_string());
            }
            if let Err(x) = e {
                failures.push(x.to_string());
            }
        }
    }
    CheckOutcome::new(6, "adiabatic tightening", failures, summary)
}

fn two_hump_probe(p: &FrequencyProfile) -> ProbeFunction {
    let s = p.support();
    let n = 24;
    let theta: Vec<f64> = (0..=n)
        .map(|k| {
            let x = k as f64 / n as f64;
            0.35 * (2.0 * PI * x).sin() * (PI * x).sin()
        })
        .collect();
    ProbeFunction::from_nodes(p.omega0(), s.start, s.end, theta).expect("pinned nodes")
}

/// Probe-frame evolution reproduces the plain-frame |β|².
pub fn check_frame_independence() -> CheckOutcome {
    let rel_tol = 1e-9;
    let cfg = SolverConfig::with_rel_tol(rel_tol);
    let profiles = [
        ("gaussian", reference_gaussian()),
        ("sech2", ProfileSpec::Sech2 { omega0: 1.0, depth: 1.5, width: 1.0, center: 0.0 }),
        ("rectangular", reference_rectangular()),
    ];
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let mut runs = 0;
    for (name, spec) in profiles {
        let p = build(&spec);
        let s = p.support();
        let plain = match beta_sq(&p, &cfg) {
            Ok(v) => v.1,
            Err(e) => {
                failures.push(format!("{name}: {e}"));
                continue;
            }
        };
        let mut probes = vec![
            ProbeFunction::bump(&p, 0.3).expect("finite"),
            ProbeFunction::bump(&p, -0.5).expect("finite"),
            two_hump_probe(&p),
        ];
        if let Ok(a) = ProbeFunction::adiabatic(&p, 1.0) {
            if a.check_admissible(&p).is_ok() {
                probes.push(a);
            }
        }
        for probe in probes {
            runs += 1;
            let r = evolve(&p, &cfg, Some(&probe))
                .map_err(|e| e.to_string())
                .and_then(|ev| extract(&ev.matrix, p.omega0(), s.start, s.end).map_err(|e| e.to_string()));
            match r {
                Ok(c) => {
                    let diff = (c.beta_sq() - plain).abs() / plain.max(1.0);
                    worst = worst.max(diff / rel_tol);
                    if diff > 10.0 * rel_tol {
                        failures.push(format!("{name} with {}: |β|² {} vs {plain}", probe.label(), c.beta_sq()));
                    }
                }
                Err(e) => failures.push(format!("{name} with {}: {e}", probe.label())),
            }
        }
    }
    CheckOutcome::new(7, "frame independence", failures, format!("{runs} probe runs, worst diff/rel_tol = {worst:.3}"))
}

/// `T_e·T_Δ` reproduces the direct T, and |β| sits inside the sandwich.
pub fn check_interaction_picture() -> CheckOutcome {
    let rel_tol = 1e-9;
    let cfg = SolverConfig::with_rel_tol(rel_tol);
    let mut failures = Vec::new();
    let gaussian = build(&reference_gaussian());
    let gs = gaussian.support();
    let cases = [
        ("rectangular", reference_rectangular(), None),
        ("hyperbolic", reference_hyperbolic(), None),
        (
            "gaussian/rectangular",
            reference_gaussian(),
            Some(ProfileSpec::Rectangular { omega0: 1.0, omega1: 2f64.sqrt(), start: gs.start, duration: gs.length() }),
        ),
    ];
    let mut worst = 0.0f64;
    for (name, spec, exact_spec) in cases {
        let p = build(&spec);
        let s = p.support();
        let exact_spec =
            exact_spec.unwrap_or(ProfileSpec::Constant { omega0: p.omega0(), start: s.start, duration: s.length() });
        let r = split(&p, &exact_spec)
            .map_err(|e| e.to_string())
            .and_then(|sp| evolve_delta(&sp, &cfg).map_err(|e| e.to_string()))
            .and_then(|d| {
                let full = compose(&d.exact, &d.delta.matrix).map_err(|e| e.to_string())?;
                let direct = evolve(&p, &cfg, None).map_err(|e| e.to_string())?.matrix;
                Ok((d, full, direct))
            });
        match r {
            Ok((d, full, direct)) => {
                let diff = full.max_abs_diff(&direct);
                worst = worst.max(diff / rel_tol);
                if diff > 10.0 * rel_tol {
                    failures.push(format!("{name}: reconstruction off by {diff:e}"));
                }
                let be = PhaseStrippedPair::from_matrix(&d.exact).beta_tilde.norm();
                let bd = PhaseStrippedPair::from_matrix(&d.delta.matrix).beta_tilde.norm();
                let b = PhaseStrippedPair::from_matrix(&direct).beta_tilde.norm();
                let (lo, hi) = composition_bounds(be, bd).expect("non-negative");
                let slack = 10.0 * rel_tol * hi.max(1.0);
                if b < lo - slack || b > hi + slack {
                    failures.push(format!("{name}: |β| = {b} outside [{lo}, {hi}]"));
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    CheckOutcome::new(8, "interaction picture", failures, format!("3 splits, worst diff/rel_tol = {worst:.3}"))
}

/// Optimizer contract on the reference Gaussian with 256 and 512 cells.
pub fn check_optimizer() -> CheckOutcome {
    let started = Instant::now();
    let p = build(&reference_gaussian());
    let cfg = OptimizerConfig::default();
    let quad = QuadConfig::default();
    let mut failures = Vec::new();
    let runs: Vec<_> = [256usize, 512].par_iter().map(|&n| optimize_probe(&p, n, &cfg, &quad)).collect();
    let mut summary = String::new();
    match (&runs[0], &runs[1]) {
        (Ok(a), Ok(b)) => {
            let (sa, sb) = (a.diagnostics.action_value, b.diagnostics.action_value);
            if sa > 2.0 * LN_2 + 1e-6 {
                failures.push(format!("S_opt = {sa} exceeds 2 ln 2"));
            }
            for run in [a, b] {
                if run.history.windows(2).any(|w| w[1] > w[0]) {
                    failures.push("action increased during descent".into());
                }
            }
            let change = (sa - sb).abs() / sa;
            if change >= 0.01 {
                failures.push(format!("doubling N changed S_opt by {:.3}%", 100.0 * change));
            }
            summary = format!(
                "S_opt(256) = {sa:.8}, S_opt(512) = {sb:.8}, bound {:.6}, {} iterations",
                a.report.beta_sq_bound, a.diagnostics.iterations
            );
        }
        (a, b) => {
            for r in [a, b] {
                if let Err(e) = r {
                    failures.push(e.to_string());
                }
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    if elapsed > 30.0 {
        failures.push(format!("took {elapsed:.1} s"));
    }
    CheckOutcome::new(9, "optimizer contract", failures, format!("{summary} in {elapsed:.2} s"))
}

/// Fixed-step error ratios against a Richardson-extrapolated reference.
pub fn check_integrator_order() -> CheckOutcome {
    let p = build(&reference_gaussian());
    let field = PlainFrame { profile: &p };
    let run = |n| evolve_fixed(&field, n).expect("finite generator");
    let (fine, finer) = (run(8192), run(16384));
    let reference = TransferMatrix::new(
        (4.0 * finer.a - fine.a) / 3.0,
        (4.0 * finer.b - fine.b) / 3.0,
        (4.0 * finer.c - fine.c) / 3.0,
        (4.0 * finer.d - fine.d) / 3.0,
    );
    let errors: Vec<f64> = [64, 128, 256, 512].iter().map(|&n| run(n).max_abs_diff(&reference)).collect();
    let ratios: Vec<f64> = errors.windows(2).map(|w| w[0] / w[1]).collect();
    let failures = ratios
        .iter()
        .filter(|r| !(3.5..=4.5).contains(*r))
        .map(|r| format!("ratio {r:.4} outside [3.5, 4.5]"))
        .collect();
    let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.4}")).collect();
    CheckOutcome::new(10, "integrator order", failures, format!("ratios {}", shown.join(", ")))
}

/// Constant ω²: the adaptive product equals the single rotation.
pub fn check_constant_reduction() -> CheckOutcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let cfg = SolverConfig::default();
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let omega0 = rng.gen_range(0.1..5.0);
        let duration = rng.gen_range(0.1..10.0);
        let p = make_profile(&ProfileSpec::Constant { omega0, start: 0.0, duration }, LIBRARY_TRUNCATION)
            .expect("valid constant profile");
        match evolve(&p, &cfg, None) {
            Ok(ev) => {
                let diff = ev.matrix.max_abs_diff(&TransferMatrix::rotation(omega0 * duration));
                worst = worst.max(diff);
                if diff > cfg.rel_tol {
                    failures.push(format!("ω₀ = {omega0}, τ = {duration}: off by {diff:e}"));
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    CheckOutcome::new(11, "constant reduction", failures, format!("10 draws, worst entry error {worst:.2e}"))
}

pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        check_unimodularity(),
        check_normalization(),
        check_rectangular_oracle(),
        check_hyperbolic_saturation(),
        check_dominance(),
        check_adiabatic_tightening(),
        check_frame_independence(),
        check_interaction_picture(),
        check_optimizer(),
        check_integrator_order(),
        check_constant_reduction(),
    ]
}
