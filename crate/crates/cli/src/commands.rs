use parabound::bounds::BoundError;
use parabound::interaction::InteractionError;
use parabound::probe_optimizer::OptimizerError;
use parabound::profiles::ProfileError;
use parabound::propagator::PropagatorError;
use parabound::verify::{run_all, CheckOutcome};
use parabound::{
    compose, composition_bounds, elementary_bound, evolve, evolve_delta, extract, interpolating_bound,
    lower_bound_beta, normalization_residual, optimize_probe, probe_bound, scattering, split, triangle_bound,
    BoundKind, BoundReport, FrequencyProfile, PhaseStrippedPair, ProbeFunction, TransferMatrix,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{BoundRequest, ConfigError, Format, ProbeChoice, RunSpec, ValidationError};
use crate::report::{fmt_f64, opt_f64, to_json, BoundJson, Ordered, Table};
use crate::CliError;

/// Bytes to emit plus a one-line human summary.
#[derive(Debug)]
pub struct Output {
    pub bytes: Vec<u8>,
    pub summary: String,
}

/// A command's report and, separately, whether the run counts as a failure.
/// Failures still carry their report so it can be written out.
#[derive(Debug)]
pub struct Outcome {
    pub output: Output,
    pub failure: Option<CliError>,
}

impl From<Output> for Outcome {
    fn from(output: Output) -> Self {
        Self { output, failure: None }
    }
}

fn invalid(msg: String) -> CliError {
    CliError::Config(ConfigError::Validation(ValidationError { violations: vec![msg] }))
}

fn profile_err(e: ProfileError) -> CliError {
    invalid(format!("profile: {e}"))
}

fn propagator_err(e: PropagatorError) -> CliError {
    match e {
        PropagatorError::InvalidConfig(m) => invalid(format!("solver: {m}")),
        e => CliError::Numerical(e.to_string()),
    }
}

fn interaction_err(e: InteractionError) -> CliError {
    match e {
        InteractionError::MismatchedSupport { .. }
        | InteractionError::MismatchedOmega0 { .. }
        | InteractionError::NegativeMagnitude(..)
        | InteractionError::Profile(_) => invalid(format!("split: {e}")),
        InteractionError::Propagator(p) => propagator_err(p),
        e => CliError::Numerical(e.to_string()),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileJson {
    pub kind: &'static str,
    pub omega0: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub truncation_tol: Option<f64>,
}

impl ProfileJson {
    fn new(p: &FrequencyProfile) -> Self {
        let s = p.support();
        Self {
            kind: p.kind().as_str(),
            omega0: p.omega0(),
            t_start: s.start,
            t_end: s.end,
            truncation_tol: p.truncation_tol(),
        }
    }
}

fn render<T: Serialize>(format: Format, json: &T, table: impl FnOnce() -> Table) -> Vec<u8> {
    match format {
        Format::Json => to_json(json),
        Format::Csv => table().to_csv(),
    }
}

#[derive(Debug, Clone, Serialize)]
struct InteractionJson {
    exact_kind: &'static str,
    exact_beta_sq: f64,
    delta_beta_sq: f64,
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    max_entry_error: f64,
    beta_lower: f64,
    beta_upper: f64,
    within_sandwich: bool,
    delta_steps: usize,
}

#[derive(Debug, Clone, Serialize)]
struct SolveJson {
    command: &'static str,
    profile: ProfileJson,
    rel_tol: f64,
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    det_drift: f64,
    alpha_re: f64,
    alpha_im: f64,
    beta_re: f64,
    beta_im: f64,
    alpha_sq: f64,
    beta_sq: f64,
    transmission: f64,
    reflection: f64,
    normalization_residual: f64,
    accepted_steps: usize,
    rejected_steps: usize,
    interaction: Option<InteractionJson>,
}

fn trajectory_csv(traj: &[(f64, TransferMatrix)]) -> Vec<u8> {
    let mut t = Table::new(["t", "a", "b", "c", "d", "det_drift"]);
    for (time, m) in traj {
        t.push(vec![fmt_f64(*time), fmt_f64(m.a), fmt_f64(m.b), fmt_f64(m.c), fmt_f64(m.d), fmt_f64(m.det_drift())]);
    }
    t.to_csv()
}

fn write_side_file(path: &std::path::Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn solve(spec: &RunSpec, format: Format) -> Result<Outcome, CliError> {
    let p = spec.build_profile().map_err(profile_err)?;
    let ev = evolve(&p, &spec.solver, None).map_err(propagator_err)?;
    if let (Some(path), Some(traj)) = (&spec.trajectory, &ev.trajectory) {
        write_side_file(path, &trajectory_csv(traj))?;
    }
    let s = p.support();
    let t = ev.matrix;
    let coeffs = extract(&t, p.omega0(), s.start, s.end).map_err(|e| CliError::Numerical(e.to_string()))?;
    let sc = scattering(&coeffs);

    let interaction = match &spec.split {
        None => None,
        Some(exact_spec) => {
            let sp = split(&p, exact_spec).map_err(interaction_err)?;
            let de = evolve_delta(&sp, &spec.solver).map_err(interaction_err)?;
            let full = compose(&de.exact, &de.delta.matrix).map_err(interaction_err)?;
            let be = PhaseStrippedPair::from_matrix(&de.exact).beta_tilde.norm();
            let bd = PhaseStrippedPair::from_matrix(&de.delta.matrix).beta_tilde.norm();
            let (lo, hi) = composition_bounds(be, bd).map_err(interaction_err)?;
            let beta = coeffs.beta_sq().sqrt();
            let slack = 100.0 * spec.solver.rel_tol * beta.max(1.0);
            Some(InteractionJson {
                exact_kind: sp.exact.kind().as_str(),
                exact_beta_sq: be * be,
                delta_beta_sq: bd * bd,
                a: full.a,
                b: full.b,
                c: full.c,
                d: full.d,
                max_entry_error: full.max_abs_diff(&t),
                beta_lower: lo,
                beta_upper: hi,
                within_sandwich: lo <= beta + slack && beta <= hi + slack,
                delta_steps: de.delta.accepted_steps,
            })
        }
    };

    let report = SolveJson {
        command: "solve",
        profile: ProfileJson::new(&p),
        rel_tol: spec.solver.rel_tol,
        a: t.a,
        b: t.b,
        c: t.c,
        d: t.d,
        det_drift: ev.det_drift,
        alpha_re: coeffs.alpha.re,
        alpha_im: coeffs.alpha.im,
        beta_re: coeffs.beta.re,
        beta_im: coeffs.beta.im,
        alpha_sq: coeffs.alpha_sq(),
        beta_sq: coeffs.beta_sq(),
        transmission: sc.transmission,
        reflection: sc.reflection,
        normalization_residual: normalization_residual(&coeffs),
        accepted_steps: ev.accepted_steps,
        rejected_steps: ev.rejected_steps,
        interaction,
    };
    let bytes = render(format, &report, || solve_table(&report));
    let summary = format!(
        "solve: |β|² = {:.10e}, transmission = {:.10e}, |det T − 1| = {:.2e}, {} steps",
        report.beta_sq, report.transmission, report.det_drift, report.accepted_steps
    );
    let failure = (!ev.unimodular).then(|| {
        CliError::Numerical(format!("|det T − 1| = {:e} exceeds the allowed {:e}", ev.det_drift, ev.allowed_drift))
    });
    Ok(Outcome { output: Output { bytes, summary }, failure })
}

fn solve_table(r: &SolveJson) -> Table {
    let mut cols: Vec<(&str, String)> = vec![
        ("kind", r.profile.kind.to_string()),
        ("omega0", fmt_f64(r.profile.omega0)),
        ("t_start", fmt_f64(r.profile.t_start)),
        ("t_end", fmt_f64(r.profile.t_end)),
        ("rel_tol", fmt_f64(r.rel_tol)),
        ("a", fmt_f64(r.a)),
        ("b", fmt_f64(r.b)),
        ("c", fmt_f64(r.c)),
        ("d", fmt_f64(r.d)),
        ("det_drift", fmt_f64(r.det_drift)),
        ("alpha_re", fmt_f64(r.alpha_re)),
        ("alpha_im", fmt_f64(r.alpha_im)),
        ("beta_re", fmt_f64(r.beta_re)),
        ("beta_im", fmt_f64(r.beta_im)),
        ("alpha_sq", fmt_f64(r.alpha_sq)),
        ("beta_sq", fmt_f64(r.beta_sq)),
        ("transmission", fmt_f64(r.transmission)),
        ("reflection", fmt_f64(r.reflection)),
        ("normalization_residual", fmt_f64(r.normalization_residual)),
        ("accepted_steps", r.accepted_steps.to_string()),
        ("rejected_steps", r.rejected_steps.to_string()),
    ];
    if let Some(i) = &r.interaction {
        cols.extend([
            ("split_exact_kind", i.exact_kind.to_string()),
            ("split_exact_beta_sq", fmt_f64(i.exact_beta_sq)),
            ("split_delta_beta_sq", fmt_f64(i.delta_beta_sq)),
            ("split_max_entry_error", fmt_f64(i.max_entry_error)),
            ("split_beta_lower", fmt_f64(i.beta_lower)),
            ("split_beta_upper", fmt_f64(i.beta_upper)),
            ("split_within_sandwich", i.within_sandwich.to_string()),
        ]);
    }
    let (header, row): (Vec<&str>, Vec<String>) = cols.into_iter().unzip();
    let mut t = Table::new(header);
    t.push(row);
    t
}

fn make_probe(p: &FrequencyProfile, choice: ProbeChoice) -> Result<ProbeFunction, String> {
    let probe = match choice {
        ProbeChoice::Constant => Ok(ProbeFunction::constant(p)),
        ProbeChoice::Adiabatic(e) => ProbeFunction::adiabatic(p, e),
        ProbeChoice::Bump(a) => ProbeFunction::bump(p, a),
    }
    .map_err(|e| e.to_string())?;
    probe.check_admissible(p).map_err(|e| e.to_string())?;
    Ok(probe)
}

fn request_kind(r: BoundRequest) -> BoundKind {
    match r {
        BoundRequest::Elementary => BoundKind::Elementary,
        BoundRequest::Probe => BoundKind::Probe,
        BoundRequest::Interpolating(e) => BoundKind::Interpolating(e),
        BoundRequest::Triangle => BoundKind::Triangle,
        BoundRequest::Lower => BoundKind::Lower,
    }
}

/// Evaluates every requested bound. Bounds that do not apply to this
/// profile (a probe that is inadmissible, the ε-family where ω² ≤ 0) come
/// back flagged rather than failing the run.
pub fn evaluate_bounds(
    spec: &RunSpec,
    p: &FrequencyProfile,
    t: Option<&TransferMatrix>,
) -> Result<Vec<BoundJson>, CliError> {
    let probe = make_probe(p, spec.probe);
    let mut out = Vec::with_capacity(spec.bounds.len());
    for &req in &spec.bounds {
        let kind = request_kind(req);
        let result: Result<BoundReport, BoundError> = match req {
            BoundRequest::Elementary => elementary_bound(p, &spec.quad),
            BoundRequest::Interpolating(e) => interpolating_bound(p, e, &spec.quad),
            BoundRequest::Probe | BoundRequest::Triangle => match &probe {
                Err(msg) => {
                    out.push(BoundJson::not_applicable(kind, format!("inadmissible probe: {msg}")));
                    continue;
                }
                Ok(pr) if req == BoundRequest::Probe => probe_bound(p, pr, &spec.quad),
                Ok(pr) => triangle_bound(p, pr, &spec.quad),
            },
            BoundRequest::Lower => {
                let owned;
                let m = match t {
                    Some(m) => m,
                    None => {
                        owned = evolve(p, &spec.solver, None).map_err(propagator_err)?.matrix;
                        &owned
                    }
                };
                lower_bound_beta(m).map(|l| BoundReport::from_lower(&l))
            }
        };
        match result {
            Ok(r) => out.push(BoundJson::from_report(&r)),
            Err(e @ (BoundError::InadmissibleProbe(_) | BoundError::NegativeOmegaSquared { .. })) => {
                out.push(BoundJson::not_applicable(kind, e.to_string()))
            }
            Err(BoundError::InvalidEpsilon(e)) => return Err(invalid(format!("bounds.epsilon = {e} outside [0, 1]"))),
            Err(e) => return Err(CliError::Numerical(format!("{kind} bound: {e}"))),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
struct BoundsJson {
    command: &'static str,
    profile: ProfileJson,
    probe: String,
    bounds: Vec<BoundJson>,
}

pub fn bound(spec: &RunSpec, format: Format) -> Result<Outcome, CliError> {
    let p = spec.build_profile().map_err(profile_err)?;
    let bounds = evaluate_bounds(spec, &p, None)?;
    let probe = make_probe(&p, spec.probe).map(|pr| pr.label()).unwrap_or_else(|e| format!("inadmissible: {e}"));
    let report = BoundsJson { command: "bound", profile: ProfileJson::new(&p), probe, bounds };
    let bytes = render(format, &report, || {
        let mut t = Table::new(BoundJson::HEADER);
        for b in &report.bounds {
            t.push(b.row());
        }
        t
    });
    let parts: Vec<String> = report
        .bounds
        .iter()
        .map(|b| match b.value() {
            Some(v) => format!("{}{} {:.6e}", b.kind, b.epsilon.map(|e| format!("({e})")).unwrap_or_default(), v),
            None => format!("{} n/a", b.kind),
        })
        .collect();
    Ok(Output { bytes, summary: format!("bound: {}", parts.join(", ")) }.into())
}

#[derive(Debug, Clone, Serialize)]
struct OptimizeJson {
    command: &'static str,
    profile: ProfileJson,
    nodes: usize,
    initial: String,
    iterations: usize,
    converged: bool,
    action: f64,
    el_residual_inf: f64,
    endpoint_momentum_start: f64,
    endpoint_momentum_end: f64,
    endpoint_hamiltonian_start: f64,
    endpoint_hamiltonian_end: f64,
    bound: BoundJson,
    history: Vec<f64>,
}

fn probe_table(probe: &ProbeFunction) -> Table {
    let (start, end) = probe.interval();
    let mut t = Table::new(["t", "theta", "omega"]);
    if let Some(nodes) = probe.theta_nodes() {
        let n = nodes.len() - 1;
        for (k, &th) in nodes.iter().enumerate() {
            let time = if k == n { end } else { start + (end - start) * k as f64 / n as f64 };
            t.push(vec![fmt_f64(time), fmt_f64(th), fmt_f64(probe.omega0() * th.exp())]);
        }
    }
    t
}

pub fn optimize(spec: &RunSpec, format: Format) -> Result<Outcome, CliError> {
    let p = spec.build_profile().map_err(profile_err)?;
    let o = &spec.optimizer;
    let res = optimize_probe(&p, o.nodes, &o.config, &spec.quad).map_err(|e| match e {
        OptimizerError::NodeCountTooSmall(_) | OptimizerError::InvalidConfig(_) => invalid(format!("optimizer: {e}")),
        e => CliError::Numerical(format!("optimizer: {e}")),
    })?;
    let table = probe_table(&res.probe);
    if let Some(path) = &o.probe_csv {
        write_side_file(path, &table.to_csv())?;
    }
    let d = res.diagnostics;
    let report = OptimizeJson {
        command: "optimize",
        profile: ProfileJson::new(&p),
        nodes: o.nodes,
        initial: res.initial.clone(),
        iterations: d.iterations,
        converged: d.converged,
        action: d.action_value,
        el_residual_inf: d.el_residual_inf,
        endpoint_momentum_start: d.endpoint_momentum.0,
        endpoint_momentum_end: d.endpoint_momentum.1,
        endpoint_hamiltonian_start: d.endpoint_hamiltonian.0,
        endpoint_hamiltonian_end: d.endpoint_hamiltonian.1,
        bound: BoundJson::from_report(&res.report),
        history: res.history.clone(),
    };
    let bytes = render(format, &report, || table);
    let summary = format!(
        "optimize: S = {:.10e}, |β|² ≤ {:.10e}, {} iterations, {}",
        d.action_value,
        res.report.beta_sq_bound,
        d.iterations,
        if d.converged {
            "converged".to_string()
        } else {
            format!("not converged (residual {:.2e})", d.el_residual_inf)
        }
    );
    let failure = (o.require_converged && !d.converged).then(|| {
        CliError::Numerical(format!(
            "optimizer did not reach grad_tol {:e} in {} iterations (residual {:e})",
            o.config.grad_tol, d.iterations, d.el_residual_inf
        ))
    });
    Ok(Outcome { output: Output { bytes, summary }, failure })
}

#[derive(Debug, Clone, Serialize)]
struct SweepJson {
    command: &'static str,
    parameter: String,
    columns: Vec<String>,
    rows: Vec<Ordered>,
}

pub fn sweep(spec: &RunSpec, format: Format) -> Result<Outcome, CliError> {
    let Some(sw) = &spec.sweep else {
        return Err(invalid(
            "sweep needs a sweep section (sweep.parameter, sweep.from, sweep.to, sweep.points)".into(),
        ));
    };
    let grid = sw.grid();
    let rows: Vec<Vec<Option<f64>>> = grid
        .par_iter()
        .map(|&v| -> Result<Vec<Option<f64>>, CliError> {
            let ps = spec.profile_with(&sw.parameter, v)?;
            let p = parabound::make_profile(&ps, spec.truncation_tol)
                .map_err(|e| invalid(format!("{} = {v}: {e}", sw.parameter)))?;
            let ev = evolve(&p, &spec.solver, None).map_err(propagator_err)?;
            let s = p.support();
            let c = extract(&ev.matrix, p.omega0(), s.start, s.end).map_err(|e| CliError::Numerical(e.to_string()))?;
            let bounds = evaluate_bounds(spec, &p, Some(&ev.matrix))?;
            let mut row = vec![Some(v), Some(c.beta_sq())];
            row.extend(bounds.iter().map(BoundJson::value));
            Ok(row)
        })
        .collect::<Result<_, _>>()?;

    let mut columns = vec!["index".to_string(), sw.parameter.clone(), "beta_sq".to_string()];
    columns.extend(spec.bounds.iter().map(BoundRequest::column));
    let report = SweepJson {
        command: "sweep",
        parameter: sw.parameter.clone(),
        columns: columns.clone(),
        rows: rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut o = vec![("index".to_string(), Some(i as f64))];
                o.extend(columns[1..].iter().cloned().zip(r.iter().copied()));
                Ordered(o)
            })
            .collect(),
    };
    let bytes = render(format, &report, || {
        let mut t = Table::new(columns.clone());
        for (i, r) in rows.iter().enumerate() {
            let mut cells = vec![i.to_string()];
            cells.extend(r.iter().map(|v| opt_f64(*v)));
            t.push(cells);
        }
        t
    });
    Ok(Output { bytes, summary: format!("sweep: {} points over {}", grid.len(), sw.parameter) }.into())
}

#[derive(Debug, Clone, Serialize)]
struct CheckJson {
    id: u8,
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Debug, Clone, Serialize)]
struct VerifyJson {
    command: &'static str,
    passed: bool,
    checks: Vec<CheckJson>,
}

pub fn verify_line(c: &CheckOutcome) -> String {
    format!("[{}] {:>2} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.name, c.detail)
}

pub fn verify(format: Format) -> Outcome {
    let outcomes = run_all();
    let passed = outcomes.iter().all(|c| c.passed);
    let lines: Vec<String> = outcomes.iter().map(verify_line).collect();
    let report = VerifyJson {
        command: "verify",
        passed,
        checks: outcomes
            .iter()
            .map(|c| CheckJson { id: c.id, name: c.name, passed: c.passed, detail: c.detail.clone() })
            .collect(),
    };
    let bytes = render(format, &report, || {
        let mut t = Table::new(["id", "name", "passed", "detail"]);
        for c in &report.checks {
            t.push(vec![c.id.to_string(), c.name.to_string(), c.passed.to_string(), c.detail.clone()]);
        }
        t
    });
    let failed = outcomes.iter().filter(|c| !c.passed).count();
    let summary =
        format!("{}\nverify: {} of {} checks passed", lines.join("\n"), outcomes.len() - failed, outcomes.len());
    let failure = (failed > 0).then(|| CliError::Verification(format!("{failed} verification check(s) failed")));
    Outcome { output: Output { bytes, summary }, failure }
}
