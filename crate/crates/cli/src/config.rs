//! Run specifications: flat `key = value` text with dotted section keys.
//!
//! ```text
//! # rectangular pulse
//! profile.kind = rectangular
//! profile.omega1 = 2
//! profile.duration = pi/4
//! bounds.kinds = elementary, lower
//! ```
//!
//! Blank lines and `#` comments are ignored. Every key may appear once.
//! Numbers accept `pi` in the forms `pi`, `pi/4`, `3*pi` and `3*pi/4`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};

use parabound::probe_optimizer::MIN_NODES;
use parabound::profiles::{read_table, MAX_TRUNCATION_TOL};
use parabound::{make_profile, FrequencyProfile, OptimizerConfig, ProfileKind, ProfileSpec, QuadConfig, SolverConfig};

pub const DEFAULT_TRUNCATION_TOL: f64 = 1e-8;
pub const DEFAULT_EPSILONS: [f64; 3] = [0.25, 0.5, 0.75];
pub const DEFAULT_NODES: usize = 256;

const PROFILE_FIELDS: &[&str] = &[
    "kind",
    "omega0",
    "omega1",
    "kappa",
    "start",
    "duration",
    "amplitude",
    "width",
    "center",
    "depth",
    "file",
    "energy",
    "mass",
    "hbar",
];

const OTHER_KEYS: &[&str] = &[
    "profile.truncation_tol",
    "solver.rel_tol",
    "solver.abs_tol",
    "solver.max_steps",
    "solver.initial_step",
    "solver.trajectory",
    "quad.rel_tol",
    "quad.abs_tol",
    "quad.max_subdivisions",
    "bounds.kinds",
    "bounds.epsilon",
    "bounds.probe",
    "bounds.probe_epsilon",
    "bounds.probe_amplitude",
    "optimizer.nodes",
    "optimizer.max_iter",
    "optimizer.grad_tol",
    "optimizer.memory",
    "optimizer.armijo",
    "optimizer.require_converged",
    "optimizer.probe_csv",
    "sweep.parameter",
    "sweep.from",
    "sweep.to",
    "sweep.points",
    "sweep.scale",
    "output.format",
    "output.path",
];

/// A malformed line or value, or an unreadable file.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub struct ParseError {
    pub path: PathBuf,
    pub line: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.path.display())?;
        if let Some(line) = self.line {
            write!(f, ":{line}")?;
        }
        if let Some(field) = &self.field {
            write!(f, ": {field}")?;
        }
        write!(f, ": {}", self.message)
    }
}

/// Every violated invariant of an otherwise well-formed file.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid configuration:\n  {}", violations.join("\n  "))]
pub struct ValidationError {
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundRequest {
    Elementary,
    Probe,
    Interpolating(f64),
    Triangle,
    Lower,
}

impl BoundRequest {
    /// Column label used by `sweep`.
    pub fn column(&self) -> String {
        match self {
            BoundRequest::Elementary => "elementary".into(),
            BoundRequest::Probe => "probe".into(),
            BoundRequest::Interpolating(e) => format!("interpolating_{e}"),
            BoundRequest::Triangle => "triangle".into(),
            BoundRequest::Lower => "lower".into(),
        }
    }
}

/// Probe used by the `probe` and `triangle` bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProbeChoice {
    Constant,
    Adiabatic(f64),
    Bump(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerSpec {
    pub nodes: usize,
    pub config: OptimizerConfig,
    pub require_converged: bool,
    pub probe_csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// A numeric `profile.*` key.
    pub parameter: String,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    pub scale: Scale,
}

impl SweepSpec {
    pub fn grid(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.from];
        }
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                let s = k as f64 / last;
                match self.scale {
                    Scale::Linear => self.from + s * (self.to - self.from),
                    Scale::Log => (self.from.ln() + s * (self.to.ln() - self.from.ln())).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
struct Entry {
    value: String,
    line: usize,
}

#[derive(Debug, Clone)]
pub struct RunSpec {
    pub source: PathBuf,
    pub profile: ProfileSpec,
    pub truncation_tol: f64,
    pub solver: SolverConfig,
    pub trajectory: Option<PathBuf>,
    pub quad: QuadConfig,
    pub bounds: Vec<BoundRequest>,
    pub probe: ProbeChoice,
    pub optimizer: OptimizerSpec,
    pub split: Option<ProfileSpec>,
    pub sweep: Option<SweepSpec>,
    /// `None` leaves the choice to the command.
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    entries: BTreeMap<String, Entry>,
}

impl RunSpec {
    pub fn build_profile(&self) -> Result<FrequencyProfile, parabound::profiles::ProfileError> {
        make_profile(&self.profile, self.truncation_tol)
    }

    /// The profile with one numeric `profile.*` key replaced.
    pub fn profile_with(&self, key: &str, value: f64) -> Result<ProfileSpec, ConfigError> {
        let mut entries = self.entries.clone();
        let line = entries.get(key).map_or(0, |e| e.line);
        entries.insert(key.to_string(), Entry { value: format!("{value:e}"), line });
        let mut r = Reader { path: &self.source, entries: &entries, violations: Vec::new() };
        let spec = r.profile("profile", None)?;
        r.finish()?;
        Ok(spec.expect("profile already validated"))
    }
}

pub fn load_config(path: &Path) -> Result<RunSpec, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseError {
        path: path.to_path_buf(),
        line: None,
        field: None,
        message: format!("cannot read configuration: {e}"),
    })?;
    parse_config(&text, path)
}

/// Parses `text` as if read from `path`; relative table files resolve
/// against the directory of `path`.
pub fn parse_config(text: &str, path: &Path) -> Result<RunSpec, ConfigError> {
    let entries = parse_entries(text, path)?;
    let mut r = Reader { path, entries: &entries, violations: Vec::new() };

    let truncation_tol = r.f64("profile.truncation_tol")?.unwrap_or(DEFAULT_TRUNCATION_TOL);
    if !(truncation_tol > 0.0 && truncation_tol <= MAX_TRUNCATION_TOL) {
        r.violate(format!("profile.truncation_tol = {truncation_tol} must lie in (0, {MAX_TRUNCATION_TOL}]"));
    }
    let profile = r.profile("profile", None)?;
    let built = profile.as_ref().and_then(|spec| match make_profile(spec, truncation_tol) {
        Ok(p) => Some(p),
        Err(e) => {
            r.violate(format!("profile: {e}"));
            None
        }
    });

    let defaults = SolverConfig::default();
    let solver = SolverConfig {
        rel_tol: r.f64("solver.rel_tol")?.unwrap_or(defaults.rel_tol),
        abs_tol: r.f64("solver.abs_tol")?.unwrap_or(defaults.abs_tol),
        initial_step: r.f64("solver.initial_step")?,
        max_steps: r.usize("solver.max_steps")?.unwrap_or(defaults.max_steps),
        record_trajectory: entries.contains_key("solver.trajectory"),
    };
    if let Err(e) = solver.validate() {
        r.violate(format!("solver: {e}"));
    }
    let trajectory = r.path("solver.trajectory");

    let qd = QuadConfig::default();
    let quad = QuadConfig {
        rel_tol: r.f64("quad.rel_tol")?.unwrap_or(qd.rel_tol),
        abs_tol: r.f64("quad.abs_tol")?.unwrap_or(qd.abs_tol),
        max_subdivisions: r.usize("quad.max_subdivisions")?.unwrap_or(qd.max_subdivisions),
    };
    if let Err(e) = quad.validate() {
        r.violate(format!("quad: {e}"));
    }

    let epsilons = match r.list_f64("bounds.epsilon")? {
        Some(v) => v,
        None => DEFAULT_EPSILONS.to_vec(),
    };
    for &e in &epsilons {
        if !(0.0..=1.0).contains(&e) {
            r.violate(format!("bounds.epsilon = {e} must lie in [0, 1]"));
        }
    }
    let kinds = match r.str("bounds.kinds") {
        Some((v, _)) => v.split(',').map(|s| s.trim().to_string()).collect(),
        None => vec!["elementary".into(), "probe".into(), "interpolating".into(), "triangle".into(), "lower".into()],
    };
    let mut bounds = Vec::new();
    for k in kinds {
        match k.as_str() {
            "elementary" => bounds.push(BoundRequest::Elementary),
            "probe" => bounds.push(BoundRequest::Probe),
            "interpolating" => bounds.extend(epsilons.iter().map(|&e| BoundRequest::Interpolating(e))),
            "triangle" => bounds.push(BoundRequest::Triangle),
            "lower" => bounds.push(BoundRequest::Lower),
            other => r.violate(format!("bounds.kinds: unknown bound kind `{other}`")),
        }
    }
    if bounds.is_empty() {
        r.violate("bounds.kinds: no bounds requested".into());
    }

    let probe_eps = r.f64("bounds.probe_epsilon")?.unwrap_or(1.0);
    if !(0.0..=1.0).contains(&probe_eps) {
        r.violate(format!("bounds.probe_epsilon = {probe_eps} must lie in [0, 1]"));
    }
    let probe_amp = r.f64("bounds.probe_amplitude")?.unwrap_or(0.5);
    let probe = match r.str("bounds.probe").map(|(v, _)| v) {
        None | Some("constant") => ProbeChoice::Constant,
        Some("adiabatic") => ProbeChoice::Adiabatic(probe_eps),
        Some("bump") => ProbeChoice::Bump(probe_amp),
        Some(other) => {
            r.violate(format!("bounds.probe: unknown probe `{other}` (expected constant, adiabatic or bump)"));
            ProbeChoice::Constant
        }
    };

    let od = OptimizerConfig::default();
    let optimizer = OptimizerSpec {
        nodes: r.usize("optimizer.nodes")?.unwrap_or(DEFAULT_NODES),
        config: OptimizerConfig {
            max_iter: r.usize("optimizer.max_iter")?.unwrap_or(od.max_iter),
            grad_tol: r.f64("optimizer.grad_tol")?.unwrap_or(od.grad_tol),
            memory: r.usize("optimizer.memory")?.unwrap_or(od.memory),
            armijo: r.f64("optimizer.armijo")?.unwrap_or(od.armijo),
        },
        require_converged: r.bool("optimizer.require_converged")?.unwrap_or(false),
        probe_csv: r.path("optimizer.probe_csv"),
    };
    if optimizer.nodes < MIN_NODES {
        r.violate(format!("optimizer.nodes = {} must be at least {MIN_NODES}", optimizer.nodes));
    }
    if let Err(e) = optimizer.config.validate() {
        r.violate(format!("optimizer: {e}"));
    }

    let split =
        if entries.keys().any(|k| k.starts_with("split.")) { r.profile("split", built.as_ref())? } else { None };
    if let (Some(spec), Some(full)) = (&split, &built) {
        if let Err(e) = parabound::split(full, spec) {
            r.violate(format!("split: {e}"));
        }
    }

    let sweep = if entries.keys().any(|k| k.starts_with("sweep.")) { r.sweep(profile.as_ref())? } else { None };

    let format = match r.str("output.format") {
        None => None,
        Some((v, _)) => {
            let f = Format::parse(v);
            if f.is_none() {
                r.violate(format!("output.format: unknown format `{v}` (expected json or csv)"));
            }
            f
        }
    };
    let output = r.path("output.path");

    r.finish()?;
    Ok(RunSpec {
        source: path.to_path_buf(),
        profile: profile.expect("validated above"),
        truncation_tol,
        solver,
        trajectory,
        quad,
        bounds,
        probe,
        optimizer,
        split,
        sweep,
        format,
        output,
        entries,
    })
}

fn parse_entries(text: &str, path: &Path) -> Result<BTreeMap<String, Entry>, ParseError> {
    let mut entries = BTreeMap::new();
    let err = |line: usize, field: Option<&str>, message: String| ParseError {
        path: path.to_path_buf(),
        line: Some(line),
        field: field.map(str::to_string),
        message,
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((key, value)) = body.split_once('=') else {
            return Err(err(line, None, format!("expected `key = value`, found `{body}`")));
        };
        let (key, value) = (key.trim(), value.trim());
        if !known_key(key) {
            return Err(err(line, Some(key), "unknown key".into()));
        }
        if value.is_empty() {
            return Err(err(line, Some(key), "missing value".into()));
        }
        if let Some(prev) = entries.get::<str>(key) {
            let prev: &Entry = prev;
            return Err(err(line, Some(key), format!("duplicate key (first set on line {})", prev.line)));
        }
        entries.insert(key.to_string(), Entry { value: value.to_string(), line });
    }
    Ok(entries)
}

fn known_key(key: &str) -> bool {
    if OTHER_KEYS.contains(&key) {
        return true;
    }
    match key.split_once('.') {
        Some(("profile" | "split", field)) => PROFILE_FIELDS.contains(&field),
        _ => false,
    }
}

/// `x`, `pi`, `pi/d`, `c*pi`, `c*pi/d`.
pub fn parse_number(s: &str) -> Option<f64> {
    if let Ok(v) = s.parse::<f64>() {
        return Some(v);
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim().parse::<f64>().ok()?),
        None => (s, 1.0),
    };
    let coef = match num.split_once('*') {
        Some((c, p)) if p.trim() == "pi" => c.trim().parse::<f64>().ok()?,
        None if num == "pi" => 1.0,
        _ => return None,
    };
    Some(coef * PI / den)
}

struct Reader<'a> {
    path: &'a Path,
    entries: &'a BTreeMap<String, Entry>,
    violations: Vec<String>,
}

impl<'a> Reader<'a> {
    fn violate(&mut self, msg: String) {
        self.violations.push(msg);
    }

    fn finish(self) -> Result<(), ValidationError> {
        if self.violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationError { violations: self.violations })
        }
    }

    fn err(&self, key: &str, line: usize, message: String) -> ParseError {
        ParseError { path: self.path.to_path_buf(), line: Some(line), field: Some(key.to_string()), message }
    }

    fn str(&self, key: &str) -> Option<(&'a str, usize)> {
        self.entries.get(key).map(|e| (e.value.as_str(), e.line))
    }

    fn f64(&self, key: &str) -> Result<Option<f64>, ParseError> {
        let Some((v, line)) = self.str(key) else { return Ok(None) };
        match parse_number(v) {
            Some(x) if x.is_finite() => Ok(Some(x)),
            _ => Err(self.err(key, line, format!("`{v}` is not a finite number"))),
        }
    }

    fn usize(&self, key: &str) -> Result<Option<usize>, ParseError> {
        let Some((v, line)) = self.str(key) else { return Ok(None) };
        v.parse().map(Some).map_err(|_| self.err(key, line, format!("`{v}` is not a non-negative integer")))
    }

    fn bool(&self, key: &str) -> Result<Option<bool>, ParseError> {
        let Some((v, line)) = self.str(key) else { return Ok(None) };
        v.parse().map(Some).map_err(|_| self.err(key, line, format!("`{v}` is not true or false")))
    }

    fn list_f64(&self, key: &str) -> Result<Option<Vec<f64>>, ParseError> {
        let Some((v, line)) = self.str(key) else { return Ok(None) };
        v.split(',')
            .map(|s| {
                let s = s.trim();
                parse_number(s)
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| self.err(key, line, format!("`{s}` is not a finite number")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.str(key).map(|(v, _)| self.resolve(v))
    }

    fn resolve(&self, v: &str) -> PathBuf {
        let p = PathBuf::from(v);
        if p.is_absolute() {
            return p;
        }
        match self.path.parent() {
            Some(dir) => dir.join(p),
            None => p,
        }
    }

    fn table(&self, key: &str) -> Result<Option<Vec<(f64, f64)>>, ParseError> {
        let Some((v, line)) = self.str(key) else { return Ok(None) };
        let file = self.resolve(v);
        read_table(&file).map(Some).map_err(|e| self.err(key, line, e.to_string()))
    }

    /// Reads `<section>.*` into a profile spec. For the split section,
    /// `omega0`, `start` and `duration` default to those of `full`.
    fn profile(&mut self, section: &str, full: Option<&FrequencyProfile>) -> Result<Option<ProfileSpec>, ParseError> {
        let key = |f: &str| format!("{section}.{f}");
        let Some((kind_str, _)) = self.str(&key("kind")) else {
            self.violate(format!("{section}.kind is required"));
            return Ok(None);
        };
        let Some(kind) = ProfileKind::parse(kind_str) else {
            let names: Vec<&str> = ALL_KINDS.iter().map(|k| k.as_str()).collect();
            self.violate(format!(
                "{section}.kind: unknown profile kind `{kind_str}` (expected one of {})",
                names.join(", ")
            ));
            return Ok(None);
        };
        let mut missing = Vec::new();
        let mut get = |r: &Self, f: &str, default: Option<f64>| -> Result<f64, ParseError> {
            Ok(match (r.f64(&key(f))?, default) {
                (Some(v), _) | (None, Some(v)) => v,
                (None, None) => {
                    missing.push(key(f));
                    f64::NAN
                }
            })
        };
        let support = full.map(|p| p.support());
        let w0_default = full.map(|p| p.omega0());
        let start_default = support.map(|s| s.start);
        let dur_default = support.map(|s| s.length());
        let spec = match kind {
            ProfileKind::Constant => ProfileSpec::Constant {
                omega0: get(self, "omega0", w0_default.or(Some(1.0)))?,
                start: get(self, "start", start_default)?,
                duration: get(self, "duration", dur_default)?,
            },
            ProfileKind::Rectangular => ProfileSpec::Rectangular {
                omega0: get(self, "omega0", w0_default.or(Some(1.0)))?,
                omega1: get(self, "omega1", None)?,
                start: get(self, "start", start_default.or(Some(0.0)))?,
                duration: get(self, "duration", dur_default)?,
            },
            ProfileKind::HyperbolicPulse => ProfileSpec::HyperbolicPulse {
                omega0: get(self, "omega0", w0_default.or(Some(1.0)))?,
                kappa: get(self, "kappa", None)?,
                start: get(self, "start", start_default.or(Some(0.0)))?,
                duration: get(self, "duration", dur_default)?,
            },
            ProfileKind::GaussianBump => ProfileSpec::GaussianBump {
                omega0: get(self, "omega0", w0_default.or(Some(1.0)))?,
                amplitude: get(self, "amplitude", None)?,
                width: get(self, "width", None)?,
                center: get(self, "center", Some(0.0))?,
            },
            ProfileKind::Sech2 => ProfileSpec::Sech2 {
                omega0: get(self, "omega0", w0_default.or(Some(1.0)))?,
                depth: get(self, "depth", None)?,
                width: get(self, "width", None)?,
                center: get(self, "center", Some(0.0))?,
            },
            ProfileKind::Tabulated => {
                let omega0 = get(self, "omega0", w0_default.or(Some(1.0)))?;
                let samples = self.table(&key("file"))?;
                if samples.is_none() {
                    missing.push(key("file"));
                }
                ProfileSpec::Tabulated { omega0, samples: samples.unwrap_or_default() }
            }
            ProfileKind::FromPotential => {
                let energy = get(self, "energy", None)?;
                let mass = get(self, "mass", Some(1.0))?;
                let hbar = get(self, "hbar", Some(1.0))?;
                let samples = self.table(&key("file"))?;
                if samples.is_none() {
                    missing.push(key("file"));
                }
                ProfileSpec::FromPotential { samples: samples.unwrap_or_default(), energy, mass, hbar }
            }
        };
        let ignored: Vec<String> = PROFILE_FIELDS
            .iter()
            .filter(|f| **f != "kind" && self.entries.contains_key(&key(f)) && !uses_field(kind, f))
            .map(|f| key(f))
            .collect();
        for f in ignored {
            self.violate(format!("{f} does not apply to a {kind} profile"));
        }
        if !missing.is_empty() {
            for f in missing {
                self.violate(format!("{f} is required for a {kind} profile"));
            }
            return Ok(None);
        }
        Ok(Some(spec))
    }

    fn sweep(&mut self, profile: Option<&ProfileSpec>) -> Result<Option<SweepSpec>, ParseError> {
        let from = self.f64("sweep.from")?;
        let to = self.f64("sweep.to")?;
        let points = self.usize("sweep.points")?;
        let parameter = self.str("sweep.parameter").map(|(v, _)| v.to_string());
        let scale = match self.str("sweep.scale").map(|(v, _)| v) {
            None | Some("linear") => Scale::Linear,
            Some("log") => Scale::Log,
            Some(other) => {
                self.violate(format!("sweep.scale: unknown scale `{other}` (expected linear or log)"));
                Scale::Linear
            }
        };
        let mut ok = true;
        for (name, present) in [
            ("sweep.parameter", parameter.is_some()),
            ("sweep.from", from.is_some()),
            ("sweep.to", to.is_some()),
            ("sweep.points", points.is_some()),
        ] {
            if !present {
                self.violate(format!("{name} is required for a sweep"));
                ok = false;
            }
        }
        if !ok {
            return Ok(None);
        }
        let (parameter, from, to, points) = (parameter.unwrap(), from.unwrap(), to.unwrap(), points.unwrap());
        let field = parameter.strip_prefix("profile.");
        let numeric = matches!(field, Some(f) if !matches!(f, "kind" | "file") && PROFILE_FIELDS.contains(&f));
        if !numeric {
            self.violate(format!("sweep.parameter: `{parameter}` is not a numeric profile key"));
        } else if let (Some(spec), Some(f)) = (profile, field) {
            if !uses_field(spec.kind(), f) {
                self.violate(format!("sweep.parameter: {parameter} does not apply to a {} profile", spec.kind()));
            }
        }
        if points == 0 {
            self.violate("sweep.points must be at least 1".into());
        }
        if scale == Scale::Log && !(from > 0.0 && to > 0.0) {
            self.violate("sweep.scale = log needs positive sweep.from and sweep.to".into());
        }
        Ok(Some(SweepSpec { parameter, from, to, points, scale }))
    }
}

const ALL_KINDS: [ProfileKind; 7] = [
    ProfileKind::Constant,
    ProfileKind::Rectangular,
    ProfileKind::HyperbolicPulse,
    ProfileKind::GaussianBump,
    ProfileKind::Sech2,
    ProfileKind::Tabulated,
    ProfileKind::FromPotential,
];

fn uses_field(kind: ProfileKind, field: &str) -> bool {
    let fields: &[&str] = match kind {
        ProfileKind::Constant => &["omega0", "start", "duration"],
        ProfileKind::Rectangular => &["omega0", "omega1", "start", "duration"],
        ProfileKind::HyperbolicPulse => &["omega0", "kappa", "start", "duration"],
        ProfileKind::GaussianBump => &["omega0", "amplitude", "width", "center"],
        ProfileKind::Sech2 => &["omega0", "depth", "width", "center"],
        ProfileKind::Tabulated => &["omega0", "file"],
        ProfileKind::FromPotential => &["file", "energy", "mass", "hbar"],
    };
    fields.contains(&field)
}
