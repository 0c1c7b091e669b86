//! Scriptable front end: run-configuration parsing and the `solve`, `verify`,
//! `field` and `sweep` pipelines behind the `wavetrain` binary.
//!
//! Configurations are line-oriented `key = value` text with `#` comments.
//! Structured results go to JSON, bulk fields to CSV; identical configurations
//! produce byte-identical `state.json`, `report.json` and `field.csv` across
//! runs on one platform (`sweep.csv` additionally records wall-clock times).
//! Files are written atomically (temp file + rename).

use crate::fields::{self, sample_grid, FieldError};
use crate::model::{
    validate, Depth, FlowState, ParameterSet, Region, ValidationError, WaveParameters,
};
use crate::solver::{residual, solve, ResidualReport, SolveError, SolverSettings};
use crate::verify::{self, VerificationReport};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;
use thiserror::Error;

/// Default half-period grid resolution for verification and field export.
pub const DEFAULT_NX: usize = 65;
pub const DEFAULT_NY: usize = 33;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("key `{key}`: cannot parse `{value}`")]
    TypeMismatch { key: String, value: String },
    #[error("missing required key `{0}`")]
    MissingRequired(&'static str),
    #[error("line {line}: expected `key = value`")]
    Malformed { line: usize },
}

/// One fully parsed run: physical parameters, solver knobs and output plumbing.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub params: ParameterSet,
    pub settings: SolverSettings,
    pub nx: usize,
    pub ny: usize,
    /// Height list for `sweep`, in meters.
    pub heights: Vec<f64>,
    /// Sampling level for the mean-current check, in meters.
    pub y0: Option<f64>,
    pub out_dir: PathBuf,
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::TypeMismatch {
        key: key.to_string(),
        value: value.to_string(),
    })
}

/// Parses `key = value` text into a [`RunConfig`] with documented defaults
/// (density 1000, gravity 9.81, atmospheric pressure 101325, 32 modes).
/// `L` and `depth` are required; unknown keys are errors.
pub fn parse_config(source: &str) -> Result<RunConfig, ConfigError> {
    let mut wavelength = None;
    let mut depth = None;
    let mut params = ParameterSet::new(1.0, Depth::Deep);
    let mut settings = SolverSettings::default();
    let mut nx = DEFAULT_NX;
    let mut ny = DEFAULT_NY;
    let mut heights = Vec::new();
    let mut y0 = None;

    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let (key, value) = text
            .split_once('=')
            .ok_or(ConfigError::Malformed { line })?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "L" => wavelength = Some(parse_num::<f64>(key, value)?),
            "depth" => {
                depth = Some(if value == "deep" {
                    Depth::Deep
                } else {
                    Depth::Finite(parse_num::<f64>(key, value)?)
                })
            }
            "current" => params.current = parse_num(key, value)?,
            "density" => params.density = parse_num(key, value)?,
            "gravity" => params.gravity = parse_num(key, value)?,
            "p_atm" => params.atmospheric_pressure = parse_num(key, value)?,
            "height" => params.wave_height = parse_num(key, value)?,
            "modes" => params.truncation_order = parse_num(key, value)?,
            "surface_nodes" => params.surface_nodes = Some(parse_num(key, value)?),
            "newton_tol" => settings.newton_tol = parse_num(key, value)?,
            "max_iters" => settings.max_newton_iters = parse_num(key, value)?,
            "continuation_steps" => settings.continuation_steps = parse_num(key, value)?,
            "nx" => nx = parse_num(key, value)?,
            "ny" => ny = parse_num(key, value)?,
            "heights" => {
                heights = value
                    .split(',')
                    .map(|v| parse_num::<f64>(key, v.trim()))
                    .collect::<Result<_, _>>()?
            }
            "y0" => y0 = Some(parse_num::<f64>(key, value)?),
            _ => {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                })
            }
        }
    }
    params.wavelength = wavelength.ok_or(ConfigError::MissingRequired("L"))?;
    params.depth = depth.ok_or(ConfigError::MissingRequired("depth"))?;
    Ok(RunConfig {
        params,
        settings,
        nx: nx.max(3),
        ny: ny.max(2),
        heights,
        y0,
        out_dir: PathBuf::from("."),
    })
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(#[from] ConfigError),
    #[error("configuration: {0}")]
    Invalid(#[from] ValidationError),
    #[error("solver: {0}")]
    Solve(SolveError),
    #[error("configuration: {0}")]
    Field(#[from] FieldError),
    #[error("invariant violation: {0}")]
    Violation(String),
    #[error("i/o on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Invalid(v) => CliError::Invalid(v),
            other => CliError::Solve(other),
        }
    }
}

impl CliError {
    /// 1 config error, 2 no convergence, 3 invariant violation, 4 I/O error.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Invalid(_) | CliError::Field(_) => 1,
            CliError::Solve(_) => 2,
            CliError::Violation(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Solve,
    Verify,
    Field,
    Sweep,
}

/// Loads the configuration, runs one subcommand and returns its exit code,
/// printing any diagnostic to the error stream.
pub fn execute(kind: CommandKind, config_path: &Path, out: Option<PathBuf>) -> u8 {
    match run(kind, config_path, out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("wavetrain: {e}");
            e.exit_code()
        }
    }
}

fn run(kind: CommandKind, config_path: &Path, out: Option<PathBuf>) -> Result<(), CliError> {
    let text = fs::read_to_string(config_path).map_err(|e| CliError::Io {
        path: config_path.to_path_buf(),
        source: e,
    })?;
    let mut cfg = parse_config(&text)?;
    if let Some(dir) = out {
        cfg.out_dir = dir;
    }
    fs::create_dir_all(&cfg.out_dir).map_err(|e| CliError::Io {
        path: cfg.out_dir.clone(),
        source: e,
    })?;
    match kind {
        CommandKind::Solve => cmd_solve(&cfg),
        CommandKind::Verify => cmd_verify(&cfg),
        CommandKind::Field => cmd_field(&cfg),
        CommandKind::Sweep => cmd_sweep(&cfg),
    }
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut tmp = path.as_os_str().to_os_string();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)?;
    Ok(())
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable report");
    text.push('\n');
    write_atomic(&dir.join(name), &text)
}

/// 17 significant digits: enough to reproduce any f64 exactly.
fn fmt_g(v: f64) -> String {
    format!("{v:.16e}")
}

/// Off-collocation residuals plus the Newton diagnostics for `residuals.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualSummary {
    /// Max-norm collocation residual at convergence (internal units).
    pub residual_norm: f64,
    pub newton_iters: usize,
    /// Residuals re-evaluated between the collocation nodes.
    pub off_collocation: ResidualReport,
}

/// Solves one configuration and writes `state.json` and `residuals.json`.
pub fn cmd_solve(cfg: &RunConfig) -> Result<(), CliError> {
    let params = validate(cfg.params.clone())?;
    let state = solve(&params, &cfg.settings)?;
    write_json(&cfg.out_dir, "state.json", &state)?;
    let summary = ResidualSummary {
        residual_norm: state.residual_norm,
        newton_iters: state.newton_iters,
        off_collocation: residual(&state, 4),
    };
    write_json(&cfg.out_dir, "residuals.json", &summary)
}

/// Reuses `state.json` from the output directory when it matches the
/// configuration; otherwise solves afresh.
fn obtain_state(cfg: &RunConfig, params: &WaveParameters) -> Result<FlowState, CliError> {
    let path = cfg.out_dir.join("state.json");
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(state) = serde_json::from_str::<FlowState>(&text) {
            if &state.params == params {
                return Ok(state);
            }
        }
    }
    Ok(solve(params, &cfg.settings)?)
}

/// Mean of the still-frame horizontal velocity over one period at `y0`,
/// compared against the configured current strength.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanCurrentCheck {
    pub y0: f64,
    pub value: f64,
    pub current: f64,
    pub deviation: f64,
    pub satisfied: bool,
}

/// Everything `verify` writes to `report.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliReport {
    pub verification: VerificationReport,
    pub mean_current: Option<MeanCurrentCheck>,
    pub passed: bool,
}

/// Runs every verification check (solving first if no matching state exists)
/// and writes `report.json`; fails with the violated checks named.
pub fn cmd_verify(cfg: &RunConfig) -> Result<(), CliError> {
    let params = validate(cfg.params.clone())?;
    let state = obtain_state(cfg, &params)?;
    let verification = verify::run_all(&state, cfg.nx, cfg.ny);
    let mean_current = match cfg.y0 {
        Some(y0) => {
            let value = fields::mean_current(&state, y0)?;
            let deviation = (value - params.current).abs();
            let tol = 1e-10 * state.wave_speed.abs().max(1.0);
            Some(MeanCurrentCheck {
                y0,
                value,
                current: params.current,
                deviation,
                satisfied: deviation < tol,
            })
        }
        None => None,
    };
    let passed = verification.passed && mean_current.as_ref().map_or(true, |m| m.satisfied);
    let report = CliReport {
        verification,
        mean_current,
        passed,
    };
    write_json(&cfg.out_dir, "report.json", &report)?;
    if report.passed {
        Ok(())
    } else {
        let mut failed = report.verification.failed_checks();
        if report.mean_current.map_or(false, |m| !m.satisfied) {
            failed.push("mean_current_matches_configured_current".to_string());
        }
        Err(CliError::Violation(failed.join(", ")))
    }
}

/// Samples the full-period boundary-fitted grid and writes `field.csv`
/// (columns `x,y,psi,u,v,P,p_dyn`, one row per node, column-major order).
pub fn cmd_field(cfg: &RunConfig) -> Result<(), CliError> {
    let params = validate(cfg.params.clone())?;
    let state = obtain_state(cfg, &params)?;
    let grid = sample_grid(&state, cfg.nx, cfg.ny, Region::FullPeriod);
    let mut csv = String::from("x,y,psi,u,v,P,p_dyn\n");
    for s in &grid.samples {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            fmt_g(s.x),
            fmt_g(s.y),
            fmt_g(s.psi),
            fmt_g(s.u),
            fmt_g(s.v),
            fmt_g(s.pressure),
            fmt_g(s.dynamic_pressure),
        );
    }
    write_atomic(&cfg.out_dir.join("field.csv"), &csv)
}

pub const SWEEP_HEADER: &str =
    "H,c,Q_or_E,m,max_p,min_p,crest_is_max,trough_is_min,newton_iters,wall_ms";

/// Solves each height in the configured list (each solve runs its own
/// amplitude continuation), verifies every state and writes `sweep.csv`.
/// A failed solve keeps the rows completed so far.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<(), CliError> {
    if cfg.heights.is_empty() {
        return Err(ConfigError::MissingRequired("heights").into());
    }
    let path = cfg.out_dir.join("sweep.csv");
    let mut csv = String::from(SWEEP_HEADER);
    csv.push('\n');
    let mut all_passed = true;
    for &h in &cfg.heights {
        let started = Instant::now();
        let mut raw = cfg.params.clone();
        raw.wave_height = h;
        let params = validate(raw)?;
        let state = match solve(&params, &cfg.settings) {
            Ok(s) => s,
            Err(e) => {
                write_atomic(&path, &csv)?;
                return Err(e.into());
            }
        };
        let report = verify::run_all(&state, cfg.nx, cfg.ny);
        all_passed &= report.passed;
        let grid = sample_grid(&state, cfg.nx, cfg.ny, Region::HalfPeriod);
        let (mut max_p, mut min_p) = (f64::NEG_INFINITY, f64::INFINITY);
        for s in &grid.samples {
            max_p = max_p.max(s.dynamic_pressure);
            min_p = min_p.min(s.dynamic_pressure);
        }
        // a degenerate field has no extrema report; its placement is vacuous
        let (crest_ok, trough_ok) = match &report.extrema {
            Some(e) => (e.crest_is_max, e.trough_is_min),
            None => (report.passed, report.passed),
        };
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{}",
            fmt_g(h),
            fmt_g(state.wave_speed),
            fmt_g(state.head),
            fmt_g(state.flux().unwrap_or(f64::NAN)),
            fmt_g(max_p),
            fmt_g(min_p),
            crest_ok,
            trough_ok,
            state.newton_iters,
            started.elapsed().as_millis(),
        );
    }
    write_atomic(&path, &csv)?;
    if all_passed {
        Ok(())
    } else {
        Err(CliError::Violation(
            "one or more sweep steps failed verification".to_string(),
        ))
    }
}
