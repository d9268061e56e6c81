//! Batch front-end behind the `biharm` binary.
//!
//! `solve` reads a TOML run configuration, runs the elasticity pipeline,
//! writes one CSV per field plus a JSON report, and turns residual
//! thresholds into an exit status. `verify` runs the randomized invariant
//! battery in [`verify`].

pub mod config;
pub mod verify;

use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::elasticity::{solve_pipeline_with, ElasticState, ResidualReport, V2Formula};
pub use config::{ConfigError, RunConfig, Thresholds};

/// Environment variable that overrides `output.dir`.
pub const OUTPUT_DIR_ENV: &str = "BIHARM_OUTPUT_DIR";

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const THRESHOLD: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const SOLVER: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("solver error: {0}")]
    Solver(#[from] crate::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl SolveError {
    pub fn exit_code(&self) -> i32 {
        match self {
            SolveError::Config(_) => exit::CONFIG,
            SolveError::Solver(_) | SolveError::Io { .. } => exit::SOLVER,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Timings {
    pub solve_ms: f64,
    pub write_ms: f64,
}

/// The machine-readable outcome of `solve`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub boundary_residual: f64,
    pub equilibrium_residual: f64,
    pub hooke_residual: f64,
    pub airy_residual: f64,
    pub lame_residual: f64,
    pub loop_residual: f64,
    pub kernel_residual: f64,
    pub v2_formula: V2Formula,
    pub kernel_note: String,
    pub truncation: usize,
    pub grid: [usize; 2],
    pub thresholds: Thresholds,
    /// Names of residuals above their threshold.
    pub failures: Vec<String>,
    pub passed: bool,
    pub timings: Timings,
}

const KERNEL_NOTE: &str = "Phi is determined up to the constants (F = i, G = 0) and (F = 0, G = i); \
the solver fixes Im F(0) = Im G(0) = 0. Kernel elements leave U1, U4, V1, V2 and all stresses unchanged; \
the Im F(0) freedom is a rigid rotation.";

impl RunReport {
    fn new(state: &ElasticState, thresholds: &Thresholds, timings: Timings) -> Self {
        let r: &ResidualReport = &state.report;
        let checks = [
            ("boundary", r.boundary, thresholds.boundary),
            ("equilibrium", r.equilibrium, thresholds.equilibrium),
            ("hooke", r.hooke, thresholds.hooke),
            ("airy", r.airy, thresholds.airy),
            ("lame", r.lame, thresholds.lame),
            ("loop", r.loop_closure, thresholds.loop_closure),
            ("kernel", r.kernel, thresholds.kernel),
        ];
        let failures: Vec<String> = checks
            .iter()
            .filter(|(_, v, t)| !(v.is_finite() && *v >= 0.0 && v <= t))
            .map(|(n, _, _)| n.to_string())
            .collect();
        RunReport {
            boundary_residual: r.boundary,
            equilibrium_residual: r.equilibrium,
            hooke_residual: r.hooke,
            airy_residual: r.airy,
            lame_residual: r.lame,
            loop_residual: r.loop_closure,
            kernel_residual: r.kernel,
            v2_formula: r.v2_formula,
            kernel_note: KERNEL_NOTE.to_string(),
            truncation: state.problem.truncation(),
            grid: [state.grid.n_r, state.grid.n_theta],
            thresholds: *thresholds,
            passed: failures.is_empty(),
            failures,
            timings,
        }
    }
}

/// Everything `solve` produced.
#[derive(Debug)]
pub struct SolveOutcome {
    pub state: ElasticState,
    pub report: RunReport,
    pub output_dir: PathBuf,
}

impl SolveOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.report.passed {
            exit::OK
        } else {
            exit::THRESHOLD
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> SolveError + '_ {
    move |source| SolveError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Runs `solve` on a config file. `output_override` takes precedence over
/// both the config and [`OUTPUT_DIR_ENV`].
pub fn cmd_solve(
    config_path: &Path,
    output_override: Option<&Path>,
) -> Result<SolveOutcome, SolveError> {
    let text = fs::read_to_string(config_path).map_err(|e| {
        SolveError::Config(ConfigError::new(
            "config",
            format!("cannot read {}: {e}", config_path.display()),
        ))
    })?;
    let cfg = RunConfig::parse(&text)?;
    let out_dir = match output_override {
        Some(p) => p.to_path_buf(),
        None => std::env::var_os(OUTPUT_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(&cfg.output.dir)),
    };
    run(&cfg, &out_dir)
}

/// Runs a validated configuration and writes its outputs under `out_dir`.
pub fn run(cfg: &RunConfig, out_dir: &Path) -> Result<SolveOutcome, SolveError> {
    let inputs = cfg.validate()?;
    let t0 = Instant::now();
    let state = solve_pipeline_with(
        &inputs.g1,
        &inputs.g2,
        &inputs.lame,
        &inputs.grid,
        inputs.basepoint,
        &inputs.options,
    )?;
    let solve_ms = t0.elapsed().as_secs_f64() * 1e3;

    let t1 = Instant::now();
    fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    write_fields(&state, out_dir)?;
    let write_ms = t1.elapsed().as_secs_f64() * 1e3;

    let report = RunReport::new(&state, &cfg.thresholds, Timings { solve_ms, write_ms });
    let report_path = out_dir.join(&cfg.output.report);
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    fs::write(&report_path, json + "\n").map_err(io_err(&report_path))?;

    Ok(SolveOutcome {
        state,
        report,
        output_dir: out_dir.to_path_buf(),
    })
}

/// One `<name>.csv` per field.
pub fn write_fields(state: &ElasticState, dir: &Path) -> Result<(), SolveError> {
    for (name, field) in state.named_fields() {
        let path = dir.join(format!("{name}.csv"));
        let file = fs::File::create(&path).map_err(io_err(&path))?;
        field
            .write_csv(BufWriter::new(file))
            .map_err(io_err(&path))?;
    }
    Ok(())
}
