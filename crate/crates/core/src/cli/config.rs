//! TOML run configuration.
//!
//! ```toml
//! truncation = 4            # optional, defaults to the data degree
//!
//! [lame]
//! lambda = 1.0
//! mu = 1.0
//!
//! [boundary.g1]             # a0 + Σ cos[n-1]·cos nθ + sin[n-1]·sin nθ
//! a0 = 0.0
//! cos = [0.25]
//! sin = []
//!
//! [boundary.g2]
//! cos = [0.25]
//!
//! [grid]                    # optional
//! n_r = 64
//! n_theta = 256
//! r_max = 0.999999
//!
//! [basepoint]               # optional
//! x = 0.0
//! y = 0.0
//!
//! [output]                  # optional
//! dir = "out"
//! report = "report.json"
//! ```
//!
//! Optional `[solver]` (`v2_formula`, `max_modes`, `probe_points`) and
//! `[thresholds]` tables tune the run.

use serde::{Deserialize, Serialize};

use crate::elasticity::{LameConstants, PipelineOptions, V2Formula};
use crate::grid::PolarGrid;
use crate::holomorphic::BoundaryFunction;
use crate::schwarz::DEFAULT_MAX_MODES;

/// A rejected configuration; `field` is the dotted key at fault.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid config field `{field}`: {message}")]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError {
            field: field.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub truncation: Option<usize>,
    pub lame: LameSection,
    pub boundary: BoundarySection,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub basepoint: BasepointSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub solver: SolverSection,
    #[serde(default)]
    pub thresholds: Thresholds,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LameSection {
    pub lambda: f64,
    pub mu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundarySection {
    pub g1: FourierSection,
    pub g2: FourierSection,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierSection {
    #[serde(default)]
    pub a0: f64,
    #[serde(default)]
    pub cos: Vec<f64>,
    #[serde(default)]
    pub sin: Vec<f64>,
}

impl FourierSection {
    pub fn to_boundary(&self) -> BoundaryFunction {
        BoundaryFunction::new(self.a0, self.cos.clone(), self.sin.clone())
    }

    pub fn from_boundary(h: &BoundaryFunction) -> Self {
        FourierSection {
            a0: h.a0,
            cos: h.cos_coeffs().to_vec(),
            sin: h.sin_coeffs().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub n_r: usize,
    pub n_theta: usize,
    pub r_max: f64,
}

impl Default for GridSection {
    fn default() -> Self {
        let g = PolarGrid::default();
        GridSection {
            n_r: g.n_r,
            n_theta: g.n_theta,
            r_max: g.r_max,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasepointSection {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub dir: String,
    pub report: String,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            dir: "out".into(),
            report: "report.json".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSection {
    pub v2_formula: V2Formula,
    pub max_modes: usize,
    pub probe_points: usize,
}

impl Default for SolverSection {
    fn default() -> Self {
        let o = PipelineOptions::default();
        SolverSection {
            v2_formula: o.v2_formula,
            max_modes: DEFAULT_MAX_MODES,
            probe_points: o.probe_points,
        }
    }
}

/// Pass thresholds for the residuals of [`crate::elasticity::ResidualReport`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Thresholds {
    pub boundary: f64,
    pub equilibrium: f64,
    pub hooke: f64,
    pub airy: f64,
    pub lame: f64,
    pub loop_closure: f64,
    pub kernel: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            boundary: 1e-10,
            equilibrium: 1e-6,
            hooke: 1e-9,
            airy: 1e-9,
            lame: 1e-6,
            loop_closure: 1e-10,
            kernel: 1e-12,
        }
    }
}

/// Checked, typed inputs of one run.
#[derive(Debug, Clone)]
pub struct RunInputs {
    pub lame: LameConstants,
    pub g1: BoundaryFunction,
    pub g2: BoundaryFunction,
    pub grid: PolarGrid,
    pub basepoint: (f64, f64),
    pub options: PipelineOptions,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| {
            let msg = e.message().to_string();
            ConfigError::new(guess_field(&msg), msg)
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<RunInputs, ConfigError> {
        let LameSection { lambda, mu } = self.lame;
        if !mu.is_finite() || mu <= 0.0 {
            return Err(ConfigError::new(
                "lame.mu",
                format!("mu must be positive, got {mu}"),
            ));
        }
        if !lambda.is_finite() || lambda + mu <= 0.0 {
            return Err(ConfigError::new(
                "lame.lambda",
                format!("lambda + mu must be positive, got lambda = {lambda}, mu = {mu}"),
            ));
        }
        let lame =
            LameConstants::new(lambda, mu).map_err(|e| ConfigError::new("lame", e.to_string()))?;

        for (name, s) in [("g1", &self.boundary.g1), ("g2", &self.boundary.g2)] {
            let finite = s.a0.is_finite() && s.cos.iter().chain(&s.sin).all(|v| v.is_finite());
            if !finite {
                return Err(ConfigError::new(
                    format!("boundary.{name}"),
                    "coefficients must be finite",
                ));
            }
        }
        let g1 = self.boundary.g1.to_boundary();
        let g2 = self.boundary.g2.to_boundary();

        let grid = PolarGrid::new(self.grid.n_r, self.grid.n_theta, self.grid.r_max).map_err(
            |e| match e {
                crate::Error::InvalidParameter { field, reason } => ConfigError::new(field, reason),
                other => ConfigError::new("grid", other.to_string()),
            },
        )?;

        let BasepointSection { x, y } = self.basepoint;
        if !(x.is_finite() && y.is_finite() && x.hypot(y) < 1.0) {
            return Err(ConfigError::new(
                "basepoint",
                format!("({x}, {y}) is not inside the open unit disk"),
            ));
        }

        let degree = g1.degree().max(g2.degree());
        if let Some(n) = self.truncation {
            if n < degree {
                return Err(ConfigError::new(
                    "truncation",
                    format!("N = {n} is below the boundary data degree {degree}"),
                ));
            }
        }
        let n = self.truncation.unwrap_or(degree);
        if n > self.solver.max_modes {
            return Err(ConfigError::new(
                "truncation",
                format!(
                    "N = {n} exceeds solver.max_modes = {}",
                    self.solver.max_modes
                ),
            ));
        }
        if self.solver.probe_points == 0 {
            return Err(ConfigError::new(
                "solver.probe_points",
                "must be at least 1",
            ));
        }
        for (name, v) in [
            ("boundary", self.thresholds.boundary),
            ("equilibrium", self.thresholds.equilibrium),
            ("hooke", self.thresholds.hooke),
            ("airy", self.thresholds.airy),
            ("lame", self.thresholds.lame),
            ("loop_closure", self.thresholds.loop_closure),
            ("kernel", self.thresholds.kernel),
        ] {
            if v.is_nan() || v < 0.0 {
                return Err(ConfigError::new(
                    format!("thresholds.{name}"),
                    "must be non-negative",
                ));
            }
        }
        if self.output.report.is_empty() {
            return Err(ConfigError::new("output.report", "must not be empty"));
        }

        Ok(RunInputs {
            lame,
            g1,
            g2,
            grid,
            basepoint: (x, y),
            options: PipelineOptions {
                v2_formula: self.solver.v2_formula,
                max_modes: self.solver.max_modes,
                truncation: self.truncation,
                probe_points: self.solver.probe_points,
            },
        })
    }
}

// toml reports missing keys as "missing field `mu`"; surface that name.
fn guess_field(msg: &str) -> String {
    msg.split('`').nth(1).unwrap_or("config").to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
[lame]
lambda = 1.0
mu = 1.0
[boundary.g1]
cos = [0.25]
[boundary.g2]
cos = [0.25]
"#;

    #[test]
    fn minimal_config_uses_defaults() {
        let cfg = RunConfig::parse(MINIMAL).unwrap();
        assert_eq!(cfg.grid, GridSection::default());
        assert_eq!(cfg.output.dir, "out");
        let inputs = cfg.validate().unwrap();
        assert_eq!(inputs.g1, BoundaryFunction::cos(1).scale(0.25));
        assert_eq!(inputs.basepoint, (0.0, 0.0));
    }

    #[test]
    fn negative_mu_names_the_field() {
        let err = RunConfig::parse(&MINIMAL.replace("mu = 1.0", "mu = -1.0")).unwrap_err();
        assert_eq!(err.field, "lame.mu");
        assert!(err.to_string().contains("mu"));
    }

    #[test]
    fn missing_key_names_the_field() {
        let err = RunConfig::parse(&MINIMAL.replace("mu = 1.0", "")).unwrap_err();
        assert_eq!(err.field, "mu");
    }

    #[test]
    fn other_validation_failures() {
        let bad_grid = format!("{MINIMAL}\n[grid]\nn_r = 4\nn_theta = 8\nr_max = 1.5\n");
        assert_eq!(RunConfig::parse(&bad_grid).unwrap_err().field, "grid.r_max");
        let bad_base = format!("{MINIMAL}\n[basepoint]\nx = 1.0\ny = 0.0\n");
        assert_eq!(RunConfig::parse(&bad_base).unwrap_err().field, "basepoint");
        let bad_n = format!("truncation = 0\n{MINIMAL}");
        assert_eq!(RunConfig::parse(&bad_n).unwrap_err().field, "truncation");
        let unknown = format!("{MINIMAL}\n[extra]\nfoo = 1\n");
        assert!(RunConfig::parse(&unknown).is_err());
    }

    #[test]
    fn serializes_back_to_equivalent_config() {
        let cfg = RunConfig::parse(MINIMAL).unwrap();
        assert_eq!(RunConfig::parse(&cfg.to_toml()).unwrap(), cfg);
    }
}
