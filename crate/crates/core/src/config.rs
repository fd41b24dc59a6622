//! Experiment configuration: a TOML document whose keys are all optional.
//!
//! ```toml
//! stability_policy = "warn"   # or "fail"
//!
//! [grid]
//! n_points = 513
//! x_max = 12.0
//!
//! [physics]
//! c_n = 50.0
//! lambda = -2.0
//! # mu = 8.9                 # omit for automatic (fixed-c_n relaxation)
//!
//! [seed]
//! mode_index = 2
//! amplitude = 0.5
//!
//! # [trap_modulation]        # present => excite by modulating the trap
//! # eta = 0.1
//! # omega = 1.74
//! # t_off = 10.0
//! ```
//!
//! See [`ExperimentConfig`] for the remaining sections.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dynamics::{self, StabilityCheck};
use crate::error::{Error, Result};
use crate::grid::{make_grid, Grid1D};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub n_points: usize,
    pub x_max: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { n_points: 513, x_max: 12.0 }
    }
}

impl GridConfig {
    pub fn build(&self) -> Result<Grid1D> {
        make_grid(self.n_points, self.x_max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhysicsConfig {
    pub c_n: f64,
    /// Damping used for relaxation.
    pub lambda: f64,
    /// Fixed chemical potential; `None` means relax at fixed `c_n`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
}

impl Default for PhysicsConfig {
    fn default() -> Self {
        Self { c_n: 50.0, lambda: -2.0, mu: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IntegratorConfig {
    pub dt: f64,
    /// Simulated time of the figure runs.
    pub t_final: f64,
    /// Steps between recorded samples.
    pub record_stride: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self { dt: dynamics::DEFAULT_DT, t_final: 20.0, record_stride: 20 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RelaxConfig {
    pub t_max: f64,
    pub phase_tol: f64,
    pub residual_tol: f64,
    pub check_every: usize,
}

impl Default for RelaxConfig {
    fn default() -> Self {
        Self { t_max: 30.0, phase_tol: 1e-6, residual_tol: 1e-5, check_every: 50 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SeedConfig {
    pub mode_index: usize,
    /// Real seed amplitude `b`; the initial population is `b²`.
    pub amplitude: f64,
}

impl Default for SeedConfig {
    fn default() -> Self {
        Self { mode_index: 2, amplitude: 0.5 }
    }
}

/// `V = ½(1 + η sin Ωt)x²` for `t < t_off`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrapModulationConfig {
    pub eta: f64,
    pub omega: f64,
    pub t_off: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectrumConfig {
    pub n_modes: usize,
    /// Residual the condensate is relaxed to before linearizing about it.
    pub residual_tol: f64,
    pub t_max: f64,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        Self { n_modes: 10, residual_tol: 1e-9, t_max: 60.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FiguresConfig {
    /// Damping values of the four-curve sweeps.
    pub lambdas: Vec<f64>,
}

impl Default for FiguresConfig {
    fn default() -> Self {
        Self { lambdas: vec![-0.03, -0.1, -0.25, -0.5] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AdiabaticConfig {
    pub first_ramp: f64,
    pub max_ramp: f64,
}

impl Default for AdiabaticConfig {
    fn default() -> Self {
        Self { first_ramp: 10.0, max_ramp: 640.0 }
    }
}

/// Stability scan. Runs on its own coarse grid: the RK4 boundary in `|Λ|·dt`
/// scales with the largest discrete kinetic energy `~2/dx²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanConfig {
    pub n_points: usize,
    pub x_max: f64,
    pub dt: f64,
    pub lambda_dt: Vec<f64>,
    pub c_n: Vec<f64>,
    pub t_final: Vec<f64>,
}

impl Default for ScanConfig {
    fn default() -> Self {
        let mut lambda_dt = vec![0.002];
        lambda_dt.extend((1..=20).map(|k| 0.005 * k as f64));
        Self {
            n_points: 129,
            x_max: 10.0,
            dt: 1e-3,
            lambda_dt,
            c_n: vec![0.0, 50.0, 100.0],
            t_final: vec![5.0, 20.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub directory: PathBuf,
    pub emit_plots: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { directory: PathBuf::from("out"), emit_plots: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityPolicy {
    #[default]
    Warn,
    Fail,
}

/// Everything a command needs. Defaults reproduce the reference scenarios.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub stability_policy: StabilityPolicy,
    pub grid: GridConfig,
    pub physics: PhysicsConfig,
    pub integrator: IntegratorConfig,
    pub relax: RelaxConfig,
    pub seed: SeedConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trap_modulation: Option<TrapModulationConfig>,
    pub spectrum: SpectrumConfig,
    pub figures: FiguresConfig,
    pub adiabatic: AdiabaticConfig,
    pub scan: ScanConfig,
    pub output: OutputConfig,
    /// SI parameter file for `wplus`; the shipped MIT-like set when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wplus_params: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text).map_err(|e| match e {
            Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Structural checks that do not involve the stability guard.
    pub fn validate(&self) -> Result<()> {
        self.grid.build()?;
        let positive = [
            ("physics.c_n", self.physics.c_n, true),
            ("integrator.dt", self.integrator.dt, false),
            ("integrator.t_final", self.integrator.t_final, false),
            ("relax.t_max", self.relax.t_max, false),
            ("relax.phase_tol", self.relax.phase_tol, false),
            ("relax.residual_tol", self.relax.residual_tol, false),
            ("scan.dt", self.scan.dt, false),
            ("spectrum.residual_tol", self.spectrum.residual_tol, false),
            ("spectrum.t_max", self.spectrum.t_max, false),
        ];
        for (name, value, zero_ok) in positive {
            let ok = value.is_finite() && (value > 0.0 || (zero_ok && value == 0.0));
            if !ok {
                return Err(Error::Config(format!("{name} must be positive, got {value}")));
            }
        }
        if !(self.physics.lambda < 0.0) {
            return Err(Error::Config(format!(
                "physics.lambda must be negative for relaxation, got {}",
                self.physics.lambda
            )));
        }
        if let Some(mu) = self.physics.mu {
            if !mu.is_finite() {
                return Err(Error::Config("physics.mu must be finite".into()));
            }
        }
        if self.integrator.record_stride == 0 || self.relax.check_every == 0 {
            return Err(Error::Config("record_stride and check_every must be >= 1".into()));
        }
        if self.spectrum.n_modes == 0 {
            return Err(Error::Config("spectrum.n_modes must be >= 1".into()));
        }
        if self.seed.mode_index == 0 || self.seed.mode_index > self.spectrum.n_modes {
            return Err(Error::Config(format!(
                "seed.mode_index must lie in 1..={}, got {}",
                self.spectrum.n_modes, self.seed.mode_index
            )));
        }
        if self.figures.lambdas.is_empty() || self.figures.lambdas.iter().any(|l| !(*l <= 0.0)) {
            return Err(Error::Config("figures.lambdas must be non-empty and <= 0".into()));
        }
        if !(self.adiabatic.first_ramp > 0.0 && self.adiabatic.max_ramp >= self.adiabatic.first_ramp) {
            return Err(Error::Config("adiabatic ramps must satisfy 0 < first_ramp <= max_ramp".into()));
        }
        make_grid(self.scan.n_points, self.scan.x_max)?;
        if self.scan.lambda_dt.iter().any(|v| !(*v > 0.0)) || self.scan.t_final.iter().any(|v| !(*v > 0.0)) {
            return Err(Error::Config("scan.lambda_dt and scan.t_final entries must be positive".into()));
        }
        if let Some(m) = &self.trap_modulation {
            if !(m.eta.is_finite() && m.eta.abs() < 1.0 && m.omega.is_finite() && m.t_off >= 0.0) {
                return Err(Error::Config("trap_modulation needs |eta| < 1, finite omega, t_off >= 0".into()));
            }
        }
        Ok(())
    }

    /// Every `(Λ, dt)` pair the configured commands will integrate with.
    pub fn stability_checks(&self) -> Vec<StabilityCheck> {
        let dt = self.integrator.dt;
        std::iter::once(self.physics.lambda)
            .chain(self.figures.lambdas.iter().copied())
            .map(|l| dynamics::stability_guard(l, dt))
            .collect()
    }

    /// Validates and applies the stability policy. Returns warnings for the
    /// `warn` policy; fails with [`Error::Unstable`] under `fail`.
    pub fn check(&self) -> Result<Vec<String>> {
        self.validate()?;
        let failing: Vec<String> = self
            .stability_checks()
            .into_iter()
            .filter(|c| !c.pass)
            .map(|c| c.to_string())
            .collect();
        match self.stability_policy {
            StabilityPolicy::Fail if !failing.is_empty() => Err(Error::Unstable(failing.join("; "))),
            _ => Ok(failing),
        }
    }
}
