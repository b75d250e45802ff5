//! TOML experiment description.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;

use kvstring::fd::FdConfig;
use kvstring::modal::{SimulationConfig, DEFAULT_COMPAT_TOL, DEFAULT_TRUNCATION};
use kvstring::scenario::{sine_series_state, with_lift, NamedProfile, SineTerm};
use kvstring::spectrum::{
    mode_data, validate_params, Family, ModeIndex, ModeShape, Sign, StringParams, DEFAULT_REJECT_TOL,
};
use kvstring::state::{Grid, StateVector};
use kvstring::{BoundarySignal, DistributedSignal};

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub params: ParamsSection,
    #[serde(default)]
    pub simulation: SimulationSection,
    #[serde(default)]
    pub initial: InitialSection,
    #[serde(default = "zero_boundary")]
    pub boundary: BoundarySignal,
    #[serde(default = "zero_distributed")]
    pub distributed: DistributedSignal,
    #[serde(default)]
    pub outputs: OutputsSection,
    #[serde(default)]
    pub verify: VerifySection,
}

fn zero_boundary() -> BoundarySignal {
    BoundarySignal::Zero
}

fn zero_distributed() -> DistributedSignal {
    DistributedSignal::Zero
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSection {
    pub alpha: f64,
    pub beta: f64,
    #[serde(default = "default_reject_tol")]
    pub reject_tol: f64,
}

fn default_reject_tol() -> f64 {
    DEFAULT_REJECT_TOL
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimulationSection {
    pub t_end: f64,
    pub dt: f64,
    pub truncation: usize,
    /// Intervals of the grid on which the initial state is sampled.
    pub grid: usize,
    pub nx_fd: usize,
    /// Defaults to `dt / 10`.
    pub dt_fd: Option<f64>,
    pub compat_tol: f64,
    pub accuracy: Option<f64>,
}

impl Default for SimulationSection {
    fn default() -> Self {
        SimulationSection {
            t_end: 10.0,
            dt: 0.01,
            truncation: DEFAULT_TRUNCATION,
            grid: 2048,
            nx_fd: 512,
            dt_fd: None,
            compat_tol: DEFAULT_COMPAT_TOL,
            accuracy: None,
        }
    }
}

/// One term `coefficient · Φ_{k,ε}`.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeTerm {
    pub k: usize,
    pub eps: i32,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

/// The initial state is the sum of every listed part, plus the lift of
/// `d(0)` when `lift` is set. An empty section is the zero state.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InitialSection {
    pub modes: Vec<ModeTerm>,
    pub profile: Option<NamedProfile>,
    pub sine: Vec<SineTerm>,
    pub lift: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputsSection {
    pub directory: PathBuf,
    /// Adds per-mode coefficient columns to the spectral trajectory.
    pub coefficients: bool,
    /// Writes the final spectral state on the initial grid.
    pub final_state: bool,
    /// Writes per-time bound margins of the configured scenario.
    pub margins: bool,
}

impl Default for OutputsSection {
    fn default() -> Self {
        OutputsSection { directory: PathBuf::from("."), coefficients: false, final_state: false, margins: true }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifySection {
    pub seed: u64,
    /// Number of random scenarios checked in addition to the configured one.
    pub scenarios: u64,
    pub include_config: bool,
    pub window_fraction: f64,
    pub gamma_rel_tol: f64,
}

impl Default for VerifySection {
    fn default() -> Self {
        VerifySection {
            seed: kvstring::scenario::RandomSuite::default().seed,
            scenarios: 0,
            include_config: true,
            window_fraction: 0.2,
            gamma_rel_tol: kvstring::iss::DEFAULT_GAMMA_REL_TOL,
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.boundary.validate()?;
        cfg.distributed.validate()?;
        Ok(cfg)
    }

    pub fn string_params(&self) -> Result<StringParams, CliError> {
        Ok(validate_params(self.params.alpha, self.params.beta, self.params.reject_tol)?)
    }

    pub fn initial_state(&self, params: &StringParams) -> Result<StateVector, CliError> {
        let grid = Grid::new(self.simulation.grid)?;
        let init = &self.initial;
        let mut state = sine_series_state(grid, &init.sine);
        if let Some(profile) = init.profile {
            state = state.combine(1.0.into(), &profile.state(grid), 1.0.into())?;
        }
        for term in &init.modes {
            let eps = Sign::from_i32(term.eps)
                .ok_or_else(|| CliError::Config(format!("mode eps must be -1 or 1, got {}", term.eps)))?;
            let shape = ModeShape::new(&mode_data(params, ModeIndex::new(term.k, eps)), Family::PrimalUnit);
            let mode = StateVector::from_shape(grid, &shape);
            state = state.combine(1.0.into(), &mode, Complex64::new(term.re, term.im))?;
        }
        if init.lift {
            state = with_lift(&state, &self.boundary, params)?;
        }
        Ok(state)
    }

    pub fn simulation_config(&self) -> Result<SimulationConfig, CliError> {
        let params = self.string_params()?;
        let sim = &self.simulation;
        let mut cfg = SimulationConfig::new(params, self.initial_state(&params)?, sim.t_end, sim.dt);
        cfg.d = self.boundary.clone();
        cfg.u = self.distributed.clone();
        cfg.truncation = sim.truncation;
        cfg.compat_tol = sim.compat_tol;
        cfg.accuracy = sim.accuracy;
        cfg.store_coefficients = self.outputs.coefficients || self.outputs.final_state;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn fd_config(&self) -> FdConfig {
        FdConfig::new(self.simulation.nx_fd, self.simulation.dt_fd.unwrap_or(self.simulation.dt / 10.0))
    }
}
