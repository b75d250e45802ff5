//! Ready-made initial states and seeded random scenarios.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::iss::decay_rate;
use crate::modal::SimulationConfig;
use crate::signal::{BoundarySignal, DistributedSignal, SpatialProfile};
use crate::spectrum::{validate_params, StringParams};
use crate::state::{lift_boundary, Grid, StateVector};

/// One sine term `(a sin(k̃πx), b sin(k̃πx))` of a real state in `ker 𝔅`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SineTerm {
    pub k: usize,
    pub a: f64,
    pub b: f64,
}

/// `x1 = Σ a_k sin(k̃πx)`, `x2 = Σ b_k sin(k̃πx)`; band-limited in the modal basis.
pub fn sine_series_state(grid: Grid, terms: &[SineTerm]) -> StateVector {
    let w: Vec<f64> = terms.iter().map(|s| (s.k as f64 + 0.5) * PI).collect();
    StateVector::from_fn(
        grid,
        |x| Complex64::new(terms.iter().zip(&w).map(|(s, w)| s.a * w * (w * x).cos()).sum(), 0.0),
        |x| Complex64::new(terms.iter().zip(&w).map(|(s, w)| s.b * (w * x).sin()).sum(), 0.0),
    )
}

/// Smooth profiles satisfying the clamped and free-end conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedProfile {
    /// `x1 = (2/π) sin(πx/2)`, `x2 = 0`.
    StaticBend,
    /// `x1 = 0`, `x2 = x(1 − x/2)`.
    VelocityRamp,
    BendAndRamp,
}

impl NamedProfile {
    pub fn state(self, grid: Grid) -> StateVector {
        let bend = |x: f64| Complex64::new((0.5 * PI * x).cos(), 0.0);
        let ramp = |x: f64| Complex64::new(x * (1.0 - 0.5 * x), 0.0);
        let zero = |_: f64| Complex64::new(0.0, 0.0);
        match self {
            NamedProfile::StaticBend => StateVector::from_fn(grid, bend, zero),
            NamedProfile::VelocityRamp => StateVector::from_fn(grid, zero, ramp),
            NamedProfile::BendAndRamp => StateVector::from_fn(grid, bend, ramp),
        }
    }
}

/// `B d(0) + state`, compatible with `d` whenever `state ∈ ker 𝔅`.
pub fn with_lift(state: &StateVector, d: &BoundarySignal, params: &StringParams) -> Result<StateVector> {
    lift_boundary(Complex64::new(d.value(0.0), 0.0), params, state.grid()).combine(
        Complex64::new(1.0, 0.0),
        state,
        Complex64::new(1.0, 0.0),
    )
}

/// Settings of the randomized verification suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomSuite {
    pub seed: u64,
    pub truncation: usize,
    pub grid_intervals: usize,
    pub output_steps: usize,
    /// Minimum non-degeneracy margin of the drawn coefficients.
    pub min_margin: f64,
}

impl Default for RandomSuite {
    fn default() -> Self {
        RandomSuite { seed: 20240611, truncation: 32, grid_intervals: 2048, output_steps: 800, min_margin: 0.02 }
    }
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub config: SimulationConfig,
}

fn random_time_signal(rng: &mut ChaCha8Rng, t_end: f64) -> BoundarySignal {
    let amplitude = rng.random_range(-1.0..1.0);
    match rng.random_range(0..4) {
        0 => BoundarySignal::Zero,
        1 => BoundarySignal::Sine {
            amplitude,
            frequency: rng.random_range(0.2..5.0),
            phase: rng.random_range(0.0..2.0 * PI),
        },
        2 => BoundarySignal::DecayingExp { amplitude, rate: rng.random_range(0.0..2.0) },
        _ => {
            let t0 = rng.random_range(0.0..0.25 * t_end);
            let width = rng.random_range(0.5..0.5 * t_end);
            BoundarySignal::PolyPulse { t0, t1: t0 + width, amplitude }
        }
    }
}

fn random_distributed(rng: &mut ChaCha8Rng, t_end: f64) -> DistributedSignal {
    if rng.random_bool(0.25) {
        return DistributedSignal::Zero;
    }
    let profile = if rng.random_bool(0.5) {
        SpatialProfile::Uniform
    } else {
        SpatialProfile::ModeSine { k: rng.random_range(0..5) }
    };
    DistributedSignal::Separable { profile, time: random_time_signal(rng, t_end) }
}

impl RandomSuite {
    /// Scenario `index`, drawn from its own stream so that scenarios are
    /// independent of evaluation order.
    pub fn scenario(&self, index: u64) -> Result<Scenario> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        let params = loop {
            let alpha = rng.random_range(0.25..4.0);
            let beta = rng.random_range(0.1..2.5);
            if let Ok(p) = validate_params(alpha, beta, self.min_margin) {
                break p;
            }
        };
        let kappa0 = decay_rate(&params);
        let t_end = (8.0 / kappa0).min(40.0);
        let dt = t_end / self.output_steps as f64;
        let terms: Vec<SineTerm> = (0..=4)
            .map(|k| {
                let scale = 1.0 / (k as f64 + 1.0);
                SineTerm { k, a: scale * rng.random_range(-1.0..1.0), b: scale * rng.random_range(-1.0..1.0) }
            })
            .collect();
        let d = random_time_signal(&mut rng, t_end);
        let u = random_distributed(&mut rng, t_end);
        let grid = crate::state::Grid::new(self.grid_intervals)?;
        let initial = with_lift(&sine_series_state(grid, &terms), &d, &params)?;
        let mut config = SimulationConfig::new(params, initial, t_end, dt);
        config.d = d;
        config.u = u;
        config.truncation = self.truncation;
        // t_end is rounded through dt; keep the exact multiple
        config.t_end = dt * self.output_steps as f64;
        Ok(Scenario { name: format!("random-{}-{index}", self.seed), config })
    }
}
