//! Modal ODEs `ċ = λc + d(t)·conj(Ψ²(1)) + ∫ u·conj(Ψ²)` and their exact
//! exponential integration, assembled into full trajectories.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::signal::{
    running_norms, sin_moment_of_samples, BoundarySignal, DistributedSignal, SampledField, SpatialProfile,
};
use crate::spectrum::{riesz_constant, ModeData, ModeIndex, Sign, StringParams};
use crate::state::{boundary_trace, h_norm, CoefficientSet, Grid, ModalBasis, StateVector};

pub const DEFAULT_TRUNCATION: usize = 64;
pub const DEFAULT_COMPAT_TOL: f64 = 1e-6;
/// Forcing samples per output step.
pub const FORCING_SUBSTEPS: usize = 4;

/// Below this `|λΔ|` the φ-functions are summed as power series.
const SERIES_RADIUS: f64 = 0.5;
const SERIES_TERMS: usize = 20;
/// Modes integrated together before their energies are folded in.
const MODE_CHUNK: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Spectral,
    Fd,
}

impl SolverKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SolverKind::Spectral => "spectral",
            SolverKind::Fd => "fd",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimulationConfig {
    pub params: StringParams,
    pub initial: StateVector,
    pub d: BoundarySignal,
    pub u: DistributedSignal,
    pub t_end: f64,
    /// Output step.
    pub dt: f64,
    pub truncation: usize,
    /// Allowed `|𝔅X0 − d(0)|`.
    pub compat_tol: f64,
    /// When set, the run is refused if the truncation tail bound exceeds
    /// `accuracy · (‖X0‖ + sup|d| + sup‖u‖)`.
    pub accuracy: Option<f64>,
    pub store_coefficients: bool,
}

impl SimulationConfig {
    pub fn new(params: StringParams, initial: StateVector, t_end: f64, dt: f64) -> Self {
        SimulationConfig {
            params,
            initial,
            d: BoundarySignal::Zero,
            u: DistributedSignal::Zero,
            t_end,
            dt,
            truncation: DEFAULT_TRUNCATION,
            compat_tol: DEFAULT_COMPAT_TOL,
            accuracy: None,
            store_coefficients: false,
        }
    }

    /// Number of output steps; `t_end` must be a whole multiple of `dt`.
    pub fn steps(&self) -> Result<usize> {
        if !(self.dt > 0.0 && self.dt.is_finite() && self.t_end >= self.dt && self.t_end.is_finite()) {
            return Err(Error::InvalidConfig(format!("need t_end >= dt > 0, got t_end={} dt={}", self.t_end, self.dt)));
        }
        let ratio = self.t_end / self.dt;
        let steps = ratio.round();
        if (ratio - steps).abs() > 1e-9 * steps {
            return Err(Error::InvalidConfig(format!("t_end={} is not a multiple of dt={}", self.t_end, self.dt)));
        }
        Ok(steps as usize)
    }

    pub fn time(&self, i: usize) -> f64 {
        i as f64 * self.dt
    }

    pub fn validate(&self) -> Result<usize> {
        self.d.validate()?;
        self.u.validate()?;
        if self.compat_tol.is_nan() || self.compat_tol < 0.0 {
            return Err(Error::InvalidConfig("compatibility tolerance must be nonnegative".into()));
        }
        self.steps()
    }
}

/// Time series produced by either solver.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub solver: SolverKind,
    pub times: Vec<f64>,
    pub h_norms: Vec<f64>,
    pub d_sup: Vec<f64>,
    pub u_sup: Vec<f64>,
    pub d_l2: Vec<f64>,
    pub u_l2: Vec<f64>,
    pub coefficients: Option<Vec<CoefficientSet>>,
    pub states: Option<Vec<StateVector>>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn t_end(&self) -> f64 {
        *self.times.last().unwrap_or(&0.0)
    }

    /// Rebuilds `X(t_i) = Σ c Φ` on `grid` from the stored coefficients.
    pub fn materialize_states(&mut self, basis: &ModalBasis, grid: Grid) -> Result<()> {
        let coeffs = self
            .coefficients
            .as_ref()
            .ok_or_else(|| Error::InvalidConfig("trajectory has no stored coefficients".into()))?;
        self.states = Some(coeffs.iter().map(|c| basis.reconstruct(c, grid)).collect());
        Ok(())
    }
}

/// `f(t) = d(t)·conj(Ψ²(1)) + ∫ u(t)·conj(Ψ²)` at each time.
pub fn modal_forcing(mode: &ModeData, d: &BoundarySignal, u: &DistributedSignal, times: &[f64]) -> Vec<Complex64> {
    let bw = mode.boundary_weight();
    let inv_p = mode.pairing.inv();
    times.iter().map(|&t| bw * d.value(t) + inv_p * u.sin_moment(mode.index.k, t)).collect()
}

fn phi_functions(z: Complex64) -> (Complex64, Complex64) {
    if z.norm() < SERIES_RADIUS {
        // φ1 = Σ zⁿ/(n+1)!, φ2 = Σ zⁿ/(n+2)!
        let mut p1 = Complex64::new(0.0, 0.0);
        let mut p2 = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for n in 0..SERIES_TERMS {
            term /= (n + 1) as f64;
            p1 += term;
            p2 += term / (n + 2) as f64;
            term *= z;
        }
        (p1, p2)
    } else {
        let ez = z.exp();
        ((ez - 1.0) / z, (ez - 1.0 - z) / (z * z))
    }
}

/// One step `c ↦ e^{λΔ}c + ∫₀^Δ e^{λ(Δ−s)} f̂(s) ds` with `f̂` linear.
#[derive(Debug, Clone, Copy)]
struct ExpStep {
    decay: Complex64,
    w_old: Complex64,
    w_new: Complex64,
}

impl ExpStep {
    fn new(lambda: Complex64, step: f64) -> Self {
        let z = lambda * step;
        let (p1, p2) = phi_functions(z);
        ExpStep { decay: z.exp(), w_old: (p1 - p2) * step, w_new: p2 * step }
    }

    fn apply(&self, c: Complex64, f_old: Complex64, f_new: Complex64) -> Complex64 {
        self.decay * c + self.w_old * f_old + self.w_new * f_new
    }
}

/// Exact exponential integration of `ċ = λc + f` on a uniform grid of
/// spacing `step`, with `f` interpolated linearly between samples.
pub fn integrate_mode(lambda: Complex64, c0: Complex64, forcing: &[Complex64], step: f64) -> Vec<Complex64> {
    let stepper = ExpStep::new(lambda, step);
    let mut out = Vec::with_capacity(forcing.len().max(1));
    let mut c = c0;
    out.push(c);
    for w in forcing.windows(2) {
        c = stepper.apply(c, w[0], w[1]);
        out.push(c);
    }
    out
}

/// Upper estimate of the H-norm carried by the modes `k > truncation`.
///
/// The disturbance part uses `√(3(1+C) Σ_{k>N} γ²_{k,ε})` with the tail of
/// `Σγ²` replaced by four times its asymptotic envelope; `initial_tail` is
/// the norm of the unresolved part of the initial state.
pub fn truncation_bound(
    params: &StringParams,
    truncation: usize,
    d_sup: f64,
    u_sup: f64,
    initial_tail: f64,
) -> Result<f64> {
    let c = riesz_constant(params)?;
    let env = gamma_tail_envelope(params, truncation.max(1));
    Ok((3.0 * (1.0 + c) * env).sqrt() * (d_sup + u_sup) + initial_tail)
}

/// `4·(2/(απ²K) + 2/(3β²π⁴K³))`, bounding `Σ_{k>K} (γ²_{k,+} + γ²_{k,−})`.
pub fn gamma_tail_envelope(params: &StringParams, k: usize) -> f64 {
    let kf = k as f64;
    let pi2 = PI * PI;
    4.0 * (2.0 / (params.alpha * pi2 * kf) + 2.0 / (3.0 * params.beta.powi(2) * pi2 * pi2 * kf.powi(3)))
}

/// `4·4/(βπ²K)`, bounding `Σ_{k>K} |Re λ| (γ²_{k,+} + γ²_{k,−})`.
pub fn gamma_prime_tail_envelope(params: &StringParams, k: usize) -> f64 {
    16.0 / (params.beta * PI * PI * k as f64)
}

/// `|𝔅X0 − d(0)|`.
pub fn compatibility_mismatch(initial: &StateVector, d: &BoundarySignal, params: &StringParams) -> Result<f64> {
    Ok((boundary_trace(initial, params)? - d.value(0.0)).norm())
}

pub fn check_compatibility(initial: &StateVector, d: &BoundarySignal, params: &StringParams, tol: f64) -> Result<bool> {
    Ok(compatibility_mismatch(initial, d, params)? <= tol)
}

/// Per-mode forcing source shared across a run.
enum ForcingTable<'a> {
    Zero,
    Separable { factor: Vec<f64>, profile: &'a SpatialProfile },
    Sampled { field: &'a SampledField, slots: Vec<(usize, f64)> },
}

impl<'a> ForcingTable<'a> {
    fn new(u: &'a DistributedSignal, times: &[f64]) -> Self {
        match u {
            DistributedSignal::Zero => ForcingTable::Zero,
            DistributedSignal::Separable { profile, time } => {
                ForcingTable::Separable { factor: times.iter().map(|&t| time.value(t)).collect(), profile }
            }
            DistributedSignal::Sampled(field) => {
                ForcingTable::Sampled { field, slots: times.iter().map(|&t| field.locate(t)).collect() }
            }
        }
    }

    /// `∫ u(t_j) sin(k̃πx)` for every fine time `t_j`.
    fn moments(&self, k: usize, len: usize) -> Option<Vec<f64>> {
        match self {
            ForcingTable::Zero => None,
            ForcingTable::Separable { factor, profile } => {
                let m = profile.sin_moment(k);
                Some(factor.iter().map(|f| f * m).collect())
            }
            ForcingTable::Sampled { field, slots } => {
                let rows: Vec<f64> = field.values.iter().map(|row| sin_moment_of_samples(row, k)).collect();
                debug_assert_eq!(slots.len(), len);
                Some(slots.iter().map(|&(i, w)| (1.0 - w) * rows[i] + w * rows[i + 1]).collect())
            }
        }
    }
}

/// Integrates one mode over the fine grid and returns its coefficient at
/// every output time.
fn run_mode(
    mode: &ModeData,
    c0: Complex64,
    d_fine: &[f64],
    u_moments: Option<&[f64]>,
    delta: f64,
    substeps: usize,
) -> Vec<Complex64> {
    let bw = mode.boundary_weight();
    let inv_p = mode.pairing.inv();
    let f = |j: usize| bw * d_fine[j] + u_moments.map_or(Complex64::new(0.0, 0.0), |m| inv_p * m[j]);
    let stepper = ExpStep::new(mode.lambda, delta);
    let fine = d_fine.len() - 1;
    let mut out = Vec::with_capacity(fine / substeps + 1);
    let mut c = c0;
    out.push(c);
    let mut f_old = f(0);
    for j in 1..=fine {
        let f_new = f(j);
        c = stepper.apply(c, f_old, f_new);
        f_old = f_new;
        if j % substeps == 0 {
            out.push(c);
        }
    }
    out
}

/// Simulates the truncated modal expansion of the closed-loop string.
pub fn simulate_spectral(config: &SimulationConfig) -> Result<Trajectory> {
    let steps = config.validate()?;
    let params = &config.params;
    let mismatch = compatibility_mismatch(&config.initial, &config.d, params)?;
    if mismatch > config.compat_tol {
        return Err(Error::CompatibilityViolated { mismatch, tol: config.compat_tol });
    }
    let n = config.truncation;
    let basis = ModalBasis::new(*params, n)?;
    let c0 = basis.project(&config.initial);
    let norms = running_norms(&config.d, &config.u, config.dt, steps, FORCING_SUBSTEPS);

    if let Some(accuracy) = config.accuracy {
        let resolved = basis.reconstruct(&c0, config.initial.grid());
        let tail = h_norm(&resolved.combine(1.0.into(), &config.initial, (-1.0).into())?, params);
        let d_sup = *norms.d_sup.last().unwrap_or(&0.0);
        let u_sup = *norms.u_sup.last().unwrap_or(&0.0);
        let bound = truncation_bound(params, n, d_sup, u_sup, tail)?;
        let limit = accuracy * (h_norm(&config.initial, params) + d_sup + u_sup);
        if bound > limit {
            return Err(Error::TruncationInsufficient { bound, limit });
        }
    }

    let fine = steps * FORCING_SUBSTEPS;
    let delta = config.dt / FORCING_SUBSTEPS as f64;
    let fine_times: Vec<f64> = (0..=fine).map(|j| j as f64 * delta).collect();
    let d_fine: Vec<f64> = fine_times.iter().map(|&t| config.d.value(t)).collect();
    let table = ForcingTable::new(&config.u, &fine_times);

    let mut h_sq = vec![0.0; steps + 1];
    let mut stored: Option<Vec<Vec<Complex64>>> =
        config.store_coefficients.then(|| vec![vec![Complex64::new(0.0, 0.0); 2 * (n + 1)]; steps + 1]);
    let ks: Vec<usize> = (0..=n).collect();
    for chunk in ks.chunks(MODE_CHUNK) {
        let blocks: Vec<[Vec<Complex64>; 2]> = chunk
            .par_iter()
            .map(|&k| {
                let moments = table.moments(k, fine + 1);
                Sign::BOTH.map(|eps| {
                    let idx = ModeIndex::new(k, eps);
                    run_mode(basis.mode(idx), c0.get(idx), &d_fine, moments.as_deref(), delta, FORCING_SUBSTEPS)
                })
            })
            .collect();
        for (&k, [minus, plus]) in chunk.iter().zip(&blocks) {
            for i in 0..=steps {
                h_sq[i] += basis.block_energy(k, minus[i], plus[i]);
            }
            if let Some(store) = stored.as_mut() {
                for i in 0..=steps {
                    store[i][2 * k] = minus[i];
                    store[i][2 * k + 1] = plus[i];
                }
            }
        }
    }

    let coefficients = match stored {
        Some(store) => {
            Some(store.into_iter().map(|values| CoefficientSet::from_values(n, values)).collect::<Result<Vec<_>>>()?)
        }
        None => None,
    };
    Ok(Trajectory {
        solver: SolverKind::Spectral,
        times: (0..=steps).map(|i| config.time(i)).collect(),
        h_norms: h_sq.into_iter().map(|v| v.max(0.0).sqrt()).collect(),
        d_sup: norms.d_sup,
        u_sup: norms.u_sup,
        d_l2: norms.d_l2,
        u_l2: norms.u_l2,
        coefficients,
        states: None,
    })
}
