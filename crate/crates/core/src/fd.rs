//! Finite-difference reference solver: staggered Kelvin–Voigt flux in space,
//! trapezoidal (Crank–Nicolson) stepping in time.
//!
//! Unknowns are `y_j, v_j = ∂_t y_j` at `x_j = j/nx`, `j = 1..nx`, with
//! `y_0 = v_0 = 0`. The last node owns a half cell whose outer flux is `d(t)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::modal::{SimulationConfig, SolverKind, Trajectory, FORCING_SUBSTEPS};
use crate::quadrature::{cumulative, derivative};
use crate::signal::{running_norms, DistributedSignal};
use crate::spectrum::StringParams;
use crate::state::{h_norm, Grid, StateVector};

pub const MIN_NX: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdConfig {
    pub nx: usize,
    pub dt: f64,
    pub store_states: bool,
}

impl FdConfig {
    pub fn new(nx: usize, dt: f64) -> Self {
        FdConfig { nx, dt, store_states: false }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < MIN_NX {
            return Err(Error::GridTooCoarse { intervals: self.nx, min: MIN_NX });
        }
        if self.nx % 2 == 1 {
            return Err(Error::OddIntervals(self.nx));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidConfig(format!("finite-difference step must be positive, got {}", self.dt)));
        }
        Ok(())
    }
}

/// `(Ly)_j` with the clamped node eliminated and the free-end half cell.
fn apply_laplacian(y: &[Complex64], h2: f64, out: &mut [Complex64]) {
    let n = y.len();
    let zero = Complex64::new(0.0, 0.0);
    for j in 0..n - 1 {
        let left = if j == 0 { zero } else { y[j - 1] };
        out[j] = (left - 2.0 * y[j] + y[j + 1]) / h2;
    }
    out[n - 1] = 2.0 * (y[n - 2] - y[n - 1]) / h2;
}

/// Pre-factored `I − τL` (Thomas algorithm).
struct Tridiagonal {
    lower: Vec<f64>,
    c_prime: Vec<f64>,
    denom: Vec<f64>,
}

impl Tridiagonal {
    fn new(n: usize, tau: f64, h2: f64) -> Result<Self> {
        let off = -tau / h2;
        let diag = 1.0 + 2.0 * tau / h2;
        let mut lower = vec![off; n];
        lower[0] = 0.0;
        lower[n - 1] = 2.0 * off;
        let mut upper = vec![off; n];
        upper[n - 1] = 0.0;
        let mut c_prime = vec![0.0; n];
        let mut denom = vec![0.0; n];
        for j in 0..n {
            let prev = if j == 0 { 0.0 } else { c_prime[j - 1] };
            let den = diag - lower[j] * prev;
            if !den.is_finite() || den.abs() < 1e-300 {
                return Err(Error::StepUnstableOrSingular(format!("zero pivot at row {j}")));
            }
            denom[j] = den;
            c_prime[j] = upper[j] / den;
        }
        Ok(Tridiagonal { lower, c_prime, denom })
    }

    fn solve(&self, rhs: &mut [Complex64]) {
        let n = rhs.len();
        rhs[0] /= self.denom[0];
        for j in 1..n {
            rhs[j] = (rhs[j] - self.lower[j] * rhs[j - 1]) / self.denom[j];
        }
        for j in (0..n - 1).rev() {
            let next = rhs[j + 1];
            rhs[j] -= self.c_prime[j] * next;
        }
    }
}

/// Converts nodal `(y, v)` into a state on the `nx`-interval grid.
fn to_state(y: &[Complex64], v: &[Complex64], grid: Grid) -> StateVector {
    let zero = Complex64::new(0.0, 0.0);
    let mut full_y = Vec::with_capacity(y.len() + 1);
    full_y.push(zero);
    full_y.extend_from_slice(y);
    let mut full_v = Vec::with_capacity(v.len() + 1);
    full_v.push(zero);
    full_v.extend_from_slice(v);
    let x1_prime = derivative(&full_y, grid.h());
    StateVector::new(grid, x1_prime, full_v).expect("sizes match the grid")
}

fn distributed_at(u: &DistributedSignal, t: f64, nodes: &[f64], profile: Option<&[f64]>, out: &mut [f64]) {
    match (u, profile) {
        (DistributedSignal::Zero, _) => out.iter_mut().for_each(|v| *v = 0.0),
        (DistributedSignal::Separable { time, .. }, Some(p)) => {
            let g = time.value(t);
            out.iter_mut().zip(p).for_each(|(v, p)| *v = p * g);
        }
        _ => out.iter_mut().zip(nodes).for_each(|(v, &x)| *v = u.value(t, x)),
    }
}

/// Simulates the string on a uniform mesh and reports the same quantities
/// as [`crate::modal::simulate_spectral`].
pub fn simulate_fd(config: &SimulationConfig, fd: &FdConfig) -> Result<Trajectory> {
    let steps = config.validate()?;
    fd.validate()?;
    let params: &StringParams = &config.params;
    let init_grid = config.initial.grid();
    if !init_grid.intervals().is_multiple_of(fd.nx) {
        return Err(Error::GridMismatch { left: init_grid.intervals(), right: fd.nx });
    }
    let ratio = config.dt / fd.dt;
    let per_output = ratio.round();
    if per_output < 1.0 || (ratio - per_output).abs() > 1e-9 * per_output {
        return Err(Error::InvalidConfig(format!(
            "output step {} is not a multiple of the finite-difference step {}",
            config.dt, fd.dt
        )));
    }
    let per_output = per_output as usize;

    let nx = fd.nx;
    let grid = Grid::new(nx)?;
    let h = grid.h();
    let h2 = h * h;
    let stride = init_grid.intervals() / nx;
    let y_fine = cumulative(config.initial.x1_prime(), init_grid.h());
    let mut y: Vec<Complex64> = y_fine.iter().step_by(stride).skip(1).cloned().collect();
    let mut v: Vec<Complex64> = config.initial.x2().iter().step_by(stride).skip(1).cloned().collect();

    let dtf = fd.dt;
    let tau = 0.5 * dtf * params.beta + 0.25 * dtf * dtf * params.alpha;
    let solver = Tridiagonal::new(nx, tau, h2)?;

    let nodes: Vec<f64> = (1..=nx).map(|j| grid.x(j)).collect();
    let profile: Option<Vec<f64>> = match &config.u {
        DistributedSignal::Separable { profile, .. } => Some(nodes.iter().map(|&x| profile.value(x)).collect()),
        _ => None,
    };
    let forcing = |t: f64, out: &mut [f64]| -> f64 {
        distributed_at(&config.u, t, &nodes, profile.as_deref(), out);
        config.d.value(t)
    };

    let norms = running_norms(&config.d, &config.u, config.dt, steps, FORCING_SUBSTEPS);
    let mut h_norms = Vec::with_capacity(steps + 1);
    let mut states = fd.store_states.then(Vec::new);
    let record = |y: &[Complex64], v: &[Complex64], h_norms: &mut Vec<f64>, states: &mut Option<Vec<StateVector>>| {
        let s = to_state(y, v, grid);
        h_norms.push(h_norm(&s, params));
        if let Some(st) = states.as_mut() {
            st.push(s);
        }
    };
    record(&y, &v, &mut h_norms, &mut states);

    let mut ly = vec![Complex64::new(0.0, 0.0); nx];
    let mut lv = vec![Complex64::new(0.0, 0.0); nx];
    let mut rhs = vec![Complex64::new(0.0, 0.0); nx];
    let mut u_old = vec![0.0; nx];
    let mut u_new = vec![0.0; nx];
    let mut d_old = forcing(0.0, &mut u_old);
    for i in 0..steps {
        for s in 0..per_output {
            let n = i * per_output + s;
            let t_new = (n + 1) as f64 * dtf;
            let d_new = forcing(t_new, &mut u_new);
            apply_laplacian(&y, h2, &mut ly);
            apply_laplacian(&v, h2, &mut lv);
            for j in 0..nx {
                let b = 0.5 * dtf * (u_old[j] + u_new[j]);
                rhs[j] = v[j] + tau * lv[j] + dtf * params.alpha * ly[j] + b;
            }
            rhs[nx - 1] += dtf * (d_old + d_new) / h;
            solver.solve(&mut rhs);
            for j in 0..nx {
                y[j] += 0.5 * dtf * (v[j] + rhs[j]);
            }
            std::mem::swap(&mut v, &mut rhs);
            if !v[nx - 1].is_finite() {
                return Err(Error::StepUnstableOrSingular(format!("non-finite state at t = {t_new}")));
            }
            d_old = d_new;
            std::mem::swap(&mut u_old, &mut u_new);
        }
        record(&y, &v, &mut h_norms, &mut states);
    }

    Ok(Trajectory {
        solver: SolverKind::Fd,
        times: (0..=steps).map(|i| config.time(i)).collect(),
        h_norms,
        d_sup: norms.d_sup,
        u_sup: norms.u_sup,
        d_l2: norms.d_l2,
        u_l2: norms.u_l2,
        coefficients: None,
        states,
    })
}

/// `‖X(t_i)‖²_H` for every output time.
pub fn energy_series(traj: &Trajectory) -> Vec<f64> {
    traj.h_norms.iter().map(|n| n * n).collect()
}
