//! Sampled elements of `H = H¹_L(0,1) × L²(0,1)`, the energy inner product,
//! modal projection/reconstruction and the unbounded operators of the
//! boundary control system.
//!
//! A state stores the derivative of its first component together with the
//! second component; the clamped end fixes `x1(0) = 0`, so `x1` itself is
//! recovered by cumulative quadrature when needed.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::{cumulative, derivative, right_end_derivative, second_derivative, simpson};
use crate::spectrum::{
    cross_inner_product, mode_pair, riesz_constant, Family, ModeData, ModeIndex, ModeShape, Sign, StringParams,
};

/// Smallest grid accepted by the finite-difference operators.
pub const MIN_FD_INTERVALS: usize = 16;

/// Relative slack used when testing the Riesz sandwich bounds.
const SANDWICH_SLACK: f64 = 1e-12;

/// Uniform grid on `[0, 1]` with an even number of intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    intervals: usize,
}

impl Grid {
    pub fn new(intervals: usize) -> Result<Grid> {
        if intervals == 0 || intervals % 2 == 1 {
            return Err(Error::OddIntervals(intervals));
        }
        Ok(Grid { intervals })
    }

    pub fn intervals(&self) -> usize {
        self.intervals
    }

    /// Number of sample points, `intervals + 1`.
    pub fn len(&self) -> usize {
        self.intervals + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn h(&self) -> f64 {
        1.0 / self.intervals as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        j as f64 / self.intervals as f64
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.x(j)).collect()
    }
}

/// A grid-sampled element of `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    grid: Grid,
    x1_prime: Vec<Complex64>,
    x2: Vec<Complex64>,
}

impl StateVector {
    pub fn new(grid: Grid, x1_prime: Vec<Complex64>, x2: Vec<Complex64>) -> Result<Self> {
        if x1_prime.len() != grid.len() || x2.len() != grid.len() {
            return Err(Error::InvalidConfig(format!(
                "state samples ({}, {}) do not match a grid of {} points",
                x1_prime.len(),
                x2.len(),
                grid.len()
            )));
        }
        Ok(StateVector { grid, x1_prime, x2 })
    }

    pub fn zero(grid: Grid) -> Self {
        let z = vec![Complex64::new(0.0, 0.0); grid.len()];
        StateVector { grid, x1_prime: z.clone(), x2: z }
    }

    pub fn from_fn(grid: Grid, x1_prime: impl Fn(f64) -> Complex64, x2: impl Fn(f64) -> Complex64) -> Self {
        let pts = grid.points();
        StateVector {
            grid,
            x1_prime: pts.iter().map(|&x| x1_prime(x)).collect(),
            x2: pts.iter().map(|&x| x2(x)).collect(),
        }
    }

    pub fn from_shape(grid: Grid, shape: &ModeShape) -> Self {
        Self::from_fn(grid, |x| shape.x1_prime(x), |x| shape.x2(x))
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn x1_prime(&self) -> &[Complex64] {
        &self.x1_prime
    }

    pub fn x2(&self) -> &[Complex64] {
        &self.x2
    }

    /// First component, integrated from the clamped end.
    pub fn x1(&self) -> Vec<Complex64> {
        cumulative(&self.x1_prime, self.grid.h())
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: Complex64, other: &StateVector, b: Complex64) -> Result<StateVector> {
        check_grids(self, other)?;
        let mix = |u: &[Complex64], v: &[Complex64]| u.iter().zip(v).map(|(&p, &q)| a * p + b * q).collect();
        Ok(StateVector {
            grid: self.grid,
            x1_prime: mix(&self.x1_prime, &other.x1_prime),
            x2: mix(&self.x2, &other.x2),
        })
    }

    pub fn scaled(&self, a: Complex64) -> StateVector {
        StateVector {
            grid: self.grid,
            x1_prime: self.x1_prime.iter().map(|&v| a * v).collect(),
            x2: self.x2.iter().map(|&v| a * v).collect(),
        }
    }

    /// Every `stride`-th sample, on a grid with `intervals / stride` intervals.
    pub fn subsample(&self, stride: usize) -> Result<StateVector> {
        if stride == 0 || !self.grid.intervals.is_multiple_of(stride) {
            return Err(Error::InvalidConfig(format!(
                "cannot subsample {} intervals by {stride}",
                self.grid.intervals
            )));
        }
        let grid = Grid::new(self.grid.intervals / stride)?;
        let pick = |v: &[Complex64]| v.iter().step_by(stride).cloned().collect();
        Ok(StateVector { grid, x1_prime: pick(&self.x1_prime), x2: pick(&self.x2) })
    }
}

fn check_grids(a: &StateVector, b: &StateVector) -> Result<()> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch { left: a.grid.intervals, right: b.grid.intervals });
    }
    Ok(())
}

/// `⟨a, b⟩_H = ∫ α a₁′ conj(b₁′) + a₂ conj(b₂)` by composite Simpson.
pub fn h_inner(a: &StateVector, b: &StateVector, params: &StringParams) -> Result<Complex64> {
    check_grids(a, b)?;
    let integrand: Vec<Complex64> = (0..a.grid.len())
        .map(|j| params.alpha * a.x1_prime[j] * b.x1_prime[j].conj() + a.x2[j] * b.x2[j].conj())
        .collect();
    Ok(simpson(&integrand, a.grid.h()))
}

pub fn h_norm(a: &StateVector, params: &StringParams) -> f64 {
    let integrand: Vec<f64> =
        (0..a.grid.len()).map(|j| params.alpha * a.x1_prime[j].norm_sqr() + a.x2[j].norm_sqr()).collect();
    simpson(&integrand, a.grid.h()).max(0.0).sqrt()
}

/// Modal coefficients `c_{k,ε}` for every mode with `k <= truncation`.
///
/// Values are stored block by block: `(k, −1)` then `(k, +1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet {
    truncation: usize,
    values: Vec<Complex64>,
}

impl CoefficientSet {
    pub fn zeros(truncation: usize) -> Self {
        CoefficientSet { truncation, values: vec![Complex64::new(0.0, 0.0); 2 * (truncation + 1)] }
    }

    pub fn from_fn(truncation: usize, f: impl FnMut(ModeIndex) -> Complex64) -> Self {
        let values = mode_indices(truncation).map(f).collect();
        CoefficientSet { truncation, values }
    }

    pub fn from_values(truncation: usize, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != 2 * (truncation + 1) {
            return Err(Error::InvalidConfig(format!(
                "{} coefficients given for truncation {truncation}",
                values.len()
            )));
        }
        Ok(CoefficientSet { truncation, values })
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn position(index: ModeIndex) -> usize {
        2 * index.k + usize::from(index.eps == Sign::Plus)
    }

    pub fn get(&self, index: ModeIndex) -> Complex64 {
        if index.k > self.truncation {
            return Complex64::new(0.0, 0.0);
        }
        self.values[Self::position(index)]
    }

    pub fn set(&mut self, index: ModeIndex, value: Complex64) {
        let pos = Self::position(index);
        self.values[pos] = value;
    }

    pub fn modes(&self) -> impl Iterator<Item = ModeIndex> {
        mode_indices(self.truncation)
    }

    /// `Σ |c|²`.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// All modes with `k <= truncation`, in storage order.
pub fn mode_indices(truncation: usize) -> impl Iterator<Item = ModeIndex> {
    (0..=truncation).flat_map(|k| Sign::BOTH.into_iter().map(move |eps| ModeIndex::new(k, eps)))
}

/// Result of testing `(1−C)Σ|a|² <= ‖Σ aΦ‖² <= (1+C)Σ|a|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SandwichCheck {
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub ratio: f64,
}

/// Cached spectral data for every mode up to a truncation index.
#[derive(Debug, Clone)]
pub struct ModalBasis {
    params: StringParams,
    truncation: usize,
    modes: Vec<ModeData>,
    primal: Vec<ModeShape>,
    dual: Vec<ModeShape>,
    cross: Vec<Complex64>,
    riesz_c: f64,
}

impl ModalBasis {
    pub fn new(params: StringParams, truncation: usize) -> Result<Self> {
        let riesz_c = riesz_constant(&params)?;
        let mut modes = Vec::with_capacity(2 * (truncation + 1));
        for k in 0..=truncation {
            let (minus, plus) = mode_pair(&params, k);
            modes.push(minus);
            modes.push(plus);
        }
        let primal = modes.iter().map(|m| ModeShape::new(m, Family::PrimalUnit)).collect();
        let dual = modes.iter().map(|m| ModeShape::new(m, Family::DualUnit)).collect();
        let cross = (0..=truncation).map(|k| cross_inner_product(&params, k)).collect();
        Ok(ModalBasis { params, truncation, modes, primal, dual, cross, riesz_c })
    }

    pub fn params(&self) -> &StringParams {
        &self.params
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn riesz_c(&self) -> f64 {
        self.riesz_c
    }

    pub fn modes(&self) -> &[ModeData] {
        &self.modes
    }

    pub fn mode(&self, index: ModeIndex) -> &ModeData {
        &self.modes[CoefficientSet::position(index)]
    }

    pub fn primal_shape(&self, index: ModeIndex) -> &ModeShape {
        &self.primal[CoefficientSet::position(index)]
    }

    pub fn dual_shape(&self, index: ModeIndex) -> &ModeShape {
        &self.dual[CoefficientSet::position(index)]
    }

    /// `⟨Φ_{k,−1}, Φ_{k,+1}⟩_H`.
    pub fn cross(&self, k: usize) -> Complex64 {
        self.cross[k]
    }

    /// `c_{k,ε} = ⟨state, Ψ_{k,ε}⟩_H` using exact dual profiles.
    pub fn project(&self, state: &StateVector) -> CoefficientSet {
        let grid = state.grid();
        let h = grid.h();
        let pts = grid.points();
        let alpha = self.params.alpha;
        let blocks: Vec<[Complex64; 2]> = (0..=self.truncation)
            .into_par_iter()
            .map(|k| {
                let w = (k as f64 + 0.5) * PI;
                let cos_part: Vec<Complex64> =
                    pts.iter().zip(state.x1_prime()).map(|(&x, &v)| v * (w * x).cos()).collect();
                let sin_part: Vec<Complex64> = pts.iter().zip(state.x2()).map(|(&x, &v)| v * (w * x).sin()).collect();
                let ic = simpson(&cos_part, h);
                let is = simpson(&sin_part, h);
                let mut out = [Complex64::new(0.0, 0.0); 2];
                for (slot, eps) in Sign::BOTH.into_iter().enumerate() {
                    let d = self.dual_shape(ModeIndex::new(k, eps));
                    out[slot] = alpha * w * d.first.conj() * ic + d.second.conj() * is;
                }
                out
            })
            .collect();
        CoefficientSet { truncation: self.truncation, values: blocks.into_iter().flatten().collect() }
    }

    /// `Σ c_{k,ε} Φ_{k,ε}` sampled on `grid`.
    pub fn reconstruct(&self, coeffs: &CoefficientSet, grid: Grid) -> StateVector {
        let kmax = coeffs.truncation().min(self.truncation);
        // per block: x1' amplitude of cos(k̃πx) and x2 amplitude of sin(k̃πx)
        let blocks: Vec<(f64, Complex64, Complex64)> = (0..=kmax)
            .map(|k| {
                let w = (k as f64 + 0.5) * PI;
                let mut a = Complex64::new(0.0, 0.0);
                let mut b = Complex64::new(0.0, 0.0);
                for eps in Sign::BOTH {
                    let idx = ModeIndex::new(k, eps);
                    let s = self.primal_shape(idx);
                    let c = coeffs.get(idx);
                    a += c * s.first * w;
                    b += c * s.second;
                }
                (w, a, b)
            })
            .collect();
        let pts = grid.points();
        let (x1p, x2): (Vec<Complex64>, Vec<Complex64>) = pts
            .par_iter()
            .map(|&x| {
                let mut p = Complex64::new(0.0, 0.0);
                let mut q = Complex64::new(0.0, 0.0);
                for &(w, a, b) in &blocks {
                    p += a * (w * x).cos();
                    q += b * (w * x).sin();
                }
                (p, q)
            })
            .unzip();
        StateVector { grid, x1_prime: x1p, x2 }
    }

    /// `S_k = |a₋|² + |a₊|² + 2 Re(a₋ conj(a₊) ⟨Φ₋, Φ₊⟩)`.
    pub fn block_energy(&self, k: usize, minus: Complex64, plus: Complex64) -> f64 {
        minus.norm_sqr() + plus.norm_sqr() + 2.0 * (minus * plus.conj() * self.cross[k]).re
    }

    /// `‖Σ c Φ‖²_H` through the block-diagonal Gram matrix.
    pub fn gram_norm_sq(&self, coeffs: &CoefficientSet) -> f64 {
        let kmax = coeffs.truncation().min(self.truncation);
        (0..=kmax)
            .map(|k| {
                self.block_energy(
                    k,
                    coeffs.get(ModeIndex::new(k, Sign::Minus)),
                    coeffs.get(ModeIndex::new(k, Sign::Plus)),
                )
            })
            .sum::<f64>()
            .max(0.0)
    }

    pub fn riesz_sandwich_check(&self, coeffs: &CoefficientSet) -> SandwichCheck {
        let energy = coeffs.energy();
        let value = self.gram_norm_sq(coeffs);
        let c = self.riesz_c;
        let slack = SANDWICH_SLACK * energy;
        SandwichCheck {
            lower_ok: value >= (1.0 - c) * energy - slack,
            upper_ok: value <= (1.0 + c) * energy + slack,
            ratio: if energy > 0.0 { value / energy } else { 0.0 },
        }
    }

    /// `c_{k,ε} ↦ e^{λ_{k,ε} t} c_{k,ε}`.
    pub fn evolve(&self, coeffs: &CoefficientSet, t: f64) -> CoefficientSet {
        CoefficientSet::from_fn(coeffs.truncation().min(self.truncation), |idx| {
            (self.mode(idx).lambda * t).exp() * coeffs.get(idx)
        })
    }

    /// Spectral representation of the semigroup, `T(t) state`.
    pub fn semigroup_apply(&self, state: &StateVector, t: f64) -> StateVector {
        let coeffs = self.project(state);
        self.reconstruct(&self.evolve(&coeffs, t), state.grid())
    }
}

fn require_fd_grid(grid: Grid) -> Result<()> {
    if grid.intervals() < MIN_FD_INTERVALS {
        return Err(Error::GridTooCoarse { intervals: grid.intervals(), min: MIN_FD_INTERVALS });
    }
    Ok(())
}

/// `A(x1, x2) = (x2, (α x1′ + β x2′)′)` by second-order differences.
pub fn apply_generator(state: &StateVector, params: &StringParams) -> Result<StateVector> {
    require_fd_grid(state.grid)?;
    let h = state.grid.h();
    let x2_prime = derivative(&state.x2, h);
    let x1_second = derivative(&state.x1_prime, h);
    let x2_second = second_derivative(&state.x2, h);
    let x2_new = x1_second.iter().zip(&x2_second).map(|(&a, &b)| params.alpha * a + params.beta * b).collect();
    Ok(StateVector { grid: state.grid, x1_prime: x2_prime, x2: x2_new })
}

/// `A0⁻¹(x1, x2) = (−(β/α) x1 − (1/α) ∫₀^x ∫_ξ^1 x2, x1)`.
pub fn apply_inverse_generator(state: &StateVector, params: &StringParams) -> StateVector {
    let h = state.grid.h();
    let running = cumulative(&state.x2, h);
    let total = *running.last().expect("grid has samples");
    let x1_prime = state
        .x1_prime
        .iter()
        .zip(&running)
        .map(|(&d1, &r)| -(params.beta / params.alpha) * d1 - (total - r) / params.alpha)
        .collect();
    StateVector { grid: state.grid, x1_prime, x2: state.x1() }
}

/// Lifting `B d = (d x / α, 0)`.
pub fn lift_boundary(d: Complex64, params: &StringParams, grid: Grid) -> StateVector {
    let slope = d / params.alpha;
    StateVector { grid, x1_prime: vec![slope; grid.len()], x2: vec![Complex64::new(0.0, 0.0); grid.len()] }
}

/// `𝔅(x1, x2) = (α x1′ + β x2′)(1)`; `x2′(1)` uses a one-sided five-point stencil.
pub fn boundary_trace(state: &StateVector, params: &StringParams) -> Result<Complex64> {
    require_fd_grid(state.grid)?;
    let last = state.grid.len() - 1;
    let x2_prime = right_end_derivative(&state.x2, state.grid.h());
    Ok(params.alpha * state.x1_prime[last] + params.beta * x2_prime)
}

/// `2β ∫ |x2′|²`, the energy dissipation rate of the free dynamics.
pub fn dissipation_rate(state: &StateVector, params: &StringParams) -> f64 {
    let h = state.grid.h();
    let x2_prime = derivative(&state.x2, h);
    let sq: Vec<f64> = x2_prime.iter().map(|v| v.norm_sqr()).collect();
    2.0 * params.beta * simpson(&sq, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{eigenvalue, mode_data};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn unit_mode(params: &StringParams, grid: Grid, k: usize, eps: Sign) -> StateVector {
        let m = mode_data(params, ModeIndex::new(k, eps));
        StateVector::from_shape(grid, &ModeShape::new(&m, Family::PrimalUnit))
    }

    #[test]
    fn grid_rejects_odd_counts() {
        assert!(matches!(Grid::new(7), Err(Error::OddIntervals(7))));
        assert!(matches!(Grid::new(0), Err(Error::OddIntervals(0))));
        assert_eq!(Grid::new(8).unwrap().len(), 9);
    }

    #[test]
    fn inner_product_basics() {
        let p = StringParams::new(1.0, 1.0).unwrap();
        let g = Grid::new(2048).unwrap();
        let z = StateVector::zero(g);
        assert_eq!(h_inner(&z, &z, &p).unwrap(), c(0.0));
        let phi = unit_mode(&p, g, 0, Sign::Plus);
        assert!((h_inner(&phi, &phi, &p).unwrap() - 1.0).norm() < 1e-8);
        assert!((h_norm(&phi, &p) - 1.0).abs() < 1e-8);
        for eps in Sign::BOTH {
            let other = unit_mode(&p, g, 3, eps);
            assert!(h_inner(&phi, &other, &p).unwrap().norm() < 1e-8);
        }
        let other = StateVector::zero(Grid::new(16).unwrap());
        assert!(matches!(h_inner(&phi, &other, &p), Err(Error::GridMismatch { .. })));
    }

    #[test]
    fn inner_product_is_conjugate_symmetric() {
        let p = StringParams::new(2.0, 0.3).unwrap();
        let g = Grid::new(64).unwrap();
        let a = StateVector::from_fn(g, |x| Complex64::new(x, x * x), |x| Complex64::new(x.sin(), -x));
        let b = StateVector::from_fn(g, |x| Complex64::new(1.0 - x, 0.5), |x| Complex64::new(0.2, x.cos()));
        let ab = h_inner(&a, &b, &p).unwrap();
        let ba = h_inner(&b, &a, &p).unwrap();
        assert!((ab - ba.conj()).norm() < 1e-15);
    }

    #[test]
    fn lift_norm_and_trace() {
        let p = StringParams::new(2.5, 0.7).unwrap();
        let g = Grid::new(128).unwrap();
        assert_eq!(h_norm(&lift_boundary(c(0.0), &p, g), &p), 0.0);
        assert!((h_norm(&lift_boundary(c(1.0), &p, g), &p) - 1.0 / p.alpha.sqrt()).abs() < 1e-14);
        assert!((h_norm(&lift_boundary(c(p.alpha), &p, g), &p) - p.alpha.sqrt()).abs() < 1e-13);
        let d = Complex64::new(0.3, -1.2);
        assert_eq!(boundary_trace(&lift_boundary(d, &p, g), &p).unwrap(), d);
        assert_eq!(boundary_trace(&StateVector::zero(g), &p).unwrap(), c(0.0));
    }

    #[test]
    fn eigenvectors_lie_in_the_kernel_of_the_trace() {
        let p = StringParams::new(1.0, 1.0).unwrap();
        for n in [64, 128] {
            let g = Grid::new(n).unwrap();
            for k in 0..4 {
                let m = mode_data(&p, ModeIndex::new(k, Sign::Minus));
                let s = StateVector::from_shape(g, &ModeShape::new(&m, Family::PrimalPhi));
                let t = boundary_trace(&s, &p).unwrap();
                assert!(t.norm() < 50.0 * (1.0 / n as f64).powi(2), "k={k} n={n} trace={t}");
            }
        }
        let coarse = StateVector::zero(Grid::new(8).unwrap());
        assert!(matches!(boundary_trace(&coarse, &p), Err(Error::GridTooCoarse { .. })));
    }

    #[test]
    fn projection_picks_out_a_single_mode() {
        let p = StringParams::new(1.0, 1.0).unwrap();
        let g = Grid::new(2048).unwrap();
        let basis = ModalBasis::new(p, 8).unwrap();
        let target = ModeIndex::new(2, Sign::Minus);
        let coeffs = basis.project(&unit_mode(&p, g, 2, Sign::Minus));
        for idx in coeffs.modes() {
            let expected = if idx == target { c(1.0) } else { c(0.0) };
            assert!((coeffs.get(idx) - expected).norm() < 1e-6, "{idx:?}");
        }
        assert!(basis.project(&StateVector::zero(g)).values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn reconstruction_round_trip() {
        let p = StringParams::new(1.0, 1.0).unwrap();
        let g = Grid::new(2048).unwrap();
        let basis = ModalBasis::new(p, 12).unwrap();
        let phi = unit_mode(&p, g, 1, Sign::Plus);
        let back = basis.reconstruct(&basis.project(&phi), g);
        let err = back.combine(c(1.0), &phi, c(-1.0)).unwrap();
        assert!(h_norm(&err, &p) < 1e-6);

        let empty = basis.reconstruct(&CoefficientSet::zeros(12), g);
        assert_eq!(h_norm(&empty, &p), 0.0);
    }

    #[test]
    fn sandwich_single_coefficient_is_unit() {
        let basis = ModalBasis::new(StringParams::new(4.0, 1.0).unwrap(), 5).unwrap();
        let mut a = CoefficientSet::zeros(5);
        a.set(ModeIndex::new(3, Sign::Plus), c(1.0));
        let check = basis.riesz_sandwich_check(&a);
        assert!(check.lower_ok && check.upper_ok);
        assert!((check.ratio - 1.0).abs() < 1e-14);
    }

    #[test]
    fn generator_on_eigenvector_converges_at_second_order() {
        let p = StringParams::new(1.0, 0.5).unwrap();
        let idx = ModeIndex::new(1, Sign::Plus);
        let lam = eigenvalue(&p, idx);
        let residual = |n: usize| {
            let g = Grid::new(n).unwrap();
            let m = mode_data(&p, idx);
            let phi = StateVector::from_shape(g, &ModeShape::new(&m, Family::PrimalPhi));
            let a_phi = apply_generator(&phi, &p).unwrap();
            let diff = a_phi.combine(c(1.0), &phi, -lam).unwrap();
            h_norm(&diff, &p) / (lam.norm() * h_norm(&phi, &p))
        };
        let (r1, r2) = (residual(128), residual(256));
        assert!(r1 < 1e-2);
        assert!(r1 / r2 > 3.5, "{r1} {r2}");
    }

    #[test]
    fn generator_annihilates_the_lift() {
        let p = StringParams::new(1.5, 0.4).unwrap();
        let g = Grid::new(64).unwrap();
        let out = apply_generator(&lift_boundary(c(2.0), &p, g), &p).unwrap();
        assert!(h_norm(&out, &p) < 1e-12);
        let z = apply_generator(&StateVector::zero(g), &p).unwrap();
        assert_eq!(h_norm(&z, &p), 0.0);
        assert!(matches!(
            apply_generator(&StateVector::zero(Grid::new(8).unwrap()), &p),
            Err(Error::GridTooCoarse { .. })
        ));
    }

    #[test]
    fn inverse_generator_relations() {
        let p = StringParams::new(1.0, 1.0).unwrap();
        let g = Grid::new(1024).unwrap();
        let idx = ModeIndex::new(2, Sign::Minus);
        let m = mode_data(&p, idx);
        let phi = StateVector::from_shape(g, &ModeShape::new(&m, Family::PrimalUnit));
        let inv = apply_inverse_generator(&phi, &p);
        let diff = inv.combine(c(1.0), &phi, -1.0 / m.lambda).unwrap();
        assert!(h_norm(&diff, &p) < 1e-6);

        let z = StateVector::from_fn(g, |x| c((1.0 - x) * x.cos()), |x| c(x * (1.0 - x / 2.0)));
        let back = apply_generator(&apply_inverse_generator(&z, &p), &p).unwrap();
        let err = back.combine(c(1.0), &z, c(-1.0)).unwrap();
        assert!(h_norm(&err, &p) < 1e-4 * h_norm(&z, &p));

        assert_eq!(h_norm(&apply_inverse_generator(&StateVector::zero(g), &p), &p), 0.0);
    }
}
