//! Closed-form eigenstructure of the disturbance-free string operator and
//! its adjoint.
//!
//! For every mode index `k >= 0` and branch `eps = ±1` the eigenvalues are the
//! two roots of `P_k(X) = X² + k̃²βπ² X + k̃²απ²` with `k̃ = k + 1/2`. Modes
//! with `k < k0` form complex-conjugate (underdamped) pairs, modes with
//! `k >= k0` are real and negative. Every eigenfunction is a multiple of
//! `sin(k̃πx)` in both components, so evaluation is analytic on any grid.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default rejection tolerance on the non-degeneracy margin.
pub const DEFAULT_REJECT_TOL: f64 = 1e-9;

/// Physical coefficients of the string, validated against the
/// non-degeneracy condition on `2√α/(πβ) − 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StringParams {
    pub alpha: f64,
    pub beta: f64,
    /// Distance of `2√α/(πβ) − 1/2` to the nearest natural number.
    pub assumption_margin: f64,
    /// First index of the real (overdamped) branch.
    pub k0: usize,
}

impl StringParams {
    /// Validates with the default rejection tolerance.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        validate_params(alpha, beta, DEFAULT_REJECT_TOL)
    }

    /// `k̃0 = k0 + 1/2`.
    pub fn k0_tilde(&self) -> f64 {
        self.k0 as f64 + 0.5
    }

    /// `2√α/(πβ) − 1/2`, the quantity whose ceiling defines `k0`.
    pub fn branch_abscissa(&self) -> f64 {
        branch_abscissa(self.alpha, self.beta)
    }
}

fn branch_abscissa(alpha: f64, beta: f64) -> f64 {
    2.0 * alpha.sqrt() / (PI * beta) - 0.5
}

/// Builds [`StringParams`], rejecting non-positive coefficients and parameter
/// pairs whose margin to a double eigenvalue is `<= reject_tol`.
pub fn validate_params(alpha: f64, beta: f64, reject_tol: f64) -> Result<StringParams> {
    for (name, value) in [("alpha", alpha), ("beta", beta), ("reject_tol", reject_tol)] {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::NonPositiveCoefficient { name, value });
        }
    }
    let x = branch_abscissa(alpha, beta);
    let margin = if x <= 0.0 { -x } else { (x - x.round()).abs() };
    if margin <= reject_tol {
        return Err(Error::AssumptionViolated { margin, tol: reject_tol });
    }
    let k0 = if x <= 0.0 { 0 } else { x.ceil() as usize };
    Ok(StringParams { alpha, beta, assumption_margin: margin, k0 })
}

/// Branch sign `eps ∈ {−1, +1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Minus, Sign::Plus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Minus => -1.0,
            Sign::Plus => 1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn from_i32(v: i32) -> Option<Sign> {
        match v {
            -1 => Some(Sign::Minus),
            1 => Some(Sign::Plus),
            _ => None,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }
}

/// A mode `(k, eps)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeIndex {
    pub k: usize,
    pub eps: Sign,
}

impl ModeIndex {
    pub fn new(k: usize, eps: Sign) -> Self {
        ModeIndex { k, eps }
    }

    pub fn k_tilde(&self) -> f64 {
        self.k as f64 + 0.5
    }
}

/// Spectral data of one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeData {
    pub index: ModeIndex,
    /// Eigenvalue of the disturbance-free generator.
    pub lambda: Complex64,
    /// Eigenvalue of the adjoint, `conj(lambda)`.
    pub mu: Complex64,
    /// `‖φ_{k,ε}‖_H`.
    pub phi_norm: f64,
    /// `⟨Φ_{k,ε}, ψ_{k,ε}⟩_H`.
    pub pairing: Complex64,
    /// Boundary gain `|Ψ²_{k,ε}(1) / Re λ_{k,ε}|`.
    pub gamma: f64,
}

impl ModeData {
    /// `sin(k̃π) = (−1)^k`.
    pub fn end_sign(&self) -> f64 {
        if self.index.k.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// `conj(Ψ²(1))`, the weight of the boundary disturbance in the modal ODE.
    pub fn boundary_weight(&self) -> Complex64 {
        self.end_sign() / self.pairing
    }

    /// `‖Ψ²‖_{L²(0,1)} = 1 / (√2 |pairing|)`.
    pub fn dual_l2_norm(&self) -> f64 {
        1.0 / (std::f64::consts::SQRT_2 * self.pairing.norm())
    }
}

/// Both roots `(λ_{k,−1}, λ_{k,+1})` of `P_k`.
///
/// The branch is selected by comparing `k` with `k0`. In the real branch the
/// root of small modulus is obtained from the product of the roots, which
/// avoids the cancellation in `−b/2 + √disc/2`.
pub fn eigenvalue_pair(params: &StringParams, k: usize) -> (Complex64, Complex64) {
    let kt = k as f64 + 0.5;
    let re = -kt * kt * params.beta * PI * PI / 2.0;
    if k < params.k0 {
        let im = kt * PI * (4.0 * params.alpha - kt * kt * params.beta * params.beta * PI * PI).sqrt() / 2.0;
        (Complex64::new(re, -im), Complex64::new(re, im))
    } else {
        let half_sqrt_disc =
            kt * PI * (kt * kt * params.beta * params.beta * PI * PI - 4.0 * params.alpha).sqrt() / 2.0;
        let minus = re - half_sqrt_disc;
        let plus = kt * kt * params.alpha * PI * PI / minus;
        (Complex64::new(minus, 0.0), Complex64::new(plus, 0.0))
    }
}

/// Eigenvalue `λ_{k,ε}`.
pub fn eigenvalue(params: &StringParams, index: ModeIndex) -> Complex64 {
    let (minus, plus) = eigenvalue_pair(params, index.k);
    match index.eps {
        Sign::Minus => minus,
        Sign::Plus => plus,
    }
}

/// Relative residual `|P_k(lam)| / max(1, |lam|²)`.
///
/// The polynomial is evaluated with error-free transformations so the result
/// reflects the residual of `lam` itself rather than evaluation round-off.
pub fn char_poly_residual(params: &StringParams, index: ModeIndex, lam: Complex64) -> f64 {
    let kt2 = dd::Dd::from(index.k_tilde()).square();
    let b = kt2.mul(dd::PI_SQ).mul_f64(params.beta);
    let c = kt2.mul(dd::PI_SQ).mul_f64(params.alpha);
    let x = dd::Dd::from(lam.re);
    let y = dd::Dd::from(lam.im);
    // Re P = x² − y² + b x + c, Im P = 2xy + b y
    let re = x.square().sub(y.square()).add(b.mul(x)).add(c);
    let im = x.mul(y).mul_f64(2.0).add(b.mul(y));
    let modulus = re.hi().hypot(im.hi());
    modulus / lam.norm_sqr().max(1.0)
}

/// Fills the [`ModeData`] of one mode from the closed forms.
pub fn mode_data(params: &StringParams, index: ModeIndex) -> ModeData {
    let (minus, plus) = eigenvalue_pair(params, index.k);
    let (lambda, partner) = match index.eps {
        Sign::Minus => (minus, plus),
        Sign::Plus => (plus, minus),
    };
    mode_data_from_pair(params, index, lambda, partner)
}

fn mode_data_from_pair(params: &StringParams, index: ModeIndex, lambda: Complex64, partner: Complex64) -> ModeData {
    let kt = index.k_tilde();
    let stiffness = kt * kt * params.alpha * PI * PI;
    let phi_norm = (0.5 * (1.0 + stiffness / lambda.norm_sqr())).sqrt();
    let split = 1.0 - partner / lambda;
    let pairing = split / (2.0 * phi_norm);
    let gamma = 2.0 * phi_norm / (lambda.re * split).norm();
    ModeData { index, lambda, mu: lambda.conj(), phi_norm, pairing, gamma }
}

/// Both modes of block `k`, ordered `(ε = −1, ε = +1)`.
pub fn mode_pair(params: &StringParams, k: usize) -> (ModeData, ModeData) {
    let (minus, plus) = eigenvalue_pair(params, k);
    (
        mode_data_from_pair(params, ModeIndex::new(k, Sign::Minus), minus, plus),
        mode_data_from_pair(params, ModeIndex::new(k, Sign::Plus), plus, minus),
    )
}

/// `⟨Φ_{k,−1}, Φ_{k,+1}⟩_H`, the only nonzero off-diagonal Gram entry.
pub fn cross_inner_product(params: &StringParams, k: usize) -> Complex64 {
    let (minus, plus) = eigenvalue_pair(params, k);
    let kt = k as f64 + 0.5;
    let stiffness = kt * kt * params.alpha * PI * PI;
    let num = 1.0 + stiffness / (minus * plus.conj());
    let den = (1.0 + stiffness / minus.norm_sqr()).sqrt() * (1.0 + stiffness / plus.norm_sqr()).sqrt();
    num / den
}

/// Riesz constant `C`: the lower and upper frame bounds are `1 − C` and `1 + C`.
pub fn riesz_constant(params: &StringParams) -> Result<f64> {
    let real_branch = 2.0 * params.alpha.sqrt() / (params.k0_tilde() * params.beta * PI);
    let value = (0..params.k0).map(|k| cross_inner_product(params, k).norm()).fold(real_branch, f64::max);
    if !(value.is_finite() && value > 0.0 && value < 1.0) {
        return Err(Error::RieszConstantDegenerate { value });
    }
    Ok(value)
}

/// Which eigenvector family to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `φ_{k,ε}` (unnormalized eigenvector of the generator).
    PrimalPhi,
    /// `Φ_{k,ε} = φ / ‖φ‖`.
    PrimalUnit,
    /// `ψ_{k,ε}` (eigenvector of the adjoint).
    DualPsi,
    /// `Ψ_{k,ε} = ψ / conj(⟨Φ, ψ⟩)`, biorthogonal to `Φ`.
    DualUnit,
}

/// An eigenvector of the form `(a·sin(k̃πx), b·sin(k̃πx))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeShape {
    pub k_tilde: f64,
    /// Amplitude of the first (displacement) component.
    pub first: Complex64,
    /// Amplitude of the second (velocity) component.
    pub second: Complex64,
}

impl ModeShape {
    pub fn new(mode: &ModeData, family: Family) -> Self {
        let k_tilde = mode.index.k_tilde();
        let one = Complex64::new(1.0, 0.0);
        let (first, second) = match family {
            Family::PrimalPhi => (one / mode.lambda, one),
            Family::PrimalUnit => (one / (mode.lambda * mode.phi_norm), one / mode.phi_norm),
            Family::DualPsi => (-one / mode.mu, one),
            Family::DualUnit => {
                let scale = mode.pairing.conj();
                (-one / (mode.mu * scale), one / scale)
            }
        };
        ModeShape { k_tilde, first, second }
    }

    fn wavenumber(&self) -> f64 {
        self.k_tilde * PI
    }

    pub fn x1(&self, x: f64) -> Complex64 {
        self.first * (self.wavenumber() * x).sin()
    }

    pub fn x1_prime(&self, x: f64) -> Complex64 {
        self.first * (self.wavenumber() * (self.wavenumber() * x).cos())
    }

    pub fn x2(&self, x: f64) -> Complex64 {
        self.second * (self.wavenumber() * x).sin()
    }

    pub fn x2_prime(&self, x: f64) -> Complex64 {
        self.second * (self.wavenumber() * (self.wavenumber() * x).cos())
    }
}

/// Samples of an eigenvector on arbitrary points of `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSamples {
    pub x1: Vec<Complex64>,
    pub x1_prime: Vec<Complex64>,
    pub x2: Vec<Complex64>,
}

pub fn eigenfunction_samples(params: &StringParams, index: ModeIndex, points: &[f64], family: Family) -> ModeSamples {
    let shape = ModeShape::new(&mode_data(params, index), family);
    ModeSamples {
        x1: points.iter().map(|&x| shape.x1(x)).collect(),
        x1_prime: points.iter().map(|&x| shape.x1_prime(x)).collect(),
        x2: points.iter().map(|&x| shape.x2(x)).collect(),
    }
}

/// Minimal double-double arithmetic for residual evaluation.
mod dd {
    #[derive(Debug, Clone, Copy)]
    pub struct Dd(f64, f64);

    pub const PI_SQ: Dd = Dd(9.869604401089358, 6.265295508739711e-16);

    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    }

    fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        (s, b - (s - a))
    }

    fn two_prod(a: f64, b: f64) -> (f64, f64) {
        let p = a * b;
        (p, a.mul_add(b, -p))
    }

    impl From<f64> for Dd {
        fn from(v: f64) -> Self {
            Dd(v, 0.0)
        }
    }

    impl Dd {
        pub fn hi(self) -> f64 {
            self.0 + self.1
        }

        pub fn add(self, o: Dd) -> Dd {
            let (s, e) = two_sum(self.0, o.0);
            let (t, f) = two_sum(self.1, o.1);
            let (s, e) = quick_two_sum(s, e + t);
            let (s, e) = quick_two_sum(s, e + f);
            Dd(s, e)
        }

        pub fn sub(self, o: Dd) -> Dd {
            self.add(Dd(-o.0, -o.1))
        }

        pub fn mul(self, o: Dd) -> Dd {
            let (p, e) = two_prod(self.0, o.0);
            let e = e + (self.0 * o.1 + self.1 * o.0);
            let (p, e) = quick_two_sum(p, e);
            Dd(p, e)
        }

        pub fn mul_f64(self, b: f64) -> Dd {
            self.mul(Dd(b, 0.0))
        }

        pub fn square(self) -> Dd {
            self.mul(self)
        }
    }
}
