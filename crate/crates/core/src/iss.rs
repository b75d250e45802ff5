//! ISS certificate: decay rate, gain constants, bound evaluation and
//! trajectory verification.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modal::{gamma_prime_tail_envelope, gamma_tail_envelope, Trajectory};
use crate::spectrum::{mode_pair, riesz_constant, StringParams};

/// Relative guard band applied before a bound exceedance counts as a violation.
pub const VIOLATION_GUARD: f64 = 1e-3;
pub const DEFAULT_GAMMA_REL_TOL: f64 = 1e-6;

/// `κ0 = min(βπ²/8, α/β)` when complex modes exist, `α/β` otherwise.
pub fn decay_rate(params: &StringParams) -> f64 {
    let real_limit = params.alpha / params.beta;
    if params.k0 >= 1 {
        (params.beta * PI * PI / 8.0).min(real_limit)
    } else {
        real_limit
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// A constant obtained as the square root of a mode series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesConstant {
    pub value: f64,
    /// Largest `k` summed explicitly.
    pub tail_modes: usize,
    /// Envelope added for the modes beyond `tail_modes` (squared units).
    pub tail_estimate: f64,
}

fn series_constant(
    params: &StringParams,
    rel_tol: f64,
    term: impl Fn(&crate::spectrum::ModeData) -> f64,
    envelope: impl Fn(&StringParams, usize) -> f64,
) -> SeriesConstant {
    assert!(rel_tol > 0.0, "rel_tol must be positive");
    let min_modes = 10 * params.k0.max(100);
    let mut acc = CompensatedSum::default();
    let mut k = 0;
    loop {
        let (minus, plus) = mode_pair(params, k);
        acc.add(term(&minus));
        acc.add(term(&plus));
        if k >= min_modes && envelope(params, k) < rel_tol * acc.value() {
            break;
        }
        k += 1;
    }
    let tail = envelope(params, k);
    SeriesConstant { value: (acc.value() + tail).sqrt(), tail_modes: k, tail_estimate: tail }
}

/// `γ = √(Σ γ²_{k,ε})`.
pub fn gamma_sum(params: &StringParams, rel_tol: f64) -> SeriesConstant {
    series_constant(params, rel_tol, |m| m.gamma * m.gamma, gamma_tail_envelope)
}

/// `γ′ = √(Σ |Re λ_{k,ε}| γ²_{k,ε})`.
pub fn gamma_prime_sum(params: &StringParams, rel_tol: f64) -> SeriesConstant {
    series_constant(params, rel_tol, |m| m.lambda.re.abs() * m.gamma * m.gamma, gamma_prime_tail_envelope)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IssCertificate {
    pub alpha: f64,
    pub beta: f64,
    pub k0: usize,
    pub kappa0: f64,
    pub riesz_c: f64,
    pub gamma: f64,
    pub gamma_prime: f64,
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub tail_modes: usize,
    pub tail_estimate: f64,
    pub gamma_prime_tail_modes: usize,
    pub gamma_prime_tail_estimate: f64,
}

pub fn certificate(params: &StringParams, rel_tol: f64) -> Result<IssCertificate> {
    let c = riesz_constant(params)?;
    let g = gamma_sum(params, rel_tol);
    let gp = gamma_prime_sum(params, rel_tol);
    let m = 1.0 + c;
    Ok(IssCertificate {
        alpha: params.alpha,
        beta: params.beta,
        k0: params.k0,
        kappa0: decay_rate(params),
        riesz_c: c,
        gamma: g.value,
        gamma_prime: gp.value,
        c0: (3.0 * m / (1.0 - c)).sqrt(),
        c1: g.value * (3.0 * m).sqrt(),
        c2: g.value * (1.5 * m).sqrt(),
        c3: gp.value * (1.5 * m).sqrt(),
        c4: 0.5 * gp.value * (3.0 * m).sqrt(),
        tail_modes: g.tail_modes,
        tail_estimate: g.tail_estimate,
        gamma_prime_tail_modes: gp.tail_modes,
        gamma_prime_tail_estimate: gp.tail_estimate,
    })
}

/// `C0 e^{−κ0 t}‖X0‖ + C1‖d‖_{C⁰([0,t])} + C2‖u‖_{C⁰([0,t];L²)}`.
pub fn iss_bound_uniform(cert: &IssCertificate, x0_norm: f64, d_sup: f64, u_sup: f64, t: f64) -> f64 {
    cert.c0 * (-cert.kappa0 * t).exp() * x0_norm + cert.c1 * d_sup + cert.c2 * u_sup
}

/// `C0 e^{−κ0 t}‖X0‖ + C3‖d‖_{L²(0,t)} + C4‖u‖_{L²((0,t)×(0,1))}`.
pub fn iss_bound_l2(cert: &IssCertificate, x0_norm: f64, d_l2: f64, u_l2: f64, t: f64) -> f64 {
    cert.c0 * (-cert.kappa0 * t).exp() * x0_norm + cert.c3 * d_l2 + cert.c4 * u_l2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Estimate {
    Uniform,
    L2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub t: f64,
    pub estimate: Estimate,
    pub norm: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeMargin {
    pub t: f64,
    pub norm: f64,
    pub uniform_bound: f64,
    pub l2_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub scenario: String,
    #[serde(flatten)]
    pub certificate: IssCertificate,
    pub worst_uniform_margin: f64,
    pub worst_l2_margin: f64,
    pub worst_uniform_ratio: f64,
    pub worst_l2_ratio: f64,
    pub violations: Vec<Violation>,
    #[serde(skip)]
    pub margins: Vec<TimeMargin>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn ratio(norm: f64, bound: f64) -> f64 {
    if bound > 0.0 {
        norm / bound
    } else if norm > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

/// Checks both estimates at every output time, with `‖X0‖ = h_norms[0]`.
pub fn verify_trajectory(traj: &Trajectory, cert: &IssCertificate, scenario: &str) -> VerificationReport {
    let x0 = traj.h_norms.first().copied().unwrap_or(0.0);
    let mut report = VerificationReport {
        scenario: scenario.to_string(),
        certificate: cert.clone(),
        worst_uniform_margin: f64::INFINITY,
        worst_l2_margin: f64::INFINITY,
        worst_uniform_ratio: 0.0,
        worst_l2_ratio: 0.0,
        violations: Vec::new(),
        margins: Vec::with_capacity(traj.len()),
    };
    for i in 0..traj.len() {
        let t = traj.times[i];
        let norm = traj.h_norms[i];
        let ub = iss_bound_uniform(cert, x0, traj.d_sup[i], traj.u_sup[i], t);
        let lb = iss_bound_l2(cert, x0, traj.d_l2[i], traj.u_l2[i], t);
        report.worst_uniform_margin = report.worst_uniform_margin.min(ub - norm);
        report.worst_l2_margin = report.worst_l2_margin.min(lb - norm);
        report.worst_uniform_ratio = report.worst_uniform_ratio.max(ratio(norm, ub));
        report.worst_l2_ratio = report.worst_l2_ratio.max(ratio(norm, lb));
        for (estimate, bound) in [(Estimate::Uniform, ub), (Estimate::L2, lb)] {
            if norm > bound * (1.0 + VIOLATION_GUARD) {
                report.violations.push(Violation { t, estimate, norm, bound });
            }
        }
        report.margins.push(TimeMargin { t, norm, uniform_bound: ub, l2_bound: lb });
    }
    if traj.is_empty() {
        report.worst_uniform_margin = 0.0;
        report.worst_l2_margin = 0.0;
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticCheck {
    pub peak_norm: f64,
    pub late_norm: f64,
    pub ratio: f64,
}

/// Peak norm against the largest norm over the last `window_fraction` of
/// the horizon.
pub fn asymptotic_check(traj: &Trajectory, window_fraction: f64, kappa0: f64) -> Result<AsymptoticCheck> {
    let t_end = traj.t_end();
    let required = 3.0 / kappa0;
    if t_end < required {
        return Err(Error::HorizonTooShort { t_end, required });
    }
    if !(window_fraction > 0.0 && window_fraction <= 1.0) {
        return Err(Error::InvalidConfig(format!("window fraction {window_fraction} not in (0, 1]")));
    }
    let start = t_end * (1.0 - window_fraction);
    let peak = traj.h_norms.iter().cloned().fold(0.0, f64::max);
    let late = traj.times.iter().zip(&traj.h_norms).filter(|(&t, _)| t >= start).map(|(_, &n)| n).fold(0.0, f64::max);
    Ok(AsymptoticCheck { peak_norm: peak, late_norm: late, ratio: if peak > 0.0 { late / peak } else { 0.0 } })
}

/// Least-squares slope of `ln ‖X(t)‖` over the final `fraction` of the horizon.
pub fn fitted_decay_slope(traj: &Trajectory, fraction: f64) -> f64 {
    let start = traj.t_end() * (1.0 - fraction);
    let pts: Vec<(f64, f64)> = traj
        .times
        .iter()
        .zip(&traj.h_norms)
        .filter(|(&t, &n)| t >= start && n > 0.0)
        .map(|(&t, &n)| (t, n.ln()))
        .collect();
    let m = pts.len() as f64;
    let (st, sy) = pts.iter().fold((0.0, 0.0), |(a, b), &(t, y)| (a + t, b + y));
    let (mt, my) = (st / m, sy / m);
    let (num, den) = pts.iter().fold((0.0, 0.0), |(n, d), &(t, y)| (n + (t - mt) * (y - my), d + (t - mt) * (t - mt)));
    num / den
}
