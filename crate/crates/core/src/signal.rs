//! Boundary and distributed disturbance signals and their running norms.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::simpson;

/// Boundary force `d(t)` applied at the free end.
///
/// Every built-in kind is twice continuously differentiable on `t >= 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BoundarySignal {
    #[default]
    Zero,
    /// `amplitude · sin(frequency · t + phase)`, `frequency` in rad per unit time.
    Sine { amplitude: f64, frequency: f64, phase: f64 },
    /// `amplitude · exp(−rate · t)`; `rate = 0` gives a constant force.
    DecayingExp { amplitude: f64, rate: f64 },
    /// Quintic smoothstep bump on `[t0, t1]` peaking at the midpoint.
    PolyPulse { t0: f64, t1: f64, amplitude: f64 },
    /// Quintic Hermite interpolation of tabulated value, slope and curvature.
    Sampled(SampledSignal),
}

/// Tabulated signal with first and second derivatives at each knot.
///
/// Outside the knot range the end values are held.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampledSignal {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
}

fn smoothstep(x: f64) -> f64 {
    x * x * x * (10.0 + x * (-15.0 + 6.0 * x))
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidSignal(msg()))
    }
}

fn all_finite(v: &[f64]) -> bool {
    v.iter().all(|x| x.is_finite())
}

impl SampledSignal {
    pub fn validate(&self) -> Result<()> {
        let n = self.times.len();
        require(n >= 2, || "sampled signal needs at least two knots".into())?;
        require(self.values.len() == n && self.d1.len() == n && self.d2.len() == n, || {
            format!(
                "sampled signal arrays have lengths {}, {}, {}, {}",
                n,
                self.values.len(),
                self.d1.len(),
                self.d2.len()
            )
        })?;
        require(
            all_finite(&self.times) && all_finite(&self.values) && all_finite(&self.d1) && all_finite(&self.d2),
            || "sampled signal contains non-finite entries".into(),
        )?;
        require(self.times.windows(2).all(|w| w[1] > w[0]), || "sampled signal times must increase".into())
    }

    fn value(&self, t: f64) -> f64 {
        let n = self.times.len();
        if t <= self.times[0] {
            return self.values[0];
        }
        if t >= self.times[n - 1] {
            return self.values[n - 1];
        }
        let i = self.times.partition_point(|&x| x <= t) - 1;
        let h = self.times[i + 1] - self.times[i];
        let s = (t - self.times[i]) / h;
        let (s2, s3) = (s * s, s * s * s);
        let (s4, s5) = (s3 * s, s3 * s2);
        let h00 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
        let h01 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
        let h02 = 0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5);
        let h10 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
        let h11 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
        let h12 = 0.5 * (s3 - 2.0 * s4 + s5);
        self.values[i] * h00
            + h * self.d1[i] * h01
            + h * h * self.d2[i] * h02
            + self.values[i + 1] * h10
            + h * self.d1[i + 1] * h11
            + h * h * self.d2[i + 1] * h12
    }

    /// Max of `|d|` over the end points and the knots inside `[a, b]`.
    fn sample_max(&self, a: f64, b: f64) -> f64 {
        let inner = self
            .times
            .iter()
            .zip(&self.values)
            .filter(|(&t, _)| t > a && t < b)
            .map(|(_, v)| v.abs())
            .fold(0.0, f64::max);
        inner.max(self.value(a).abs()).max(self.value(b).abs())
    }
}

impl BoundarySignal {
    pub fn constant(value: f64) -> Self {
        BoundarySignal::DecayingExp { amplitude: value, rate: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            BoundarySignal::Zero => Ok(()),
            BoundarySignal::Sine { amplitude, frequency, phase } => {
                require(all_finite(&[*amplitude, *frequency, *phase]), || "sine parameters must be finite".into())
            }
            BoundarySignal::DecayingExp { amplitude, rate } => {
                require(amplitude.is_finite() && rate.is_finite() && *rate >= 0.0, || {
                    format!("decaying_exp needs a finite amplitude and rate >= 0, got rate {rate}")
                })
            }
            BoundarySignal::PolyPulse { t0, t1, amplitude } => {
                require(all_finite(&[*t0, *t1, *amplitude]) && t1 > t0, || {
                    format!("poly_pulse support [{t0}, {t1}] is empty")
                })
            }
            BoundarySignal::Sampled(s) => s.validate(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            BoundarySignal::Zero => "zero".into(),
            BoundarySignal::Sine { amplitude, frequency, phase } => {
                format!("{amplitude}·sin({frequency}·t + {phase})")
            }
            BoundarySignal::DecayingExp { amplitude, rate } => format!("{amplitude}·exp(−{rate}·t)"),
            BoundarySignal::PolyPulse { t0, t1, amplitude } => format!("pulse on [{t0}, {t1}] of height {amplitude}"),
            BoundarySignal::Sampled(s) => format!("sampled, {} knots", s.times.len()),
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        match self {
            BoundarySignal::Zero => 0.0,
            BoundarySignal::Sine { amplitude, frequency, phase } => amplitude * (frequency * t + phase).sin(),
            BoundarySignal::DecayingExp { amplitude, rate } => amplitude * (-rate * t).exp(),
            BoundarySignal::PolyPulse { t0, t1, amplitude } => {
                if t <= *t0 || t >= *t1 {
                    return 0.0;
                }
                let s = (t - t0) / (t1 - t0);
                amplitude * if s <= 0.5 { smoothstep(2.0 * s) } else { smoothstep(2.0 - 2.0 * s) }
            }
            BoundarySignal::Sampled(s) => s.value(t),
        }
    }

    /// `sup |d|` on `[a, b]`, exact for the built-in kinds (interior
    /// extrema are located analytically) and a sample-max for tabulated data.
    pub fn sup_abs(&self, a: f64, b: f64) -> f64 {
        let ends = self.value(a).abs().max(self.value(b).abs());
        match self {
            BoundarySignal::Zero => 0.0,
            BoundarySignal::Sine { amplitude, frequency, phase } => {
                if *frequency == 0.0 {
                    return ends;
                }
                // extrema where frequency·t + phase = π/2 + nπ
                let (lo, hi) = if *frequency > 0.0 {
                    (frequency * a + phase, frequency * b + phase)
                } else {
                    (frequency * b + phase, frequency * a + phase)
                };
                let n = ((lo - PI / 2.0) / PI).ceil();
                if PI / 2.0 + n * PI <= hi {
                    amplitude.abs()
                } else {
                    ends
                }
            }
            BoundarySignal::DecayingExp { .. } => ends,
            BoundarySignal::PolyPulse { t0, t1, amplitude } => {
                let mid = 0.5 * (t0 + t1);
                if a <= mid && mid <= b {
                    amplitude.abs()
                } else {
                    ends
                }
            }
            BoundarySignal::Sampled(s) => s.sample_max(a, b),
        }
    }
}

/// Spatial shape of a separable distributed disturbance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpatialProfile {
    /// `sin((k + 1/2)πx)`.
    ModeSine { k: usize },
    /// Constant 1.
    Uniform,
    /// Samples on a uniform grid of `[0, 1]` (odd count), linear in between.
    Samples { values: Vec<f64> },
}

fn interp_uniform(values: &[f64], x: f64) -> f64 {
    let n = values.len() - 1;
    let pos = (x.clamp(0.0, 1.0) * n as f64).min(n as f64);
    let i = (pos.floor() as usize).min(n - 1);
    let w = pos - i as f64;
    (1.0 - w) * values[i] + w * values[i + 1]
}

pub(crate) fn sin_moment_of_samples(values: &[f64], k: usize) -> f64 {
    let n = values.len() - 1;
    let h = 1.0 / n as f64;
    let w = (k as f64 + 0.5) * PI;
    let prod: Vec<f64> = values.iter().enumerate().map(|(j, v)| v * (w * j as f64 * h).sin()).collect();
    simpson(&prod, h)
}

fn l2_of_samples(values: &[f64]) -> f64 {
    let h = 1.0 / (values.len() - 1) as f64;
    let sq: Vec<f64> = values.iter().map(|v| v * v).collect();
    simpson(&sq, h).max(0.0).sqrt()
}

fn validate_samples(values: &[f64], what: &str) -> Result<()> {
    require(values.len() >= 3 && values.len() % 2 == 1, || {
        format!("{what} needs an odd number (>= 3) of samples, got {}", values.len())
    })?;
    require(all_finite(values), || format!("{what} contains non-finite samples"))
}

impl SpatialProfile {
    pub fn validate(&self) -> Result<()> {
        match self {
            SpatialProfile::Samples { values } => validate_samples(values, "spatial profile"),
            _ => Ok(()),
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        match self {
            SpatialProfile::ModeSine { k } => ((*k as f64 + 0.5) * PI * x).sin(),
            SpatialProfile::Uniform => 1.0,
            SpatialProfile::Samples { values } => interp_uniform(values, x),
        }
    }

    /// `∫₀¹ p(x) sin((k + 1/2)πx) dx`.
    pub fn sin_moment(&self, k: usize) -> f64 {
        match self {
            SpatialProfile::ModeSine { k: j } => {
                if *j == k {
                    0.5
                } else {
                    0.0
                }
            }
            SpatialProfile::Uniform => 1.0 / ((k as f64 + 0.5) * PI),
            SpatialProfile::Samples { values } => sin_moment_of_samples(values, k),
        }
    }

    pub fn l2_norm(&self) -> f64 {
        match self {
            SpatialProfile::ModeSine { .. } => 0.5f64.sqrt(),
            SpatialProfile::Uniform => 1.0,
            SpatialProfile::Samples { values } => l2_of_samples(values),
        }
    }
}

/// Space-time table: row `i` holds `u(times[i], ·)` on a uniform grid.
/// Values between rows are linear in time; no C¹ regularity is implied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampledField {
    pub times: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl SampledField {
    pub fn validate(&self) -> Result<()> {
        require(self.times.len() >= 2 && self.times.len() == self.values.len(), || {
            format!("sampled field has {} times and {} rows", self.times.len(), self.values.len())
        })?;
        require(all_finite(&self.times) && self.times.windows(2).all(|w| w[1] > w[0]), || {
            "sampled field times must be finite and increasing".into()
        })?;
        let width = self.values[0].len();
        for row in &self.values {
            require(row.len() == width, || "sampled field rows differ in length".into())?;
            validate_samples(row, "sampled field row")?;
        }
        Ok(())
    }

    /// Row index and weight of `t` for linear interpolation in time.
    pub fn locate(&self, t: f64) -> (usize, f64) {
        let n = self.times.len();
        if t <= self.times[0] {
            return (0, 0.0);
        }
        if t >= self.times[n - 1] {
            return (n - 2, 1.0);
        }
        let i = self.times.partition_point(|&x| x <= t) - 1;
        (i, (t - self.times[i]) / (self.times[i + 1] - self.times[i]))
    }

    fn l2_at(&self, t: f64) -> f64 {
        let (i, w) = self.locate(t);
        let row: Vec<f64> =
            self.values[i].iter().zip(&self.values[i + 1]).map(|(a, b)| (1.0 - w) * a + w * b).collect();
        l2_of_samples(&row)
    }
}

/// Distributed force `u(t, x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DistributedSignal {
    #[default]
    Zero,
    Separable {
        profile: SpatialProfile,
        time: BoundarySignal,
    },
    Sampled(SampledField),
}

impl DistributedSignal {
    pub fn validate(&self) -> Result<()> {
        match self {
            DistributedSignal::Zero => Ok(()),
            DistributedSignal::Separable { profile, time } => {
                profile.validate()?;
                time.validate()
            }
            DistributedSignal::Sampled(f) => f.validate(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, DistributedSignal::Zero)
    }

    pub fn describe(&self) -> String {
        match self {
            DistributedSignal::Zero => "zero".into(),
            DistributedSignal::Separable { profile, time } => format!("{profile:?} × {}", time.describe()),
            DistributedSignal::Sampled(f) => format!("sampled, {} rows", f.times.len()),
        }
    }

    pub fn value(&self, t: f64, x: f64) -> f64 {
        match self {
            DistributedSignal::Zero => 0.0,
            DistributedSignal::Separable { profile, time } => profile.value(x) * time.value(t),
            DistributedSignal::Sampled(f) => {
                let (i, w) = f.locate(t);
                (1.0 - w) * interp_uniform(&f.values[i], x) + w * interp_uniform(&f.values[i + 1], x)
            }
        }
    }

    /// `∫₀¹ u(t, x) sin((k + 1/2)πx) dx`.
    pub fn sin_moment(&self, k: usize, t: f64) -> f64 {
        match self {
            DistributedSignal::Zero => 0.0,
            DistributedSignal::Separable { profile, time } => profile.sin_moment(k) * time.value(t),
            DistributedSignal::Sampled(f) => {
                let (i, w) = f.locate(t);
                (1.0 - w) * sin_moment_of_samples(&f.values[i], k) + w * sin_moment_of_samples(&f.values[i + 1], k)
            }
        }
    }

    /// `‖u(t, ·)‖_{L²(0,1)}`.
    pub fn l2_norm(&self, t: f64) -> f64 {
        match self {
            DistributedSignal::Zero => 0.0,
            DistributedSignal::Separable { profile, time } => profile.l2_norm() * time.value(t).abs(),
            DistributedSignal::Sampled(f) => f.l2_at(t),
        }
    }

    /// `sup ‖u(t, ·)‖_{L²}` over `[a, b]`; a sample-max for tabulated fields.
    pub fn sup_l2(&self, a: f64, b: f64) -> f64 {
        match self {
            DistributedSignal::Zero => 0.0,
            DistributedSignal::Separable { profile, time } => profile.l2_norm() * time.sup_abs(a, b),
            DistributedSignal::Sampled(f) => {
                let inner = f
                    .times
                    .iter()
                    .zip(&f.values)
                    .filter(|(&t, _)| t > a && t < b)
                    .map(|(_, row)| l2_of_samples(row))
                    .fold(0.0, f64::max);
                inner.max(f.l2_at(a)).max(f.l2_at(b))
            }
        }
    }
}

/// Running disturbance norms at each output time `i·dt`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NormSeries {
    pub d_sup: Vec<f64>,
    pub u_sup: Vec<f64>,
    pub d_l2: Vec<f64>,
    pub u_l2: Vec<f64>,
}

/// Computes `‖d‖_{C⁰([0,t])}`, `‖u‖_{C⁰([0,t];L²)}`, `‖d‖_{L²(0,t)}` and
/// `‖u‖_{L²((0,t)×(0,1))}` for `t = 0, dt, …, steps·dt`.
///
/// Suprema are taken over sub-intervals of length `dt/substeps`; the
/// squared integrals use Simpson's rule on the same sub-steps.
pub fn running_norms(d: &BoundarySignal, u: &DistributedSignal, dt: f64, steps: usize, substeps: usize) -> NormSeries {
    assert!(substeps >= 2 && substeps.is_multiple_of(2), "substeps must be even");
    let delta = dt / substeps as f64;
    let mut out = NormSeries {
        d_sup: Vec::with_capacity(steps + 1),
        u_sup: Vec::with_capacity(steps + 1),
        d_l2: Vec::with_capacity(steps + 1),
        u_l2: Vec::with_capacity(steps + 1),
    };
    let (mut d_sup, mut u_sup) = (d.value(0.0).abs(), u.l2_norm(0.0));
    let (mut d_sq, mut u_sq) = (0.0, 0.0);
    out.d_sup.push(d_sup);
    out.u_sup.push(u_sup);
    out.d_l2.push(0.0);
    out.u_l2.push(0.0);
    let mut d_vals = vec![0.0; substeps + 1];
    let mut u_vals = vec![0.0; substeps + 1];
    for i in 0..steps {
        let t0 = i as f64 * dt;
        for j in 0..=substeps {
            let t = t0 + j as f64 * delta;
            d_vals[j] = d.value(t).powi(2);
            u_vals[j] = u.l2_norm(t).powi(2);
            if j > 0 {
                let a = t0 + (j - 1) as f64 * delta;
                d_sup = d_sup.max(d.sup_abs(a, t));
                u_sup = u_sup.max(u.sup_l2(a, t));
            }
        }
        d_sq += simpson(&d_vals, delta).max(0.0);
        u_sq += simpson(&u_vals, delta).max(0.0);
        out.d_sup.push(d_sup);
        out.u_sup.push(u_sup);
        out.d_l2.push(d_sq.sqrt());
        out.u_l2.push(u_sq.sqrt());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_sup(d: &BoundarySignal, a: f64, b: f64) -> f64 {
        (0..=20000).map(|i| d.value(a + (b - a) * i as f64 / 20000.0).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn pulse_is_c2_and_peaks_mid_support() {
        let p = BoundarySignal::PolyPulse { t0: 1.0, t1: 3.0, amplitude: 2.0 };
        assert_eq!(p.value(2.0), 2.0);
        assert_eq!(p.value(0.5), 0.0);
        assert_eq!(p.value(3.5), 0.0);
        let h = 1e-5;
        for t in [1.0, 2.0, 3.0] {
            let d1 = (p.value(t + h) - p.value(t - h)) / (2.0 * h);
            let d2 = (p.value(t + h) - 2.0 * p.value(t) + p.value(t - h)) / (h * h);
            assert!(d1.abs() < 1e-6 && d2.abs() < 1e-3, "t={t} d1={d1} d2={d2}");
        }
    }

    #[test]
    fn sup_matches_dense_sampling() {
        let signals = [
            BoundarySignal::Sine { amplitude: -1.5, frequency: 2.3, phase: 0.4 },
            BoundarySignal::Sine { amplitude: 1.0, frequency: -0.7, phase: 1.0 },
            BoundarySignal::DecayingExp { amplitude: 0.8, rate: 0.5 },
            BoundarySignal::PolyPulse { t0: 0.2, t1: 1.4, amplitude: -0.9 },
        ];
        for s in &signals {
            for (a, b) in [(0.0, 0.3), (0.1, 0.9), (0.5, 2.0), (3.0, 3.01)] {
                let exact = s.sup_abs(a, b);
                let brute = brute_sup(s, a, b);
                assert!(exact >= brute - 1e-12 && exact - brute < 1e-7, "{s:?} [{a},{b}] {exact} {brute}");
            }
        }
    }

    #[test]
    fn hermite_reproduces_quintics() {
        let f = |t: f64| 1.0 - t + 0.5 * t * t - 0.3 * t.powi(3) + 0.1 * t.powi(4) - 0.05 * t.powi(5);
        let f1 = |t: f64| -1.0 + t - 0.9 * t * t + 0.4 * t.powi(3) - 0.25 * t.powi(4);
        let f2 = |t: f64| 1.0 - 1.8 * t + 1.2 * t * t - t.powi(3);
        let times = vec![0.0, 0.7, 2.0];
        let s = SampledSignal {
            values: times.iter().map(|&t| f(t)).collect(),
            d1: times.iter().map(|&t| f1(t)).collect(),
            d2: times.iter().map(|&t| f2(t)).collect(),
            times,
        };
        s.validate().unwrap();
        let d = BoundarySignal::Sampled(s);
        for t in [0.1, 0.35, 0.9, 1.5, 1.99] {
            assert!((d.value(t) - f(t)).abs() < 1e-13, "t={t}");
        }
        assert_eq!(d.value(5.0), f(2.0));
    }

    #[test]
    fn sampled_validation() {
        let bad = SampledSignal { times: vec![0.0, 0.0], values: vec![1.0, 1.0], d1: vec![0.0; 2], d2: vec![0.0; 2] };
        assert!(matches!(bad.validate(), Err(Error::InvalidSignal(_))));
        assert!(BoundarySignal::PolyPulse { t0: 1.0, t1: 1.0, amplitude: 1.0 }.validate().is_err());
        assert!(BoundarySignal::DecayingExp { amplitude: 1.0, rate: -1.0 }.validate().is_err());
    }

    #[test]
    fn profile_moments() {
        let n = 2049;
        for k in 0..5 {
            let w = (k as f64 + 0.5) * PI;
            let sine =
                SpatialProfile::Samples { values: (0..n).map(|j| (w * j as f64 / (n - 1) as f64).sin()).collect() };
            assert!((sine.sin_moment(k) - 0.5).abs() < 1e-10);
            assert!((sine.sin_moment(k + 1)).abs() < 1e-10);
            let ones = SpatialProfile::Samples { values: vec![1.0; n] };
            assert!((ones.sin_moment(k) - SpatialProfile::Uniform.sin_moment(k)).abs() < 1e-10);
        }
        assert!((SpatialProfile::ModeSine { k: 2 }.l2_norm() - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn sampled_field_interpolates_in_time() {
        let f = DistributedSignal::Sampled(SampledField {
            times: vec![0.0, 1.0],
            values: vec![vec![0.0; 3], vec![2.0; 3]],
        });
        f.validate().unwrap();
        assert!((f.value(0.25, 0.3) - 0.5).abs() < 1e-15);
        assert!((f.l2_norm(0.5) - 1.0).abs() < 1e-15);
        assert!((f.sup_l2(0.0, 0.5) - 1.0).abs() < 1e-15);
        assert!((f.sin_moment(0, 1.0) - 2.0 / (0.5 * PI)).abs() < 1e-2);
    }

    #[test]
    fn running_norms_closed_forms() {
        let d = BoundarySignal::constant(2.0);
        let u = DistributedSignal::Separable {
            profile: SpatialProfile::Uniform,
            time: BoundarySignal::Sine { amplitude: 1.0, frequency: 1.0, phase: 0.0 },
        };
        let dt = 0.01;
        let n = running_norms(&d, &u, dt, 300, 4);
        let t = 3.0_f64;
        assert!((n.d_sup[300] - 2.0).abs() < 1e-15);
        assert!((n.d_l2[300] - (4.0 * t).sqrt()).abs() < 1e-12);
        assert!((n.u_sup[300] - 1.0).abs() < 1e-15);
        let exact = (t / 2.0 - (2.0 * t).sin() / 4.0).sqrt();
        assert!((n.u_l2[300] - exact).abs() < 1e-10);
        assert!(n.u_sup[100] < 1.0);
        for v in [&n.d_sup, &n.u_sup, &n.d_l2, &n.u_l2] {
            assert!(v.windows(2).all(|w| w[1] >= w[0]));
        }
    }

    #[test]
    fn deserializes_tagged_kinds() {
        let s: BoundarySignal =
            serde_json::from_str(r#"{"kind":"sine","amplitude":1.0,"frequency":2.0,"phase":0.0}"#).unwrap();
        assert_eq!(s, BoundarySignal::Sine { amplitude: 1.0, frequency: 2.0, phase: 0.0 });
        let u: DistributedSignal = serde_json::from_str(
            r#"{"kind":"separable","profile":{"shape":"mode_sine","k":1},"time":{"kind":"zero"}}"#,
        )
        .unwrap();
        assert!(matches!(u, DistributedSignal::Separable { .. }));
        let s: BoundarySignal =
            serde_json::from_str(r#"{"kind":"sampled","times":[0,1],"values":[0,1],"d1":[0,0],"d2":[0,0]}"#).unwrap();
        assert!(matches!(s, BoundarySignal::Sampled(_)));
    }
}
