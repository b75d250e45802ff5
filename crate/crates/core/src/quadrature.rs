//! Uniform-grid quadrature and finite differences.

use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

/// Values that can be integrated and differenced on a uniform grid.
pub trait Sample: Copy + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}

impl<T> Sample for T where T: Copy + Zero + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T> {}

/// Composite Simpson rule. `values.len()` must be odd and at least 3.
pub fn simpson<T: Sample>(values: &[T], h: f64) -> T {
    let n = values.len();
    debug_assert!(n >= 3 && n % 2 == 1, "Simpson needs an odd sample count >= 3");
    let mut odd = T::zero();
    let mut even = T::zero();
    for (j, &v) in values.iter().enumerate().take(n - 1).skip(1) {
        if j % 2 == 1 {
            odd = odd + v;
        } else {
            even = even + v;
        }
    }
    (values[0] + values[n - 1] + odd * 4.0 + even * 2.0) * (h / 3.0)
}

/// Running integral `∫_0^{x_j} f` using the local quadratic through three
/// neighbouring samples on every interval (third-order accurate).
pub fn cumulative<T: Sample>(values: &[T], h: f64) -> Vec<T> {
    let n = values.len();
    let mut out = Vec::with_capacity(n);
    out.push(T::zero());
    if n == 2 {
        out.push((values[0] + values[1]) * (h / 2.0));
        return out;
    }
    let mut acc = T::zero();
    for i in 0..n - 1 {
        let piece = if i + 2 < n {
            values[i] * 5.0 + values[i + 1] * 8.0 - values[i + 2]
        } else {
            values[i + 1] * 5.0 + values[i] * 8.0 - values[i - 1]
        };
        acc = acc + piece * (h / 12.0);
        out.push(acc);
    }
    out
}

/// Second-order derivative: centred inside, one-sided three-point at the ends.
pub fn derivative<T: Sample>(values: &[T], h: f64) -> Vec<T> {
    let n = values.len();
    debug_assert!(n >= 3);
    let mut out = Vec::with_capacity(n);
    out.push((values[1] * 4.0 - values[0] * 3.0 - values[2]) * (1.0 / (2.0 * h)));
    for j in 1..n - 1 {
        out.push((values[j + 1] - values[j - 1]) * (1.0 / (2.0 * h)));
    }
    out.push((values[n - 1] * 3.0 - values[n - 2] * 4.0 + values[n - 3]) * (1.0 / (2.0 * h)));
    out
}

/// Second derivative: centred inside, one-sided four-point at the ends.
pub fn second_derivative<T: Sample>(values: &[T], h: f64) -> Vec<T> {
    let n = values.len();
    debug_assert!(n >= 4);
    let s = 1.0 / (h * h);
    let mut out = Vec::with_capacity(n);
    out.push((values[0] * 2.0 - values[1] * 5.0 + values[2] * 4.0 - values[3]) * s);
    for j in 1..n - 1 {
        out.push((values[j + 1] - values[j] * 2.0 + values[j - 1]) * s);
    }
    out.push((values[n - 1] * 2.0 - values[n - 2] * 5.0 + values[n - 3] * 4.0 - values[n - 4]) * s);
    out
}

/// Fourth-order one-sided derivative at the right end of the samples.
pub fn right_end_derivative<T: Sample>(values: &[T], h: f64) -> T {
    let n = values.len();
    debug_assert!(n >= 5);
    let f = |i: usize| values[n - 1 - i];
    (f(0) * 25.0 - f(1) * 48.0 + f(2) * 36.0 - f(3) * 16.0 + f(4) * 3.0) * (1.0 / (12.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid(n: usize) -> (Vec<f64>, f64) {
        let h = 1.0 / n as f64;
        ((0..=n).map(|j| j as f64 * h).collect(), h)
    }

    #[test]
    fn simpson_is_exact_for_cubics() {
        let (x, h) = grid(8);
        let v: Vec<f64> = x.iter().map(|x| 4.0 * x * x * x - x + 2.0).collect();
        assert!((simpson(&v, h) - 2.5).abs() < 1e-14);
    }

    #[test]
    fn cumulative_matches_antiderivative() {
        let (x, h) = grid(256);
        let v: Vec<f64> = x.iter().map(|x| (PI * x).cos()).collect();
        let c = cumulative(&v, h);
        for (xi, ci) in x.iter().zip(&c) {
            assert!((ci - (PI * xi).sin() / PI).abs() < 1e-7);
        }
    }

    #[test]
    fn derivative_second_order() {
        let err = |n: usize| {
            let (x, h) = grid(n);
            let v: Vec<f64> = x.iter().map(|x| (2.0 * x).sin()).collect();
            derivative(&v, h).iter().zip(&x).map(|(d, x)| (d - 2.0 * (2.0 * x).cos()).abs()).fold(0.0, f64::max)
        };
        let ratio = err(64) / err(128);
        assert!(ratio > 3.5 && ratio < 4.5, "ratio {ratio}");
    }

    #[test]
    fn second_derivative_second_order() {
        let err = |n: usize| {
            let (x, h) = grid(n);
            let v: Vec<f64> = x.iter().map(|x| (2.0 * x).sin()).collect();
            second_derivative(&v, h).iter().zip(&x).map(|(d, x)| (d + 4.0 * (2.0 * x).sin()).abs()).fold(0.0, f64::max)
        };
        let ratio = err(64) / err(128);
        assert!(ratio > 3.5 && ratio < 4.5, "ratio {ratio}");
    }

    #[test]
    fn right_end_fourth_order() {
        let err = |n: usize| {
            let (x, h) = grid(n);
            let v: Vec<f64> = x.iter().map(|x| (3.0 * x).exp()).collect();
            (right_end_derivative(&v, h) - 3.0 * 3f64.exp()).abs()
        };
        let ratio = err(32) / err(64);
        assert!(ratio > 14.0, "ratio {ratio}");
    }
}
