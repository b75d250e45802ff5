//! Closed-form spectral data against values frozen from a 40-digit
//! polynomial-root oracle.

#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use num_complex::Complex64;

use kvstring::iss::decay_rate;
use kvstring::spectrum::{
    cross_inner_product, eigenvalue, eigenvalue_pair, mode_data, riesz_constant, validate_params, ModeIndex, Sign,
    StringParams,
};
use kvstring::Error;

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn idx(k: usize, eps: i32) -> ModeIndex {
    ModeIndex::new(k, if eps < 0 { Sign::Minus } else { Sign::Plus })
}

// (α, β, k, ε, Re λ, Im λ)
const EIGENVALUES: [(f64, f64, usize, i32, f64, f64); 24] = [
    (1.0, 2.0, 0, -1, -4.37020615843064, 0.0),
    (1.0, 2.0, 0, 1, -0.56459604211403933, 0.0),
    (1.0, 2.0, 1, -1, -43.90746042627123, 0.0),
    (1.0, 2.0, 1, 1, -0.50575937863088378, 0.0),
    (1.0, 2.0, 2, -1, -122.86801199603484, 0.0),
    (1.0, 2.0, 2, 1, -0.50204301758214476, 0.0),
    (1.0, 2.0, 3, -1, -241.30426963911739, 0.0),
    (1.0, 2.0, 3, 1, -0.50103818757190088, 0.0),
    (1.0, 1.0, 0, -1, -1.2337005501361698, -0.97230862017471159),
    (1.0, 1.0, 0, 1, -1.2337005501361698, 0.97230862017471159),
    (1.0, 1.0, 1, -1, -21.156999343709233, 0.0),
    (1.0, 1.0, 1, 1, -1.0496105587418243, 0.0),
    (1.0, 1.0, 2, -1, -60.668268180109391, 0.0),
    (1.0, 1.0, 2, 1, -1.0167593266991006, 0.0),
    (1.0, 1.0, 3, -1, -119.8942430771753, 0.0),
    (1.0, 1.0, 3, 1, -1.0084108361693416, 0.0),
    (4.0, 1.0, 0, -1, -1.2337005501361698, -2.8892191598567026),
    (4.0, 1.0, 0, 1, -1.2337005501361698, 2.8892191598567026),
    (4.0, 1.0, 1, -1, -16.973308463158473, 0.0),
    (4.0, 1.0, 1, 1, -5.2333014392925835, 0.0),
    (4.0, 1.0, 2, -1, -57.385319645052101, 0.0),
    (4.0, 1.0, 2, 1, -4.2997078617563906, 0.0),
    (4.0, 1.0, 3, -1, -116.76076058167977, 0.0),
    (4.0, 1.0, 3, 1, -4.1418933316648763, 0.0),
];

#[test]
fn eigenvalues_match_root_oracle() {
    for (a, b, k, eps, re, im) in EIGENVALUES {
        let p = StringParams::new(a, b).unwrap();
        let lam = eigenvalue(&p, idx(k, eps));
        assert!(rel(lam, Complex64::new(re, im)) < 1e-14, "α={a} β={b} k={k} ε={eps}: {lam}");
    }
}

#[test]
fn mode_data_matches_oracle() {
    let p = StringParams::new(1.0, 2.0).unwrap();
    let plus = mode_data(&p, idx(0, 1));
    assert!((plus.phi_norm - 2.0905038049309166).abs() < 1e-14);
    assert!(rel(plus.pairing, Complex64::new(-1.6121502149296555, 0.0)) < 1e-14);
    assert!((plus.gamma - 1.0986431825834473).abs() < 1e-14);
    let minus = mode_data(&p, idx(0, -1));
    assert!((minus.phi_norm - 0.7513960620831329).abs() < 1e-14);
    assert!(rel(minus.pairing, Complex64::new(0.5794599943455499, 0.0)) < 1e-14);
    assert!((minus.gamma - 0.39488861923165117).abs() < 1e-14);

    let q = StringParams::new(1.0, 1.0).unwrap();
    for (eps, sign) in [(1, -1.0), (-1, 1.0)] {
        let m = mode_data(&q, idx(0, eps));
        let want = Complex64::new(0.38314972493191509, sign * 0.48615431008735580);
        assert!(rel(m.pairing, want) < 1e-14, "ε={eps}: {}", m.pairing);
        assert!((m.gamma - 1.3095014466768562).abs() < 1e-14);
    }
}

#[test]
fn cross_products_and_riesz_constants() {
    let cases = [
        ((1.0, 1.0), 0, Complex64::new(0.6168502750680849, -0.4861543100873558)),
        ((1.0, 2.0), 5, Complex64::new(0.05787452476068921, 0.0)),
    ];
    for ((a, b), k, want) in cases {
        let got = cross_inner_product(&StringParams::new(a, b).unwrap(), k);
        assert!(rel(got, want) < 1e-14, "({a}, {b}) k={k}: {got}");
    }
    for ((a, b), want) in [
        ((1.0, 2.0), 2.0 / PI),
        ((1.0, 1.0), std::f64::consts::FRAC_PI_4),
        ((0.01, 1.0), 0.12732395447351627),
        ((4.0, 1.0), 0.8488263631567752),
        ((0.5, 0.1), 0.99964866108563246),
    ] {
        let c = riesz_constant(&StringParams::new(a, b).unwrap()).unwrap();
        assert!((c - want).abs() < 1e-14 * want, "({a}, {b}): {c}");
    }
}

#[test]
fn branch_index_examples() {
    for ((a, b), k0) in [((1.0, 2.0), 0), ((1.0, 1.0), 1), ((4.0, 1.0), 1), ((0.5, 0.1), 5), ((0.01, 1.0), 0)] {
        assert_eq!(StringParams::new(a, b).unwrap().k0, k0, "({a}, {b})");
    }
}

#[test]
fn decay_rate_examples() {
    assert_eq!(decay_rate(&StringParams::new(1.0, 2.0).unwrap()), 0.5);
    assert_eq!(decay_rate(&StringParams::new(1.0, 1.0).unwrap()), 1.0);
    assert_eq!(decay_rate(&StringParams::new(4.0, 1.0).unwrap()), PI * PI / 8.0);
}

#[test]
fn degenerate_pairs_are_rejected() {
    // 2√α/(πβ) − 1/2 = 1 exactly: a double root at k = 1
    let beta = 1.0;
    let alpha = (1.5 * PI * beta / 2.0).powi(2);
    assert!(matches!(validate_params(alpha, beta, 1e-9), Err(Error::AssumptionViolated { .. })));
    assert!(matches!(validate_params(0.0, 1.0, 1e-9), Err(Error::NonPositiveCoefficient { .. })));
    assert!(matches!(validate_params(1.0, -1.0, 1e-9), Err(Error::NonPositiveCoefficient { .. })));
}

#[test]
fn large_index_roots_stay_accurate() {
    // Vieta on the real branch keeps the small root to full relative precision
    for (a, b) in [(1.0, 2.0), (0.5, 0.1), (4.0, 1.0)] {
        let p = StringParams::new(a, b).unwrap();
        for k in [50usize, 200, 1000, 10_000] {
            let (minus, plus) = eigenvalue_pair(&p, k);
            let kt = k as f64 + 0.5;
            let prod = kt * kt * a * PI * PI;
            let sum = -kt * kt * b * PI * PI;
            assert!(((minus * plus).re - prod).abs() <= 4.0 * f64::EPSILON * prod);
            assert!(((minus + plus).re - sum).abs() <= 4.0 * f64::EPSILON * sum.abs());
            assert!(plus.re < -a / b && plus.re > -a / b * 1.1);
        }
    }
}
