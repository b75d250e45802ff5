use num_complex::Complex64;
use proptest::prelude::*;

use kvstring::iss::{decay_rate, iss_bound_l2, iss_bound_uniform, IssCertificate};
use kvstring::spectrum::{eigenvalue_pair, validate_params, StringParams};
use kvstring::state::{h_inner, CoefficientSet, Grid, ModalBasis, StateVector};

fn params() -> impl Strategy<Value = StringParams> {
    (0.05f64..8.0, 0.05f64..3.0).prop_filter_map("degenerate pair", |(a, b)| validate_params(a, b, 1e-3).ok())
}

fn coefficients(truncation: usize) -> impl Strategy<Value = CoefficientSet> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2 * (truncation + 1)).prop_map(move |v| {
        CoefficientSet::from_values(truncation, v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect()).unwrap()
    })
}

fn cert(c0: f64, kappa0: f64, gains: [f64; 4]) -> IssCertificate {
    IssCertificate {
        alpha: 1.0,
        beta: 1.0,
        k0: 0,
        kappa0,
        riesz_c: 0.5,
        gamma: 1.0,
        gamma_prime: 1.0,
        c0,
        c1: gains[0],
        c2: gains[1],
        c3: gains[2],
        c4: gains[3],
        tail_modes: 0,
        tail_estimate: 0.0,
        gamma_prime_tail_modes: 0,
        gamma_prime_tail_estimate: 0.0,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectrum_lies_left_of_the_decay_rate(p in params(), k in 0usize..400) {
        let kappa0 = decay_rate(&p);
        let (minus, plus) = eigenvalue_pair(&p, k);
        prop_assert!(minus.re <= -kappa0 * (1.0 - 1e-14));
        prop_assert!(plus.re <= -kappa0 * (1.0 - 1e-14));
        prop_assert_eq!(k < p.k0, minus.im != 0.0);
    }

    #[test]
    fn sandwich_holds(p in params(), a in coefficients(10)) {
        let basis = ModalBasis::new(p, 10).unwrap();
        let chk = basis.riesz_sandwich_check(&a);
        prop_assert!(chk.lower_ok && chk.upper_ok, "ratio {}", chk.ratio);
    }

    #[test]
    fn project_inverts_reconstruct(p in params(), a in coefficients(6)) {
        let basis = ModalBasis::new(p, 6).unwrap();
        let g = Grid::new(512).unwrap();
        let back = basis.project(&basis.reconstruct(&a, g));
        for idx in a.modes() {
            prop_assert!((back.get(idx) - a.get(idx)).norm() < 1e-9);
        }
    }

    #[test]
    fn inner_product_is_hermitian(
        p in params(),
        u in prop::collection::vec(-1.0f64..1.0, 4),
        v in prop::collection::vec(-1.0f64..1.0, 4),
    ) {
        let g = Grid::new(64).unwrap();
        let x = StateVector::from_fn(g, |s| Complex64::new(u[0] * s, u[1]), |s| Complex64::new(u[2], u[3] * s * s));
        let y = StateVector::from_fn(g, |s| Complex64::new(v[0], v[1] * s), |s| Complex64::new(v[2] * s, v[3]));
        let xy = h_inner(&x, &y, &p).unwrap();
        let yx = h_inner(&y, &x, &p).unwrap();
        prop_assert!((xy - yx.conj()).norm() < 1e-14);
        prop_assert!(h_inner(&x, &x, &p).unwrap().re >= 0.0);
    }

    #[test]
    fn bounds_are_monotone(
        c0 in 1.0f64..5.0,
        kappa0 in 0.01f64..3.0,
        gains in prop::array::uniform4(0.0f64..5.0),
        base in prop::array::uniform3(0.0f64..2.0),
        bump in 0.0f64..1.0,
        t in 0.0f64..10.0,
    ) {
        let c = cert(c0, kappa0, gains);
        let [x, d, u] = base;
        for f in [iss_bound_uniform, iss_bound_l2] {
            let b = f(&c, x, d, u, t);
            prop_assert!(f(&c, x + bump, d, u, t) >= b);
            prop_assert!(f(&c, x, d + bump, u, t) >= b);
            prop_assert!(f(&c, x, d, u + bump, t) >= b);
            if x > 0.0 {
                prop_assert!(f(&c, x, 0.0, 0.0, t + 0.1) < f(&c, x, 0.0, 0.0, t));
            }
        }
    }
}
