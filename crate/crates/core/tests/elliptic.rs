use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use susyms_core::elliptic::{elliptic_integral, EllipticKind};
use susyms_core::Error;

const K: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Adaptive Simpson quadrature.
fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

fn oracle(kind: EllipticKind, phi: f64, k: f64) -> f64 {
    let f = move |t: f64| {
        let d = (1.0 - k * k * t.sin().powi(2)).sqrt();
        match kind {
            EllipticKind::F => 1.0 / d,
            EllipticKind::E => d,
        }
    };
    simpson(&f, 0.0, phi, 1e-14)
}

#[test]
fn matches_quadrature_at_25_points() {
    let mut worst: f64 = 0.0;
    for j in 1..=25 {
        let phi = j as f64 * FRAC_PI_2 / 25.0;
        for kind in [EllipticKind::F, EllipticKind::E] {
            let got = elliptic_integral(kind, phi, K).unwrap();
            let want = oracle(kind, phi, K);
            worst = worst.max((got - want).abs());
        }
    }
    assert!(worst <= 1e-10, "max deviation {worst:e}");
}

#[test]
fn complete_values_at_reciprocal_sqrt_two() {
    // frozen from the quadrature oracle
    const K_COMPLETE: f64 = 1.854_074_677_301_372;
    const E_COMPLETE: f64 = 1.350_643_881_047_675_5;
    assert!((oracle(EllipticKind::F, FRAC_PI_2, K) - K_COMPLETE).abs() < 1e-12);
    assert!((oracle(EllipticKind::E, FRAC_PI_2, K) - E_COMPLETE).abs() < 1e-12);
    assert!((elliptic_integral(EllipticKind::F, FRAC_PI_2, K).unwrap() - K_COMPLETE).abs() < 1e-12);
    assert!((elliptic_integral(EllipticKind::E, FRAC_PI_2, K).unwrap() - E_COMPLETE).abs() < 1e-12);
}

#[test]
fn degenerate_arguments() {
    for kind in [EllipticKind::F, EllipticKind::E] {
        assert_eq!(elliptic_integral(kind, 0.0, K).unwrap(), 0.0);
        for phi in [0.3, 1.0, 1.5] {
            assert!((elliptic_integral(kind, phi, 0.0).unwrap() - phi).abs() < 1e-15);
        }
    }
}

#[test]
fn quasi_periodic_beyond_half_pi() {
    for kind in [EllipticKind::F, EllipticKind::E] {
        for phi in [2.0, 3.5, 5.0] {
            let got = elliptic_integral(kind, phi, K).unwrap();
            assert!((got - oracle(kind, phi, K)).abs() < 1e-10);
        }
        let c = elliptic_integral(kind, FRAC_PI_2, K).unwrap();
        assert!((elliptic_integral(kind, PI + 0.4, K).unwrap() - 2.0 * c - elliptic_integral(kind, 0.4, K).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn modulus_at_least_one_is_a_domain_error() {
    assert!(matches!(elliptic_integral(EllipticKind::F, 0.5, 1.0), Err(Error::Domain(_))));
    assert!(matches!(elliptic_integral(EllipticKind::E, 0.5, -1.2), Err(Error::Domain(_))));
}

proptest! {
    #[test]
    fn e_is_below_f(phi in 1e-6f64..=FRAC_PI_2, k in 1e-3f64..0.999) {
        let f = elliptic_integral(EllipticKind::F, phi, k).unwrap();
        let e = elliptic_integral(EllipticKind::E, phi, k).unwrap();
        prop_assert!(e <= f);
    }

    #[test]
    fn strictly_increasing_in_phi(a in 0.0f64..FRAC_PI_2, b in 0.0f64..FRAC_PI_2, k in 0.0f64..0.999) {
        prop_assume!((a - b).abs() > 1e-9);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        for kind in [EllipticKind::F, EllipticKind::E] {
            prop_assert!(elliptic_integral(kind, lo, k).unwrap() < elliptic_integral(kind, hi, k).unwrap());
        }
    }
}
