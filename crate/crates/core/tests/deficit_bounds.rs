use std::f64::consts::PI;

use levyasym_core::cumulant::{cumulant_triple, oscillation_deficit};
use levyasym_core::density::{Builtin, LevyDensitySpec};

fn specs() -> [LevyDensitySpec; 2] {
    [
        LevyDensitySpec::builtin(Builtin::Dickman).unwrap(),
        LevyDensitySpec::builtin(Builtin::Truncated(0.3)).unwrap(),
    ]
}

#[test]
fn quadratic_lower_bound_near_zero() {
    for spec in specs() {
        for &beta in &[0.5, 3.0, 10.0, 20.0] {
            let s2 = cumulant_triple(&spec, beta).unwrap().c2;
            for k in 1..=400 {
                let tau = PI * k as f64 / 400.0;
                let h = oscillation_deficit(&spec, beta, tau).unwrap();
                assert!(
                    h >= 2.0 * tau * tau * s2 / (PI * PI),
                    "beta={beta} tau={tau}"
                );
            }
        }
    }
}

#[test]
fn floor_away_from_zero() {
    for spec in specs() {
        let eps = spec.eps_floor.eps;
        for &beta in &[10.0f64, 20.0] {
            let floor = eps * PI * PI / 8.0 * beta.exp() / beta.powi(3);
            for &tau in &[PI, 2.0 * PI, 10.0 * PI] {
                let h = oscillation_deficit(&spec, beta, tau).unwrap();
                assert!(h > floor, "beta={beta} tau={tau}: {h} <= {floor}");
            }
        }
    }
}

#[test]
fn deficit_matches_direct_integral() {
    // H(τ) = ∫ e^{βx}(1 - cos τx) g(x) dx by a fine midpoint sum on the truncated density
    let spec = LevyDensitySpec::builtin(Builtin::Truncated(0.3)).unwrap();
    let (beta, tau) = (4.0, 7.0);
    let n = 200_000;
    let w = 0.7 / n as f64;
    let direct: f64 = (0..n)
        .map(|i| {
            let x = 0.3 + (i as f64 + 0.5) * w;
            (beta * x).exp() * (1.0 - (tau * x).cos()) / x * w
        })
        .sum();
    let h = oscillation_deficit(&spec, beta, tau).unwrap();
    assert!((h / direct - 1.0).abs() < 1e-8, "{h} vs {direct}");
}
