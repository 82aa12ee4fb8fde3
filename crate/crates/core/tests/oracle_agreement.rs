use levyasym_core::asymptotics::{density_asymptote, dickman_asymptote};
use levyasym_core::cumulant::{cumulant_triple, moment_by_quadrature};
use levyasym_core::density::{Builtin, DensityPiece, LevyDensitySpec};
use levyasym_core::oracles::{dickman_rho, fourier_density, volterra_density};
use levyasym_core::saddle::solve_saddle;
use levyasym_core::special::EULER_GAMMA;

fn dickman() -> LevyDensitySpec {
    LevyDensitySpec::builtin(Builtin::Dickman).unwrap()
}

fn truncated() -> LevyDensitySpec {
    LevyDensitySpec::builtin(Builtin::Truncated(0.3)).unwrap()
}

/// Root of `e^β - 1 - uβ` by plain bisection.
fn dickman_beta_by_bisection(u: f64) -> f64 {
    let f = |b: f64| (b.exp() - 1.0) / b - u;
    let (mut lo, mut hi) = (1e-9, 2.0 * u.ln() + 2.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn dickman_saddle_matches_bisection() {
    for &u in &[2.0, 10.0, 100.0] {
        let sp = solve_saddle(&dickman(), u).unwrap();
        let want = dickman_beta_by_bisection(u);
        assert!((sp.beta - want).abs() < 1e-10 * want, "u={u}");
    }
    // frozen value at u = 10
    let b = dickman_beta_by_bisection(10.0);
    assert!((b - 3.614_950_427_087_530_6).abs() < 1e-12, "{b}");
}

#[test]
fn cumulants_match_quadrature() {
    let pieces = vec![
        DensityPiece::new(0.0, 0.4, 0.0, vec![1.0, 2.0]),
        DensityPiece::new(0.4, 1.0, 0.2, vec![0.5, 0.0, 1.5]),
    ];
    let s = LevyDensitySpec::new(pieces, None).unwrap();
    for &beta in &[-5.0, 0.0, 0.7, 12.0] {
        let t = cumulant_triple(&s, beta).unwrap();
        let m1 = moment_by_quadrature(&s, beta, 1).unwrap();
        let m2 = moment_by_quadrature(&s, beta, 2).unwrap();
        assert!((t.c1 / m1 - 1.0).abs() < 1e-12, "beta={beta}");
        assert!((t.c2 / m2 - 1.0).abs() < 1e-12, "beta={beta}");
    }
}

#[test]
fn volterra_agrees_with_delay_equation() {
    let g = volterra_density(&dickman(), 12.0, 1.0 / 1024.0).unwrap();
    let r = dickman_rho(12.0, 1.0 / 1024.0).unwrap();
    let e = (-EULER_GAMMA).exp();
    for k in (0..g.values.len()).step_by(257) {
        let d = (g.values[k] - e * r.values[k]).abs();
        assert!(
            d <= g.err_bound + e * r.err_bound + 1e-12,
            "t={}: {d:e}",
            g.t(k)
        );
    }
}

#[test]
fn volterra_agrees_with_fourier() {
    for spec in [dickman(), truncated()] {
        let g = volterra_density(&spec, 8.0, 1.0 / 1024.0).unwrap();
        for &t in &[2.5, 4.0, 7.25] {
            let f = fourier_density(&spec, t).unwrap();
            let v = g.value_at(t).unwrap();
            assert!(
                (v - f.f).abs() <= g.err_bound + f.err_bound,
                "t={t}: {v} vs {f:?}"
            );
        }
    }
}

#[test]
fn densities_conserve_mass() {
    let g = volterra_density(&truncated(), 30.0, 1.0 / 1024.0).unwrap();
    assert!((g.total_mass(&truncated()) - 1.0).abs() < 1e-6);
    let u = LevyDensitySpec::builtin(Builtin::Uniform(0.0)).unwrap();
    let g = volterra_density(&u, 30.0, 1.0 / 1024.0).unwrap();
    assert!((g.atom - (-1.0f64).exp()).abs() < 1e-15);
    assert!((g.total_mass(&u) - 1.0).abs() < 1e-6);
    let r = dickman_rho(40.0, 1.0 / 1024.0).unwrap();
    let ends = 0.5 * (r.values[0] + r.values[r.values.len() - 1]);
    let integral = r.h * (r.values.iter().sum::<f64>() - ends);
    assert!((integral - EULER_GAMMA.exp()).abs() < 1e-6);
}

#[test]
fn dickman_relative_error_scales_like_one_over_u() {
    // the delay march has an absolute error floor, the Volterra sums do not
    let g = volterra_density(&dickman(), 41.0, 1.0 / 4096.0).unwrap();
    assert!(g.rel_err_bound < 2e-5);
    for &u in &[5.0, 10.0, 20.0, 40.0] {
        let f = density_asymptote(&dickman(), u).unwrap().f_hat;
        let rel = (f / g.value_at(u).unwrap() - 1.0).abs();
        // frozen from a first run: rel·u sits near 0.07
        assert!((0.05..0.09).contains(&(rel * u)), "u={u}: {}", rel * u);
    }
}

#[test]
fn dickman_asymptote_at_two() {
    // ρ̂(2)/ρ(2), frozen from the delay-equation oracle
    let ratio = dickman_asymptote(2.0).unwrap() / (1.0 - 2f64.ln());
    assert!((ratio - 1.0).abs() < 0.06, "{ratio}");
}
