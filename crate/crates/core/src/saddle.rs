//! Solving `C'(β) = u`.

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::cumulant::{cumulant_triple, cumulant_triple_scaled};
use crate::density::LevyDensitySpec;
use crate::error::{Error, Result};

/// Lowest tilt considered by the solver.
pub const BETA_FLOOR: f64 = -2048.0;
/// Highest tilt considered; far beyond anything representable in `u`.
const BETA_CEIL: f64 = 1e6;
const REL_TOL: f64 = 1e-11;
const MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddlePoint {
    pub u: f64,
    pub beta: f64,
    pub c_at_beta: f64,
    pub sigma2: f64,
    pub beta_prime: f64,
    /// `C(β) - uβ`.
    pub log_prefactor: f64,
}

/// `ln C'(β)` and `C''(β)/C'(β)`.
fn log_c1(spec: &LevyDensitySpec, beta: f64) -> Result<(f64, f64)> {
    let t = cumulant_triple_scaled(spec, beta)?;
    Ok((t.ln_c1(), t.c2 / t.c1))
}

/// Initial guess from `u ≍ e^β/β`.
pub fn initial_guess(u: f64) -> f64 {
    if u > core::f64::consts::E {
        (u * (1.0 + u.ln_1p())).ln()
    } else {
        0.0
    }
}

pub fn solve_saddle(spec: &LevyDensitySpec, u: f64) -> Result<SaddlePoint> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::Domain(format!(
            "saddle target u = {u} must be positive"
        )));
    }
    let target = u.ln();
    let mut beta = initial_guess(u);
    let (mut val, mut slope) = log_c1(spec, beta)?;
    let (mut lo, mut hi);
    if val < target {
        lo = beta;
        let mut step = 1.0;
        loop {
            hi = lo + step;
            if hi > BETA_CEIL {
                return Err(Error::Range(format!(
                    "u = {u} exceeds C' over the solver window"
                )));
            }
            let (v, _) = log_c1(spec, hi)?;
            if v >= target {
                break;
            }
            lo = hi;
            step *= 2.0;
        }
    } else {
        hi = beta;
        let mut step = 1.0;
        loop {
            lo = (hi - step).max(BETA_FLOOR);
            let (v, _) = log_c1(spec, lo)?;
            if v <= target {
                break;
            }
            if lo == BETA_FLOOR {
                return Err(Error::Range(format!(
                    "u = {u} is below C'({BETA_FLOOR}); the target lies outside the solver window"
                )));
            }
            hi = lo;
            step *= 2.0;
        }
    }
    if !(beta >= lo && beta <= hi) {
        beta = 0.5 * (lo + hi);
        (val, slope) = log_c1(spec, beta)?;
    }
    let mut iterations = 0;
    while (val - target).abs() > REL_TOL * 0.5 {
        iterations += 1;
        if iterations > MAX_ITER {
            return Err(Error::Convergence {
                iterations: MAX_ITER,
            });
        }
        if val < target {
            lo = beta;
        } else {
            hi = beta;
        }
        let newton = beta - (val - target) / slope;
        let next = if newton > lo && newton < hi && slope > 0.0 {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if next == beta {
            break;
        }
        beta = next;
        (val, slope) = log_c1(spec, beta)?;
    }
    let t = cumulant_triple(spec, beta)?;
    Ok(SaddlePoint {
        u,
        beta,
        c_at_beta: t.c0,
        sigma2: t.c2,
        beta_prime: 1.0 / t.c2,
        log_prefactor: t.c0 - u * beta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthRow {
    pub u: f64,
    pub beta: f64,
    pub exp_beta_over_u: f64,
    pub exp_beta_over_u_pow: f64,
    pub sigma2_over_u: f64,
}

/// Trend table of `(u, β, e^β/u, e^β/u^{1.1}, σ²/u)`.
pub fn saddle_growth_report(spec: &LevyDensitySpec, u_list: &[f64]) -> Result<Vec<GrowthRow>> {
    if u_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Precondition("u_list must be increasing".into()));
    }
    u_list
        .iter()
        .map(|&u| {
            let sp = solve_saddle(spec, u)?;
            Ok(GrowthRow {
                u,
                beta: sp.beta,
                exp_beta_over_u: (sp.beta - u.ln()).exp(),
                exp_beta_over_u_pow: (sp.beta - 1.1 * u.ln()).exp(),
                sigma2_over_u: sp.sigma2 / u,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::Builtin;

    #[test]
    fn dickman_unit_mean() {
        let s = LevyDensitySpec::builtin(Builtin::Dickman).unwrap();
        let sp = solve_saddle(&s, 1.0).unwrap();
        assert_eq!(sp.beta, 0.0);
        assert_eq!(sp.sigma2, 0.5);
        assert_eq!(sp.log_prefactor, 0.0);
    }

    #[test]
    fn truncated_first_moment() {
        let s = LevyDensitySpec::builtin(Builtin::Truncated(0.3)).unwrap();
        let sp = solve_saddle(&s, 0.7).unwrap();
        assert!(sp.beta.abs() < 1e-10);
    }

    #[test]
    fn dickman_identity_and_round_trip() {
        let s = LevyDensitySpec::builtin(Builtin::Dickman).unwrap();
        for &u in &[2.0, 5.0, 10.0, 20.0, 50.0] {
            let b = solve_saddle(&s, u).unwrap().beta;
            assert!((b.exp() - 1.0 - u * b).abs() <= 1e-9 * b.exp());
        }
        for &b in &[-5.0, 0.0, 1.0, 5.0, 10.0, 20.0] {
            let u = cumulant_triple(&s, b).unwrap().c1;
            assert!((solve_saddle(&s, u).unwrap().beta - b).abs() < 1e-9);
        }
    }

    #[test]
    fn extreme_targets() {
        let s = LevyDensitySpec::builtin(Builtin::Uniform(0.5)).unwrap();
        // C' decays like e^{β/2}/|β| as β → -∞ and grows like e^β/β
        let small = solve_saddle(&s, 1e-200).unwrap();
        assert!(small.beta < -800.0);
        let big = solve_saddle(&s, 1e12).unwrap();
        assert!(((big.u - 1e12) / 1e12).abs() < 1e-15);
        assert!(big.beta > 25.0);
        assert!(matches!(solve_saddle(&s, -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn growth_trends_at_large_u() {
        // e^β ≈ uβ, so e^β/u grows, e^β/u^{1.1} decays and σ²/u tends to 1
        let s = LevyDensitySpec::builtin(Builtin::Dickman).unwrap();
        let rows = saddle_growth_report(&s, &[1e6, 1e8, 1e10, 1e12]).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].exp_beta_over_u > w[0].exp_beta_over_u);
            assert!(w[1].exp_beta_over_u_pow < w[0].exp_beta_over_u_pow);
            assert!(w[1].sigma2_over_u > w[0].sigma2_over_u);
        }
        assert!(rows
            .iter()
            .all(|r| r.sigma2_over_u > 0.9 && r.sigma2_over_u < 1.0));
        assert!(matches!(
            saddle_growth_report(&s, &[10.0, 5.0]),
            Err(Error::Precondition(_))
        ));
    }
}
