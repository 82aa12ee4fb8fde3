//! Forward marching of the size-bias identity
//! `t f(t) = P₀ t g(t) + ∫_0^{min(1,t)} z g(z) f(t - z) dz`.
//!
//! With `f = P₀ g + r` the single-arrival term is removed exactly and `r`
//! (continuous) solves
//! `t r(t) = P₀ S(t) + ∫ K(z) r(t - z) dz`, `K(z) = z g(z)`,
//! `S(t) = ∫ K(z) g(t - z) dz`.
//! The convolution uses product trapezoid weights: `r` is interpolated
//! linearly between nodes and integrated exactly against `K`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::{DensityGrid, OracleMethod};
use crate::density::LevyDensitySpec;
use crate::error::{Error, Result};
use crate::quadrature::{gk15, integrate_breaks, QuadOptions};
use crate::special::EULER_GAMMA;

/// Largest accepted step-halving difference.
pub const STEP_LIMIT: f64 = 1e-6;

fn is_exact_dickman(spec: &LevyDensitySpec) -> bool {
    let p = spec.pieces();
    p.len() == 1 && p[0].lo == 0.0 && p[0].inv_coeff == 1.0 && p[0].poly.iter().all(|&c| c == 0.0)
}

pub fn volterra_density(spec: &LevyDensitySpec, t_max: f64, h: f64) -> Result<DensityGrid> {
    let dickman = is_exact_dickman(spec);
    if !spec.is_finite_mass() && !dickman {
        return Err(Error::Mode(
            "the Volterra march needs finite mass or the exact Dickman density; use the Fourier oracle"
                .into(),
        ));
    }
    if !(h > 0.0 && h <= 1.0 / 256.0) {
        return Err(Error::Precondition(format!(
            "step h = {h} must lie in (0, 2^-8]"
        )));
    }
    let m = 1.0 / h;
    if (m - m.round()).abs() > 1e-9 {
        return Err(Error::Precondition(format!("1/h = {m} must be an integer")));
    }
    if !(t_max >= 2.0 && t_max.is_finite()) {
        return Err(Error::Precondition(format!(
            "t_max = {t_max} must be at least 2"
        )));
    }
    let fine = march(spec, h, t_max, dickman)?;
    let coarse = march(spec, 2.0 * h, t_max, dickman)?;
    let mut err_bound: f64 = 0.0;
    let mut rel_err_bound: f64 = 0.0;
    for (k, &c) in coarse.iter().enumerate() {
        if 2 * k >= fine.len() {
            break;
        }
        let f = fine[2 * k];
        let d = (f - c).abs();
        err_bound = err_bound.max(d);
        if f > 0.0 {
            rel_err_bound = rel_err_bound.max(d / f);
        }
    }
    if err_bound > STEP_LIMIT {
        return Err(Error::Step {
            estimate: err_bound,
            limit: STEP_LIMIT,
        });
    }
    let n = fine.len() - 1;
    Ok(DensityGrid {
        h,
        t_max: n as f64 * h,
        values: fine,
        atom: if dickman {
            0.0
        } else {
            spec.class.atom_mass_at_beta0
        },
        method: OracleMethod::Volterra,
        err_bound,
        rel_err_bound,
    })
}

/// Product-trapezoid weights: `(left, right)` halves of `∫ K(z) hat_j(z) dz`
/// for nodes `j = 0..=m`.
fn product_weights(spec: &LevyDensitySpec, h: f64, m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut left = vec![0.0; m + 1];
    let mut right = vec![0.0; m + 1];
    let breaks = spec.breakpoints();
    for j in 0..m {
        let a = j as f64 * h;
        let b = a + h;
        // split the cell at piece breakpoints so each part is polynomial
        let mut cuts = vec![a];
        cuts.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
        cuts.push(b);
        let (mut i0, mut i1) = (0.0, 0.0);
        for w in cuts.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            if mid < spec.support_lo {
                continue;
            }
            let piece = spec
                .pieces()
                .iter()
                .find(|p| p.lo <= mid && mid < p.hi)
                .expect("cell inside the support");
            // K(z) = c + z p(z) is a polynomial; 15 Kronrod nodes are exact
            let (v0, _, _) = gk15(&mut |z: f64| piece.eval_xg(z), w[0], w[1]);
            let (v1, _, _) = gk15(&mut |z: f64| piece.eval_xg(z) * (z - a) / h, w[0], w[1]);
            i0 += v0;
            i1 += v1;
        }
        right[j] = i0 - i1;
        left[j + 1] = i1;
    }
    (left, right)
}

/// `S(t) = ∫ K(z) g(t - z) dz` over arrivals `z, t - z` in the support.
fn two_arrival_source(spec: &LevyDensitySpec, t: f64) -> Result<f64> {
    let lo = spec.support_lo;
    let a = lo.max(t - 1.0);
    let b = 1.0f64.min(t - lo);
    if !(b > a) {
        return Ok(0.0);
    }
    let mut breaks = vec![a, b];
    for x in spec.breakpoints() {
        for y in [x, t - x] {
            if y > a && y < b {
                breaks.push(y);
            }
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let opts = QuadOptions {
        rel_tol: 1e-12,
        ..QuadOptions::default()
    };
    let r = integrate_breaks(
        |z: f64| {
            let w = t - z;
            if w <= 0.0 || z <= 0.0 {
                0.0
            } else {
                z * spec.g(z) * spec.g(w.min(1.0))
            }
        },
        &breaks,
        opts,
    )?;
    Ok(r.value)
}

/// Dot product with independent accumulators so the loop vectorizes.
fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0; 8];
    let chunks = a.len() / 8;
    for c in 0..chunks {
        for l in 0..8 {
            acc[l] += a[8 * c + l] * b[8 * c + l];
        }
    }
    let mut s: f64 = acc.iter().sum();
    for i in 8 * chunks..a.len() {
        s += a[i] * b[i];
    }
    s
}

/// Full density values on the grid of step `h`.
fn march(spec: &LevyDensitySpec, h: f64, t_max: f64, dickman: bool) -> Result<Vec<f64>> {
    let m = (1.0 / h).round() as usize;
    let n = (t_max / h).round() as usize;
    let (left, right) = product_weights(spec, h, m);
    // full weights, with the upper-end node carrying only its left half
    let full: Vec<f64> = (0..=m).map(|j| left[j] + right[j]).collect();
    let mut wrev: Vec<f64> = (1..=m).rev().map(|j| full[j]).collect();
    wrev[0] = left[m];
    let atom = if dickman {
        0.0
    } else {
        spec.class.atom_mass_at_beta0
    };
    let mut r = vec![0.0; n + 1];
    let start = if dickman {
        let seed = (-EULER_GAMMA).exp();
        for v in r.iter_mut().take(m.min(n) + 1) {
            *v = seed;
        }
        m + 1
    } else {
        1
    };
    for k in start..=n {
        let t = k as f64 * h;
        let conv = if k >= m {
            dot(&wrev, &r[k - m..k])
        } else {
            let mut s = left[k] * r[0];
            for j in 1..k {
                s += full[j] * r[k - j];
            }
            s
        };
        let source = if atom > 0.0 && t <= 2.0 {
            atom * two_arrival_source(spec, t)?
        } else {
            0.0
        };
        r[k] = (source + conv) / (t - right[0]);
    }
    if atom > 0.0 {
        for (k, v) in r.iter_mut().enumerate().take(m.min(n) + 1) {
            let t = k as f64 * h;
            if t > 0.0 {
                *v += atom * spec.g(t);
            } else if spec.support_lo == 0.0 {
                *v += atom * spec.pieces()[0].eval(0.0);
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{Builtin, DensityPiece};

    #[test]
    fn dickman_values() {
        let s = LevyDensitySpec::builtin(Builtin::Dickman).unwrap();
        let g = volterra_density(&s, 4.0, 1.0 / 1024.0).unwrap();
        let e = (-EULER_GAMMA).exp();
        assert_eq!(g.value_at(0.5).unwrap(), e);
        let err = (g.value_at(2.0).unwrap() - e * (1.0 - 2f64.ln())).abs();
        assert!(err < 5e-8 && err <= g.err_bound, "{err}");
        assert!(g.err_bound < 1e-6);
    }

    #[test]
    fn truncated_single_arrival_region() {
        let s = LevyDensitySpec::builtin(Builtin::Truncated(0.3)).unwrap();
        let g = volterra_density(&s, 3.0, 1.0 / 1024.0).unwrap();
        assert_eq!(g.value_at(0.25).unwrap(), 0.0);
        for &t in &[0.3125, 461.0 / 1024.0, 0.5, 0.59375] {
            assert!((g.value_at(t).unwrap() - 0.3 / t).abs() < 1e-14, "t={t}");
        }
    }

    #[test]
    fn two_arrival_region_matches_closed_form() {
        // on [0.6, 0.9) exactly two arrivals contribute: P₀/2 ∫ g(z) g(t-z) dz
        let s = LevyDensitySpec::builtin(Builtin::Truncated(0.3)).unwrap();
        let g = volterra_density(&s, 3.0, 1.0 / 2048.0).unwrap();
        for &t in &[0.625, 0.75, 0.875] {
            let a: f64 = 0.3;
            let b = t - 0.3;
            // ∫_a^b dz/(z(t-z)) = (2/t) ln(b/a)
            let two = 0.3 * 0.5 * (2.0 / t) * (b / a).ln();
            let single = 0.3 / t;
            let got = g.value_at(t).unwrap();
            assert!((got - single - two).abs() < 1e-6, "t={t}: {got}");
        }
    }

    #[test]
    fn mode_and_step_errors() {
        let s = LevyDensitySpec::new(
            alloc::vec![DensityPiece::new(0.0, 1.0, 2.0, alloc::vec![])],
            None,
        )
        .unwrap();
        assert!(matches!(
            volterra_density(&s, 4.0, 1.0 / 256.0),
            Err(Error::Mode(_))
        ));
        let d = LevyDensitySpec::builtin(Builtin::Dickman).unwrap();
        assert!(matches!(
            volterra_density(&d, 4.0, 0.01),
            Err(Error::Precondition(_))
        ));
    }
}
