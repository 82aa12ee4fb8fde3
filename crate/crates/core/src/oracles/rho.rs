//! The Dickman function from `u ρ'(u) = -ρ(u - 1)`, `ρ = 1` on `[0, 1]`.
//!
//! The right side does not involve `ρ(u)`, so each fourth-order step is a
//! Simpson rule on `ρ(s-1)/s`. The delayed midpoint value comes from cubic
//! Hermite interpolation with derivatives taken from inside the cell, which
//! respects the derivative jump at `u = 1`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::volterra::STEP_LIMIT;
use super::{DensityGrid, OracleMethod};
use crate::error::{Error, Result};

fn march(u_max: f64, h: f64) -> Vec<f64> {
    let m = (1.0 / h).round() as usize;
    let n = (u_max / h).round() as usize;
    let mut rho = vec![1.0; n + 1];
    let u = |k: usize| k as f64 * h;
    // ρ'(u) = -ρ(u-1)/u, zero on [0, 1)
    let right_deriv = |rho: &[f64], k: usize| if k < m { 0.0 } else { -rho[k - m] / u(k) };
    let left_deriv = |rho: &[f64], k: usize| if k <= m { 0.0 } else { -rho[k - m] / u(k) };
    for k in m..n {
        let (a, b) = (k - m, k + 1 - m);
        let ra = rho[a];
        let rb = rho[b];
        let mid = 0.5 * (ra + rb) + h / 8.0 * (right_deriv(&rho, a) - left_deriv(&rho, b));
        let s0 = u(k);
        let step = h / 6.0 * (ra / s0 + 4.0 * mid / (s0 + 0.5 * h) + rb / (s0 + h));
        rho[k + 1] = rho[k] - step;
    }
    rho
}

pub fn dickman_rho(u_max: f64, h: f64) -> Result<DensityGrid> {
    if !(h > 0.0 && h <= 1.0 / 256.0) {
        return Err(Error::Precondition(format!(
            "step h = {h} must lie in (0, 2^-8]"
        )));
    }
    let m = 1.0 / h;
    if (m - m.round()).abs() > 1e-9 {
        return Err(Error::Precondition(format!("1/h = {m} must be an integer")));
    }
    if !(u_max >= 2.0 && u_max.is_finite()) {
        return Err(Error::Precondition(format!(
            "u_max = {u_max} must be at least 2"
        )));
    }
    let fine = march(u_max, h);
    let coarse = march(u_max, 2.0 * h);
    let mut err_bound: f64 = 0.0;
    let mut rel_err_bound: f64 = 0.0;
    for (k, &c) in coarse.iter().enumerate() {
        if 2 * k >= fine.len() {
            break;
        }
        let d = (fine[2 * k] - c).abs();
        err_bound = err_bound.max(d);
        if fine[2 * k] > 0.0 {
            rel_err_bound = rel_err_bound.max(d / fine[2 * k]);
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
        atom: 0.0,
        method: OracleMethod::DelayOde,
        err_bound,
        rel_err_bound,
    })
}
