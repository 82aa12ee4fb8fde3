//! Reference densities computed without the saddle-point machinery.

pub mod fourier;
pub mod rho;
pub mod volterra;

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::asymptotics::tail_asymptote;
use crate::density::LevyDensitySpec;
use crate::error::{Error, Result};
use crate::saddle::solve_saddle;

pub use fourier::{fourier_density, fourier_tilted_density, FourierOptions, FourierValue};
pub use rho::dickman_rho;
pub use volterra::volterra_density;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    Volterra,
    Fourier,
    /// The delay-equation march used for the Dickman function itself.
    DelayOde,
}

impl OracleMethod {
    pub fn name(&self) -> &'static str {
        match self {
            OracleMethod::Volterra => "volterra",
            OracleMethod::Fourier => "fourier",
            OracleMethod::DelayOde => "delay-ode",
        }
    }
}

/// Values `f(kh)` for `k = 0..=t_max/h`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    pub h: f64,
    pub t_max: f64,
    pub values: Vec<f64>,
    pub atom: f64,
    pub method: OracleMethod,
    /// Largest absolute step-halving difference over the grid.
    pub err_bound: f64,
    /// Largest relative step-halving difference over points with positive
    /// values.
    pub rel_err_bound: f64,
}

impl DensityGrid {
    pub fn t(&self, k: usize) -> f64 {
        k as f64 * self.h
    }

    /// Grid value at `t`, linearly interpolated between nodes.
    pub fn value_at(&self, t: f64) -> Option<f64> {
        if !(t >= 0.0 && t <= self.t_max) {
            return None;
        }
        let x = t / self.h;
        let k = x.floor() as usize;
        if k + 1 >= self.values.len() {
            return self.values.last().copied();
        }
        let frac = x - k as f64;
        if frac == 0.0 {
            return Some(self.values[k]);
        }
        Some(self.values[k] * (1.0 - frac) + self.values[k + 1] * frac)
    }

    /// `∫_u^{t_max}` of the continuous part `f - atom·g`, by trapezoid, plus
    /// the analytic single-arrival part `atom ∫_u^1 g`. Returns the integral
    /// and the difference against the same rule on every other node.
    fn integral_from(&self, spec: &LevyDensitySpec, u: f64) -> (f64, f64) {
        let smooth = |k: usize| {
            let t = self.t(k);
            let single = if self.atom == 0.0 || t > 1.0 {
                0.0
            } else if t > 0.0 {
                self.atom * spec.g(t)
            } else if spec.support_lo == 0.0 {
                self.atom * spec.pieces()[0].eval(0.0)
            } else {
                0.0
            };
            self.values[k] - single
        };
        let n = self.values.len() - 1;
        let k0 = (u / self.h).ceil() as usize;
        let mut fine = 0.0;
        let mut coarse = 0.0;
        if k0 <= n {
            let start = self.t(k0);
            if start > u && k0 >= 1 {
                // partial cell [u, t_{k0}] with linear interpolation
                let frac = (start - u) / self.h;
                let left = smooth(k0 - 1);
                let right = smooth(k0);
                let at_u = right + (left - right) * frac;
                let part = 0.5 * (at_u + right) * (start - u);
                fine += part;
                coarse += part;
            }
            for k in k0..n {
                fine += 0.5 * self.h * (smooth(k) + smooth(k + 1));
            }
            let mut k = k0;
            while k + 2 <= n {
                coarse += self.h * (smooth(k) + smooth(k + 2));
                k += 2;
            }
            if k < n {
                coarse += 0.5 * self.h * (smooth(k) + smooth(n));
            }
        }
        let mut single = 0.0;
        if self.atom > 0.0 && u < 1.0 {
            single = spec
                .pieces_on(u.max(spec.support_lo), 1.0)
                .iter()
                .map(|p| p.mass())
                .sum::<f64>()
                * self.atom;
        }
        (fine + single, (fine - coarse).abs())
    }

    /// `atom + ∫_0^{t_max} f`.
    pub fn total_mass(&self, spec: &LevyDensitySpec) -> f64 {
        self.atom + self.integral_from(spec, 0.0).0
    }
}

/// Oracle tail probability with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailValue {
    pub value: f64,
    pub err_bound: f64,
}

/// `P(T ≥ u)` from a density grid.
pub fn oracle_tail(grid: &DensityGrid, u: f64, spec: &LevyDensitySpec) -> Result<TailValue> {
    if !(u > 0.0 && u < grid.t_max) {
        return Err(Error::Domain(format!(
            "u = {u} is outside (0, t_max = {})",
            grid.t_max
        )));
    }
    let sigma = solve_saddle(spec, u)?.sigma2.sqrt();
    if u > grid.t_max - 10.0 * sigma {
        return Err(Error::Domain(format!(
            "u = {u} is within 10 sigma ({sigma:.3}) of t_max = {}",
            grid.t_max
        )));
    }
    let (value, quad_diff) = grid.integral_from(spec, u);
    let remainder = tail_asymptote(spec, grid.t_max)
        .map(|e| e.tail_hat)
        .unwrap_or(0.0);
    let err_bound = grid.err_bound * (grid.t_max - u) + quad_diff + remainder;
    Ok(TailValue { value, err_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::Builtin;
    use crate::special::EULER_GAMMA;

    #[test]
    fn tail_examples() {
        let d = LevyDensitySpec::builtin(Builtin::Dickman).unwrap();
        let g = volterra_density(&d, 24.0, 1.0 / 1024.0).unwrap();
        let t = oracle_tail(&g, 1.0, &d).unwrap();
        assert!((t.value - (1.0 - (-EULER_GAMMA).exp())).abs() < 1e-6);
        let tr = LevyDensitySpec::builtin(Builtin::Truncated(0.3)).unwrap();
        let g = volterra_density(&tr, 24.0, 1.0 / 1024.0).unwrap();
        let t = oracle_tail(&g, 1e-9, &tr).unwrap();
        assert!((t.value - 0.7).abs() < 1e-6);
        assert!((g.total_mass(&tr) - 1.0).abs() < 1e-6);
        assert!(oracle_tail(&g, 20.0, &tr).is_err());
    }

    #[test]
    fn interpolation() {
        let g = DensityGrid {
            h: 0.5,
            t_max: 1.0,
            values: alloc::vec![0.0, 1.0, 3.0],
            atom: 0.0,
            method: OracleMethod::Volterra,
            err_bound: 0.0,
            rel_err_bound: 0.0,
        };
        assert_eq!(g.value_at(0.75), Some(2.0));
        assert_eq!(g.value_at(1.0), Some(3.0));
        assert_eq!(g.value_at(1.5), None);
    }
}
