//! Leading-order saddle-point asymptotics for the density and upper tail.

use alloc::format;
#[allow(unused_imports)]
use num_traits::Float;

use crate::density::{Builtin, LevyDensitySpec, Theorem};
use crate::error::{Error, Result};
use crate::saddle::{solve_saddle, SaddlePoint};
use crate::special::{normal_pdf, EULER_GAMMA};

/// `ln √(2π)`.
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_78;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorOrder {
    OneOverU,
    OneOverSqrtU,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticEstimate {
    pub u: f64,
    pub f_hat: f64,
    pub log_f_hat: f64,
    pub tail_hat: f64,
    pub log_tail_hat: f64,
    pub beta: f64,
    pub sigma: f64,
    pub claimed_rel_error_order: ErrorOrder,
}

fn check_applicable(spec: &LevyDensitySpec, u: f64) -> Result<ErrorOrder> {
    let order = match spec.class.theorem {
        Theorem::Thm1 => ErrorOrder::OneOverU,
        Theorem::Thm2 => ErrorOrder::OneOverSqrtU,
        Theorem::Rejected => {
            return Err(Error::Precondition(format!(
                "asymptotics do not apply: {}",
                spec.class.diagnostic.as_deref().unwrap_or("rejected spec")
            )))
        }
    };
    if !(u > spec.first_moment) {
        return Err(Error::Domain(format!(
            "u = {u} must exceed the mean {} so that the tilt is positive",
            spec.first_moment
        )));
    }
    Ok(order)
}

fn estimate_from(sp: &SaddlePoint, order: ErrorOrder) -> AsymptoticEstimate {
    let sigma = sp.sigma2.sqrt();
    let log_f_hat = sp.log_prefactor - LN_SQRT_2PI - sigma.ln();
    let log_tail_hat = log_f_hat - sp.beta.ln();
    AsymptoticEstimate {
        u: sp.u,
        f_hat: log_f_hat.exp(),
        log_f_hat,
        tail_hat: log_tail_hat.exp(),
        log_tail_hat,
        beta: sp.beta,
        sigma,
        claimed_rel_error_order: order,
    }
}

/// `f̂(u) = e^{C(β) - uβ} / (√(2π) σ_β)`.
pub fn density_asymptote(spec: &LevyDensitySpec, u: f64) -> Result<AsymptoticEstimate> {
    let order = check_applicable(spec, u)?;
    let sp = solve_saddle(spec, u)?;
    if !(sp.beta > 0.0) {
        return Err(Error::Domain(format!("tilt at u = {u} is not positive")));
    }
    Ok(estimate_from(&sp, order))
}

/// `P(T ≥ u) ≈ f̂(u)/β`. Same estimate as [`density_asymptote`], whose
/// tail fields carry the answer.
pub fn tail_asymptote(spec: &LevyDensitySpec, u: f64) -> Result<AsymptoticEstimate> {
    density_asymptote(spec, u)
}

/// `ρ̂(u) = √(β'(u)/2π) e^{γ - uβ + C(β)}` for the Dickman function.
pub fn dickman_asymptote(u: f64) -> Result<f64> {
    if !(u > 1.0) {
        return Err(Error::Domain(format!(
            "dickman_asymptote needs u > 1, got {u}"
        )));
    }
    let spec = LevyDensitySpec::builtin(Builtin::Dickman)?;
    let sp = solve_saddle(&spec, u)?;
    Ok((0.5 * sp.beta_prime.ln() - LN_SQRT_2PI + EULER_GAMMA + sp.log_prefactor).exp())
}

/// The standard normal density, the local-limit reference.
pub fn tilted_gaussian(y: f64) -> f64 {
    normal_pdf(y)
}
