//! Monte Carlo sampling of `T` and `T_β` with empirical checks.
//!
//! The functions here run serially; callers wanting threads can map
//! [`Sampler::draw_at`] over the indices and get the same values.

pub mod ks;
pub mod sampler;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::cumulant::cumulant_triple;
use crate::density::LevyDensitySpec;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadOptions};
use crate::special::normal_cdf;

pub use ks::{ks_critical_1pct, ks_one_sample, ks_two_sample, ks_two_sample_critical_1pct};
pub use sampler::{
    draw_stream, DickmanSampler, FiniteSampler, Sampler, SplitSampler, DEFAULT_TOL,
    MAX_TILTED_MASS, TABLE_KNOTS,
};

#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    pub n: usize,
    pub seed: u64,
    pub values: Vec<f64>,
    pub truncation_bias_bound: f64,
    pub spec_label: String,
    pub beta: f64,
}

impl SampleBatch {
    pub fn mean(&self) -> f64 {
        mean_var(&self.values).0
    }

    pub fn variance(&self) -> f64 {
        mean_var(&self.values).1
    }
}

/// Sample mean and unbiased variance.
pub fn mean_var(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, ss / (n - 1.0))
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    Ok(())
}

fn label(spec: &LevyDensitySpec) -> String {
    spec.label.clone().unwrap_or_else(|| "custom".into())
}

/// Draws `0..n` of `sampler` under `seed`.
pub fn run(sampler: &Sampler, n: usize, seed: u64) -> Vec<f64> {
    (0..n as u64).map(|i| sampler.draw_at(seed, i)).collect()
}

pub fn sample_finite(
    spec: &LevyDensitySpec,
    beta: f64,
    n: usize,
    seed: u64,
) -> Result<SampleBatch> {
    check_n(n)?;
    let s = Sampler::Finite(FiniteSampler::new(spec, beta)?);
    Ok(SampleBatch {
        n,
        seed,
        values: run(&s, n, seed),
        truncation_bias_bound: 0.0,
        spec_label: label(spec),
        beta,
    })
}

pub fn sample_dickman(n: usize, seed: u64, tol: f64) -> Result<SampleBatch> {
    check_n(n)?;
    let s = Sampler::Dickman(DickmanSampler::new(tol)?);
    Ok(SampleBatch {
        n,
        seed,
        values: run(&s, n, seed),
        truncation_bias_bound: tol,
        spec_label: "dickman".into(),
        beta: 0.0,
    })
}

/// Split draws together with their `T⁽¹⁾` parts.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitBatch {
    pub batch: SampleBatch,
    pub lower: Vec<f64>,
    /// `E T⁽¹⁾ = ∫_0^a x e^{βx} g(x) dx`.
    pub lower_mean: f64,
}

pub fn sample_split(
    spec: &LevyDensitySpec,
    a: f64,
    beta: f64,
    n: usize,
    seed: u64,
) -> Result<SplitBatch> {
    check_n(n)?;
    if spec.is_finite_mass() {
        return Err(Error::Precondition(
            "the split sampler is for infinite-mass specs".into(),
        ));
    }
    let s = SplitSampler::new(spec, a, beta, DEFAULT_TOL)?;
    let (lower, values): (Vec<f64>, Vec<f64>) = (0..n as u64)
        .map(|i| {
            let (l, u) = s.draw_parts(&mut draw_stream(seed, i));
            (l, l + u)
        })
        .unzip();
    Ok(SplitBatch {
        batch: SampleBatch {
            n,
            seed,
            values,
            truncation_bias_bound: s.truncation_bias_bound(),
            spec_label: label(spec),
            beta,
        },
        lower,
        lower_mean: lower_mean(spec, a, beta)?,
    })
}

/// `∫_0^a x e^{βx} g(x) dx`.
pub fn lower_mean(spec: &LevyDensitySpec, a: f64, beta: f64) -> Result<f64> {
    let mut total = 0.0;
    for p in spec.pieces_on(0.0, a) {
        let r = integrate(
            |x: f64| p.eval_xg(x) * (beta * x).exp(),
            p.lo,
            p.hi,
            QuadOptions::default(),
        )?;
        total += r.value;
    }
    Ok(total)
}

/// `P(W ≥ 4 EW) ≤ exp(-m(4 - e))` for `m = EW`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExceedanceCheck {
    pub mean: f64,
    pub frequency: f64,
    pub bound: f64,
    pub holds: bool,
}

pub fn exceedance_check(values: &[f64], mean: f64) -> ExceedanceCheck {
    let n = values.len() as f64;
    let frequency = values.iter().filter(|&&v| v > 4.0 * mean).count() as f64 / n;
    let bound = (-mean * (4.0 - core::f64::consts::E)).exp();
    ExceedanceCheck {
        mean,
        frequency,
        bound,
        holds: frequency <= bound,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CltDiagnostic {
    pub ks_statistic: f64,
    /// Sample mean minus `C'(β)`, in standard errors.
    pub mean_err: f64,
    /// Sample variance over `C''(β)`.
    pub var_ratio: f64,
}

/// Standardize by the exact moments and compare with the normal law.
pub fn clt_from_values(values: &[f64], mean: f64, var: f64) -> CltDiagnostic {
    let sd = var.sqrt();
    let z: Vec<f64> = values.iter().map(|v| (v - mean) / sd).collect();
    let (m, v) = mean_var(values);
    CltDiagnostic {
        ks_statistic: ks_one_sample(&z, normal_cdf),
        mean_err: (m - mean) / (sd / (values.len() as f64).sqrt()),
        var_ratio: v / var,
    }
}

pub fn clt_diagnostic(
    spec: &LevyDensitySpec,
    beta: f64,
    n: usize,
    seed: u64,
) -> Result<CltDiagnostic> {
    let batch = sample_finite(spec, beta, n, seed)?;
    let t = cumulant_triple(spec, beta)?;
    Ok(clt_from_values(&batch.values, t.c1, t.c2))
}

/// Levels checked by [`gamma_tail_check`].
pub const GAMMA_TAIL_LEVELS: [f64; 4] = [1.0, 1.5, 2.0, 3.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaTailRow {
    pub t: f64,
    pub frequency: f64,
    /// `1/Γ(1 + t)`.
    pub bound: f64,
    pub std_err: f64,
    pub holds: bool,
}

pub fn gamma_tail_from_values(values: &[f64]) -> Vec<GammaTailRow> {
    let n = values.len() as f64;
    GAMMA_TAIL_LEVELS
        .iter()
        .map(|&t| {
            let frequency = values.iter().filter(|&&v| v >= t).count() as f64 / n;
            let bound = (-libm::lgamma(1.0 + t)).exp();
            let p = bound.min(1.0);
            let std_err = (p * (1.0 - p) / n).sqrt();
            GammaTailRow {
                t,
                frequency,
                bound,
                std_err,
                holds: frequency <= bound + 3.0 * std_err,
            }
        })
        .collect()
}

/// Exceedance frequencies of `T` against `1/Γ(1 + t)`.
pub fn gamma_tail_check(spec: &LevyDensitySpec, n: usize, seed: u64) -> Result<Vec<GammaTailRow>> {
    check_n(n)?;
    if spec.first_moment > 1.0 + 1e-12 {
        return Err(Error::Precondition(format!(
            "the bound needs E T <= 1, got {}",
            spec.first_moment
        )));
    }
    let s = Sampler::for_spec(spec, 0.0, 0.5, DEFAULT_TOL)?;
    Ok(gamma_tail_from_values(&run(&s, n, seed)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::Builtin;
    use crate::special::EULER_GAMMA;

    const N: usize = 100_000;

    fn within(got: f64, want: f64, se: f64, k: f64) -> bool {
        (got - want).abs() <= k * se
    }

    #[test]
    fn truncated_atom_and_mean() {
        let s = LevyDensitySpec::builtin(Builtin::Truncated(0.3)).unwrap();
        let b = sample_finite(&s, 0.0, N, 7).unwrap();
        let p0 = b.values.iter().filter(|&&v| v == 0.0).count() as f64 / N as f64;
        assert!(within(p0, 0.3, (0.21 / N as f64).sqrt(), 3.0), "{p0}");
        let (m, v) = mean_var(&b.values);
        assert!(within(m, 0.7, (v / N as f64).sqrt(), 3.0), "{m}");
        assert_eq!(b.truncation_bias_bound, 0.0);
    }

    #[test]
    fn uniform_variance() {
        let s = LevyDensitySpec::builtin(Builtin::Uniform(0.0)).unwrap();
        let b = sample_finite(&s, 0.0, N, 3).unwrap();
        let (_, v) = mean_var(&b.values);
        // fourth cumulant ∫x⁴ = 1/5 gives Var(s²) ≈ (κ4 + 2σ⁴)/n
        let se = ((0.2 + 2.0 / 9.0) / N as f64).sqrt();
        assert!(within(v, 1.0 / 3.0, se, 3.0), "{v}");
    }

    #[test]
    fn dickman_moments_and_atomless_start() {
        let b = sample_dickman(N, 11, 1e-13).unwrap();
        let (m, v) = mean_var(&b.values);
        assert!(within(m, 1.0, (0.5 / N as f64).sqrt(), 3.0), "{m}");
        let se = ((1.0 / 3.0 + 2.0 * 0.25) / N as f64).sqrt();
        assert!(within(v, 0.5, se, 3.0), "{v}");
        let p = b.values.iter().filter(|&&x| x <= 1.0).count() as f64 / N as f64;
        let e = (-EULER_GAMMA).exp();
        assert!(within(p, e, (e * (1.0 - e) / N as f64).sqrt(), 3.0), "{p}");
    }

    #[test]
    fn reproducible() {
        let s = LevyDensitySpec::builtin(Builtin::Truncated(0.3)).unwrap();
        let a = sample_finite(&s, 2.0, 1000, 99).unwrap();
        let b = sample_finite(&s, 2.0, 1000, 99).unwrap();
        assert_eq!(a, b);
        let c = sample_finite(&s, 2.0, 1000, 100).unwrap();
        assert_ne!(a.values, c.values);
        let sampler = Sampler::Finite(FiniteSampler::new(&s, 2.0).unwrap());
        assert_eq!(sampler.draw_at(99, 500), a.values[500]);
    }

    #[test]
    fn split_matches_direct() {
        let d = LevyDensitySpec::builtin(Builtin::Dickman).unwrap();
        let split = sample_split(&d, 0.5, 0.0, N, 5).unwrap();
        let direct = sample_dickman(N, 6, DEFAULT_TOL).unwrap();
        let ks = ks_two_sample(&split.batch.values, &direct.values);
        assert!(ks < ks_two_sample_critical_1pct(N, N), "{ks}");
    }

    #[test]
    fn split_lower_part() {
        let d = LevyDensitySpec::builtin(Builtin::Dickman).unwrap();
        let split = sample_split(&d, 0.25, 0.0, N, 8).unwrap();
        assert!((split.lower_mean - 0.25).abs() < 1e-13);
        let (m, v) = mean_var(&split.lower);
        assert!(within(m, 0.25, (v / N as f64).sqrt(), 3.0), "{m}");
        let check = exceedance_check(&split.lower, split.lower_mean);
        assert!(check.holds, "{check:?}");
    }

    #[test]
    fn tilted_moments_follow_cumulants() {
        let s = LevyDensitySpec::builtin(Builtin::Truncated(0.3)).unwrap();
        let t = cumulant_triple(&s, 2.0).unwrap();
        let b = sample_finite(&s, 2.0, N, 21).unwrap();
        let (m, v) = mean_var(&b.values);
        assert!(
            within(m, t.c1, (t.c2 / N as f64).sqrt(), 4.0),
            "{m} vs {}",
            t.c1
        );
        assert!((v / t.c2 - 1.0).abs() < 0.03, "{v} vs {}", t.c2);
        let d = LevyDensitySpec::builtin(Builtin::Dickman).unwrap();
        let t = cumulant_triple(&d, 2.0).unwrap();
        let b = sample_split(&d, 0.5, 2.0, N, 22).unwrap().batch;
        let (m, _) = mean_var(&b.values);
        assert!(
            within(m, t.c1, (t.c2 / N as f64).sqrt(), 4.0),
            "{m} vs {}",
            t.c1
        );
    }

    #[test]
    fn clt_small_mass_is_far_from_normal() {
        let s = LevyDensitySpec::new(
            alloc::vec![crate::density::DensityPiece::new(
                0.0,
                1.0,
                0.0,
                alloc::vec![0.5]
            )],
            None,
        )
        .unwrap();
        let c = clt_diagnostic(&s, 0.0, 20_000, 1).unwrap();
        assert!(c.ks_statistic > 0.3, "{c:?}");
    }

    #[test]
    fn gamma_tail() {
        let s = LevyDensitySpec::builtin(Builtin::Uniform(0.0)).unwrap();
        let rows = gamma_tail_check(&s, N, 2).unwrap();
        assert!(rows.iter().all(|r| r.holds));
        assert!(rows[3].frequency < 0.01);
        let t = LevyDensitySpec::new(
            alloc::vec![crate::density::DensityPiece::new(
                0.0,
                1.0,
                0.0,
                alloc::vec![3.0]
            )],
            None,
        )
        .unwrap();
        assert!(matches!(
            gamma_tail_check(&t, 10, 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn bad_inputs() {
        assert!(sample_dickman(10, 0, 1e-3).is_err());
        let d = LevyDensitySpec::builtin(Builtin::Dickman).unwrap();
        assert!(matches!(sample_finite(&d, 0.0, 10, 0), Err(Error::Mass(_))));
        let t = LevyDensitySpec::builtin(Builtin::Truncated(0.3)).unwrap();
        assert!(matches!(
            sample_finite(&t, 40.0, 10, 0),
            Err(Error::Mass(_))
        ));
    }
}
