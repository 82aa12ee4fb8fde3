//! Asymptotic estimates against an oracle, one row per `u`.

use levyasym_core::asymptotics::{density_asymptote, AsymptoticEstimate};
use levyasym_core::density::{LevyDensitySpec, Theorem};
use levyasym_core::oracles::{
    fourier_density, fourier_tilted_density, oracle_tail, volterra_density, DensityGrid,
    FourierOptions,
};
use levyasym_core::quadrature::gk15;
use levyasym_core::saddle::solve_saddle;
use levyasym_core::Error;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OracleChoice {
    Volterra,
    Fourier,
    Auto,
}

impl OracleChoice {
    pub fn name(self) -> &'static str {
        match self {
            OracleChoice::Volterra => "volterra",
            OracleChoice::Fourier => "fourier",
            OracleChoice::Auto => "auto",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CompareOptions {
    pub oracle: OracleChoice,
    pub h: f64,
    pub tmax: Option<f64>,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            oracle: OracleChoice::Auto,
            h: 1.0 / 4096.0,
            tmax: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub u: f64,
    pub beta: f64,
    pub f_asym: f64,
    pub f_oracle: f64,
    pub rel_err: f64,
    /// `rel_err·u` under the `1/u` error order, `rel_err·√u` otherwise.
    pub scaled_err: f64,
    pub tail_asym: f64,
    pub tail_oracle: f64,
    pub tail_rel_err: f64,
    pub note: String,
}

impl ComparisonRow {
    fn failed(u: f64, note: String) -> Self {
        Self {
            u,
            beta: f64::NAN,
            f_asym: f64::NAN,
            f_oracle: f64::NAN,
            rel_err: f64::NAN,
            scaled_err: f64::NAN,
            tail_asym: f64::NAN,
            tail_oracle: f64::NAN,
            tail_rel_err: f64::NAN,
            note,
        }
    }

    pub fn ok(&self) -> bool {
        self.note.is_empty()
    }
}

pub const COLUMNS: [&str; 10] = [
    "u",
    "beta",
    "f_asym",
    "f_oracle",
    "rel_err",
    "scaled_err",
    "tail_asym",
    "tail_oracle",
    "tail_rel_err",
    "note",
];

fn scaled(spec: &LevyDensitySpec, u: f64, rel: f64) -> f64 {
    match spec.class.theorem {
        Theorem::Thm2 => rel * u.sqrt(),
        _ => rel * u,
    }
}

fn row(spec: &LevyDensitySpec, est: &AsymptoticEstimate, f: f64, tail: f64) -> ComparisonRow {
    let rel_err = (est.f_hat / f - 1.0).abs();
    ComparisonRow {
        u: est.u,
        beta: est.beta,
        f_asym: est.f_hat,
        f_oracle: f,
        rel_err,
        scaled_err: scaled(spec, est.u, rel_err),
        tail_asym: est.tail_hat,
        tail_oracle: tail,
        tail_rel_err: (est.tail_hat / tail - 1.0).abs(),
        note: String::new(),
    }
}

/// Grid end far enough past the largest `u` for the tail integral.
fn default_tmax(spec: &LevyDensitySpec, u_list: &[f64]) -> f64 {
    let top = u_list.iter().copied().fold(2.0f64, f64::max);
    let sigma = solve_saddle(spec, top)
        .map(|s| s.sigma2.sqrt())
        .unwrap_or(1.0);
    (top + 12.0 * sigma + 2.0).ceil()
}

/// `P(T ≥ u)` by integrating Fourier densities at the tilt `β(u)`.
/// Returns the value and an error estimate.
pub fn fourier_tail(spec: &LevyDensitySpec, u: f64, beta: f64) -> Result<(f64, f64), Error> {
    let panel = 4.0 / beta;
    let mut total = 0.0;
    let mut err = 0.0;
    let mut failure = None;
    for j in 0..10 {
        let a = u + j as f64 * panel;
        let mut bound: f64 = 0.0;
        let (v, e, _) = gk15(
            &mut |t: f64| match fourier_tilted_density(spec, beta, t, FourierOptions::default()) {
                Ok(fv) => {
                    bound = bound.max(fv.err_bound);
                    fv.f
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            },
            a,
            a + panel,
        );
        if let Some(e) = failure.take() {
            return Err(e);
        }
        total += v;
        err += e + bound * panel;
    }
    // Chernoff: P(T ≥ u + 40/β) ≤ e^{C(β) - βu - 40}
    let sp = solve_saddle(spec, u)?;
    err += (sp.log_prefactor - 40.0).exp();
    Ok((total, err))
}

fn volterra_rows(spec: &LevyDensitySpec, u_list: &[f64], grid: &DensityGrid) -> Vec<ComparisonRow> {
    u_list
        .iter()
        .map(|&u| {
            let go = || -> Result<ComparisonRow, Error> {
                let est = density_asymptote(spec, u)?;
                let f = grid
                    .value_at(u)
                    .ok_or_else(|| Error::Domain(format!("u = {u} is beyond the grid")))?;
                let tail = oracle_tail(grid, u, spec)?.value;
                Ok(row(spec, &est, f, tail))
            };
            go().unwrap_or_else(|e| ComparisonRow::failed(u, e.to_string()))
        })
        .collect()
}

fn fourier_row(spec: &LevyDensitySpec, u: f64) -> ComparisonRow {
    let go = || -> Result<ComparisonRow, Error> {
        let est = density_asymptote(spec, u)?;
        let f = fourier_density(spec, u)?.f;
        let (tail, _) = fourier_tail(spec, u, est.beta)?;
        Ok(row(spec, &est, f, tail))
    };
    go().unwrap_or_else(|e| ComparisonRow::failed(u, e.to_string()))
}

pub fn compare(
    spec: &LevyDensitySpec,
    u_list: &[f64],
    opts: CompareOptions,
) -> Result<Vec<ComparisonRow>, CliError> {
    if u_list.is_empty() {
        return Err(CliError::Usage("--u needs at least one value".into()));
    }
    if u_list.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(CliError::Usage("--u values must be increasing".into()));
    }
    let use_volterra = match opts.oracle {
        OracleChoice::Fourier => false,
        OracleChoice::Volterra => true,
        OracleChoice::Auto => spec.is_finite_mass() || is_dickman(spec),
    };
    if use_volterra {
        let tmax = opts.tmax.unwrap_or_else(|| default_tmax(spec, u_list));
        let grid = volterra_density(spec, tmax, opts.h)?;
        Ok(volterra_rows(spec, u_list, &grid))
    } else {
        Ok(u_list.iter().map(|&u| fourier_row(spec, u)).collect())
    }
}

fn is_dickman(spec: &LevyDensitySpec) -> bool {
    let p = spec.pieces();
    p.len() == 1 && p[0].lo == 0.0 && p[0].inv_coeff == 1.0 && p[0].poly.iter().all(|&c| c == 0.0)
}

/// Largest finite `scaled_err`.
pub fn max_scaled_err(rows: &[ComparisonRow]) -> f64 {
    rows.iter()
        .map(|r| r.scaled_err)
        .filter(|v| v.is_finite())
        .fold(f64::NAN, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use levyasym_core::density::Builtin;

    #[test]
    fn below_mean_gives_nan_row() {
        let s = LevyDensitySpec::builtin(Builtin::Truncated(0.3)).unwrap();
        let opts = CompareOptions {
            h: 1.0 / 1024.0,
            ..CompareOptions::default()
        };
        let rows = compare(&s, &[0.5, 5.0], opts).unwrap();
        assert!(rows[0].f_asym.is_nan() && rows[0].note.contains("domain"));
        assert!(rows[1].ok() && rows[1].rel_err < 0.05);
    }

    #[test]
    fn fourier_and_volterra_rows_agree() {
        let s = LevyDensitySpec::builtin(Builtin::Truncated(0.3)).unwrap();
        let v = compare(
            &s,
            &[5.0],
            CompareOptions {
                oracle: OracleChoice::Volterra,
                h: 1.0 / 1024.0,
                tmax: None,
            },
        )
        .unwrap();
        let f = compare(
            &s,
            &[5.0],
            CompareOptions {
                oracle: OracleChoice::Fourier,
                ..CompareOptions::default()
            },
        )
        .unwrap();
        assert!((v[0].f_oracle / f[0].f_oracle - 1.0).abs() < 1e-5);
        assert!(
            (v[0].tail_oracle / f[0].tail_oracle - 1.0).abs() < 1e-5,
            "{v:?} {f:?}"
        );
    }

    #[test]
    fn rejects_unsorted_u() {
        let s = LevyDensitySpec::builtin(Builtin::Dickman).unwrap();
        assert!(matches!(
            compare(&s, &[5.0, 4.0], CompareOptions::default()),
            Err(CliError::Usage(_))
        ));
    }
}
