//! The ten acceptance criteria, run in order with their time limits.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use levyasym_core::cumulant::{cumulant_triple, oscillation_deficit};
use levyasym_core::density::{Builtin, LevyDensitySpec};
use levyasym_core::montecarlo::{
    clt_from_values, exceedance_check, mean_var, DickmanSampler, FiniteSampler, Sampler,
    SplitSampler, DEFAULT_TOL,
};
use levyasym_core::oracles::{
    dickman_rho, fourier_density, fourier_tilted_density, volterra_density, FourierOptions,
};
use levyasym_core::saddle::solve_saddle;
use levyasym_core::special::{normal_pdf, EULER_GAMMA};

use crate::commands::simulate_csv;
use crate::compare::{compare, CompareOptions, ComparisonRow, OracleChoice};
use crate::error::CliError;
use crate::parallel;
use crate::spec_io::SpecDoc;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {:<26} {:>7.2}s (limit {:>3}s)  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

type Outcome = Result<(bool, String), CliError>;

struct Criterion {
    name: &'static str,
    limit_secs: u64,
    run: fn() -> Outcome,
}

const CRITERIA: [Criterion; 10] = [
    Criterion {
        name: "dickman closed forms",
        limit_secs: 5,
        run: dickman_closed_forms,
    },
    Criterion {
        name: "saddle identity",
        limit_secs: 1,
        run: saddle_identity,
    },
    Criterion {
        name: "1/u convergence",
        limit_secs: 60,
        run: thm1_convergence,
    },
    Criterion {
        name: "1/sqrt(u) convergence",
        limit_secs: 60,
        run: thm2_convergence,
    },
    Criterion {
        name: "tail formula",
        limit_secs: 60,
        run: tail_formula,
    },
    Criterion {
        name: "cross-oracle agreement",
        limit_secs: 120,
        run: cross_oracle,
    },
    Criterion {
        name: "local limit",
        limit_secs: 120,
        run: local_limit,
    },
    Criterion {
        name: "deficit inequalities",
        limit_secs: 5,
        run: deficit_inequalities,
    },
    Criterion {
        name: "monte carlo consistency",
        limit_secs: 120,
        run: monte_carlo,
    },
    Criterion {
        name: "determinism",
        limit_secs: 30,
        run: determinism,
    },
];

/// Run every criterion, calling `report` as each finishes.
pub fn run_all(mut report: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    let mut out = Vec::new();
    for (i, c) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(c.limit_secs);
        let (mut passed, mut detail) = match outcome {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        if elapsed > limit {
            passed = false;
            detail = format!("over time limit; {detail}");
        }
        let r = CriterionResult {
            id: i + 1,
            name: c.name,
            passed,
            detail,
            elapsed,
            limit,
        };
        report(&r);
        out.push(r);
    }
    out
}

fn builtin(b: Builtin) -> LevyDensitySpec {
    LevyDensitySpec::builtin(b).expect("builtin specs are valid")
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}

/// Every value finite and within `[median/3, 3·median]`.
fn within_factor3(v: &[f64]) -> bool {
    let m = median(v);
    m > 0.0
        && v.iter()
            .all(|&x| x.is_finite() && x >= m / 3.0 && x <= 3.0 * m)
}

fn fmt_list(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.4}")).collect();
    format!("[{}]", parts.join(", "))
}

fn dickman_closed_forms() -> Outcome {
    let h = 1.0 / 1024.0;
    let g = dickman_rho(40.0, h)?;
    let flat = g.values[..=1024].iter().all(|&v| v == 1.0);
    let e2 = (g.values[2048] - (1.0 - 2f64.ln())).abs();
    let ends = 0.5 * (g.values[0] + g.values[g.values.len() - 1]);
    let integral = h * (g.values.iter().sum::<f64>() - ends);
    let ei = (integral - EULER_GAMMA.exp()).abs();
    Ok((
        flat && e2 <= 1e-8 && ei <= 1e-6,
        format!("rho=1 on [0,1]: {flat}; |rho(2) err|={e2:.1e}; |int - e^gamma|={ei:.1e}"),
    ))
}

fn saddle_identity() -> Outcome {
    let spec = builtin(Builtin::Dickman);
    let mut worst: f64 = 0.0;
    for &u in &[2.0, 5.0, 10.0, 20.0, 50.0] {
        let b = solve_saddle(&spec, u)?.beta;
        worst = worst.max((b.exp() - 1.0 - u * b).abs() / b.exp());
    }
    Ok((
        worst <= 1e-9,
        format!("max |e^b - 1 - ub|/e^b = {worst:.1e}"),
    ))
}

fn volterra_rows(spec: &LevyDensitySpec, us: &[f64]) -> Result<Vec<ComparisonRow>, CliError> {
    let opts = CompareOptions {
        oracle: OracleChoice::Volterra,
        h: 1.0 / 4096.0,
        tmax: None,
    };
    let rows = compare(spec, us, opts)?;
    if let Some(bad) = rows.iter().find(|r| !r.ok()) {
        return Err(CliError::Failed(format!("u = {}: {}", bad.u, bad.note)));
    }
    Ok(rows)
}

fn thm1_convergence() -> Outcome {
    let rows = volterra_rows(&builtin(Builtin::Truncated(0.3)), &[5.0, 10.0, 20.0, 40.0])?;
    let s: Vec<f64> = rows.iter().map(|r| r.rel_err * r.u).collect();
    let (lo, hi) = s
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
    let ok = hi < 3.0 * lo && rows[3].rel_err < rows[1].rel_err;
    Ok((ok, format!("rel_err*u = {}", fmt_list(&s))))
}

fn thm2_convergence() -> Outcome {
    let rows = volterra_rows(&builtin(Builtin::Dickman), &[5.0, 10.0, 20.0, 40.0])?;
    let sq: Vec<f64> = rows.iter().map(|r| r.rel_err * r.u.sqrt()).collect();
    let lin: Vec<f64> = rows.iter().map(|r| r.rel_err * r.u).collect();
    let ok = within_factor3(&sq) && within_factor3(&lin) && rows[3].rel_err < rows[1].rel_err;
    Ok((
        ok,
        format!(
            "rel_err*sqrt(u) = {}; rel_err*u = {}",
            fmt_list(&sq),
            fmt_list(&lin)
        ),
    ))
}

fn tail_formula() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for b in [Builtin::Dickman, Builtin::Truncated(0.3)] {
        let spec = builtin(b);
        let rows = volterra_rows(&spec, &[5.0, 10.0, 20.0])?;
        let s: Vec<f64> = rows.iter().map(|r| r.tail_rel_err * r.u.sqrt()).collect();
        ok &= within_factor3(&s);
        detail.push(format!(
            "{}: {}",
            spec.label.as_deref().unwrap_or("?"),
            fmt_list(&s)
        ));
    }
    Ok((ok, detail.join("; ")))
}

fn cross_oracle() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for b in [Builtin::Dickman, Builtin::Truncated(0.3)] {
        let spec = builtin(b);
        let grid = volterra_density(&spec, 11.0, 1.0 / 1024.0)?;
        let mut worst: f64 = 0.0;
        let mut worst_fourier: f64 = 0.0;
        for k in 0..50 {
            let t = 2.0 + 5.0 / 32.0 * (k + 1) as f64;
            let f = fourier_density(&spec, t)?;
            let v = grid.value_at(t).expect("inside the grid");
            let allowed = grid.err_bound + f.err_bound;
            ok &= (v - f.f).abs() <= allowed && f.err_bound <= 1e-6;
            worst = worst.max((v - f.f).abs() / allowed);
            worst_fourier = worst_fourier.max(f.err_bound);
        }
        ok &= grid.err_bound <= 1e-6;
        detail.push(format!(
            "{}: max diff/bound {worst:.2}, volterra err {:.1e}, fourier err {worst_fourier:.1e}",
            spec.label.as_deref().unwrap_or("?"),
            grid.err_bound
        ));
    }
    Ok((ok, detail.join("; ")))
}

fn local_limit() -> Outcome {
    let spec = builtin(Builtin::Truncated(0.3));
    let ys = [-2.0, -1.0, 1.0, 2.0];
    let mut at0 = Vec::new();
    let mut off: Vec<Vec<f64>> = vec![Vec::new(); ys.len()];
    // accuracy relative to the tilted peak only
    let opts = FourierOptions {
        abs_tol: 0.0,
        ..FourierOptions::default()
    };
    // each deviation must dwarf the certified inversion error
    let mut resolved = true;
    for &beta in &[6.0, 9.0, 12.0] {
        let t = cumulant_triple(&spec, beta)?;
        let (mean, sigma) = (t.c1, t.c2.sqrt());
        let mut dev = |y: f64| -> Result<f64, CliError> {
            let v = fourier_tilted_density(&spec, beta, mean + sigma * y, opts)?;
            let d = (sigma * v.f_tilted - normal_pdf(y)).abs();
            resolved &= sigma * v.err_tilted <= 0.1 * d;
            Ok(d)
        };
        at0.push(dev(0.0)? * mean);
        for (j, &y) in ys.iter().enumerate() {
            off[j].push(dev(y)? * mean.sqrt());
        }
    }
    let mut ok = resolved && within_factor3(&at0);
    let mut detail = format!("resolved: {resolved}; y=0: {}", fmt_list(&at0));
    for (j, &y) in ys.iter().enumerate() {
        ok &= within_factor3(&off[j]);
        detail += &format!("; y={y}: {}", fmt_list(&off[j]));
    }
    Ok((ok, detail))
}

fn deficit_inequalities() -> Outcome {
    let mut ok = true;
    let mut checks = 0;
    for b in [Builtin::Dickman, Builtin::Truncated(0.3)] {
        let spec = builtin(b);
        let eps = spec.eps_floor.eps;
        for &beta in &[10.0f64, 20.0] {
            let s2 = cumulant_triple(&spec, beta)?.c2;
            for k in 1..=200 {
                let tau = PI * k as f64 / 200.0;
                ok &= oscillation_deficit(&spec, beta, tau)? >= 2.0 * tau * tau * s2 / (PI * PI);
                checks += 1;
            }
            let floor = eps * PI * PI / 8.0 * beta.exp() / beta.powi(3);
            for &tau in &[PI, 2.0 * PI, 10.0 * PI] {
                ok &= oscillation_deficit(&spec, beta, tau)? > floor;
                checks += 1;
            }
        }
    }
    Ok((ok, format!("{checks} exact inequality checks")))
}

const MC_N: usize = 1_000_000;
const MC_SEED: u64 = 20_240_601;

fn monte_carlo() -> Outcome {
    let threads = parallel::env_threads();
    let n = MC_N as f64;
    let mut ok = true;
    let mut detail = Vec::new();

    let d = Sampler::Dickman(DickmanSampler::new(DEFAULT_TOL)?);
    let (m, v) = mean_var(&parallel::sample(&d, MC_N, MC_SEED, threads));
    // Var T = 1/2, fourth cumulant 1/3
    let zm = (m - 1.0) / (0.5 / n).sqrt();
    let zv = (v - 0.5) / ((1.0 / 3.0 + 2.0 * 0.25) / n).sqrt();
    ok &= zm.abs() <= 4.0 && zv.abs() <= 4.0;
    detail.push(format!("dickman mean z={zm:.2} var z={zv:.2}"));

    let tr = builtin(Builtin::Truncated(0.3));
    let s = Sampler::Finite(FiniteSampler::new(&tr, 0.0)?);
    let values = parallel::sample(&s, MC_N, MC_SEED + 1, threads);
    let p0 = values.iter().filter(|&&x| x == 0.0).count() as f64 / n;
    let z0 = (p0 - 0.3) / (0.21 / n).sqrt();
    ok &= z0.abs() <= 3.0;
    detail.push(format!("P(T=0) z={z0:.2}"));

    let s8 = Sampler::Finite(FiniteSampler::new(&tr, 8.0)?);
    let t = cumulant_triple(&tr, 8.0)?;
    let clt = clt_from_values(
        &parallel::sample(&s8, MC_N, MC_SEED + 2, threads),
        t.c1,
        t.c2,
    );
    ok &= clt.ks_statistic < 0.01;
    detail.push(format!("ks(beta=8)={:.4}", clt.ks_statistic));

    let dick = builtin(Builtin::Dickman);
    let split = SplitSampler::new(&dick, 0.25, 0.0, DEFAULT_TOL)?;
    let (lower, _) = parallel::sample_split(&split, MC_N, MC_SEED + 3, threads);
    let ex = exceedance_check(&lower, 0.25);
    ok &= ex.holds;
    detail.push(format!("P(T1>1)={:.2e} <= {:.3}", ex.frequency, ex.bound));
    Ok((ok, detail.join("; ")))
}

fn determinism() -> Outcome {
    let doc = SpecDoc::from_spec(&builtin(Builtin::Dickman));
    let args: Vec<String> = [
        "simulate",
        "--spec",
        "dickman.json",
        "--beta",
        "0",
        "--n",
        "100000",
        "--seed",
        "42",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let a = simulate_csv(&doc, 0.0, 100_000, 42, Some(1), &args)?;
    let b = simulate_csv(&doc, 0.0, 100_000, 42, Some(1), &args)?;
    let c = simulate_csv(&doc, 0.0, 100_000, 42, Some(8), &args)?;
    let ok = a == b && a == c;
    Ok((ok, format!("{} bytes, runs identical: {ok}", a.len())))
}
