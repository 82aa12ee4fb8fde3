//! The subcommands, each returning its CSV text.

use std::path::Path;

use levyasym_core::cumulant::{atom_mass, cumulant_triple};
use levyasym_core::density::THM2_SPLIT;
use levyasym_core::montecarlo::{SampleBatch, Sampler, DEFAULT_TOL};
use levyasym_core::oracles::dickman_rho;

use crate::compare::{compare, max_scaled_err, CompareOptions, COLUMNS};
use crate::error::CliError;
use crate::parallel;
use crate::report::{batch_csv, grid_csv, num, write_csv, Header};
use crate::spec_io::{load_spec, SpecDoc};

pub fn cmd_cumulants(spec_path: &Path, betas: &[f64], args: &[String]) -> Result<String, CliError> {
    let (doc, spec) = load_spec(spec_path)?;
    let mut rows = Vec::with_capacity(betas.len());
    for &b in betas {
        let t = cumulant_triple(&spec, b)?;
        let atom = atom_mass(&spec, b)?;
        rows.push(vec![
            b.to_string(),
            num(t.c0),
            num(t.c1),
            num(t.c2),
            num(atom),
        ]);
    }
    let header = Header::new(Some(doc.hash()), args);
    write_csv(&header, &["beta", "C", "C1", "C2", "atom_mass"], &rows, &[])
}

pub fn cmd_compare(
    spec_path: &Path,
    u_list: &[f64],
    opts: CompareOptions,
    args: &[String],
) -> Result<String, CliError> {
    let (doc, spec) = load_spec(spec_path)?;
    let rows = compare(&spec, u_list, opts)?;
    if rows.iter().all(|r| !r.ok()) {
        let notes: Vec<&str> = rows.iter().map(|r| r.note.as_str()).collect();
        return Err(CliError::Failed(format!(
            "every row failed: {}",
            notes.join("; ")
        )));
    }
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.u.to_string(),
                num(r.beta),
                num(r.f_asym),
                num(r.f_oracle),
                num(r.rel_err),
                num(r.scaled_err),
                num(r.tail_asym),
                num(r.tail_oracle),
                num(r.tail_rel_err),
                r.note.clone(),
            ]
        })
        .collect();
    let header = Header::new(Some(doc.hash()), args).field("oracle", opts.oracle.name());
    let footer = [format!("max_scaled_err={}", num(max_scaled_err(&rows)))];
    write_csv(&header, &COLUMNS, &body, &footer)
}

/// Draws of `T_β` for a parsed spec document.
pub fn simulate(
    doc: &SpecDoc,
    beta: f64,
    n: usize,
    seed: u64,
    threads: Option<usize>,
) -> Result<SampleBatch, CliError> {
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    let spec = doc.to_spec()?;
    let sampler = Sampler::for_spec(&spec, beta, THM2_SPLIT, DEFAULT_TOL)?;
    let values = parallel::sample(&sampler, n, seed, threads);
    let batch = SampleBatch {
        n,
        seed,
        values,
        truncation_bias_bound: sampler.truncation_bias_bound(),
        spec_label: spec.label.clone().unwrap_or_else(|| "custom".into()),
        beta,
    };
    Ok(batch)
}

pub fn simulate_csv(
    doc: &SpecDoc,
    beta: f64,
    n: usize,
    seed: u64,
    threads: Option<usize>,
    args: &[String],
) -> Result<String, CliError> {
    let batch = simulate(doc, beta, n, seed, threads)?;
    batch_csv(Header::new(Some(doc.hash()), args), &batch)
}

pub fn cmd_simulate(
    spec_path: &Path,
    beta: f64,
    n: usize,
    seed: u64,
    threads: Option<usize>,
    args: &[String],
) -> Result<String, CliError> {
    let (doc, _) = load_spec(spec_path)?;
    simulate_csv(&doc, beta, n, seed, threads, args)
}

pub fn cmd_rho(u_max: f64, h: f64, args: &[String]) -> Result<String, CliError> {
    let grid = dickman_rho(u_max, h)?;
    grid_csv(Header::new(None, args), &grid)
}
