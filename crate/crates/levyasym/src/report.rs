//! CSV output with `#` comment headers.

use levyasym_core::montecarlo::SampleBatch;
use levyasym_core::oracles::DensityGrid;

use crate::error::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Leading comment block shared by every command.
#[derive(Debug, Clone, Default)]
pub struct Header {
    pub spec_hash: Option<String>,
    pub args: Vec<String>,
    pub fields: Vec<(String, String)>,
}

impl Header {
    pub fn new(spec_hash: Option<String>, args: &[String]) -> Self {
        Self {
            spec_hash,
            args: args.to_vec(),
            fields: Vec::new(),
        }
    }

    pub fn field(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    fn render(&self) -> String {
        let mut s = format!("# levyasym {VERSION}\n");
        s += &format!(
            "# spec_sha256={}\n",
            self.spec_hash.as_deref().unwrap_or("none")
        );
        s += &format!("# args={}\n", self.args.join(" "));
        for (k, v) in &self.fields {
            s += &format!("# {k}={v}\n");
        }
        s
    }
}

/// Header, column names, rows, then optional trailing comments.
pub fn write_csv(
    header: &Header,
    columns: &[&str],
    rows: &[Vec<String>],
    footer: &[String],
) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(columns)?;
    for r in rows {
        w.write_record(r)?;
    }
    let body = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    let mut out = header.render();
    out += &String::from_utf8(body).expect("csv output is utf-8");
    for line in footer {
        out += &format!("# {line}\n");
    }
    Ok(out)
}

pub fn num(v: f64) -> String {
    format!("{v:e}")
}

pub fn batch_csv(header: Header, batch: &SampleBatch) -> Result<String, CliError> {
    let header = header
        .field("spec", &batch.spec_label)
        .field("beta", batch.beta)
        .field("seed", batch.seed)
        .field("n", batch.n)
        .field("truncation_bias_bound", num(batch.truncation_bias_bound));
    let rows: Vec<Vec<String>> = batch.values.iter().map(|&v| vec![num(v)]).collect();
    write_csv(&header, &["value"], &rows, &[])
}

pub fn grid_csv(header: Header, grid: &DensityGrid) -> Result<String, CliError> {
    let header = header
        .field("h", grid.h)
        .field("atom", num(grid.atom))
        .field("method", grid.method.name())
        .field("err_bound", num(grid.err_bound));
    let rows: Vec<Vec<String>> = grid
        .values
        .iter()
        .enumerate()
        .map(|(k, &v)| vec![grid.t(k).to_string(), num(v)])
        .collect();
    write_csv(&header, &["t", "f"], &rows, &[])
}
