//! Report files: long-format CSV with a `#` preamble and a JSON sidecar.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config_sha256: String,
    pub seed: u64,
    pub budget: u64,
    pub exact: bool,
}

impl Meta {
    fn preamble(&self) -> String {
        format!(
            "# {} {}\n# command {}\n# config_sha256 {}\n# seed {}\n# budget {}\n# exact {}\n",
            self.tool, self.version, self.command, self.config_sha256, self.seed, self.budget, self.exact
        )
    }
}

pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn row(&mut self, fields: Vec<String>) {
        debug_assert_eq!(fields.len(), self.header.len());
        self.rows.push(fields);
    }
}

#[derive(Serialize)]
struct Sidecar<'a, T: Serialize> {
    meta: &'a Meta,
    report: &'a T,
}

/// Writes `<out>/<stem>.csv` and `<out>/<stem>.json`; returns both paths.
pub fn write_report<T: Serialize>(
    out: &Path,
    stem: &str,
    meta: &Meta,
    table: &Table,
    report: &T,
) -> Result<(PathBuf, PathBuf), CliError> {
    std::fs::create_dir_all(out)?;
    let mut buf = meta.preamble().into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(&table.header).map_err(csv_err)?;
        for r in &table.rows {
            w.write_record(r).map_err(csv_err)?;
        }
        w.flush()?;
    }
    let csv_path = out.join(format!("{stem}.csv"));
    std::fs::write(&csv_path, buf)?;
    let json = serde_json::to_string_pretty(&Sidecar { meta, report })
        .map_err(|e| CliError::Input(format!("serializing report: {e}")))?;
    let json_path = out.join(format!("{stem}.json"));
    std::fs::write(&json_path, json + "\n")?;
    Ok((csv_path, json_path))
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}
