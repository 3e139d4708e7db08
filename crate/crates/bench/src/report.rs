// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Experiment rows and their CSV/JSON encodings.
//!
//! CSV columns, in order, are [`CSV_HEADER`]. Per-iteration columns hold
//! one value per iteration joined by `;`. `speedup` is empty unless both
//! engines ran. Times are in seconds.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use kcore_maint::{ColoringMode, MaintenanceReport};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const CSV_HEADER: [&str; 20] = [
    "dataset",
    "n",
    "m",
    "max_core",
    "mode",
    "engine",
    "threads",
    "coloring",
    "batch_size",
    "batch_degree",
    "colors_used",
    "iterations",
    "total_changed",
    "total_time_s",
    "per_edge_time_s",
    "speedup",
    "iter_edges",
    "iter_groups",
    "iter_changed",
    "iter_time_s",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub dataset: String,
    pub n: usize,
    pub m: usize,
    pub max_core: u32,
    pub mode: String,
    pub engine: String,
    pub threads: usize,
    pub coloring: String,
    pub batch_size: usize,
    pub batch_degree: usize,
    pub colors_used: usize,
    pub iterations: usize,
    pub total_changed: usize,
    pub total_time_s: f64,
    /// `total_time_s / batch_size`, 0 for an empty batch.
    pub per_edge_time_s: f64,
    /// Sequential time over parallel time.
    pub speedup: Option<f64>,
    pub iter_edges: Vec<usize>,
    pub iter_groups: Vec<usize>,
    pub iter_changed: Vec<usize>,
    pub iter_time_s: Vec<f64>,
}

impl ReportRow {
    pub fn from_report(
        dataset: &str,
        n: usize,
        m: usize,
        max_core: u32,
        coloring: ColoringMode,
        r: &MaintenanceReport,
    ) -> Self {
        let total = r.total_time.as_secs_f64();
        ReportRow {
            dataset: dataset.to_string(),
            n,
            m,
            max_core,
            mode: r.kind.to_string(),
            engine: r.engine.to_string(),
            threads: r.threads,
            coloring: match coloring {
                ColoringMode::Greedy => "greedy",
                ColoringMode::DeltaPlusOne => "delta1",
            }
            .to_string(),
            batch_size: r.batch_size,
            batch_degree: r.batch_degree,
            colors_used: r.colors_used,
            iterations: r.iterations(),
            total_changed: r.total_changed,
            total_time_s: total,
            per_edge_time_s: if r.batch_size == 0 {
                0.0
            } else {
                total / r.batch_size as f64
            },
            speedup: None,
            iter_edges: r.per_iteration.iter().map(|i| i.edges_processed).collect(),
            iter_groups: r.per_iteration.iter().map(|i| i.groups).collect(),
            iter_changed: r.per_iteration.iter().map(|i| i.changed_vertices).collect(),
            iter_time_s: r
                .per_iteration
                .iter()
                .map(|i| i.wall_time.as_secs_f64())
                .collect(),
        }
    }

    fn csv_record(&self) -> Vec<String> {
        fn join<T: ToString>(v: &[T]) -> String {
            v.iter().map(T::to_string).collect::<Vec<_>>().join(";")
        }
        vec![
            self.dataset.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.max_core.to_string(),
            self.mode.clone(),
            self.engine.clone(),
            self.threads.to_string(),
            self.coloring.clone(),
            self.batch_size.to_string(),
            self.batch_degree.to_string(),
            self.colors_used.to_string(),
            self.iterations.to_string(),
            self.total_changed.to_string(),
            self.total_time_s.to_string(),
            self.per_edge_time_s.to_string(),
            self.speedup.map(|s| s.to_string()).unwrap_or_default(),
            join(&self.iter_edges),
            join(&self.iter_groups),
            join(&self.iter_changed),
            join(&self.iter_time_s),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            _ => Err(format!(
                "unknown report format `{s}` (expected csv or json)"
            )),
        }
    }
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub fn write_report<W: Write>(
    rows: &[ReportRow],
    out: W,
    format: ReportFormat,
) -> Result<(), ReportError> {
    match format {
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER)?;
            for row in rows {
                w.write_record(row.csv_record())?;
            }
            w.flush().map_err(csv::Error::from)?;
        }
        ReportFormat::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, rows)?;
            writeln!(out).map_err(serde_json::Error::io)?;
        }
    }
    Ok(())
}

/// Writes `rows` to `path`, or to stdout when `path` is `None`.
pub fn emit_report(
    rows: &[ReportRow],
    path: Option<&Path>,
    format: ReportFormat,
) -> Result<(), ReportError> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|source| ReportError::Io {
                path: p.display().to_string(),
                source,
            })?;
            write_report(rows, BufWriter::new(file), format)
        }
        None => write_report(rows, io::stdout().lock(), format),
    }
}
