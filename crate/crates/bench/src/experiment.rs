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

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use kcore_maint::{
    compute_cores, generate, matching_delete_batch, matching_insert_batch, max_core,
    sample_batch_by_core, sample_batch_random, sequential_delete_all, sequential_insert_all,
    validate_batch, BatchError, BatchKind, ColoringMode, CoreVector, EdgeBatch, Engine, GenSpec,
    Graph, GraphModel, MaintenanceConfig, MaintenanceError, MaintenanceReport, ValidationMode,
    VertexId, WorkloadError,
};
use thiserror::Error;

use crate::edgelist::{load_edgelist, load_updates, IngestError, LabelMap};
use crate::report::ReportRow;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Workload(#[from] WorkloadError),
    #[error("update file: {0}")]
    Updates(#[from] BatchError),
    #[error("update file: label {0} is not a vertex of the graph")]
    UnknownLabel(u64),
    #[error("{engine} engine: {source}")]
    Maintenance {
        engine: Engine,
        #[source]
        source: MaintenanceError,
    },
    #[error("{engine} engine diverged from recomputation at vertex {vertex}: maintained {maintained}, expected {expected}")]
    Verification {
        engine: Engine,
        vertex: u64,
        maintained: u32,
        expected: u32,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    File(PathBuf),
    Generated(GenSpec),
}

/// Which update batch to build.
#[derive(Debug, Clone, PartialEq)]
pub enum Workload {
    /// Random edges, `P` percent of the current edge count.
    Percent(f64),
    /// A fraction of the edges whose lower endpoint has core `k`.
    Core { k: u32, fraction: f64 },
    /// Explicit label pairs, one per line.
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid workload `{0}`: expected percent:P, core:K:F or file:PATH")]
pub struct WorkloadParseError(String);

impl FromStr for Workload {
    type Err = WorkloadParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WorkloadParseError(s.to_string());
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "percent" => {
                let p: f64 = rest.parse().map_err(|_| bad())?;
                if !(0.0..=100.0).contains(&p) {
                    return Err(bad());
                }
                Ok(Workload::Percent(p))
            }
            "core" => {
                let (k, f) = rest.split_once(':').ok_or_else(bad)?;
                let k = k.parse().map_err(|_| bad())?;
                let fraction: f64 = f.parse().map_err(|_| bad())?;
                if !(0.0..=1.0).contains(&fraction) {
                    return Err(bad());
                }
                Ok(Workload::Core { k, fraction })
            }
            "file" if !rest.is_empty() => Ok(Workload::File(PathBuf::from(rest))),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Workload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Workload::Percent(p) => write!(f, "percent:{p}"),
            Workload::Core { k, fraction } => write!(f, "core:{k}:{fraction}"),
            Workload::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineChoice {
    Parallel,
    Sequential,
    Both,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub source: GraphSource,
    pub workload: Workload,
    pub mode: BatchKind,
    pub engine: EngineChoice,
    pub threads: usize,
    pub coloring: ColoringMode,
    pub seed: u64,
    pub verify: bool,
}

impl ExperimentConfig {
    pub fn new(source: GraphSource, workload: Workload, mode: BatchKind) -> Self {
        ExperimentConfig {
            source,
            workload,
            mode,
            engine: EngineChoice::Parallel,
            threads: 1,
            coloring: ColoringMode::Greedy,
            seed: 1,
            verify: true,
        }
    }
}

fn dataset_name(source: &GraphSource) -> String {
    match source {
        GraphSource::File(p) => p
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| p.display().to_string()),
        GraphSource::Generated(spec) => {
            let model = match spec.model {
                GraphModel::ErdosRenyi => "er",
                GraphModel::BarabasiAlbert => "ba",
                GraphModel::Rmat(_) => "rmat",
            };
            format!("{model}-{}-{}-s{}", spec.nodes, spec.degree, spec.seed)
        }
    }
}

fn load_source(source: &GraphSource) -> Result<(Graph, LabelMap), ExperimentError> {
    Ok(match source {
        GraphSource::File(p) => {
            let lg = load_edgelist(p)?;
            (lg.graph, lg.labels)
        }
        GraphSource::Generated(spec) => {
            let g = generate(spec)?;
            // generated vertices are labeled by their ids
            let mut labels = LabelMap::new();
            for v in g.vertices() {
                labels.intern(v as u64)?;
            }
            (g, labels)
        }
    })
}

/// Maps update-file labels to vertex ids. In insert mode an unseen label
/// becomes a new isolated vertex with core 0; in delete mode it is an
/// error.
fn resolve_updates(
    path: &Path,
    g: &mut Graph,
    cores: &mut CoreVector,
    labels: &mut LabelMap,
    mode: BatchKind,
) -> Result<EdgeBatch, ExperimentError> {
    let pairs = load_updates(path)?;
    let mut edges = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        let mut resolve = |label: u64| -> Result<VertexId, ExperimentError> {
            if let Some(v) = labels.id(label) {
                return Ok(v);
            }
            if mode == BatchKind::Delete {
                return Err(ExperimentError::UnknownLabel(label));
            }
            let v = labels.intern(label)?;
            while g.num_vertices() <= v as usize {
                g.add_vertex();
                cores.push_isolated();
            }
            Ok(v)
        };
        let u = resolve(a)?;
        let v = resolve(b)?;
        edges.push((u, v));
    }
    Ok(validate_batch(g, mode, edges, ValidationMode::Strict)?.batch)
}

fn maintain(
    engine: Engine,
    g: &mut Graph,
    cores: &mut CoreVector,
    batch: &EdgeBatch,
    config: &MaintenanceConfig,
) -> Result<MaintenanceReport, MaintenanceError> {
    match (engine, batch.kind()) {
        (Engine::Parallel, BatchKind::Insert) => matching_insert_batch(g, cores, batch, config),
        (Engine::Parallel, BatchKind::Delete) => matching_delete_batch(g, cores, batch, config),
        (Engine::Sequential, BatchKind::Insert) => sequential_insert_all(g, cores, batch),
        (Engine::Sequential, BatchKind::Delete) => sequential_delete_all(g, cores, batch),
    }
}

/// Loads or generates the graph, builds the batch, runs the selected
/// engines on private copies and, unless disabled, checks each result
/// against a fresh decomposition of the final graph.
///
/// Graph ingestion, initial decomposition and verification are excluded
/// from the reported times.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ReportRow>, ExperimentError> {
    let dataset = dataset_name(&cfg.source);
    let (mut g, mut labels) = load_source(&cfg.source)?;
    let mut cores = compute_cores(&g);
    let (n, m, kmax) = (g.num_vertices(), g.num_edges(), max_core(&cores));

    let batch = match &cfg.workload {
        Workload::Percent(p) => sample_batch_random(&g, p / 100.0, cfg.mode, cfg.seed)?,
        Workload::Core { k, fraction } => {
            sample_batch_by_core(&g, &cores, *k, *fraction, cfg.mode, cfg.seed)?
        }
        Workload::File(path) => resolve_updates(path, &mut g, &mut cores, &mut labels, cfg.mode)?,
    };

    let engines: &[Engine] = match cfg.engine {
        EngineChoice::Parallel => &[Engine::Parallel],
        EngineChoice::Sequential => &[Engine::Sequential],
        EngineChoice::Both => &[Engine::Parallel, Engine::Sequential],
    };
    let config = MaintenanceConfig {
        threads: cfg.threads.max(1),
        coloring: cfg.coloring,
    };

    let mut rows = Vec::with_capacity(engines.len());
    for &engine in engines {
        let (mut g2, mut c2) = (g.clone(), cores.clone());
        let report = maintain(engine, &mut g2, &mut c2, &batch, &config)
            .map_err(|source| ExperimentError::Maintenance { engine, source })?;
        if cfg.verify {
            let expected = compute_cores(&g2);
            if let Some(v) = c2.first_difference(&expected) {
                let label = labels.label(v).unwrap_or(v as u64);
                return Err(ExperimentError::Verification {
                    engine,
                    vertex: label,
                    maintained: c2.as_slice().get(v as usize).copied().unwrap_or(0),
                    expected: expected.as_slice().get(v as usize).copied().unwrap_or(0),
                });
            }
        }
        rows.push(ReportRow::from_report(
            &dataset,
            n,
            m,
            kmax,
            cfg.coloring,
            &report,
        ));
    }

    if let [par, seq] = rows.as_mut_slice() {
        let speedup = if par.total_time_s > 0.0 {
            seq.total_time_s / par.total_time_s
        } else {
            0.0
        };
        par.speedup = Some(speedup);
        seq.speedup = Some(speedup);
    }
    Ok(rows)
}
