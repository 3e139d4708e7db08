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

//! Barrier-synchronized batch driver shared by insertion and deletion.
//!
//! Every iteration handles one color class of the batch:
//!
//! 1. serial: apply the class to the graph;
//! 2. parallel: one read-only search per root-core group, each with its own
//!    scratch, against the graph and the pre-iteration core numbers;
//! 3. serial: merge the returned vertex sets and shift each core by one.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::coloring::{color_batch, ColoringMode};
use crate::decremental::k_matching_delete;
use crate::graph::{
    validate_batch, BatchError, BatchKind, CoreVector, EdgeBatch, Graph, GraphError,
    ValidationMode, VertexId,
};
use crate::incremental::k_matching_insert;
use crate::search::{group_by_root_core, GroupOutcome, KGroup};

#[derive(Debug, Error)]
pub enum MaintenanceError {
    #[error("expected an {expected} batch, got {found}")]
    KindMismatch {
        expected: BatchKind,
        found: BatchKind,
    },
    #[error("core vector covers {cores} vertices but the graph has {vertices}")]
    CoreLength { cores: usize, vertices: usize },
    #[error("batch no longer matches the graph: {0}")]
    StaleBatch(GraphError),
    #[error(transparent)]
    Batch(#[from] BatchError),
    #[error("vertex {vertex} returned by groups k={first} and k={second}")]
    OverlappingGroups {
        vertex: VertexId,
        first: u32,
        second: u32,
    },
    #[error("cannot build thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    Parallel,
    Sequential,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Engine::Parallel => f.write_str("parallel"),
            Engine::Sequential => f.write_str("sequential"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaintenanceConfig {
    /// Worker threads for the group searches of one iteration.
    pub threads: usize,
    pub coloring: ColoringMode,
}

impl Default for MaintenanceConfig {
    fn default() -> Self {
        MaintenanceConfig {
            threads: 1,
            coloring: ColoringMode::Greedy,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationStats {
    pub edges_processed: usize,
    /// Group searches spawned.
    pub groups: usize,
    pub changed_vertices: usize,
    /// Vertices marked visited, summed over groups.
    pub visited_vertices: usize,
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaintenanceReport {
    pub kind: BatchKind,
    pub engine: Engine,
    pub threads: usize,
    pub batch_size: usize,
    pub batch_degree: usize,
    pub colors_used: usize,
    pub per_iteration: Vec<IterationStats>,
    /// Distinct vertices whose core number changed over the batch.
    pub total_changed: usize,
    pub coloring_time: Duration,
    /// Coloring plus all iterations.
    pub total_time: Duration,
}

impl MaintenanceReport {
    pub fn iterations(&self) -> usize {
        self.per_iteration.len()
    }

    pub fn visited_vertices(&self) -> usize {
        self.per_iteration.iter().map(|i| i.visited_vertices).sum()
    }

    pub(crate) fn empty(
        kind: BatchKind,
        engine: Engine,
        threads: usize,
        batch: &EdgeBatch,
    ) -> Self {
        MaintenanceReport {
            kind,
            engine,
            threads,
            batch_size: batch.len(),
            batch_degree: batch.batch_degree(),
            colors_used: 0,
            per_iteration: Vec::new(),
            total_changed: 0,
            coloring_time: Duration::ZERO,
            total_time: Duration::ZERO,
        }
    }
}

/// Checks that `batch` can be applied to `g` with `cores` as is.
pub(crate) fn check_preconditions(
    g: &Graph,
    cores: &CoreVector,
    batch: &EdgeBatch,
    expected: BatchKind,
) -> Result<(), MaintenanceError> {
    if batch.kind() != expected {
        return Err(MaintenanceError::KindMismatch {
            expected,
            found: batch.kind(),
        });
    }
    if cores.len() != g.num_vertices() {
        return Err(MaintenanceError::CoreLength {
            cores: cores.len(),
            vertices: g.num_vertices(),
        });
    }
    for e in batch.edges() {
        if !g.contains_vertex(e.v) {
            return Err(MaintenanceError::StaleBatch(GraphError::UnknownVertex(e.v)));
        }
        match (expected, g.has_edge(e.u, e.v)) {
            (BatchKind::Insert, true) => {
                return Err(MaintenanceError::StaleBatch(GraphError::DuplicateEdge(
                    e.u, e.v,
                )))
            }
            (BatchKind::Delete, false) => {
                return Err(MaintenanceError::StaleBatch(GraphError::MissingEdge(
                    e.u, e.v,
                )))
            }
            _ => {}
        }
    }
    Ok(())
}

pub(crate) fn build_pool(threads: usize) -> Result<Option<rayon::ThreadPool>, MaintenanceError> {
    if threads <= 1 {
        return Ok(None);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map(Some)
        .map_err(|e| MaintenanceError::ThreadPool(e.to_string()))
}

pub(crate) fn search_group(
    g: &Graph,
    cores: &CoreVector,
    group: &KGroup,
    kind: BatchKind,
) -> GroupOutcome {
    match kind {
        BatchKind::Insert => k_matching_insert(g, cores, group),
        BatchKind::Delete => k_matching_delete(g, cores, group),
    }
}

/// Merges group results and shifts each returned vertex's core by one.
/// Returns the number of changed vertices.
pub(crate) fn apply_outcomes(
    cores: &mut CoreVector,
    outcomes: &[GroupOutcome],
    kind: BatchKind,
    changed: &mut HashSet<VertexId>,
) -> Result<usize, MaintenanceError> {
    let mut owner: HashMap<VertexId, u32> = HashMap::new();
    for out in outcomes {
        for &v in &out.changed {
            if let Some(first) = owner.insert(v, out.k) {
                return Err(MaintenanceError::OverlappingGroups {
                    vertex: v,
                    first,
                    second: out.k,
                });
            }
        }
    }
    for out in outcomes {
        for &v in &out.changed {
            debug_assert_eq!(cores[v], out.k);
            match kind {
                BatchKind::Insert => cores.increment(v),
                BatchKind::Delete => cores.decrement(v),
            }
            changed.insert(v);
        }
    }
    Ok(owner.len())
}

pub(crate) fn run_matchings(
    g: &mut Graph,
    cores: &mut CoreVector,
    batch: &EdgeBatch,
    config: &MaintenanceConfig,
    kind: BatchKind,
) -> Result<MaintenanceReport, MaintenanceError> {
    check_preconditions(g, cores, batch, kind)?;
    let threads = config.threads.max(1);
    let mut report = MaintenanceReport::empty(kind, Engine::Parallel, threads, batch);
    if batch.is_empty() {
        return Ok(report);
    }
    let pool = build_pool(threads)?;

    let start = Instant::now();
    let schedule = color_batch(batch, config.coloring);
    report.coloring_time = start.elapsed();
    report.colors_used = schedule.colors_used();

    let mut changed = HashSet::new();
    for class in schedule.classes() {
        let t0 = Instant::now();
        for e in class {
            let res = match kind {
                BatchKind::Insert => g.add_edge(e.u, e.v),
                BatchKind::Delete => g.remove_edge(e.u, e.v),
            };
            res.map_err(MaintenanceError::StaleBatch)?;
        }
        let groups = group_by_root_core(class, cores);

        let snapshot_g: &Graph = g;
        let snapshot_c: &CoreVector = cores;
        let outcomes: Vec<GroupOutcome> = match &pool {
            Some(pool) if groups.len() > 1 => pool.install(|| {
                groups
                    .par_iter()
                    .map(|grp| search_group(snapshot_g, snapshot_c, grp, kind))
                    .collect()
            }),
            _ => groups
                .iter()
                .map(|grp| search_group(snapshot_g, snapshot_c, grp, kind))
                .collect(),
        };

        let visited = outcomes.iter().map(|o| o.visited.len()).sum();
        let n_changed = apply_outcomes(cores, &outcomes, kind, &mut changed)?;
        report.per_iteration.push(IterationStats {
            edges_processed: class.len(),
            groups: groups.len(),
            changed_vertices: n_changed,
            visited_vertices: visited,
            wall_time: t0.elapsed(),
        });
    }
    report.total_changed = changed.len();
    report.total_time = start.elapsed();
    Ok(report)
}

/// A graph together with its maintained core numbers.
#[derive(Debug, Clone)]
pub struct DynamicCores {
    graph: Graph,
    cores: CoreVector,
    config: MaintenanceConfig,
}

impl DynamicCores {
    /// Takes ownership of `graph` and decomposes it.
    pub fn new(graph: Graph, config: MaintenanceConfig) -> Self {
        let cores = crate::decomposition::compute_cores(&graph);
        DynamicCores {
            graph,
            cores,
            config,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cores(&self) -> &CoreVector {
        &self.cores
    }

    pub fn config(&self) -> &MaintenanceConfig {
        &self.config
    }

    pub fn into_parts(self) -> (Graph, CoreVector) {
        (self.graph, self.cores)
    }

    /// New isolated vertex with core number 0. Its edges are then added
    /// with [`DynamicCores::insert_edges`].
    pub fn add_vertex(&mut self) -> VertexId {
        self.cores.push_isolated();
        self.graph.add_vertex()
    }

    pub fn insert_edges<I>(
        &mut self,
        edges: I,
        mode: ValidationMode,
    ) -> Result<MaintenanceReport, MaintenanceError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let batch = validate_batch(&self.graph, BatchKind::Insert, edges, mode)?.batch;
        crate::incremental::matching_insert_batch(
            &mut self.graph,
            &mut self.cores,
            &batch,
            &self.config,
        )
    }

    pub fn delete_edges<I>(
        &mut self,
        edges: I,
        mode: ValidationMode,
    ) -> Result<MaintenanceReport, MaintenanceError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let batch = validate_batch(&self.graph, BatchKind::Delete, edges, mode)?.batch;
        crate::decremental::matching_delete_batch(
            &mut self.graph,
            &mut self.cores,
            &batch,
            &self.config,
        )
    }
}
