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

//! Edge-at-a-time baseline.
//!
//! Each batch edge is applied alone and followed by its own single-edge
//! search, reusing the group searches with singleton groups. Reports mark
//! the engine as [`Engine::Sequential`]; this is not a reimplementation of
//! any published single-edge traversal algorithm.

use std::collections::HashSet;
use std::time::Instant;

use crate::graph::{BatchKind, CoreVector, EdgeBatch, Graph};
use crate::maintenance::{
    apply_outcomes, check_preconditions, search_group, Engine, IterationStats, MaintenanceError,
    MaintenanceReport,
};
use crate::search::{root_core, KGroup};

pub fn sequential_insert_all(
    g: &mut Graph,
    cores: &mut CoreVector,
    batch: &EdgeBatch,
) -> Result<MaintenanceReport, MaintenanceError> {
    run_sequential(g, cores, batch, BatchKind::Insert)
}

pub fn sequential_delete_all(
    g: &mut Graph,
    cores: &mut CoreVector,
    batch: &EdgeBatch,
) -> Result<MaintenanceReport, MaintenanceError> {
    run_sequential(g, cores, batch, BatchKind::Delete)
}

fn run_sequential(
    g: &mut Graph,
    cores: &mut CoreVector,
    batch: &EdgeBatch,
    kind: BatchKind,
) -> Result<MaintenanceReport, MaintenanceError> {
    check_preconditions(g, cores, batch, kind)?;
    let mut report = MaintenanceReport::empty(kind, Engine::Sequential, 1, batch);
    report.colors_used = batch.len();
    let start = Instant::now();
    let mut changed = HashSet::new();
    for &e in batch.edges() {
        let t0 = Instant::now();
        match kind {
            BatchKind::Insert => g.add_edge(e.u, e.v),
            BatchKind::Delete => g.remove_edge(e.u, e.v),
        }
        .map_err(MaintenanceError::StaleBatch)?;
        let group = KGroup {
            k: root_core(e, cores),
            edges: vec![e],
        };
        let outcome = search_group(g, cores, &group, kind);
        let visited = outcome.visited.len();
        let n = apply_outcomes(cores, std::slice::from_ref(&outcome), kind, &mut changed)?;
        report.per_iteration.push(IterationStats {
            edges_processed: 1,
            groups: 1,
            changed_vertices: n,
            visited_vertices: visited,
            wall_time: t0.elapsed(),
        });
    }
    report.total_changed = changed.len();
    report.total_time = start.elapsed();
    Ok(report)
}
