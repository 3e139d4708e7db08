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

#![allow(dead_code)]

use std::collections::BTreeSet;

use kcore_maint::{
    color_batch, group_by_root_core, k_matching_delete, k_matching_insert, BatchKind, ColoringMode,
    CoreVector, EdgeBatch, Graph,
};

/// Core numbers by repeatedly deleting a minimum-degree vertex and keeping
/// the running maximum of the degrees seen at deletion time. Quadratic, and
/// shares no code with the library's peeling.
pub fn naive_cores(g: &Graph) -> Vec<u32> {
    let n = g.num_vertices();
    let mut adj: Vec<BTreeSet<u32>> = (0..n as u32)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive = vec![true; n];
    let mut out = vec![0u32; n];
    let mut running = 0usize;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (adj[v].len(), v))
            .unwrap();
        running = running.max(adj[v].len());
        out[v] = running as u32;
        alive[v] = false;
        let nbrs: Vec<u32> = adj[v].iter().copied().collect();
        for w in nbrs {
            adj[w as usize].remove(&(v as u32));
        }
        adj[v].clear();
    }
    out
}

/// Observations from replaying a batch one color class at a time against
/// the public group searches.
#[derive(Debug, Default)]
pub struct ClassTrace {
    /// Largest per-vertex core change over any single class, measured
    /// against static recomputation.
    pub max_step: u32,
    /// A visited vertex whose pre-class core differed from its group's k.
    pub confinement_violation: bool,
    /// Two groups of one class returned the same vertex.
    pub overlap: bool,
    /// Group results disagreed with static recomputation.
    pub mismatch: bool,
}

pub fn trace_classes(g: &mut Graph, batch: &EdgeBatch, mode: ColoringMode) -> ClassTrace {
    let mut trace = ClassTrace::default();
    let mut cores = kcore_maint::compute_cores(g);
    for class in color_batch(batch, mode).classes() {
        for e in class {
            match batch.kind() {
                BatchKind::Insert => g.add_edge(e.u, e.v).unwrap(),
                BatchKind::Delete => g.remove_edge(e.u, e.v).unwrap(),
            }
        }
        let mut seen = BTreeSet::new();
        let mut next = cores.clone().into_inner();
        for group in group_by_root_core(class, &cores) {
            let out = match batch.kind() {
                BatchKind::Insert => k_matching_insert(g, &cores, &group),
                BatchKind::Delete => k_matching_delete(g, &cores, &group),
            };
            if out.visited.iter().any(|&v| cores[v] != group.k) {
                trace.confinement_violation = true;
            }
            for &v in &out.changed {
                if !seen.insert(v) {
                    trace.overlap = true;
                }
                let c = &mut next[v as usize];
                match batch.kind() {
                    BatchKind::Insert => *c += 1,
                    BatchKind::Delete => *c -= 1,
                }
            }
        }
        let fresh = kcore_maint::compute_cores(g);
        for v in g.vertices() {
            trace.max_step = trace.max_step.max(fresh[v].abs_diff(cores[v]));
        }
        if fresh.as_slice() != next.as_slice() {
            trace.mismatch = true;
        }
        cores = fresh;
    }
    trace
}

pub fn core_vec(v: Vec<u32>) -> CoreVector {
    CoreVector::from(v)
}
