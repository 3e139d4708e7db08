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

//! Core maintenance under edge deletion. Mirror image of the insertion
//! search, with `cd` tracking a live superior degree: a core-`k` vertex
//! whose counter drops below `k` falls to `k - 1` and withdraws its support
//! from its core-`k` neighbors.

use crate::graph::{BatchKind, CoreVector, EdgeBatch, Graph, VertexId};
use crate::maintenance::{run_matchings, MaintenanceConfig, MaintenanceError, MaintenanceReport};
use crate::search::{root_of, GroupOutcome, KGroup, SearchScratch};

/// Deletes `batch` from `g` one matching at a time and keeps `cores` exact.
pub fn matching_delete_batch(
    g: &mut Graph,
    cores: &mut CoreVector,
    batch: &EdgeBatch,
    config: &MaintenanceConfig,
) -> Result<MaintenanceReport, MaintenanceError> {
    run_matchings(g, cores, batch, config, BatchKind::Delete)
}

/// Vertices of core `group.k` that leave every `k`-core once the group's
/// edges are gone from `g`.
pub fn k_matching_delete(g: &Graph, cores: &CoreVector, group: &KGroup) -> GroupOutcome {
    let mut scratch = SearchScratch::new();
    search_delete(&mut scratch, g, cores, group);
    GroupOutcome::from_scratch(group.k, &scratch, true)
}

pub fn search_delete(scratch: &mut SearchScratch, g: &Graph, cores: &CoreVector, group: &KGroup) {
    let k = group.k;
    for &e in &group.edges {
        if cores[e.u] != cores[e.v] {
            // the higher-core endpoint never counted the lower one
            seed(scratch, g, cores, k, root_of(e, cores));
        } else {
            seed(scratch, g, cores, k, e.u);
            seed(scratch, g, cores, k, e.v);
        }
    }
}

fn seed(scratch: &mut SearchScratch, g: &Graph, cores: &CoreVector, k: u32, r: VertexId) {
    debug_assert_eq!(cores[r], k);
    if !scratch.is_visited(r) {
        scratch.set_visited(r);
        let sd = scratch.sd(g, cores, r) as i64;
        scratch.set_cd(r, sd);
    }
    if !scratch.is_removed(r) && scratch.cd(r) < k as i64 {
        delete_remove(scratch, g, cores, k, r);
    }
}

/// Evicts `r` and cascades over core-`k` neighbors. A neighbor's counter is
/// initialized to its superior degree on first touch and lowered by one per
/// evicted neighbor; it is evicted once the counter drops below `k`.
pub fn delete_remove(
    scratch: &mut SearchScratch,
    g: &Graph,
    cores: &CoreVector,
    k: u32,
    r: VertexId,
) {
    let threshold = k as i64;
    let mut stack = std::mem::take(&mut scratch.stack);
    stack.clear();
    stack.push(r);
    scratch.set_removed(r);
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if cores[w] != k {
                continue;
            }
            if !scratch.is_visited(w) {
                scratch.set_visited(w);
                let sd = scratch.sd(g, cores, w) as i64;
                scratch.add_cd(w, sd);
            }
            let cd = scratch.add_cd(w, -1);
            if cd < threshold && !scratch.is_removed(w) {
                stack.push(w);
                scratch.set_removed(w);
            }
        }
    }
    scratch.stack = stack;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::compute_cores;
    use crate::graph::{validate_batch, Edge, ValidationMode};

    fn cycle(n: u32) -> Graph {
        Graph::from_edges(n as usize, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn delete_one(g: &mut Graph, cores: &CoreVector, a: VertexId, b: VertexId) -> GroupOutcome {
        g.remove_edge(a, b).unwrap();
        let e = Edge::new(a, b);
        let group = KGroup {
            k: cores[a].min(cores[b]),
            edges: vec![e],
        };
        k_matching_delete(g, cores, &group)
    }

    #[test]
    fn cycle_to_path() {
        let mut g = cycle(8);
        let cores = compute_cores(&g);
        let out = delete_one(&mut g, &cores, 0, 7);
        assert_eq!(out.changed, (0..8).collect::<Vec<_>>());
        let mut after = cores.clone();
        for &v in &out.changed {
            after.decrement(v);
        }
        assert_eq!(after, compute_cores(&g));
    }

    #[test]
    fn star_leaf_edge() {
        // star 0 with leaves 1, 2, 3; delete (0, 3)
        let mut g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let cores = compute_cores(&g);
        let out = delete_one(&mut g, &cores, 0, 3);
        assert_eq!(out.changed, vec![3]);
        let expect = compute_cores(&g);
        assert_eq!(expect.as_slice(), &[1, 1, 1, 0]);
    }

    #[test]
    fn well_supported_endpoints_keep_their_core() {
        // K4 on 0..4 plus vertex 4 adjacent to 0, 1, 2: a 3-core in which
        // 0 and 1 keep three superior neighbors after losing (0, 1)
        let mut g = Graph::from_edges(
            5,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (1, 4),
                (2, 4),
            ],
        )
        .unwrap();
        let cores = compute_cores(&g);
        assert_eq!(cores.as_slice(), &[3; 5]);
        let out = delete_one(&mut g, &cores, 0, 1);
        assert!(out.changed.is_empty());
        assert_eq!(compute_cores(&g), cores);
    }

    #[test]
    fn no_core_k_neighbors() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let cores = CoreVector::new(vec![1, 4, 1]);
        let mut s = SearchScratch::new();
        s.set_visited(0);
        delete_remove(&mut s, &g, &cores, 1, 0);
        assert!(s.is_removed(0));
        assert!(!s.is_removed(1) && !s.is_visited(1));
    }

    #[test]
    fn cascade_around_cycle() {
        let mut g = cycle(8);
        let cores = compute_cores(&g);
        g.remove_edge(3, 4).unwrap();
        let mut s = SearchScratch::new();
        s.set_visited(3);
        s.set_cd(3, 1);
        delete_remove(&mut s, &g, &cores, 2, 3);
        assert!((0..8).all(|v| s.is_removed(v)));
        let after = compute_cores(&g);
        assert!(after.as_slice().iter().all(|&c| c == 1));
    }

    #[test]
    fn removed_vertex_not_pushed_again() {
        // triangle, all core 2: evicting 0 touches 1 and 2 (cd 2 -> 1),
        // both evicted; their cascades lower each other again
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let cores = compute_cores(&g);
        let mut s = SearchScratch::new();
        s.set_visited(0);
        s.set_cd(0, 1);
        delete_remove(&mut s, &g, &cores, 2, 0);
        assert!((0..3).all(|v| s.is_removed(v)));
        // 1 and 2 each lost both neighbors; 0 was touched twice after eviction
        assert_eq!(s.cd(1), 0);
        assert_eq!(s.cd(2), 0);
        assert_eq!(s.cd(0), -1);
    }

    #[test]
    fn batch_on_k4() {
        let mut g = Graph::with_vertices(4);
        for a in 0..4 {
            for b in a + 1..4 {
                g.add_edge(a, b).unwrap();
            }
        }
        let mut cores = compute_cores(&g);
        let batch = validate_batch(&g, BatchKind::Delete, [(2, 3)], ValidationMode::Strict)
            .unwrap()
            .batch;
        let report =
            matching_delete_batch(&mut g, &mut cores, &batch, &MaintenanceConfig::default())
                .unwrap();
        assert_eq!(cores.as_slice(), &[2, 2, 2, 2]);
        assert_eq!(report.total_changed, 4);
    }

    #[test]
    fn empty_batch() {
        let mut g = cycle(5);
        let mut cores = compute_cores(&g);
        let report = matching_delete_batch(
            &mut g,
            &mut cores,
            &EdgeBatch::empty(BatchKind::Delete),
            &MaintenanceConfig::default(),
        )
        .unwrap();
        assert_eq!(report.iterations(), 0);
        assert_eq!(cores.as_slice(), &[2; 5]);
    }
}
