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

//! Core maintenance under edge insertion.
//!
//! Inserting a matching raises every core number by at most one, and only
//! vertices reachable from a root through vertices of the root's core number
//! can rise. Each root-core group is searched independently: a DFS from each
//! root expands vertices whose support counter `cd` (initially the
//! constraint superior degree) exceeds `k`, and a negative DFS evicts
//! vertices whose counter falls to `k`, withdrawing their support from
//! their neighbors. Whatever is visited and never evicted moves to `k + 1`.

use crate::graph::{BatchKind, CoreVector, EdgeBatch, Graph, VertexId};
use crate::maintenance::{run_matchings, MaintenanceConfig, MaintenanceError, MaintenanceReport};
use crate::search::{root_of, GroupOutcome, KGroup, SearchScratch};

/// Inserts `batch` into `g` one matching at a time and keeps `cores`
/// exact. Groups of one iteration run on `config.threads` workers.
pub fn matching_insert_batch(
    g: &mut Graph,
    cores: &mut CoreVector,
    batch: &EdgeBatch,
    config: &MaintenanceConfig,
) -> Result<MaintenanceReport, MaintenanceError> {
    run_matchings(g, cores, batch, config, BatchKind::Insert)
}

/// Vertices of core `group.k` that join a `(k + 1)`-core once the group's
/// edges are in `g`. Both `g` and `cores` are read-only snapshots; `g`
/// already holds the whole current matching.
pub fn k_matching_insert(g: &Graph, cores: &CoreVector, group: &KGroup) -> GroupOutcome {
    let mut scratch = SearchScratch::new();
    search_insert(&mut scratch, g, cores, group);
    GroupOutcome::from_scratch(group.k, &scratch, false)
}

/// Runs the group search into caller-provided scratch.
pub fn search_insert(scratch: &mut SearchScratch, g: &Graph, cores: &CoreVector, group: &KGroup) {
    let k = group.k;
    let threshold = k as i64;
    for &e in &group.edges {
        let r = root_of(e, cores);
        debug_assert_eq!(cores[r], k);
        if scratch.is_visited(r) || scratch.is_removed(r) {
            continue;
        }
        // cd may already be negative from evictions of earlier roots
        let csd = scratch.csd(g, cores, r) as i64;
        let cd = scratch.cd(r);
        scratch.set_cd(r, if cd >= 0 { csd } else { cd + csd });
        scratch.set_visited(r);
        scratch.stack.push(r);

        while let Some(v) = scratch.stack.pop() {
            if scratch.cd(v) > threshold {
                for &w in g.neighbors(v) {
                    if cores[w] == k && !scratch.is_visited(w) && scratch.sd(g, cores, w) > k {
                        scratch.stack.push(w);
                        scratch.set_visited(w);
                        let csd = scratch.csd(g, cores, w) as i64;
                        scratch.add_cd(w, csd);
                    }
                }
            } else if !scratch.is_removed(v) {
                insert_remove(scratch, g, cores, k, v);
            }
        }
    }
}

/// Evicts `r` and cascades: each evicted vertex lowers `cd` of its core-`k`
/// neighbors by one, and a neighbor whose counter reaches exactly `k` is
/// evicted in turn.
pub fn insert_remove(
    scratch: &mut SearchScratch,
    g: &Graph,
    cores: &CoreVector,
    k: u32,
    r: VertexId,
) {
    let threshold = k as i64;
    let mut stack = vec![r];
    scratch.set_removed(r);
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if cores[w] == k {
                let cd = scratch.add_cd(w, -1);
                if cd == threshold && !scratch.is_removed(w) {
                    stack.push(w);
                    scratch.set_removed(w);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::compute_cores;
    use crate::graph::{validate_batch, Edge, ValidationMode};

    fn path(n: u32) -> Graph {
        Graph::from_edges(n as usize, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn path_to_cycle_raises_every_vertex() {
        let mut g = path(8);
        let cores = compute_cores(&g);
        g.add_edge(0, 7).unwrap();
        let group = KGroup {
            k: 1,
            edges: vec![Edge::new(0, 7)],
        };
        let out = k_matching_insert(&g, &cores, &group);
        assert_eq!(out.changed, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn pendant_path_closes_into_cycle() {
        // triangle {0, 1, 2} with the path 0-3-4; inserting (4, 1) closes the
        // cycle 0-3-4-1 and lifts 3 and 4 to core 2
        let mut g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4)]).unwrap();
        let cores = compute_cores(&g);
        assert_eq!(cores.as_slice(), &[2, 2, 2, 1, 1]);
        g.add_edge(4, 1).unwrap();
        let out = k_matching_insert(
            &g,
            &cores,
            &KGroup {
                k: 1,
                edges: vec![Edge::new(1, 4)],
            },
        );
        assert_eq!(out.changed, vec![3, 4]);
    }

    #[test]
    fn isolated_vertex_joins_triangle() {
        let mut g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let cores = compute_cores(&g);
        assert_eq!(cores[3], 0);
        g.add_edge(3, 0).unwrap();
        let out = k_matching_insert(
            &g,
            &cores,
            &KGroup {
                k: 0,
                edges: vec![Edge::new(0, 3)],
            },
        );
        assert_eq!(out.changed, vec![3]);
    }

    #[test]
    fn cycle_closure_and_weak_root() {
        // star on 0 with leaves 1, 2, 3 and the tail 3-4, all core 1
        let mut g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        let cores = compute_cores(&g);
        g.add_edge(1, 4).unwrap();
        // closes the 4-cycle 0-1-4-3; the pendant 2 stays at core 1
        let out = k_matching_insert(
            &g,
            &cores,
            &KGroup {
                k: 1,
                edges: vec![Edge::new(1, 4)],
            },
        );
        assert_eq!(out.changed, vec![0, 1, 3, 4]);

        // joining two paths: the root has exactly k supporting neighbors
        let mut g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let cores = compute_cores(&g);
        g.add_edge(1, 2).unwrap();
        let out = k_matching_insert(
            &g,
            &cores,
            &KGroup {
                k: 1,
                edges: vec![Edge::new(1, 2)],
            },
        );
        // root 1: neighbor 0 has SD 1, not > 1; neighbor 2 has SD 2 > 1 -> CSD 1
        assert!(out.changed.is_empty());
        assert_eq!(out.visited, vec![1]);
    }

    #[test]
    fn insert_remove_on_isolated_root() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let cores = CoreVector::new(vec![1, 3, 1]);
        let mut s = SearchScratch::new();
        s.set_visited(2);
        insert_remove(&mut s, &g, &cores, 1, 2);
        assert!(s.is_removed(2));
        assert!(!s.is_removed(0) && !s.is_removed(1));
    }

    #[test]
    fn insert_remove_cascades_down_a_chain() {
        // chain 0-1-2-3-4, all core 1, every cd preset to k + 1 = 2 except
        // the evicted head: each eviction drops the next counter to exactly k
        let g = path(5);
        let cores = compute_cores(&g);
        let mut s = SearchScratch::new();
        for v in 0..5 {
            s.set_visited(v);
            s.set_cd(v, 2);
        }
        insert_remove(&mut s, &g, &cores, 1, 0);
        for v in 0..5 {
            assert!(s.is_removed(v), "vertex {v}");
        }
        // 1 lost 0 and 2 (cd 0); the tail only lost one neighbor (cd 1)
        assert_eq!(s.cd(1), 0);
        assert_eq!(s.cd(4), 1);

        // static check of the same situation: a path never rises to core 2
        let mut g2 = g.clone();
        g2.add_vertex();
        g2.add_edge(0, 5).unwrap();
        assert!(compute_cores(&g2).as_slice().iter().all(|&c| c <= 1));
    }

    #[test]
    fn insert_remove_never_pushes_twice() {
        // triangle of core-2 vertices; removing 0 drops 1 and 2 to k, both
        // evicted once; 1's eviction then lowers 2 again without re-pushing
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let cores = compute_cores(&g);
        let mut s = SearchScratch::new();
        for v in 0..3 {
            s.set_visited(v);
            s.set_cd(v, 3);
        }
        insert_remove(&mut s, &g, &cores, 2, 0);
        assert!((0..3).all(|v| s.is_removed(v)));
        assert_eq!(s.cd(0), 1);
        assert_eq!(s.cd(1), 1);
        assert_eq!(s.cd(2), 1);
    }

    #[test]
    fn batch_on_k4_minus_edge() {
        let mut g = Graph::from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let mut cores = compute_cores(&g);
        let batch = validate_batch(&g, BatchKind::Insert, [(0, 1)], ValidationMode::Strict)
            .unwrap()
            .batch;
        let report =
            matching_insert_batch(&mut g, &mut cores, &batch, &MaintenanceConfig::default())
                .unwrap();
        assert_eq!(cores.as_slice(), &[3, 3, 3, 3]);
        assert_eq!(report.iterations(), 1);
        assert_eq!(report.total_changed, 4);
    }

    #[test]
    fn empty_batch_is_a_no_op() {
        let mut g = path(4);
        let mut cores = compute_cores(&g);
        let before = cores.clone();
        let report = matching_insert_batch(
            &mut g,
            &mut cores,
            &EdgeBatch::empty(BatchKind::Insert),
            &MaintenanceConfig::default(),
        )
        .unwrap();
        assert_eq!(report.iterations(), 0);
        assert_eq!(cores, before);
    }

    #[test]
    fn rejects_delete_batch_and_stale_batch() {
        let mut g = path(4);
        let mut cores = compute_cores(&g);
        let del = validate_batch(&g, BatchKind::Delete, [(0, 1)], ValidationMode::Strict)
            .unwrap()
            .batch;
        assert!(matches!(
            matching_insert_batch(&mut g, &mut cores, &del, &MaintenanceConfig::default()),
            Err(MaintenanceError::KindMismatch { .. })
        ));
        let ins = validate_batch(&g, BatchKind::Insert, [(0, 3)], ValidationMode::Strict)
            .unwrap()
            .batch;
        g.add_edge(0, 3).unwrap();
        let before = g.clone();
        assert!(matches!(
            matching_insert_batch(&mut g, &mut cores, &ins, &MaintenanceConfig::default()),
            Err(MaintenanceError::StaleBatch(_))
        ));
        assert_eq!(g, before);
    }
}
