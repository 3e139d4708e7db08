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

#![no_main]

//! Input: an edge list, a line `%`, then update pairs. The update pairs
//! are inserted and then deleted again; every step is checked against a
//! fresh decomposition.

use kcore_bench::{parse_edgelist, parse_updates};
use kcore_maint::{
    compute_cores, matching_delete_batch, matching_insert_batch, sequential_insert_all,
    validate_batch, BatchKind, ColoringMode, MaintenanceConfig, ValidationMode,
};
use libfuzzer_sys::fuzz_target;

const MAX_VERTICES: usize = 512;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    let (graph_part, update_part) = text.split_once("\n%\n").unwrap_or((&text, ""));
    let Ok(lg) = parse_edgelist(graph_part.as_bytes()) else {
        return;
    };
    let Ok(updates) = parse_updates(update_part.as_bytes()) else {
        return;
    };
    let mut g = lg.graph;
    if g.num_vertices() < 2 || g.num_vertices() > MAX_VERTICES {
        return;
    }
    let n = g.num_vertices() as u64;
    let pairs: Vec<(u32, u32)> = updates
        .iter()
        .map(|&(a, b)| ((a % n) as u32, (b % n) as u32))
        .collect();
    let Ok(ins) = validate_batch(&g, BatchKind::Insert, pairs, ValidationMode::Lenient) else {
        return;
    };
    let ins = ins.batch;

    let original = compute_cores(&g);
    let coloring = if data.len() % 2 == 0 {
        ColoringMode::Greedy
    } else {
        ColoringMode::DeltaPlusOne
    };
    let cfg = MaintenanceConfig {
        threads: 2,
        coloring,
    };

    let (mut g2, mut c2) = (g.clone(), original.clone());
    sequential_insert_all(&mut g2, &mut c2, &ins).unwrap();

    let mut cores = original.clone();
    matching_insert_batch(&mut g, &mut cores, &ins, &cfg).unwrap();
    assert_eq!(cores, compute_cores(&g));
    assert_eq!(cores, c2);

    let back: Vec<_> = ins.edges().iter().map(|e| (e.u, e.v)).collect();
    let del = validate_batch(&g, BatchKind::Delete, back, ValidationMode::Strict)
        .unwrap()
        .batch;
    matching_delete_batch(&mut g, &mut cores, &del, &cfg).unwrap();
    assert_eq!(cores, compute_cores(&g));
    assert_eq!(cores, original);
});
