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

use kcore_bench::parse_edgelist;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(lg) = parse_edgelist(data) else {
        return;
    };
    let g = &lg.graph;
    assert_eq!(g.num_vertices(), lg.labels.len());
    let mut total = 0;
    for v in g.vertices() {
        let nbrs = g.neighbors(v);
        assert!(nbrs.windows(2).all(|w| w[0] < w[1]));
        assert!(nbrs.iter().all(|&w| w != v && g.has_edge(w, v)));
        assert_eq!(lg.labels.id(lg.labels.label(v).unwrap()), Some(v));
        total += nbrs.len();
    }
    assert_eq!(total, 2 * g.num_edges());
});
