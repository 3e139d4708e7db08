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

//! Static k-core decomposition by bucket peeling.

use crate::graph::{CoreVector, Graph, VertexId};

/// Residual degrees plus a degree-sorted vertex array whose bucket
/// boundaries allow constant-time moves between adjacent buckets.
struct PeelState {
    degree: Vec<u32>,
    // vertices sorted by residual degree
    order: Vec<VertexId>,
    // position of each vertex in `order`
    pos: Vec<usize>,
    // start index of each degree bucket in `order`
    bucket_start: Vec<usize>,
}

impl PeelState {
    fn new(g: &Graph) -> Self {
        let n = g.num_vertices();
        let degree: Vec<u32> = g.vertices().map(|v| g.degree(v) as u32).collect();
        let max_deg = degree.iter().copied().max().unwrap_or(0) as usize;

        let mut bucket_start = vec![0usize; max_deg + 2];
        for &d in &degree {
            bucket_start[d as usize + 1] += 1;
        }
        for d in 1..bucket_start.len() {
            bucket_start[d] += bucket_start[d - 1];
        }

        let mut next = bucket_start.clone();
        let mut order = vec![0 as VertexId; n];
        let mut pos = vec![0usize; n];
        for v in 0..n {
            let d = degree[v] as usize;
            pos[v] = next[d];
            order[next[d]] = v as VertexId;
            next[d] += 1;
        }

        PeelState {
            degree,
            order,
            pos,
            bucket_start,
        }
    }

    /// Moves `w` from its bucket into the next lower one by swapping it with
    /// the first vertex of its current bucket.
    fn decrement(&mut self, w: VertexId) {
        let dw = self.degree[w as usize] as usize;
        let pw = self.pos[w as usize];
        let start = self.bucket_start[dw];
        let first = self.order[start];
        if first != w {
            self.order.swap(start, pw);
            self.pos[first as usize] = pw;
            self.pos[w as usize] = start;
        }
        self.bucket_start[dw] += 1;
        self.degree[w as usize] -= 1;
    }
}

/// Core number of every vertex, in time linear in the size of the graph.
pub fn compute_cores(g: &Graph) -> CoreVector {
    let n = g.num_vertices();
    let mut st = PeelState::new(g);
    for i in 0..n {
        let v = st.order[i];
        let dv = st.degree[v as usize];
        for &w in g.neighbors(v) {
            // only unpeeled neighbors sitting in a strictly higher bucket move
            if st.degree[w as usize] > dv {
                st.decrement(w);
            }
        }
    }
    CoreVector::new(st.degree)
}

/// Largest core number, 0 for an empty vector.
pub fn max_core(cores: &CoreVector) -> u32 {
    cores.as_slice().iter().copied().max().unwrap_or(0)
}
