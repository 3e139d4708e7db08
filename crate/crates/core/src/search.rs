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

//! State shared by the insertion and deletion searches: root-core groups,
//! task-private scratch, and the superior-degree measures.

use std::collections::HashMap;

use crate::graph::{CoreVector, Edge, Graph, VertexId};

/// The endpoint with the smaller core number; the smaller id on a tie.
pub fn root_of(e: Edge, cores: &CoreVector) -> VertexId {
    let (cu, cv) = (cores[e.u], cores[e.v]);
    if cu < cv || (cu == cv && e.u < e.v) {
        e.u
    } else {
        e.v
    }
}

/// Root core number `min(core(u), core(v))` of an edge.
pub fn root_core(e: Edge, cores: &CoreVector) -> u32 {
    cores[e.u].min(cores[e.v])
}

/// Edges of one matching whose roots share the core number `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KGroup {
    pub k: u32,
    pub edges: Vec<Edge>,
}

/// Splits a matching into groups keyed by root core, in ascending `k`. Edges
/// keep their relative order inside a group.
pub fn group_by_root_core(class: &[Edge], cores: &CoreVector) -> Vec<KGroup> {
    let mut groups: std::collections::BTreeMap<u32, Vec<Edge>> = Default::default();
    for &e in class {
        groups.entry(root_core(e, cores)).or_default().push(e);
    }
    groups
        .into_iter()
        .map(|(k, edges)| KGroup { k, edges })
        .collect()
}

/// Number of neighbors `v` of `u` with `core(v) >= core(u)`.
pub fn superior_degree(g: &Graph, cores: &CoreVector, u: VertexId) -> u32 {
    let k = cores[u];
    g.neighbors(u).iter().filter(|&&v| cores[v] >= k).count() as u32
}

/// Number of neighbors `w` of `u` with `core(w) > core(u)`, or with
/// `core(w) == core(u)` and a superior degree above `core(u)`.
///
/// Superior degrees of equal-core neighbors are looked up through
/// `sd_cache`, which memoizes them.
pub fn constraint_superior_degree(
    g: &Graph,
    cores: &CoreVector,
    u: VertexId,
    sd_cache: &mut SdCache,
) -> u32 {
    let k = cores[u];
    let mut count = 0;
    for &w in g.neighbors(u) {
        let cw = cores[w];
        if cw > k || (cw == k && sd_cache.get(g, cores, w) > k) {
            count += 1;
        }
    }
    count
}

/// Memoized superior degrees.
#[derive(Debug, Default, Clone)]
pub struct SdCache {
    values: HashMap<VertexId, u32>,
}

impl SdCache {
    pub fn get(&mut self, g: &Graph, cores: &CoreVector, v: VertexId) -> u32 {
        *self
            .values
            .entry(v)
            .or_insert_with(|| superior_degree(g, cores, v))
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct Slot {
    visited: bool,
    removed: bool,
    cd: i64,
    csd: Option<u32>,
}

/// Per-task search state, keyed sparsely by vertex so that a task only pays
/// for the vertices it touches.
#[derive(Debug, Default, Clone)]
pub struct SearchScratch {
    slots: HashMap<VertexId, Slot>,
    sd: SdCache,
    pub(crate) stack: Vec<VertexId>,
}

impl SearchScratch {
    pub fn new() -> Self {
        Self::default()
    }

    fn slot(&mut self, v: VertexId) -> &mut Slot {
        self.slots.entry(v).or_default()
    }

    pub fn is_visited(&self, v: VertexId) -> bool {
        self.slots.get(&v).is_some_and(|s| s.visited)
    }

    pub fn is_removed(&self, v: VertexId) -> bool {
        self.slots.get(&v).is_some_and(|s| s.removed)
    }

    /// Current support counter of `v`; 0 if never touched.
    pub fn cd(&self, v: VertexId) -> i64 {
        self.slots.get(&v).map_or(0, |s| s.cd)
    }

    pub(crate) fn set_visited(&mut self, v: VertexId) {
        self.slot(v).visited = true;
    }

    pub(crate) fn set_removed(&mut self, v: VertexId) {
        self.slot(v).removed = true;
    }

    pub(crate) fn set_cd(&mut self, v: VertexId, cd: i64) {
        self.slot(v).cd = cd;
    }

    pub(crate) fn add_cd(&mut self, v: VertexId, delta: i64) -> i64 {
        let s = self.slot(v);
        s.cd += delta;
        s.cd
    }

    pub(crate) fn sd(&mut self, g: &Graph, cores: &CoreVector, v: VertexId) -> u32 {
        self.sd.get(g, cores, v)
    }

    /// Memoized with an explicit computed flag, since 0 is a legitimate value.
    pub(crate) fn csd(&mut self, g: &Graph, cores: &CoreVector, v: VertexId) -> u32 {
        if let Some(c) = self.slots.get(&v).and_then(|s| s.csd) {
            return c;
        }
        let c = constraint_superior_degree(g, cores, v, &mut self.sd);
        self.slot(v).csd = Some(c);
        c
    }

    /// Vertices marked visited, in unspecified order.
    pub fn visited(&self) -> Vec<VertexId> {
        self.slots
            .iter()
            .filter(|(_, s)| s.visited)
            .map(|(&v, _)| v)
            .collect()
    }

    /// Sorted vertices that are visited and whose removal flag equals
    /// `removed`.
    pub(crate) fn collect(&self, removed: bool) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self
            .slots
            .iter()
            .filter(|(_, s)| s.visited && s.removed == removed)
            .map(|(&v, _)| v)
            .collect();
        out.sort_unstable();
        out
    }
}

/// Result of one root-core group search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupOutcome {
    pub k: u32,
    /// Sorted vertices whose core number changes by one.
    pub changed: Vec<VertexId>,
    /// Every vertex the search marked visited.
    pub visited: Vec<VertexId>,
}

impl GroupOutcome {
    pub(crate) fn from_scratch(k: u32, scratch: &SearchScratch, removed: bool) -> Self {
        GroupOutcome {
            k,
            changed: scratch.collect(removed),
            visited: scratch.visited(),
        }
    }
}
