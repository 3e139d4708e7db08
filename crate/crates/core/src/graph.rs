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

//! Dynamic undirected simple graph and the per-vertex core numbers that the
//! maintenance algorithms keep up to date.

use std::collections::HashMap;
use std::fmt;
use std::ops::Index;

use thiserror::Error;

/// Dense vertex index in `[0, n)`.
pub type VertexId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge ({0}, {1}) is already present")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge ({0}, {1}) is not present")]
    MissingEdge(VertexId, VertexId),
    #[error("vertex {0} is out of range")]
    UnknownVertex(VertexId),
}

/// An undirected edge stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    /// Normalizes the endpoint order. Self-loops are representable here and
    /// rejected by the graph and batch validation.
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

impl From<(VertexId, VertexId)> for Edge {
    fn from((a, b): (VertexId, VertexId)) -> Self {
        Edge::new(a, b)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// Undirected simple graph with sorted adjacency lists.
///
/// Membership tests are binary searches; insertions and removals shift the
/// neighbor list of each endpoint. Mutation is rare compared to neighbor
/// scans in the maintenance searches.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    m: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with `n` isolated vertices.
    pub fn with_vertices(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list, failing on the first self-loop or
    /// duplicate. Vertex count grows to cover every endpoint.
    pub fn from_edges<I, E>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        let mut g = Graph::with_vertices(n);
        for e in edges {
            let e = e.into();
            g.add_edge(e.u, e.v)?;
        }
        Ok(g)
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.m
    }

    /// Appends an isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> VertexId {
        self.adj.push(Vec::new());
        (self.adj.len() - 1) as VertexId
    }

    /// Grows the vertex set so that `v` is a valid id.
    pub fn ensure_vertex(&mut self, v: VertexId) {
        let needed = v as usize + 1;
        if self.adj.len() < needed {
            self.adj.resize_with(needed, Vec::new);
        }
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        (v as usize) < self.adj.len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        match self.adj.get(u as usize) {
            Some(nbrs) => nbrs.binary_search(&v).is_ok(),
            None => false,
        }
    }

    /// Inserts the undirected edge `(u, v)`, growing the vertex set if either
    /// endpoint is new.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.ensure_vertex(u.max(v));
        let pos_u = match self.adj[u as usize].binary_search(&v) {
            Ok(_) => {
                let e = Edge::new(u, v);
                return Err(GraphError::DuplicateEdge(e.u, e.v));
            }
            Err(p) => p,
        };
        self.adj[u as usize].insert(pos_u, v);
        let pos_v = self.adj[v as usize]
            .binary_search(&u)
            .expect_err("adjacency lost symmetry");
        self.adj[v as usize].insert(pos_v, u);
        self.m += 1;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        let e = Edge::new(u, v);
        if !self.contains_vertex(u) || !self.contains_vertex(v) || u == v {
            return Err(GraphError::MissingEdge(e.u, e.v));
        }
        let pos_u = self.adj[u as usize]
            .binary_search(&v)
            .map_err(|_| GraphError::MissingEdge(e.u, e.v))?;
        self.adj[u as usize].remove(pos_u);
        let pos_v = self.adj[v as usize]
            .binary_search(&u)
            .expect("adjacency lost symmetry");
        self.adj[v as usize].remove(pos_v);
        self.m -= 1;
        Ok(())
    }

    /// Sorted neighbor list of `u`.
    ///
    /// Panics if `u` is not a vertex of the graph.
    pub fn neighbors(&self, u: VertexId) -> &[VertexId] {
        &self.adj[u as usize]
    }

    pub fn degree(&self, u: VertexId) -> usize {
        self.adj[u as usize].len()
    }

    /// Every edge once, in `(u, v)` order with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            let u = u as VertexId;
            nbrs.iter()
                .filter(move |&&v| v > u)
                .map(move |&v| Edge { u, v })
        })
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.adj.len() as VertexId
    }
}

/// Core number of every vertex.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CoreVector(Vec<u32>);

impl CoreVector {
    pub fn new(cores: Vec<u32>) -> Self {
        CoreVector(cores)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: VertexId) -> u32 {
        self.0[v as usize]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    /// Registers a freshly added vertex, whose core number is 0.
    pub fn push_isolated(&mut self) {
        self.0.push(0);
    }

    pub(crate) fn increment(&mut self, v: VertexId) {
        self.0[v as usize] += 1;
    }

    pub(crate) fn decrement(&mut self, v: VertexId) {
        self.0[v as usize] -= 1;
    }

    /// Number of vertices at each core number, indexed by core number.
    pub fn histogram(&self) -> Vec<usize> {
        let max = self.0.iter().copied().max().unwrap_or(0) as usize;
        let mut hist = vec![0usize; if self.0.is_empty() { 0 } else { max + 1 }];
        for &c in &self.0 {
            hist[c as usize] += 1;
        }
        hist
    }

    /// First vertex where the two vectors disagree.
    pub fn first_difference(&self, other: &CoreVector) -> Option<VertexId> {
        if self.0.len() != other.0.len() {
            return Some(self.0.len().min(other.0.len()) as VertexId);
        }
        self.0
            .iter()
            .zip(&other.0)
            .position(|(a, b)| a != b)
            .map(|i| i as VertexId)
    }
}

impl Index<VertexId> for CoreVector {
    type Output = u32;

    fn index(&self, v: VertexId) -> &u32 {
        &self.0[v as usize]
    }
}

impl From<Vec<u32>> for CoreVector {
    fn from(v: Vec<u32>) -> Self {
        CoreVector(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BatchKind {
    Insert,
    Delete,
}

impl fmt::Display for BatchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BatchKind::Insert => f.write_str("insert"),
            BatchKind::Delete => f.write_str("delete"),
        }
    }
}

/// Validated set of edges to insert into or delete from a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeBatch {
    kind: BatchKind,
    edges: Vec<Edge>,
    batch_degree: usize,
}

impl EdgeBatch {
    pub fn empty(kind: BatchKind) -> Self {
        EdgeBatch {
            kind,
            edges: Vec::new(),
            batch_degree: 0,
        }
    }

    /// Caller guarantees the edges are distinct, loop-free and consistent
    /// with `kind` against the graph they will be applied to.
    pub(crate) fn from_trusted(kind: BatchKind, edges: Vec<Edge>) -> Self {
        let batch_degree = batch_degree(&edges);
        EdgeBatch {
            kind,
            edges,
            batch_degree,
        }
    }

    pub fn kind(&self) -> BatchKind {
        self.kind
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Maximum number of batch edges incident to one vertex.
    pub fn batch_degree(&self) -> usize {
        self.batch_degree
    }
}

fn batch_degree(edges: &[Edge]) -> usize {
    let mut counts: HashMap<VertexId, usize> = HashMap::new();
    for e in edges {
        *counts.entry(e.u).or_default() += 1;
        *counts.entry(e.v).or_default() += 1;
    }
    counts.values().copied().max().unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValidationMode {
    /// Any rejected edge aborts validation.
    #[default]
    Strict,
    /// Rejected edges are dropped and reported.
    Lenient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeProblem {
    SelfLoop,
    UnknownVertex,
    AlreadyPresent,
    Absent,
}

impl fmt::Display for EdgeProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EdgeProblem::SelfLoop => "self-loop",
            EdgeProblem::UnknownVertex => "endpoint is not a vertex of the graph",
            EdgeProblem::AlreadyPresent => "edge already present",
            EdgeProblem::Absent => "edge not present",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeIssue {
    pub edge: (VertexId, VertexId),
    pub problem: EdgeProblem,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} batch rejected: {} invalid edge(s), first {} is {}", issues.len(), fmt_pair(issues[0].edge), issues[0].problem)]
pub struct BatchError {
    pub kind: BatchKind,
    pub issues: Vec<EdgeIssue>,
}

fn fmt_pair((a, b): (VertexId, VertexId)) -> String {
    format!("({a}, {b})")
}

/// Result of [`validate_batch`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedBatch {
    pub batch: EdgeBatch,
    /// Repeated pairs dropped in both modes; the first occurrence is kept.
    pub duplicates: Vec<Edge>,
    /// Edges dropped in lenient mode. Always empty in strict mode.
    pub rejected: Vec<EdgeIssue>,
}

/// Checks raw edge pairs against `g` and builds an [`EdgeBatch`].
///
/// Duplicate pairs (in either orientation) are dropped and reported. Self
/// loops, unknown endpoints, inserts of present edges and deletes of absent
/// edges are collected; strict mode fails with the whole list, lenient mode
/// drops them.
pub fn validate_batch<I>(
    g: &Graph,
    kind: BatchKind,
    raw_edges: I,
    mode: ValidationMode,
) -> Result<ValidatedBatch, BatchError>
where
    I: IntoIterator<Item = (VertexId, VertexId)>,
{
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    let mut duplicates = Vec::new();
    let mut issues = Vec::new();

    for (a, b) in raw_edges {
        let problem = if a == b {
            Some(EdgeProblem::SelfLoop)
        } else if !g.contains_vertex(a) || !g.contains_vertex(b) {
            Some(EdgeProblem::UnknownVertex)
        } else {
            match (kind, g.has_edge(a, b)) {
                (BatchKind::Insert, true) => Some(EdgeProblem::AlreadyPresent),
                (BatchKind::Delete, false) => Some(EdgeProblem::Absent),
                _ => None,
            }
        };
        if let Some(problem) = problem {
            issues.push(EdgeIssue {
                edge: (a, b),
                problem,
            });
            continue;
        }
        let e = Edge::new(a, b);
        if seen.insert(e) {
            edges.push(e);
        } else {
            duplicates.push(e);
        }
    }

    if mode == ValidationMode::Strict && !issues.is_empty() {
        return Err(BatchError { kind, issues });
    }
    Ok(ValidatedBatch {
        batch: EdgeBatch::from_trusted(kind, edges),
        duplicates,
        rejected: issues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn triangle() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn add_single_edge() {
        let mut g = Graph::with_vertices(2);
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.degree(1), 1);
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn duplicate_edge_rejected() {
        let mut g = Graph::with_vertices(2);
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.add_edge(1, 0), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn self_loop_rejected() {
        let mut g = Graph::with_vertices(4);
        assert_eq!(g.add_edge(3, 3), Err(GraphError::SelfLoop(3)));
        assert_eq!(g.num_edges(), 0);
    }

    #[test]
    fn add_edge_grows_vertex_set() {
        let mut g = Graph::new();
        g.add_edge(2, 5).unwrap();
        assert_eq!(g.num_vertices(), 6);
        assert_eq!(g.degree(3), 0);
    }

    #[test]
    fn remove_inverse_of_add() {
        let mut g = Graph::with_vertices(2);
        g.add_edge(0, 1).unwrap();
        g.remove_edge(1, 0).unwrap();
        assert_eq!(g.num_edges(), 0);
        assert!(g.neighbors(0).is_empty());
    }

    #[test]
    fn remove_absent_edge() {
        let mut g = Graph::with_vertices(3);
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.remove_edge(0, 2), Err(GraphError::MissingEdge(0, 2)));
        assert_eq!(g.remove_edge(0, 9), Err(GraphError::MissingEdge(0, 9)));
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn add_then_remove_random_edges_restores_graph() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut g = Graph::with_vertices(40);
        for _ in 0..60 {
            let (a, b) = (rng.gen_range(0..40), rng.gen_range(0..40));
            let _ = g.add_edge(a, b);
        }
        let before = g.clone();
        let mut added = Vec::new();
        while added.len() < 100 {
            let (a, b) = (rng.gen_range(0..40), rng.gen_range(0..40));
            if g.add_edge(a, b).is_ok() {
                added.push((a, b));
            }
        }
        for (a, b) in added.into_iter().rev() {
            g.remove_edge(a, b).unwrap();
        }
        // replay oracle: adjacency sets compared vertex by vertex
        for v in before.vertices() {
            assert_eq!(before.neighbors(v), g.neighbors(v));
        }
        assert_eq!(before, g);
    }

    #[test]
    fn neighbors_of_triangle_and_isolated() {
        let mut g = triangle();
        assert_eq!(g.neighbors(0), &[1, 2]);
        let iso = g.add_vertex();
        assert!(g.neighbors(iso).is_empty());
    }

    #[test]
    fn handshake_on_random_graph() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut g = Graph::with_vertices(100);
        while g.num_edges() < 400 {
            let _ = g.add_edge(rng.gen_range(0..100), rng.gen_range(0..100));
        }
        let total: usize = g.vertices().map(|u| g.neighbors(u).len()).sum();
        assert_eq!(total, 2 * g.num_edges());
        assert_eq!(g.edges().count(), 400);
        for u in g.vertices() {
            let n = g.neighbors(u);
            assert!(n.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn validate_disjoint_pairs() {
        let g = Graph::with_vertices(5);
        let vb = validate_batch(
            &g,
            BatchKind::Insert,
            [(1, 2), (3, 4)],
            ValidationMode::Strict,
        )
        .unwrap();
        assert_eq!(vb.batch.batch_degree(), 1);
        assert_eq!(vb.batch.len(), 2);
    }

    #[test]
    fn validate_star() {
        let g = Graph::with_vertices(4);
        let vb = validate_batch(
            &g,
            BatchKind::Insert,
            [(0, 1), (0, 2), (0, 3)],
            ValidationMode::Strict,
        )
        .unwrap();
        assert_eq!(vb.batch.batch_degree(), 3);
    }

    #[test]
    fn validate_delete_absent_strict_aborts() {
        let g = triangle();
        let err = validate_batch(
            &g,
            BatchKind::Delete,
            [(0, 1), (0, 3)],
            ValidationMode::Strict,
        )
        .unwrap_err();
        assert_eq!(err.issues.len(), 1);
        assert_eq!(err.issues[0].problem, EdgeProblem::UnknownVertex);

        let mut g = triangle();
        g.add_vertex();
        let err =
            validate_batch(&g, BatchKind::Delete, [(0, 3)], ValidationMode::Strict).unwrap_err();
        assert_eq!(err.issues[0].problem, EdgeProblem::Absent);
    }

    #[test]
    fn validate_lenient_collects_and_dedups() {
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        let vb = validate_batch(
            &g,
            BatchKind::Insert,
            [(0, 1), (2, 2), (1, 2), (2, 1), (2, 3)],
            ValidationMode::Lenient,
        )
        .unwrap();
        assert_eq!(vb.batch.edges(), &[Edge::new(1, 2), Edge::new(2, 3)]);
        assert_eq!(vb.duplicates, vec![Edge::new(1, 2)]);
        let problems: Vec<_> = vb.rejected.iter().map(|i| i.problem).collect();
        assert_eq!(
            problems,
            vec![EdgeProblem::AlreadyPresent, EdgeProblem::SelfLoop]
        );
        assert_eq!(vb.batch.batch_degree(), 2);
    }

    #[test]
    fn histogram_counts() {
        let c = CoreVector::new(vec![0, 2, 2, 1]);
        assert_eq!(c.histogram(), vec![1, 1, 2]);
        assert!(CoreVector::default().histogram().is_empty());
    }
}
