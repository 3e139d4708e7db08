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

//! Synthetic graphs (Erdős–Rényi, Barabási–Albert, R-MAT) and update
//! batches.
//!
//! All randomness comes from ChaCha8 seeded with a `u64` through
//! `SeedableRng::seed_from_u64`, so every graph and batch is reproducible
//! bit for bit across platforms.
//!
//! The `degree` parameter counts edges per vertex: a generated graph has
//! about `nodes * degree` edges (mean vertex degree `2 * degree`), and a
//! Barabási–Albert vertex attaches with `degree` edges.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{BatchKind, CoreVector, Edge, EdgeBatch, Graph, VertexId};

/// Attempts per R-MAT edge before a colliding sample is dropped.
pub const RMAT_RETRY_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WorkloadError {
    #[error("need at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("{requested} edges requested but a simple graph on {nodes} nodes has at most {max}")]
    InfeasibleDegree {
        nodes: usize,
        requested: u64,
        max: u64,
    },
    #[error("invalid R-MAT probabilities: {0}")]
    InvalidProbabilities(String),
    #[error("fraction {0} is outside [0, 1]")]
    InvalidFraction(f64),
    #[error("{requested} edges requested but only {available} are available")]
    PopulationTooSmall { requested: usize, available: u64 },
    #[error("no edges with root core {0}")]
    EmptyCorePopulation(u32),
    #[error("core vector covers {cores} vertices but the graph has {vertices}")]
    CoreLength { cores: usize, vertices: usize },
    #[error("could not draw {requested} non-edges with root core {k} after {attempts} attempts")]
    SamplingExhausted {
        k: u32,
        requested: usize,
        attempts: u64,
    },
}

/// R-MAT quadrant probabilities `(a, b, c, d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RmatProbs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Default for RmatProbs {
    fn default() -> Self {
        RmatProbs {
            a: 0.57,
            b: 0.19,
            c: 0.19,
            d: 0.05,
        }
    }
}

impl RmatProbs {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, WorkloadError> {
        let p = RmatProbs { a, b, c, d };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), WorkloadError> {
        let all = [self.a, self.b, self.c, self.d];
        if all.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(WorkloadError::InvalidProbabilities(format!(
                "{self} has a negative or non-finite entry"
            )));
        }
        let sum: f64 = all.iter().sum();
        if (sum - 1.0).abs() > 1e-6 {
            return Err(WorkloadError::InvalidProbabilities(format!(
                "{self} sums to {sum}, not 1"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for RmatProbs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for RmatProbs {
    type Err = WorkloadError;

    /// Parses `a,b,c,d`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(WorkloadError::InvalidProbabilities(format!(
                "expected four comma-separated values, got `{s}`"
            )));
        }
        let mut v = [0.0f64; 4];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p.parse().map_err(|_| {
                WorkloadError::InvalidProbabilities(format!("`{p}` is not a number"))
            })?;
        }
        RmatProbs::new(v[0], v[1], v[2], v[3])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphModel {
    ErdosRenyi,
    BarabasiAlbert,
    Rmat(RmatProbs),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub model: GraphModel,
    pub nodes: usize,
    /// Edges per vertex.
    pub degree: u32,
    pub seed: u64,
}

impl GenSpec {
    pub fn target_edges(&self) -> u64 {
        self.nodes as u64 * self.degree as u64
    }
}

fn max_edges(n: usize) -> u64 {
    let n = n as u64;
    n * (n.saturating_sub(1)) / 2
}

/// Generates a simple graph for `spec`. Deterministic for a fixed seed.
pub fn generate(spec: &GenSpec) -> Result<Graph, WorkloadError> {
    if spec.nodes < 2 {
        return Err(WorkloadError::TooFewNodes(spec.nodes));
    }
    let requested = spec.target_edges();
    let max = max_edges(spec.nodes);
    if spec.degree as usize >= spec.nodes || requested > max {
        return Err(WorkloadError::InfeasibleDegree {
            nodes: spec.nodes,
            requested,
            max,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let g = match spec.model {
        GraphModel::ErdosRenyi => erdos_renyi(spec.nodes, requested as usize, &mut rng),
        GraphModel::BarabasiAlbert => barabasi_albert(spec.nodes, spec.degree as usize, &mut rng),
        GraphModel::Rmat(p) => {
            p.validate()?;
            rmat(spec.nodes, requested as usize, p, &mut rng)
        }
    };
    Ok(g)
}

/// Uniform `G(n, m)`: pairs drawn uniformly, collisions redrawn.
fn erdos_renyi(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::with_vertices(n);
    while g.num_edges() < m {
        let a = rng.gen_range(0..n) as VertexId;
        let b = rng.gen_range(0..n) as VertexId;
        let _ = g.add_edge(a, b);
    }
    g
}

/// Seed clique on `degree` vertices, then each new vertex attaches to
/// `degree` distinct existing vertices chosen proportionally to degree.
fn barabasi_albert(n: usize, degree: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::with_vertices(n);
    // every edge endpoint, so a uniform pick is degree-proportional
    let mut endpoints: Vec<VertexId> = Vec::with_capacity(2 * n * degree);
    let seed = degree.min(n);
    for a in 0..seed as VertexId {
        for b in a + 1..seed as VertexId {
            g.add_edge(a, b).expect("fresh clique edge");
            endpoints.extend([a, b]);
        }
    }
    let mut targets = Vec::with_capacity(degree);
    for v in seed..n {
        let v = v as VertexId;
        targets.clear();
        let want = degree.min(v as usize);
        while targets.len() < want {
            let t = if endpoints.is_empty() {
                rng.gen_range(0..v)
            } else {
                endpoints[rng.gen_range(0..endpoints.len())]
            };
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            g.add_edge(v, t).expect("distinct targets");
            endpoints.extend([v, t]);
        }
    }
    g
}

fn rmat(n: usize, m: usize, p: RmatProbs, rng: &mut ChaCha8Rng) -> Graph {
    let scale = usize::BITS - (n - 1).leading_zeros();
    let mut g = Graph::with_vertices(n);
    let (ab, abc) = (p.a + p.b, p.a + p.b + p.c);
    for _ in 0..m {
        for _ in 0..RMAT_RETRY_CAP {
            let (mut row, mut col) = (0usize, 0usize);
            for _ in 0..scale {
                let r: f64 = rng.gen();
                row <<= 1;
                col <<= 1;
                if r < p.a {
                } else if r < ab {
                    col |= 1;
                } else if r < abc {
                    row |= 1;
                } else {
                    row |= 1;
                    col |= 1;
                }
            }
            if row < n && col < n && g.add_edge(row as VertexId, col as VertexId).is_ok() {
                break;
            }
        }
    }
    g
}

fn check_fraction(f: f64) -> Result<(), WorkloadError> {
    if !(0.0..=1.0).contains(&f) || f.is_nan() {
        return Err(WorkloadError::InvalidFraction(f));
    }
    Ok(())
}

/// `round(fraction * m)` random edges: existing edges for deletion, uniform
/// non-edges for insertion.
pub fn sample_batch_random(
    g: &Graph,
    fraction: f64,
    kind: BatchKind,
    seed: u64,
) -> Result<EdgeBatch, WorkloadError> {
    check_fraction(fraction)?;
    let size = (fraction * g.num_edges() as f64).round() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = match kind {
        BatchKind::Delete => {
            let all: Vec<Edge> = g.edges().collect();
            index::sample(&mut rng, all.len(), size)
                .into_iter()
                .map(|i| all[i])
                .collect()
        }
        BatchKind::Insert => {
            let available = max_edges(g.num_vertices()) - g.num_edges() as u64;
            if size as u64 > available {
                return Err(WorkloadError::PopulationTooSmall {
                    requested: size,
                    available,
                });
            }
            sample_non_edges(g, size, available, &mut rng)
        }
    };
    Ok(EdgeBatch::from_trusted(kind, edges))
}

fn sample_non_edges(g: &Graph, size: usize, available: u64, rng: &mut ChaCha8Rng) -> Vec<Edge> {
    if size as u64 * 2 > available {
        // dense request: enumerate the complement
        let n = g.num_vertices() as VertexId;
        let mut all = Vec::with_capacity(available as usize);
        for a in 0..n {
            for b in a + 1..n {
                if !g.has_edge(a, b) {
                    all.push(Edge::new(a, b));
                }
            }
        }
        return index::sample(rng, all.len(), size)
            .into_iter()
            .map(|i| all[i])
            .collect();
    }
    let n = g.num_vertices();
    let mut chosen = HashSet::with_capacity(size);
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let a = rng.gen_range(0..n) as VertexId;
        let b = rng.gen_range(0..n) as VertexId;
        if a == b || g.has_edge(a, b) {
            continue;
        }
        let e = Edge::new(a, b);
        if chosen.insert(e) {
            out.push(e);
        }
    }
    out
}

/// Edges with root core `k`.
///
/// The population is always the existing edges with
/// `min(core(u), core(v)) == k`, and the batch has
/// `round(fraction * population)` edges. Deletion draws from that
/// population; insertion draws the same number of uniform non-edges whose
/// root core is `k`.
pub fn sample_batch_by_core(
    g: &Graph,
    cores: &CoreVector,
    k: u32,
    fraction: f64,
    kind: BatchKind,
    seed: u64,
) -> Result<EdgeBatch, WorkloadError> {
    check_fraction(fraction)?;
    if cores.len() != g.num_vertices() {
        return Err(WorkloadError::CoreLength {
            cores: cores.len(),
            vertices: g.num_vertices(),
        });
    }
    let population: Vec<Edge> = g
        .edges()
        .filter(|e| cores[e.u].min(cores[e.v]) == k)
        .collect();
    if population.is_empty() {
        return Err(WorkloadError::EmptyCorePopulation(k));
    }
    let size = (fraction * population.len() as f64).round() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = match kind {
        BatchKind::Delete => index::sample(&mut rng, population.len(), size)
            .into_iter()
            .map(|i| population[i])
            .collect(),
        BatchKind::Insert => sample_core_non_edges(g, cores, k, size, &mut rng)?,
    };
    Ok(EdgeBatch::from_trusted(kind, edges))
}

/// Uniform non-edges among pairs with root core `k`, by rejection over
/// pairs of vertices with core at least `k`.
fn sample_core_non_edges(
    g: &Graph,
    cores: &CoreVector,
    k: u32,
    size: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Edge>, WorkloadError> {
    let pool: Vec<VertexId> = g.vertices().filter(|&v| cores[v] >= k).collect();
    let exact = pool.iter().filter(|&&v| cores[v] == k).count() as u64;
    let p = pool.len() as u64;
    // pairs with at least one endpoint at exactly k
    let pairs = max_edges(p as usize) - max_edges((p - exact) as usize);
    let present = g
        .edges()
        .filter(|e| cores[e.u].min(cores[e.v]) == k)
        .count() as u64;
    let available = pairs - present;
    if size as u64 > available {
        return Err(WorkloadError::PopulationTooSmall {
            requested: size,
            available,
        });
    }
    let budget = 1000 * size as u64 + 10_000;
    let mut attempts = 0u64;
    let mut chosen = HashSet::with_capacity(size);
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        attempts += 1;
        if attempts > budget {
            return Err(WorkloadError::SamplingExhausted {
                k,
                requested: size,
                attempts: budget,
            });
        }
        let a = pool[rng.gen_range(0..pool.len())];
        let b = pool[rng.gen_range(0..pool.len())];
        if a == b || cores[a].min(cores[b]) != k || g.has_edge(a, b) {
            continue;
        }
        let e = Edge::new(a, b);
        if chosen.insert(e) {
            out.push(e);
        }
    }
    Ok(out)
}
