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

//! Proper edge coloring of an update batch. Each color class is a matching
//! and becomes one maintenance iteration.

use std::collections::{HashMap, HashSet};
use std::str::FromStr;

use crate::graph::{Edge, EdgeBatch, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ColoringMode {
    /// Smallest color free at both endpoints, in input order. At most
    /// `2Δ - 1` colors.
    #[default]
    Greedy,
    /// Misra-Gries fan rotation. At most `Δ + 1` colors.
    DeltaPlusOne,
}

impl FromStr for ColoringMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "greedy" => Ok(ColoringMode::Greedy),
            "delta1" => Ok(ColoringMode::DeltaPlusOne),
            other => Err(format!(
                "unknown coloring mode `{other}` (expected greedy or delta1)"
            )),
        }
    }
}

/// Ordered sequence of matchings partitioning a batch.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatchingSchedule {
    classes: Vec<Vec<Edge>>,
}

impl MatchingSchedule {
    /// Wraps explicit classes; empty classes are dropped. No invariant is
    /// checked here, see [`verify_schedule`].
    pub fn from_classes(classes: Vec<Vec<Edge>>) -> Self {
        MatchingSchedule {
            classes: classes.into_iter().filter(|c| !c.is_empty()).collect(),
        }
    }

    pub fn classes(&self) -> &[Vec<Edge>] {
        &self.classes
    }

    pub fn colors_used(&self) -> usize {
        self.classes.len()
    }
}

/// Partitions the batch into matchings. Classes are ordered by color index
/// and keep the batch's edge order.
pub fn color_batch(batch: &EdgeBatch, mode: ColoringMode) -> MatchingSchedule {
    let colors = match mode {
        ColoringMode::Greedy => greedy_colors(batch.edges()),
        ColoringMode::DeltaPlusOne => MisraGries::new(batch.edges()).run(),
    };
    let ncolors = colors.iter().copied().max().map_or(0, |c| c + 1);
    let mut classes = vec![Vec::new(); ncolors];
    for (e, &c) in batch.edges().iter().zip(&colors) {
        classes[c].push(*e);
    }
    MatchingSchedule::from_classes(classes)
}

/// True iff every class is a matching and the classes partition the batch.
pub fn verify_schedule(batch: &EdgeBatch, sched: &MatchingSchedule) -> bool {
    let mut remaining: HashSet<Edge> = batch.edges().iter().copied().collect();
    for class in &sched.classes {
        if class.is_empty() {
            return false;
        }
        let mut endpoints: HashSet<VertexId> = HashSet::with_capacity(class.len() * 2);
        for e in class {
            if !endpoints.insert(e.u) || !endpoints.insert(e.v) {
                return false;
            }
            if !remaining.remove(e) {
                // not in the batch, or scheduled twice
                return false;
            }
        }
    }
    remaining.is_empty()
}

fn greedy_colors(edges: &[Edge]) -> Vec<usize> {
    let mut used: HashMap<VertexId, Vec<bool>> = HashMap::new();
    let mut colors = Vec::with_capacity(edges.len());
    for e in edges {
        let cu = used.get(&e.u);
        let cv = used.get(&e.v);
        let taken = |c: usize| {
            cu.is_some_and(|s| s.get(c).copied().unwrap_or(false))
                || cv.is_some_and(|s| s.get(c).copied().unwrap_or(false))
        };
        let c = (0..).find(|&c| !taken(c)).unwrap();
        for x in [e.u, e.v] {
            let s = used.entry(x).or_default();
            if s.len() <= c {
                s.resize(c + 1, false);
            }
            s[c] = true;
        }
        colors.push(c);
    }
    colors
}

/// Misra-Gries edge coloring over the batch's own vertex set, using colors
/// `0..=Δ`.
struct MisraGries {
    // batch edges by local endpoint ids
    ends: Vec<(usize, usize)>,
    // incident batch edges per local vertex
    incident: Vec<Vec<usize>>,
    // at[x][c]: edge colored c at x
    at: Vec<Vec<Option<usize>>>,
    color: Vec<Option<usize>>,
}

impl MisraGries {
    fn new(edges: &[Edge]) -> Self {
        let mut local: HashMap<VertexId, usize> = HashMap::new();
        let mut ends = Vec::with_capacity(edges.len());
        let mut incident: Vec<Vec<usize>> = Vec::new();
        for (i, e) in edges.iter().enumerate() {
            let mut id = |x: VertexId| {
                let next = local.len();
                let l = *local.entry(x).or_insert(next);
                if l == incident.len() {
                    incident.push(Vec::new());
                }
                incident[l].push(i);
                l
            };
            let a = id(e.u);
            let b = id(e.v);
            ends.push((a, b));
        }
        let delta = incident.iter().map(Vec::len).max().unwrap_or(0);
        MisraGries {
            ends,
            at: vec![vec![None; delta + 1]; incident.len()],
            incident,
            color: vec![None; edges.len()],
        }
    }

    fn other(&self, e: usize, x: usize) -> usize {
        let (a, b) = self.ends[e];
        if a == x {
            b
        } else {
            a
        }
    }

    fn is_free(&self, x: usize, c: usize) -> bool {
        self.at[x][c].is_none()
    }

    fn free_color(&self, x: usize) -> usize {
        self.at[x]
            .iter()
            .position(Option::is_none)
            .expect("a vertex of degree <= Δ always has a free color among Δ + 1")
    }

    fn set(&mut self, e: usize, c: Option<usize>) {
        let (a, b) = self.ends[e];
        if let Some(old) = self.color[e] {
            self.at[a][old] = None;
            self.at[b][old] = None;
        }
        if let Some(c) = c {
            self.at[a][c] = Some(e);
            self.at[b][c] = Some(e);
        }
        self.color[e] = c;
    }

    /// Maximal fan at `u` starting with the uncolored edge `first`. Each
    /// further fan edge is colored with a color free at the previous fan
    /// vertex.
    fn maximal_fan(&self, u: usize, first: usize) -> Vec<usize> {
        let mut fan = vec![first];
        let mut in_fan: HashSet<usize> = HashSet::from([first]);
        loop {
            let last = self.other(*fan.last().unwrap(), u);
            let next = self.incident[u].iter().copied().find(|&e| {
                !in_fan.contains(&e) && self.color[e].is_some_and(|c| self.is_free(last, c))
            });
            match next {
                Some(e) => {
                    fan.push(e);
                    in_fan.insert(e);
                }
                None => return fan,
            }
        }
    }

    /// Swaps colors `d` and `c` along the maximal alternating path leaving
    /// `u` through its `d` edge.
    fn invert_path(&mut self, u: usize, d: usize, c: usize) {
        let mut path = Vec::new();
        let mut x = u;
        let mut want = d;
        while let Some(e) = self.at[x][want] {
            path.push(e);
            x = self.other(e, x);
            want = if want == d { c } else { d };
        }
        for &e in &path {
            self.set(e, None);
        }
        for (i, &e) in path.iter().enumerate() {
            self.set(e, Some(if i % 2 == 0 { c } else { d }));
        }
    }

    fn run(mut self) -> Vec<usize> {
        for e in 0..self.ends.len() {
            let u = self.ends[e].0;
            let fan = self.maximal_fan(u, e);
            let c = self.free_color(u);
            let d = self.free_color(self.other(*fan.last().unwrap(), u));
            self.invert_path(u, d, c);

            // the first fan vertex with d free closes a valid sub-fan
            let w = fan
                .iter()
                .position(|&f| self.is_free(self.other(f, u), d))
                .expect("d is free at the last fan vertex after inversion");

            let shifted: Vec<Option<usize>> = fan[1..=w].iter().map(|&f| self.color[f]).collect();
            for &f in &fan[..=w] {
                self.set(f, None);
            }
            for (i, col) in shifted.into_iter().enumerate() {
                self.set(fan[i], col);
            }
            self.set(fan[w], Some(d));
        }
        self.color
            .into_iter()
            .map(|c| c.expect("every edge is colored"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{validate_batch, BatchKind, Graph, ValidationMode};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn batch(n: usize, pairs: &[(u32, u32)]) -> EdgeBatch {
        let g = Graph::with_vertices(n);
        validate_batch(
            &g,
            BatchKind::Insert,
            pairs.iter().copied(),
            ValidationMode::Strict,
        )
        .unwrap()
        .batch
    }

    fn random_batch(n: u32, m: usize, seed: u64) -> EdgeBatch {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = Graph::with_vertices(n as usize);
        let mut pairs = HashSet::new();
        while pairs.len() < m {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b {
                pairs.insert(Edge::new(a, b));
            }
        }
        let mut pairs: Vec<_> = pairs.into_iter().map(|e| (e.u, e.v)).collect();
        pairs.sort();
        validate_batch(&g, BatchKind::Insert, pairs, ValidationMode::Strict)
            .unwrap()
            .batch
    }

    #[test]
    fn matching_is_one_class() {
        let b = batch(5, &[(1, 2), (3, 4)]);
        for mode in [ColoringMode::Greedy, ColoringMode::DeltaPlusOne] {
            let s = color_batch(&b, mode);
            assert_eq!(s.classes(), &[vec![Edge::new(1, 2), Edge::new(3, 4)]]);
        }
    }

    #[test]
    fn star_needs_one_class_per_edge() {
        let b = batch(4, &[(0, 1), (0, 2), (0, 3)]);
        for mode in [ColoringMode::Greedy, ColoringMode::DeltaPlusOne] {
            let s = color_batch(&b, mode);
            assert_eq!(s.colors_used(), 3);
            assert!(s.classes().iter().all(|c| c.len() == 1));
            assert!(verify_schedule(&b, &s));
        }
    }

    #[test]
    fn triangle_needs_three_classes() {
        let b = batch(4, &[(1, 2), (2, 3), (1, 3)]);
        assert_eq!(b.batch_degree(), 2);
        for mode in [ColoringMode::Greedy, ColoringMode::DeltaPlusOne] {
            let s = color_batch(&b, mode);
            assert_eq!(s.colors_used(), 3);
            assert!(verify_schedule(&b, &s));
        }
    }

    #[test]
    fn empty_batch() {
        let b = EdgeBatch::empty(BatchKind::Insert);
        let s = color_batch(&b, ColoringMode::DeltaPlusOne);
        assert_eq!(s.colors_used(), 0);
        assert!(verify_schedule(&b, &s));
    }

    #[test]
    fn random_batch_passes_verifier() {
        let b = random_batch(500, 1000, 5);
        for mode in [ColoringMode::Greedy, ColoringMode::DeltaPlusOne] {
            let s = color_batch(&b, mode);
            assert!(verify_schedule(&b, &s));
            assert!(s.colors_used() >= b.batch_degree());
        }
        let s = color_batch(&b, ColoringMode::DeltaPlusOne);
        assert!(s.colors_used() <= b.batch_degree() + 1);
        let s = color_batch(&b, ColoringMode::Greedy);
        assert!(s.colors_used() < 2 * b.batch_degree());
    }

    #[test]
    fn dense_batches_stay_within_delta_plus_one() {
        for seed in 0..30 {
            let n = 8 + seed as u32 % 12;
            let m = (n * (n - 1) / 2) as usize * 3 / 4;
            let b = random_batch(n, m, seed);
            let s = color_batch(&b, ColoringMode::DeltaPlusOne);
            assert!(verify_schedule(&b, &s), "seed {seed}");
            assert!(s.colors_used() <= b.batch_degree() + 1, "seed {seed}");
        }
    }

    #[test]
    fn verifier_rejects_shared_endpoint() {
        let b = batch(4, &[(0, 1), (0, 2)]);
        let s = MatchingSchedule::from_classes(vec![vec![Edge::new(0, 1), Edge::new(0, 2)]]);
        assert!(!verify_schedule(&b, &s));
    }

    #[test]
    fn verifier_rejects_missing_or_foreign_edge() {
        let b = batch(4, &[(0, 1), (2, 3)]);
        let s = MatchingSchedule::from_classes(vec![vec![Edge::new(0, 1)]]);
        assert!(!verify_schedule(&b, &s));
        let s = MatchingSchedule::from_classes(vec![
            vec![Edge::new(0, 1), Edge::new(2, 3)],
            vec![Edge::new(1, 2)],
        ]);
        assert!(!verify_schedule(&b, &s));
        let s = MatchingSchedule::from_classes(vec![
            vec![Edge::new(0, 1), Edge::new(2, 3)],
            vec![Edge::new(0, 1)],
        ]);
        assert!(!verify_schedule(&b, &s));
    }

    #[test]
    fn classes_keep_input_order() {
        let b = batch(10, &[(5, 6), (0, 1), (0, 2), (7, 8)]);
        let s = color_batch(&b, ColoringMode::Greedy);
        assert_eq!(
            s.classes(),
            &[
                vec![Edge::new(5, 6), Edge::new(0, 1), Edge::new(7, 8)],
                vec![Edge::new(0, 2)]
            ]
        );
    }
}
