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

//! SNAP-style edge lists and update files.
//!
//! Both formats are UTF-8 text with one `u v` pair of unsigned integer
//! labels per line, separated by whitespace. Blank lines and lines starting
//! with `#` are skipped. Tokens after the second on a line are ignored, so
//! weighted or timestamped lists load as plain topology.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::Path;

use kcore_maint::{Graph, VertexId};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("more than {} distinct vertex labels", VertexId::MAX)]
    TooManyVertices,
}

/// Dense ids assigned in order of first appearance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelMap {
    ids: HashMap<u64, VertexId>,
    labels: Vec<u64>,
}

impl LabelMap {
    pub fn new() -> Self {
        LabelMap::default()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn id(&self, label: u64) -> Option<VertexId> {
        self.ids.get(&label).copied()
    }

    pub fn label(&self, id: VertexId) -> Option<u64> {
        self.labels.get(id as usize).copied()
    }

    /// Existing id of `label`, or the next dense id.
    pub fn intern(&mut self, label: u64) -> Result<VertexId, IngestError> {
        if let Some(&id) = self.ids.get(&label) {
            return Ok(id);
        }
        let id = VertexId::try_from(self.labels.len()).map_err(|_| IngestError::TooManyVertices)?;
        self.ids.insert(label, id);
        self.labels.push(label);
        Ok(id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub labels: LabelMap,
    /// Pairs already present, in either orientation.
    pub duplicates: usize,
    pub self_loops: usize,
}

fn parse_pair(text: &str, line: usize) -> Result<Option<(u64, u64)>, IngestError> {
    let text = text.trim();
    if text.is_empty() || text.starts_with('#') {
        return Ok(None);
    }
    let mut tokens = text.split_whitespace();
    let mut next = |which: &str| -> Result<u64, IngestError> {
        let tok = tokens.next().ok_or_else(|| IngestError::Parse {
            line,
            message: format!("missing {which} vertex"),
        })?;
        tok.parse().map_err(|_| IngestError::Parse {
            line,
            message: format!("`{tok}` is not an unsigned integer label"),
        })
    };
    let u = next("first")?;
    let v = next("second")?;
    Ok(Some((u, v)))
}

/// Reads label pairs from an update file, in file order.
pub fn parse_updates<R: BufRead>(reader: R) -> Result<Vec<(u64, u64)>, IngestError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| IngestError::Io {
            path: "<input>".into(),
            source,
        })?;
        if let Some(pair) = parse_pair(&line, i + 1)? {
            out.push(pair);
        }
    }
    Ok(out)
}

/// Builds an undirected simple graph from an edge list. Labels are
/// remapped to dense ids; duplicates and self-loops are dropped and
/// counted.
pub fn parse_edgelist<R: BufRead>(reader: R) -> Result<LoadedGraph, IngestError> {
    let mut labels = LabelMap::new();
    let mut graph = Graph::new();
    let (mut duplicates, mut self_loops) = (0, 0);
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| IngestError::Io {
            path: "<input>".into(),
            source,
        })?;
        let Some((a, b)) = parse_pair(&line, i + 1)? else {
            continue;
        };
        let u = labels.intern(a)?;
        let v = labels.intern(b)?;
        graph.ensure_vertex(u.max(v));
        if u == v {
            self_loops += 1;
        } else if graph.add_edge(u, v).is_err() {
            duplicates += 1;
        }
    }
    Ok(LoadedGraph {
        graph,
        labels,
        duplicates,
        self_loops,
    })
}

fn open(path: &Path) -> Result<BufReader<File>, IngestError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| IngestError::Io {
            path: path.display().to_string(),
            source,
        })
}

fn with_path(e: IngestError, path: &Path) -> IngestError {
    match e {
        IngestError::Io { source, .. } => IngestError::Io {
            path: path.display().to_string(),
            source,
        },
        other => other,
    }
}

pub fn load_edgelist(path: &Path) -> Result<LoadedGraph, IngestError> {
    parse_edgelist(open(path)?).map_err(|e| with_path(e, path))
}

pub fn load_updates(path: &Path) -> Result<Vec<(u64, u64)>, IngestError> {
    parse_updates(open(path)?).map_err(|e| with_path(e, path))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> LoadedGraph {
        parse_edgelist(s.as_bytes()).unwrap()
    }

    #[test]
    fn path_of_three() {
        let lg = parse("0 1\n1 2\n");
        assert_eq!(lg.graph.num_vertices(), 3);
        assert_eq!(lg.graph.num_edges(), 2);
        assert_eq!((lg.duplicates, lg.self_loops), (0, 0));
    }

    #[test]
    fn comments_and_blank_lines() {
        let lg = parse("# Directed graph\n# Nodes: 3 Edges: 2\n\n0\t1\n  \n1 2\n");
        assert_eq!(lg.graph.num_edges(), 2);
    }

    #[test]
    fn both_orientations_count_once() {
        let lg = parse("0 1\n1 0\n");
        assert_eq!(lg.graph.num_edges(), 1);
        assert_eq!(lg.duplicates, 1);
    }

    #[test]
    fn self_loops_dropped_but_vertex_kept() {
        let lg = parse("5 5\n5 9\n");
        assert_eq!(lg.self_loops, 1);
        assert_eq!(lg.graph.num_vertices(), 2);
        assert_eq!(lg.graph.num_edges(), 1);
    }

    #[test]
    fn sparse_labels_are_densified() {
        let lg = parse("1000000000000 7\n7 42\n");
        assert_eq!(lg.labels.id(1_000_000_000_000), Some(0));
        assert_eq!(lg.labels.id(7), Some(1));
        assert_eq!(lg.labels.label(2), Some(42));
        assert!(lg.graph.has_edge(1, 2));
    }

    #[test]
    fn extra_columns_ignored() {
        let lg = parse("0 1 0.5 1700000000\n");
        assert_eq!(lg.graph.num_edges(), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_edgelist("0 1\n# ok\n2 x\n".as_bytes()).unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 3, .. }), "{err}");
        let err = parse_edgelist("0 1\n4\n".as_bytes()).unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 2, .. }));
        let err = parse_edgelist("-1 2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 1, .. }));
    }

    #[test]
    fn empty_input() {
        let lg = parse("");
        assert_eq!(lg.graph.num_vertices(), 0);
        assert!(parse_updates("".as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn updates_keep_order_and_duplicates() {
        let u = parse_updates("# updates\n3 4\n4 3\n9 1\n".as_bytes()).unwrap();
        assert_eq!(u, vec![(3, 4), (4, 3), (9, 1)]);
    }
}
