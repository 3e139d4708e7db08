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

//! Exact k-core maintenance for undirected simple graphs under batches of
//! edge insertions or deletions.
//!
//! A batch is split into matchings by proper edge coloring. Each matching
//! changes any core number by at most one, so its edges are handled in one
//! iteration: edges are grouped by the core number of their lower endpoint
//! and every group is searched independently, in parallel.
//!
//! ```
//! use kcore_maint::{compute_cores, DynamicCores, Graph, MaintenanceConfig, ValidationMode};
//!
//! let path = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
//! let mut dc = DynamicCores::new(path, MaintenanceConfig::default());
//! dc.insert_edges([(0, 3)], ValidationMode::Strict).unwrap();
//! assert_eq!(dc.cores().as_slice(), &[2, 2, 2, 2]);
//! assert_eq!(*dc.cores(), compute_cores(dc.graph()));
//! ```

pub mod coloring;
pub mod decomposition;
pub mod decremental;
pub mod graph;
pub mod incremental;
pub mod maintenance;
pub mod search;
pub mod sequential;
pub mod workload;

pub use coloring::{color_batch, verify_schedule, ColoringMode, MatchingSchedule};
pub use decomposition::{compute_cores, max_core};
pub use decremental::{k_matching_delete, matching_delete_batch};
pub use graph::{
    validate_batch, BatchError, BatchKind, CoreVector, Edge, EdgeBatch, EdgeIssue, EdgeProblem,
    Graph, GraphError, ValidatedBatch, ValidationMode, VertexId,
};
pub use incremental::{k_matching_insert, matching_insert_batch};
pub use maintenance::{
    DynamicCores, Engine, IterationStats, MaintenanceConfig, MaintenanceError, MaintenanceReport,
};
pub use search::{group_by_root_core, GroupOutcome, KGroup};
pub use sequential::{sequential_delete_all, sequential_insert_all};
pub use workload::{
    generate, sample_batch_by_core, sample_batch_random, GenSpec, GraphModel, RmatProbs,
    WorkloadError,
};
