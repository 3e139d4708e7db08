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

//! Experiment harness for `kcore-maint`: edge-list ingestion, workload
//! construction, timed runs of the batch and edge-at-a-time engines, and
//! CSV/JSON reports.

pub mod edgelist;
pub mod experiment;
pub mod report;

pub use edgelist::{
    load_edgelist, load_updates, parse_edgelist, parse_updates, IngestError, LabelMap, LoadedGraph,
};
pub use experiment::{
    run_experiment, EngineChoice, ExperimentConfig, ExperimentError, GraphSource, Workload,
    WorkloadParseError,
};
pub use report::{emit_report, write_report, ReportError, ReportFormat, ReportRow, CSV_HEADER};
