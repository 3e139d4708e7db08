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

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{ArgGroup, Parser, ValueEnum};

use kcore_bench::{
    emit_report, run_experiment, EngineChoice, ExperimentConfig, ExperimentError, GraphSource,
    ReportFormat, Workload,
};
use kcore_maint::{BatchKind, ColoringMode, GenSpec, GraphModel, RmatProbs};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Model {
    Er,
    Ba,
    Rmat,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Insert,
    Delete,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EngineArg {
    Parallel,
    Sequential,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Coloring {
    Greedy,
    Delta1,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Toggle {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn default_threads() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(16)
}

/// Batch k-core maintenance experiments.
#[derive(Debug, Parser)]
#[command(name = "kcore-bench", version)]
#[command(group(ArgGroup::new("source").required(true).args(["graph", "gen"])))]
struct Cli {
    /// SNAP-style edge list.
    #[arg(long, value_name = "PATH")]
    graph: Option<PathBuf>,
    /// Generate a synthetic graph instead.
    #[arg(long, value_enum, requires_all = ["nodes", "avg_degree"])]
    gen: Option<Model>,
    #[arg(long, value_name = "N")]
    nodes: Option<usize>,
    /// Edges per vertex of the generated graph.
    #[arg(long, value_name = "D")]
    avg_degree: Option<u32>,
    /// R-MAT quadrant probabilities.
    #[arg(long, value_name = "A,B,C,D", default_value = "0.57,0.19,0.19,0.05")]
    rmat_probs: RmatProbs,
    #[arg(long, value_enum, default_value = "insert")]
    mode: Mode,
    /// percent:P, core:K:F or file:PATH
    #[arg(long)]
    workload: Workload,
    #[arg(long, value_enum, default_value = "parallel")]
    engine: EngineArg,
    #[arg(long, default_value_t = default_threads())]
    threads: usize,
    #[arg(long, value_enum, default_value = "greedy")]
    coloring: Coloring,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value = "on")]
    verify: Toggle,
    /// Report destination; stdout if omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

impl Cli {
    fn config(&self) -> ExperimentConfig {
        let source = match (&self.graph, self.gen) {
            (Some(p), _) => GraphSource::File(p.clone()),
            (None, Some(model)) => GraphSource::Generated(GenSpec {
                model: match model {
                    Model::Er => GraphModel::ErdosRenyi,
                    Model::Ba => GraphModel::BarabasiAlbert,
                    Model::Rmat => GraphModel::Rmat(self.rmat_probs),
                },
                nodes: self.nodes.unwrap_or_default(),
                degree: self.avg_degree.unwrap_or_default(),
                seed: self.seed,
            }),
            (None, None) => unreachable!("clap enforces a graph source"),
        };
        let mode = match self.mode {
            Mode::Insert => BatchKind::Insert,
            Mode::Delete => BatchKind::Delete,
        };
        ExperimentConfig {
            engine: match self.engine {
                EngineArg::Parallel => EngineChoice::Parallel,
                EngineArg::Sequential => EngineChoice::Sequential,
                EngineArg::Both => EngineChoice::Both,
            },
            threads: self.threads.max(1),
            coloring: match self.coloring {
                Coloring::Greedy => ColoringMode::Greedy,
                Coloring::Delta1 => ColoringMode::DeltaPlusOne,
            },
            seed: self.seed,
            verify: matches!(self.verify, Toggle::On),
            ..ExperimentConfig::new(source, self.workload.clone(), mode)
        }
    }
}

fn exit_code(e: &ExperimentError) -> u8 {
    match e {
        ExperimentError::Verification { .. } => EXIT_VERIFY,
        ExperimentError::Ingest(_) => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let rows = match run_experiment(&cli.config()) {
        Ok(rows) => rows,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let format = match cli.format {
        Format::Csv => ReportFormat::Csv,
        Format::Json => ReportFormat::Json,
    };
    if let Err(e) = emit_report(&rows, cli.out.as_deref(), format) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_IO);
    }
    ExitCode::SUCCESS
}
