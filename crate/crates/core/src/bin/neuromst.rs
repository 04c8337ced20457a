use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use neuromst::costmodel::Algorithm;
use neuromst::graphio::{gen_random_graph, save_matrix_market, Quantize, WeightMode};
use neuromst::harness::{self, GraphInput, HarnessError, RunConfig};

#[derive(Parser)]
#[command(
    name = "neuromst",
    version,
    about = "Neuromorphic MST cost-model benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded random connected graph as Matrix Market.
    Gen {
        #[arg(short = 'v', long)]
        vertices: usize,
        #[arg(short = 'e', long)]
        edges: usize,
        #[arg(long, default_value_t = 1)]
        wmin: u64,
        #[arg(long, default_value_t = 100)]
        wmax: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long)]
        out: PathBuf,
    },
    /// Run one algorithm and emit a JSON report.
    Run {
        #[arg(long)]
        algo: Algorithm,
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Write the report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run several algorithms on several graphs.
    Compare {
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "prim,seq-neuro,seq-radix,pipe"
        )]
        algos: Vec<Algorithm>,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Radix-sort time versus MST-edge enumeration time.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "from-values")]
        weights: WeightMode,
        #[arg(long)]
        quantize: Option<Quantize>,
    },
}

#[derive(Args)]
struct Common {
    /// `from-values` or `uniform:MIN:MAX:SEED`.
    #[arg(long, default_value = "from-values")]
    weights: WeightMode,
    /// `round` or `scale:10^k`, required for real-valued files.
    #[arg(long)]
    quantize: Option<Quantize>,
    /// Radix width for seq-radix; defaults to the width of the largest weight.
    #[arg(long)]
    bits: Option<u32>,
    /// Seed for Prim's start vertex.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Non-termination guard in logical steps (also NEUROMST_MAX_STEPS).
    #[arg(long, env = "NEUROMST_MAX_STEPS")]
    max_steps: Option<u64>,
}

impl Common {
    fn config(&self) -> RunConfig {
        RunConfig {
            seed: self.seed,
            bits: self.bits,
            weights: self.weights,
            quantize: self.quantize,
            max_steps: self.max_steps,
        }
    }
}

fn emit_json<T: Serialize>(value: &T, path: Option<&Path>) -> Result<(), HarnessError> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize") + "\n";
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<i32, HarnessError> {
    match cli.command {
        Command::Gen {
            vertices,
            edges,
            wmin,
            wmax,
            seed,
            out,
        } => {
            let graph = match gen_random_graph(vertices, edges, (wmin, wmax), seed) {
                Ok(g) => g,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(2);
                }
            };
            save_matrix_market(&graph, &out)?;
            Ok(0)
        }
        Command::Run {
            algo,
            input,
            common,
            json,
        } => {
            let cfg = common.config();
            let graph = harness::load_input(&input, &cfg)?;
            let report = harness::run_report(&graph, algo, &cfg)?;
            emit_json(&report, json.as_deref())?;
            Ok(0)
        }
        Command::Compare {
            input,
            algos,
            common,
            csv,
            json,
            jobs,
        } => {
            let cfg = common.config();
            let graphs = input
                .iter()
                .map(|p| harness::load_input(p, &cfg))
                .collect::<Result<Vec<GraphInput>, _>>()?;
            let cmp = harness::compare(&graphs, &algos, &cfg, jobs);
            for row in cmp.rows.iter().filter(|r| r.error.is_some()) {
                eprintln!(
                    "{} {}: {}",
                    row.graph,
                    row.algo,
                    row.error.as_deref().unwrap_or("")
                );
            }
            if let Some(p) = &json {
                emit_json(&cmp, Some(p))?;
            }
            match &csv {
                Some(p) => fs::write(p, cmp.to_csv())?,
                None if json.is_none() => io::stdout().write_all(cmp.to_csv().as_bytes())?,
                None => {}
            }
            Ok(cmp.exit_code())
        }
        Command::Analyze {
            input,
            weights,
            quantize,
        } => {
            let cfg = RunConfig {
                weights,
                quantize,
                ..RunConfig::default()
            };
            let graph = harness::load_input(&input, &cfg)?;
            let analysis = harness::analyze(&graph);
            if let Some(w) = &analysis.warning {
                eprintln!("warning: {w}");
            }
            emit_json(&analysis, None)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
