//! Batch benchmark harness behind the `neuromst` binary.
//!
//! Reports compare algorithms by charged logical time. Wall-clock time is
//! recorded for information only and never enters a speedup.

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::costmodel::{bottleneck_advice, predict, Advice, Algorithm, Mode};
use crate::graphio::{
    graph_stats, load_matrix_market, Edge, Graph, GraphStats, LoadOptions, Loaded, MtxError,
    Quantize, WeightMode,
};
use crate::mst::{self, verify_mst, MstConfig, MstError, MstReport, RadixBits};
use crate::sorters::SortError;
use crate::substrate::CostMeter;

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_HEADER: [&str; 9] = [
    "graph",
    "algo",
    "time",
    "neurons",
    "synapses",
    "spikes",
    "E_proc",
    "speedup_vs_prim",
    "pipe_over_seqradix",
];

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Load { path: String, source: MtxError },
    #[error(transparent)]
    Mst(#[from] MstError),
    #[error("report verification failed: {0}")]
    Verify(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    /// Process exit code: 2 input, 3 algorithm precondition, 4 guard.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Load { .. } | HarnessError::Io(_) => 2,
            HarnessError::Mst(e) => mst_exit_code(e),
            HarnessError::Verify(_) => 1,
        }
    }
}

pub fn mst_exit_code(e: &MstError) -> i32 {
    if e.is_guard_tripped() {
        return 4;
    }
    match e {
        MstError::Empty
        | MstError::Multigraph { .. }
        | MstError::Sort(SortError::ValueTooWide { .. } | SortError::BadBitWidth(_)) => 3,
        _ => 1,
    }
}

/// Settings shared by every run of a session.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    /// Radix width; `None` uses the bit width of the largest weight.
    pub bits: Option<u32>,
    pub weights: WeightMode,
    pub quantize: Option<Quantize>,
    #[serde(skip)]
    pub max_steps: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            bits: None,
            weights: WeightMode::FromValues,
            quantize: None,
            max_steps: None,
        }
    }
}

impl RunConfig {
    pub fn mst_config(&self) -> MstConfig {
        MstConfig {
            seed: self.seed,
            radix_bits: self.bits.map_or(RadixBits::MaxWeight, RadixBits::Fixed),
            max_steps: self.max_steps,
        }
    }

    pub fn load_options(&self) -> LoadOptions {
        LoadOptions {
            weights: self.weights,
            quantize: self.quantize,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LoadSummary {
    pub self_loops_dropped: usize,
    pub duplicates_collapsed: usize,
    pub upper_entries_ignored: usize,
    pub weights_synthesized: bool,
}

/// A named graph ready to run.
#[derive(Debug, Clone)]
pub struct GraphInput {
    pub name: String,
    pub graph: Graph,
    pub load: LoadSummary,
}

impl GraphInput {
    pub fn from_graph(name: impl Into<String>, graph: Graph) -> Self {
        GraphInput {
            name: name.into(),
            graph,
            load: LoadSummary {
                self_loops_dropped: 0,
                duplicates_collapsed: 0,
                upper_entries_ignored: 0,
                weights_synthesized: false,
            },
        }
    }

    fn from_loaded(name: String, loaded: Loaded) -> Self {
        GraphInput {
            name,
            load: LoadSummary {
                self_loops_dropped: loaded.self_loops_dropped,
                duplicates_collapsed: loaded.duplicates_collapsed,
                upper_entries_ignored: loaded.upper_entries_ignored,
                weights_synthesized: loaded.weights_synthesized,
            },
            graph: loaded.graph,
        }
    }
}

/// Loads a Matrix Market file; the graph is named after the file stem.
pub fn load_input(path: &Path, cfg: &RunConfig) -> Result<GraphInput, HarnessError> {
    let loaded =
        load_matrix_market(path, &cfg.load_options()).map_err(|source| HarnessError::Load {
            path: path.display().to_string(),
            source,
        })?;
    let name = path.file_stem().map_or_else(
        || path.display().to_string(),
        |s| s.to_string_lossy().into_owned(),
    );
    Ok(GraphInput::from_loaded(name, loaded))
}

/// Meter fields plus the derived charged time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MeterView {
    pub charged_time: u64,
    pub run_steps: u64,
    pub charged_structural_steps: u64,
    pub setup_steps: u64,
    pub physical_mods: u64,
    pub suspended_steps: u64,
    pub neurons: u64,
    pub control_neurons: u64,
    pub synapses: u64,
    pub spikes: u64,
    pub fires: u64,
}

impl From<CostMeter> for MeterView {
    fn from(m: CostMeter) -> Self {
        MeterView {
            charged_time: m.charged_time(),
            run_steps: m.run_steps,
            charged_structural_steps: m.charged_structural_steps,
            setup_steps: m.setup_steps,
            physical_mods: m.physical_mods,
            suspended_steps: m.suspended_steps,
            neurons: m.compute_neurons(),
            control_neurons: m.control_neurons,
            synapses: m.synapse_count,
            spikes: m.spike_count,
            fires: m.fires,
        }
    }
}

/// One algorithm on one graph, as emitted by `run`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub graph: String,
    pub algorithm: Algorithm,
    pub config: RunConfig,
    pub load: LoadSummary,
    pub stats: GraphStats,
    pub bits: Option<u32>,
    pub complete: bool,
    pub total_weight: u64,
    pub edges_processed: u64,
    pub meter: MeterView,
    pub predicted: crate::costmodel::CostPrediction,
    pub prediction_match: bool,
    pub verified: bool,
    /// Charged time of Prim (from the closed form) over this run's.
    pub speedup_vs_prim: Option<f64>,
    pub valid_steps: Vec<mst::ValidStep>,
    pub mst_edges: Vec<[u64; 3]>,
    /// Informational only.
    pub wall_clock_ms: f64,
}

/// Ratio rounded to two decimals; `None` for a zero denominator.
pub fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| (num as f64 / den as f64 * 100.0).round() / 100.0)
}

fn edge_triples(edges: &[Edge]) -> Vec<[u64; 3]> {
    edges
        .iter()
        .map(|e| [e.u as u64, e.v as u64, e.weight])
        .collect()
}

fn timed_run(
    input: &GraphInput,
    algorithm: Algorithm,
    cfg: &RunConfig,
) -> (Result<MstReport, MstError>, f64) {
    let started = Instant::now();
    let result = mst::run(algorithm, &input.graph, &cfg.mst_config());
    (result, started.elapsed().as_secs_f64() * 1e3)
}

pub fn run_report(
    input: &GraphInput,
    algorithm: Algorithm,
    cfg: &RunConfig,
) -> Result<RunReport, HarnessError> {
    let (result, wall) = timed_run(input, algorithm, cfg);
    let report = result?;
    verify_mst(&input.graph, &report).map_err(HarnessError::Verify)?;
    let stats = graph_stats(&input.graph);
    let prim_time = predict(
        Algorithm::Prim,
        &stats,
        Some(&stats.mst),
        stats.bits,
        Mode::Exact,
    )
    .expect("reference MST supplied")
    .time;
    Ok(RunReport {
        schema: SCHEMA_VERSION,
        graph: input.name.clone(),
        algorithm,
        config: *cfg,
        load: input.load,
        bits: report.bits,
        complete: report.complete,
        total_weight: report.total_weight,
        edges_processed: report.edges_processed,
        meter: report.meter.into(),
        predicted: report.predicted,
        prediction_match: report.prediction_match,
        verified: true,
        speedup_vs_prim: ratio(prim_time, report.meter.charged_time()),
        valid_steps: report.valid_steps,
        mst_edges: edge_triples(&report.edges),
        wall_clock_ms: wall,
        stats,
    })
}

/// One row of a comparison.
#[derive(Debug, Clone, Serialize)]
pub struct CompareRow {
    pub graph: String,
    pub algo: Algorithm,
    pub error: Option<String>,
    #[serde(skip)]
    pub exit_code: i32,
    pub complete: Option<bool>,
    pub total_weight: Option<u64>,
    #[serde(rename = "E_proc")]
    pub e_proc: Option<u64>,
    pub bits: Option<u32>,
    pub meter: Option<MeterView>,
    pub prediction_match: Option<bool>,
    pub verified: Option<bool>,
    pub speedup_vs_prim: Option<f64>,
    pub pipe_over_seqradix: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub schema: u32,
    pub rows: Vec<CompareRow>,
}

fn row_for(input: &GraphInput, algo: Algorithm, cfg: &RunConfig) -> CompareRow {
    let (result, _) = timed_run(input, algo, cfg);
    let mut row = CompareRow {
        graph: input.name.clone(),
        algo,
        error: None,
        exit_code: 0,
        complete: None,
        total_weight: None,
        e_proc: None,
        bits: None,
        meter: None,
        prediction_match: None,
        verified: None,
        speedup_vs_prim: None,
        pipe_over_seqradix: None,
    };
    match result {
        Ok(r) => {
            let verdict = verify_mst(&input.graph, &r);
            row.complete = Some(r.complete);
            row.total_weight = Some(r.total_weight);
            row.e_proc = Some(r.edges_processed);
            row.bits = r.bits;
            row.meter = Some(r.meter.into());
            row.prediction_match = Some(r.prediction_match);
            row.verified = Some(verdict.is_ok());
            if let Err(msg) = verdict {
                row.error = Some(format!("verification failed: {msg}"));
                row.exit_code = 1;
            }
        }
        Err(e) => {
            row.exit_code = mst_exit_code(&e);
            row.error = Some(e.to_string());
        }
    }
    row
}

/// Runs every algorithm on every graph on a pool of `jobs` workers. Rows
/// come back in input order regardless of scheduling.
pub fn compare(
    inputs: &[GraphInput],
    algos: &[Algorithm],
    cfg: &RunConfig,
    jobs: usize,
) -> Comparison {
    let tasks: Vec<(usize, Algorithm)> = (0..inputs.len())
        .flat_map(|g| algos.iter().map(move |&a| (g, a)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let mut rows: Vec<CompareRow> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(g, a)| row_for(&inputs[g], a, cfg))
            .collect()
    });

    for chunk in rows.chunks_mut(algos.len().max(1)) {
        let time_of = |chunk: &[CompareRow], algo| {
            chunk
                .iter()
                .find(|r| r.algo == algo && r.error.is_none())
                .and_then(|r| r.meter.map(|m| m.charged_time))
        };
        let prim = time_of(chunk, Algorithm::Prim);
        let radix = time_of(chunk, Algorithm::SeqRadix);
        for row in chunk.iter_mut() {
            let Some(own) = row
                .meter
                .filter(|_| row.error.is_none())
                .map(|m| m.charged_time)
            else {
                continue;
            };
            row.speedup_vs_prim = prim.and_then(|p| ratio(p, own));
            if row.algo == Algorithm::Pipe {
                row.pipe_over_seqradix = radix.and_then(|r| ratio(r, own));
            }
        }
    }
    Comparison {
        schema: SCHEMA_VERSION,
        rows,
    }
}

impl Comparison {
    /// CSV with the fixed column set; ratios carry two decimals and failed
    /// runs leave their numeric fields empty.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("in-memory write");
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        let fixed = |v: Option<f64>| v.map(|x| format!("{x:.2}")).unwrap_or_default();
        for r in &self.rows {
            let m = r.meter.filter(|_| r.error.is_none());
            w.write_record([
                r.graph.clone(),
                r.algo.to_string(),
                opt(m.map(|m| m.charged_time)),
                opt(m.map(|m| m.neurons)),
                opt(m.map(|m| m.synapses)),
                opt(m.map(|m| m.spikes)),
                opt(r.e_proc.filter(|_| m.is_some())),
                fixed(r.speedup_vs_prim),
                fixed(r.pipe_over_seqradix),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    /// Worst exit code over all rows.
    pub fn exit_code(&self) -> i32 {
        self.rows
            .iter()
            .map(|r| r.exit_code)
            .find(|&c| c != 0)
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentAdvice {
    pub component: usize,
    pub vertices: usize,
    pub edges: usize,
    pub advice: Advice,
}

#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    pub schema: u32,
    pub graph: String,
    pub vertices: usize,
    pub edges: usize,
    pub bits: u32,
    pub radix_steps: u64,
    pub enumeration_steps: Option<u64>,
    pub margin: Option<i64>,
    pub recommendation: Algorithm,
    pub rationale: String,
    pub warning: Option<String>,
    pub components: Vec<ComponentAdvice>,
}

/// Full radix sort time versus time to reach the heaviest MST edge.
pub fn analyze(input: &GraphInput) -> Analysis {
    let stats = graph_stats(&input.graph);
    let advice = bottleneck_advice(&stats, stats.t_last);
    let (warning, components) = if stats.components > 1 {
        let per = stats
            .per_component
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let local = GraphStats {
                    vertices: c.vertices,
                    edges: c.edges,
                    components: 1,
                    t_last: Some(c.t_last),
                    ..stats.clone()
                };
                ComponentAdvice {
                    component: i,
                    vertices: c.vertices,
                    edges: c.edges,
                    advice: bottleneck_advice(&local, Some(c.t_last)),
                }
            })
            .collect();
        (
            Some(format!(
                "graph has {} components; analysis is given per component",
                stats.components
            )),
            per,
        )
    } else {
        (None, Vec::new())
    };
    Analysis {
        schema: SCHEMA_VERSION,
        graph: input.name.clone(),
        vertices: stats.vertices,
        edges: stats.edges,
        bits: stats.bits,
        radix_steps: advice.radix_steps,
        enumeration_steps: advice.enumeration_steps,
        margin: advice.margin,
        recommendation: advice.recommendation,
        rationale: advice.rationale,
        warning,
        components,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> GraphInput {
        GraphInput::from_graph(
            "triangle",
            Graph::from_edges(3, [(0, 1, 1), (1, 2, 2), (0, 2, 3)]).unwrap(),
        )
    }

    #[test]
    fn compare_triangle() {
        let c = compare(&[triangle()], &Algorithm::ALL, &RunConfig::default(), 2);
        let times: Vec<u64> = c
            .rows
            .iter()
            .map(|r| r.meter.unwrap().charged_time)
            .collect();
        assert_eq!(times, vec![3, 9, 16, 8]);
        let pipe = &c.rows[3];
        assert_eq!(pipe.pipe_over_seqradix, Some(2.0));
        let csv = c.to_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some(
                "graph,algo,time,neurons,synapses,spikes,E_proc,speedup_vs_prim,pipe_over_seqradix"
            )
        );
        assert_eq!(lines.nth(3), Some("triangle,pipe,8,6,12,12,2,0.38,2.00"));
        assert_eq!(c.exit_code(), 0);
    }

    #[test]
    fn run_report_for_pipe() {
        let r = run_report(&triangle(), Algorithm::Pipe, &RunConfig::default()).unwrap();
        assert_eq!(r.meter.charged_time, 8);
        assert_eq!(r.meter.spikes, 12);
        assert!(r.complete && r.prediction_match && r.verified);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.starts_with("{\"schema\":1,\"graph\":\"triangle\",\"algorithm\":\"pipe\""));
    }

    #[test]
    fn failed_rows_do_not_abort_the_rest() {
        let multi = GraphInput::from_graph(
            "multi",
            Graph::from_edges(2, [(0, 1, 1), (0, 1, 2)]).unwrap(),
        );
        let c = compare(
            &[multi],
            &[Algorithm::Prim, Algorithm::Pipe],
            &RunConfig::default(),
            1,
        );
        assert!(c.rows[0].error.is_some());
        assert_eq!(c.rows[0].exit_code, 3);
        assert!(c.rows[1].error.is_none());
        assert_eq!(c.rows[1].speedup_vs_prim, None);
        assert_eq!(c.exit_code(), 3);
        assert!(c.to_csv().contains("multi,prim,,,,,,,\n"));
    }

    #[test]
    fn analyze_triangle() {
        let a = analyze(&triangle());
        assert_eq!(a.radix_steps, 10);
        assert_eq!(a.enumeration_steps, Some(2));
        assert_eq!(a.margin, Some(8));
        assert_eq!(a.recommendation, Algorithm::Pipe);
        assert!(a.warning.is_none());
    }

    #[test]
    fn analyze_disconnected_warns() {
        let g = Graph::from_edges(4, [(0, 1, 2), (2, 3, 900)]).unwrap();
        let a = analyze(&GraphInput::from_graph("split", g));
        assert!(a.warning.is_some());
        assert_eq!(a.components.len(), 2);
        assert_eq!(a.components[1].advice.recommendation, Algorithm::SeqRadix);
        assert_eq!(a.recommendation, Algorithm::Pipe);
    }

    #[test]
    fn ratios_round_to_two_places() {
        assert_eq!(ratio(16, 8), Some(2.0));
        assert_eq!(ratio(1, 3), Some(0.33));
        assert_eq!(ratio(1, 0), None);
    }
}
