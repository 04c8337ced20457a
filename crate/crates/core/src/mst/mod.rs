//! Minimum spanning trees on the simulator: neuromorphic Prim, sequential
//! Kruskal over either sorter, and pipelined Kruskal.
//!
//! Every run returns an [`MstReport`] holding the measured meter together
//! with the closed-form prediction computed from the reference Kruskal, so
//! callers can check one against the other.

pub mod dedup;
mod kruskal;
pub mod oracle;
mod prim;
mod verify;

use serde::Serialize;
use thiserror::Error;

use crate::costmodel::{predict, Algorithm, CostPrediction, Mode};
use crate::graphio::{graph_stats, Edge, Graph};
use crate::sorters::SortError;
use crate::substrate::{CostMeter, SimError};
use crate::unionfind::UfError;

pub use dedup::{deduplicate, EffectiveWeight};
pub use kruskal::{mst_pipe, mst_seq, Sorter};
pub use prim::mst_prim;
pub use verify::verify_mst;

/// Radix width used by SeqRadix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadixBits {
    Fixed(u32),
    /// Bit width of the graph's largest weight.
    MaxWeight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MstConfig {
    /// Seeds Prim's start vertex.
    pub seed: u64,
    pub radix_bits: RadixBits,
    /// Overrides the simulator's non-termination guard.
    pub max_steps: Option<u64>,
}

impl Default for MstConfig {
    fn default() -> Self {
        MstConfig {
            seed: 0,
            radix_bits: RadixBits::Fixed(32),
            max_steps: None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MstError {
    #[error("graph has no vertices")]
    Empty,
    #[error(
        "edges {} and {} both join {} and {}; one synapse per neuron pair cannot \
         embed a graph with multiple edges",
        .first.index, .second.index, .first.u, .first.v
    )]
    Multigraph { first: Edge, second: Edge },
    #[error(transparent)]
    Sort(#[from] SortError),
    #[error(transparent)]
    UnionFind(#[from] UfError),
    #[error(transparent)]
    Sim(#[from] SimError),
}

impl MstError {
    pub fn is_guard_tripped(&self) -> bool {
        matches!(
            self,
            MstError::Sim(SimError::GuardTripped { .. })
                | MstError::Sort(SortError::Sim(SimError::GuardTripped { .. }))
                | MstError::UnionFind(UfError::Sim(SimError::GuardTripped { .. }))
        )
    }
}

/// A timestep at which the pipelined sort kernel emitted spikes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValidStep {
    pub time: u64,
    pub submissions: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MstReport {
    pub algorithm: Algorithm,
    pub edges: Vec<Edge>,
    pub total_weight: u64,
    pub complete: bool,
    /// Edges submitted to union-find (for Prim: edges chosen).
    pub edges_processed: u64,
    /// Edge indices in the order they were submitted or chosen.
    pub submissions: Vec<usize>,
    pub bits: Option<u32>,
    pub meter: CostMeter,
    pub predicted: CostPrediction,
    pub prediction_match: bool,
    /// Pipe only.
    pub valid_steps: Vec<ValidStep>,
}

pub(crate) struct Outcome {
    pub chosen: Vec<usize>,
    pub submissions: Vec<usize>,
    pub bits: Option<u32>,
    pub meter: CostMeter,
    pub valid_steps: Vec<ValidStep>,
}

impl Outcome {
    pub(crate) fn into_report(self, algorithm: Algorithm, graph: &Graph) -> MstReport {
        let stats = graph_stats(graph);
        let bits = self.bits.unwrap_or(stats.bits);
        let predicted = predict(algorithm, &stats, Some(&stats.mst), bits, Mode::Exact)
            .expect("reference MST supplied");
        let edges: Vec<Edge> = self.chosen.iter().map(|&i| graph.edges()[i]).collect();
        let complete = graph.vertex_count() > 0 && edges.len() + 1 == graph.vertex_count();
        let edges_processed = match algorithm {
            Algorithm::Prim => edges.len(),
            _ => self.submissions.len(),
        } as u64;
        MstReport {
            algorithm,
            total_weight: edges.iter().map(|e| e.weight).sum(),
            edges,
            complete,
            edges_processed,
            submissions: self.submissions,
            bits: self.bits,
            prediction_match: predicted.matches(&self.meter),
            meter: self.meter,
            predicted,
            valid_steps: self.valid_steps,
        }
    }
}

/// Runs one algorithm.
pub fn run(algorithm: Algorithm, graph: &Graph, cfg: &MstConfig) -> Result<MstReport, MstError> {
    match algorithm {
        Algorithm::Prim => mst_prim(graph, cfg),
        Algorithm::SeqNeuro => mst_seq(graph, Sorter::Neuro, cfg),
        Algorithm::SeqRadix => mst_seq(graph, Sorter::Radix, cfg),
        Algorithm::Pipe => mst_pipe(graph, cfg),
    }
}
