//! Closed-form cost predictions and the Pipe-vs-SeqRadix advisor.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphio::GraphStats;
use crate::substrate::CostMeter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "prim")]
    Prim,
    #[serde(rename = "seq-neuro")]
    SeqNeuro,
    #[serde(rename = "seq-radix")]
    SeqRadix,
    #[serde(rename = "pipe")]
    Pipe,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Prim,
        Algorithm::SeqNeuro,
        Algorithm::SeqRadix,
        Algorithm::Pipe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Prim => "prim",
            Algorithm::SeqNeuro => "seq-neuro",
            Algorithm::SeqRadix => "seq-radix",
            Algorithm::Pipe => "pipe",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?} (prim, seq-neuro, seq-radix, pipe)"))
    }
}

/// How the union-find terms count edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Every edge of the graph is submitted (upper bound).
    Literal,
    /// Only the edges up to the last MST edge in sorted order.
    Exact,
}

/// Reference spanning-forest summary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MstInfo {
    pub weight_sum: u64,
    pub t_last: u64,
    pub e_proc: u64,
    pub complete: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Assumptions {
    pub bits: u32,
    pub alpha: u64,
    pub mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CostPrediction {
    pub algorithm: Algorithm,
    pub time: u64,
    pub neurons: u64,
    pub synapses: u64,
    /// For Prim this is the |V|² bound rather than an exact count.
    pub spikes: u64,
    pub assumptions: Assumptions,
}

impl CostPrediction {
    /// Compares against a measured meter: charged time, compute neurons,
    /// synapses and spikes must be equal (spikes within the bound for Prim).
    pub fn matches(&self, meter: &CostMeter) -> bool {
        let spikes_ok = match self.algorithm {
            Algorithm::Prim => meter.spike_count <= self.spikes,
            _ => meter.spike_count == self.spikes,
        };
        meter.charged_time() == self.time
            && meter.compute_neurons() == self.neurons
            && meter.synapse_count == self.synapses
            && spikes_ok
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CostError {
    #[error("{0} needs the reference MST summary")]
    MissingMst(Algorithm),
}

/// Inverse Ackermann, as a fixed threshold table.
pub fn inverse_ackermann(n: u64) -> u64 {
    match n {
        0..=2 => 0,
        3..=4 => 1,
        5..=16 => 2,
        17..=65536 => 3,
        _ => 4,
    }
}

/// Evaluates the closed form for `algorithm` on a graph.
///
/// `bits` is the radix width (only used by SeqRadix). Exact mode replaces
/// |E| by E_proc in the union-find terms and, for Pipe, the sort horizon by
/// t_last; a forest runs the sort to its end, so its horizon is the largest
/// weight.
pub fn predict(
    algorithm: Algorithm,
    stats: &GraphStats,
    mst: Option<&MstInfo>,
    bits: u32,
    mode: Mode,
) -> Result<CostPrediction, CostError> {
    let v = stats.vertices as u64;
    let e = stats.edges as u64;
    let alpha = inverse_ackermann(v);
    let need = || mst.ok_or(CostError::MissingMst(algorithm));
    let queries = match mode {
        Mode::Literal => e,
        Mode::Exact if algorithm == Algorithm::Prim => 0,
        Mode::Exact => need()?.e_proc,
    };
    let uf_time = queries * (2 + alpha);
    let (time, neurons, synapses, spikes) = match algorithm {
        Algorithm::Prim => (need()?.weight_sum, v, e, v * v),
        Algorithm::SeqNeuro => (
            stats.max_weight + uf_time,
            e + v,
            e + 2 + v,
            e + 4 * queries,
        ),
        Algorithm::SeqRadix => (
            bits as u64 * (2 + e) + uf_time,
            e + v,
            e + 2 + v,
            bits as u64 * e + 4 * queries,
        ),
        Algorithm::Pipe => {
            let horizon = match mode {
                Mode::Literal => stats.max_weight,
                Mode::Exact => {
                    let m = need()?;
                    if m.complete {
                        m.t_last
                    } else {
                        stats.max_weight
                    }
                }
            };
            (horizon + uf_time, e + v, 3 * e + v, 6 * queries)
        }
    };
    Ok(CostPrediction {
        algorithm,
        time,
        neurons,
        synapses,
        spikes,
        assumptions: Assumptions { bits, alpha, mode },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Advice {
    pub recommendation: Algorithm,
    /// `b·(2+|E|) − t_last`; `None` when t_last is unknown.
    pub margin: Option<i64>,
    pub radix_steps: u64,
    pub enumeration_steps: Option<u64>,
    pub rationale: String,
}

/// Picks Pipe or SeqRadix by comparing a full radix sort of the edge weights
/// with the time needed to reach the heaviest MST edge.
pub fn bottleneck_advice(stats: &GraphStats, t_last: Option<u64>) -> Advice {
    let radix_steps = stats.bits as u64 * (2 + stats.edges as u64);
    let Some(t) = t_last else {
        return Advice {
            recommendation: Algorithm::Pipe,
            margin: None,
            radix_steps,
            enumeration_steps: None,
            rationale: "heaviest MST edge unknown; pipe is the preferable choice".into(),
        };
    };
    let margin = radix_steps as i64 - t as i64;
    let (recommendation, rationale) = if margin >= 0 {
        (
            Algorithm::Pipe,
            format!("enumerating MST edges ({t}) ends no later than a radix sort ({radix_steps})"),
        )
    } else {
        (
            Algorithm::SeqRadix,
            format!("enumerating MST edges ({t}) outlasts a radix sort ({radix_steps})"),
        )
    };
    Advice {
        recommendation,
        margin: Some(margin),
        radix_steps,
        enumeration_steps: Some(t),
        rationale,
    }
}
