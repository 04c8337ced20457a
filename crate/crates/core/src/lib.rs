//! Event-driven simulator for a neuromorphic cost model, with the sorting,
//! union-find and minimum-spanning-tree algorithms built on it.
//!
//! All costs are logical: the [`substrate::CostMeter`] of each run counts
//! timesteps, structural-change charges, neurons, synapses and spikes, and
//! [`costmodel`] gives the closed forms those meters are expected to match.

pub mod costmodel;
pub mod graphio;
pub mod harness;
pub mod mst;
pub mod sorters;
pub mod substrate;
pub mod unionfind;

pub use graphio::{Edge, Graph};
pub use mst::{MstConfig, MstReport};
pub use substrate::{CostMeter, Network};
