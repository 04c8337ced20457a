//! Graph ingestion, generation and summary statistics.

mod generate;
mod graph;
mod mtx;
mod stats;

pub use generate::{gen_random_graph, GenError};
pub use graph::{Edge, Graph, GraphError, MAX_WEIGHT};
pub use mtx::{
    load_matrix_market, parse_matrix_market, save_matrix_market, write_matrix_market, LoadOptions,
    Loaded, MtxError, Quantize, WeightMode,
};
pub use stats::{graph_stats, ComponentStats, GraphStats};
