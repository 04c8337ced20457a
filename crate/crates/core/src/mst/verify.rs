use super::oracle::{kruskal, Dsu};
use super::MstReport;
use crate::graphio::Graph;

/// Checks a report against the reference Kruskal: the edges must be graph
/// edges, acyclic, span every component, and have the reference weight and
/// sorted weight multiset. `complete` must agree with connectivity.
pub fn verify_mst(graph: &Graph, report: &MstReport) -> Result<(), String> {
    let oracle = kruskal(graph);
    let mut dsu = Dsu::new(graph.vertex_count());
    for e in &report.edges {
        if graph.edges().get(e.index) != Some(e) {
            return Err(format!("edge {e:?} is not edge {} of the graph", e.index));
        }
        if !dsu.union(e.u, e.v) {
            return Err(format!("edge {} closes a cycle", e.index));
        }
    }
    if report.edges.len() != oracle.edges.len() {
        return Err(format!(
            "{} edges do not span the graph ({} needed)",
            report.edges.len(),
            oracle.edges.len()
        ));
    }
    if report.complete != oracle.complete {
        return Err(format!(
            "complete={} but the graph has {} component(s)",
            report.complete, oracle.components
        ));
    }
    let weight: u64 = report.edges.iter().map(|e| e.weight).sum();
    if weight != oracle.weight || report.total_weight != weight {
        return Err(format!(
            "weight {} (reported {}) differs from the minimum {}",
            weight, report.total_weight, oracle.weight
        ));
    }
    let mut got: Vec<u64> = report.edges.iter().map(|e| e.weight).collect();
    let mut want: Vec<u64> = oracle
        .edges
        .iter()
        .map(|&i| graph.edges()[i].weight)
        .collect();
    got.sort_unstable();
    want.sort_unstable();
    if got != want {
        return Err(format!("weight multiset {got:?} differs from {want:?}"));
    }
    Ok(())
}
