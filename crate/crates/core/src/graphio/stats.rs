use serde::Serialize;

use super::Graph;
use crate::costmodel::MstInfo;
use crate::mst::oracle::kruskal;
use crate::sorters::bit_width;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentStats {
    pub vertices: usize,
    pub edges: usize,
    pub mst_weight: u64,
    pub t_last: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub min_weight: u64,
    pub max_weight: u64,
    /// Bit width of the largest weight (at least 1).
    pub bits: u32,
    pub components: usize,
    /// Heaviest MST edge; `None` unless the graph is connected.
    pub t_last: Option<u64>,
    pub mst_weight: Option<u64>,
    /// Spanning-forest summary from the reference Kruskal.
    pub mst: MstInfo,
    pub per_component: Vec<ComponentStats>,
}

pub fn graph_stats(graph: &Graph) -> GraphStats {
    let oracle = kruskal(graph);
    let mut per_component = vec![
        ComponentStats {
            vertices: 0,
            edges: 0,
            mst_weight: 0,
            t_last: 0,
        };
        oracle.components
    ];
    for &c in &oracle.component {
        per_component[c].vertices += 1;
    }
    for e in graph.edges() {
        per_component[oracle.component[e.u]].edges += 1;
    }
    for &i in &oracle.edges {
        let e = graph.edges()[i];
        let c = &mut per_component[oracle.component[e.u]];
        c.mst_weight += e.weight;
        c.t_last = c.t_last.max(e.weight);
    }
    let max_weight = graph.max_weight().unwrap_or(0);
    GraphStats {
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        min_weight: graph.min_weight().unwrap_or(0),
        max_weight,
        bits: bit_width(max_weight),
        components: oracle.components,
        t_last: oracle.complete.then_some(oracle.t_last),
        mst_weight: oracle.complete.then_some(oracle.weight),
        mst: MstInfo {
            weight_sum: oracle.weight,
            t_last: oracle.t_last,
            e_proc: oracle.e_proc as u64,
            complete: oracle.complete,
        },
        per_component,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_stats() {
        let g = Graph::from_edges(3, [(0, 1, 1), (1, 2, 2), (0, 2, 3)]).unwrap();
        let s = graph_stats(&g);
        assert_eq!((s.vertices, s.edges), (3, 3));
        assert_eq!((s.min_weight, s.max_weight, s.bits), (1, 3, 2));
        assert_eq!(s.t_last, Some(2));
        assert_eq!(s.mst_weight, Some(3));
        assert_eq!(s.components, 1);
    }

    #[test]
    fn edgeless_graph_has_one_component_per_vertex() {
        let s = graph_stats(&Graph::new(4));
        assert_eq!(s.components, 4);
        assert_eq!(s.t_last, None);
        assert_eq!(s.per_component.len(), 4);
    }

    #[test]
    fn forced_path() {
        let g = Graph::from_edges(3, [(0, 1, 4), (1, 2, 4)]).unwrap();
        let s = graph_stats(&g);
        assert_eq!((s.t_last, s.mst_weight), (Some(4), Some(8)));
    }

    #[test]
    fn disconnected_lists_components() {
        let g = Graph::from_edges(5, [(0, 1, 2), (1, 2, 7), (3, 4, 5)]).unwrap();
        let s = graph_stats(&g);
        assert_eq!(s.components, 2);
        assert_eq!(s.mst_weight, None);
        assert_eq!(s.per_component[0].t_last, 7);
        assert_eq!(s.per_component[1].mst_weight, 5);
        assert!(!s.mst.complete);
    }
}
