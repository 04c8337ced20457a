//! Classical array-based Kruskal, used as the reference for every simulated
//! algorithm and as the source of the cost-model inputs.

use crate::graphio::Graph;

/// Plain disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleMst {
    /// Accepted edge indices in acceptance order.
    pub edges: Vec<usize>,
    pub weight: u64,
    /// Heaviest accepted weight (0 when nothing was accepted).
    pub t_last: u64,
    /// Edges examined in `(weight, index)` order until the tree was
    /// complete; all of them for a forest.
    pub e_proc: usize,
    pub complete: bool,
    pub components: usize,
    /// Component label per vertex, numbered by smallest member.
    pub component: Vec<usize>,
}

pub fn kruskal(graph: &Graph) -> OracleMst {
    let n = graph.vertex_count();
    let mut dsu = Dsu::new(n);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut weight = 0;
    let mut t_last = 0;
    let mut e_proc = 0;
    let order = graph.sorted_edge_indices();
    for (pos, &i) in order.iter().enumerate() {
        let e = graph.edges()[i];
        if dsu.union(e.u, e.v) {
            edges.push(i);
            weight += e.weight;
            t_last = t_last.max(e.weight);
            e_proc = pos + 1;
            if edges.len() + 1 == n {
                break;
            }
        }
    }
    let complete = n > 0 && edges.len() + 1 == n;
    if !complete {
        e_proc = graph.edge_count();
        for e in &order[..] {
            let e = graph.edges()[*e];
            dsu.union(e.u, e.v);
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut component = vec![0; n];
    let mut components = 0;
    for (v, slot) in component.iter_mut().enumerate() {
        let r = dsu.find(v);
        if label[r] == usize::MAX {
            label[r] = components;
            components += 1;
        }
        *slot = label[r];
    }
    OracleMst {
        edges,
        weight,
        t_last,
        e_proc,
        complete,
        components,
        component,
    }
}
