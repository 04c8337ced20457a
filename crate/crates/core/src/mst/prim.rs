use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{deduplicate, MstConfig, MstError, MstReport, Outcome};
use crate::costmodel::Algorithm;
use crate::graphio::Graph;
use crate::substrate::{Fire, Flow, Network, NeuronId, Observer, Rewire, Role, SynapseId, Until};

/// Stops a pass at the first firing outside the tree.
struct Scan<'a> {
    in_tree: &'a [bool],
    found: Option<Fire>,
}

impl Observer for Scan<'_> {
    fn on_fire(&mut self, _net: &mut Network, fire: &Fire) -> Flow {
        if self.in_tree[fire.neuron.0] {
            Flow::Propagate
        } else {
            self.found = Some(*fire);
            Flow::Halt
        }
    }
}

struct Tree {
    adjacency: Vec<Vec<usize>>,
    in_tree: Vec<bool>,
    members: Vec<NeuronId>,
    frontier: usize,
}

impl Tree {
    /// Adds `x`: its edges into the tree go silent (weight 0) and its other
    /// edges are pointed away from it.
    fn join(&mut self, net: &mut Network, graph: &Graph, x: usize) -> Result<(), MstError> {
        let mods: Vec<Rewire> = self.adjacency[x]
            .iter()
            .map(|&i| {
                let y = graph.edges()[i].other(x);
                let r = Rewire::of(SynapseId(i));
                if self.in_tree[y] {
                    self.frontier -= 1;
                    r.weight(0)
                } else {
                    self.frontier += 1;
                    r.pre(NeuronId(x)).post(NeuronId(y)).weight(1)
                }
            })
            .collect();
        net.rewire(&mods, 0)?;
        self.in_tree[x] = true;
        self.members.push(NeuronId(x));
        Ok(())
    }
}

/// Neuromorphic Prim: every pass fires all tree vertices at once and takes
/// the first vertex outside the tree to spike. Passes cost the weight of the
/// edge they select, so the run totals the MST weight.
///
/// Disconnected graphs yield a spanning forest: when no edge leaves the tree
/// the smallest unreached vertex starts a new one.
pub fn mst_prim(graph: &Graph, cfg: &MstConfig) -> Result<MstReport, MstError> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(MstError::Empty);
    }
    if let Some((first, second)) = graph.find_parallel() {
        return Err(MstError::Multigraph { first, second });
    }

    let mut net = Network::new();
    net.set_max_steps(cfg.max_steps);
    for _ in 0..n {
        net.add_neuron(1, 0, Role::Vertex)?;
    }
    for (e, w) in graph.edges().iter().zip(deduplicate(graph.edges())) {
        let (lo, hi) = e.key();
        net.add_ranked_synapse(NeuronId(lo), NeuronId(hi), 1, w.base as i64, w.offset)?;
    }

    let mut tree = Tree {
        adjacency: graph.adjacency(),
        in_tree: vec![false; n],
        members: Vec::with_capacity(n),
        frontier: 0,
    };
    let start = ChaCha8Rng::seed_from_u64(cfg.seed).gen_range(0..n);
    tree.join(&mut net, graph, start)?;

    let mut chosen = Vec::with_capacity(n - 1);
    let mut next_unreached = 0;
    while tree.members.len() < n {
        if tree.frontier == 0 {
            while tree.in_tree[next_unreached] {
                next_unreached += 1;
            }
            tree.join(&mut net, graph, next_unreached)?;
            continue;
        }
        let now = net.clock();
        for &m in &tree.members {
            net.inject(m, now)?;
        }
        let mut scan = Scan {
            in_tree: &tree.in_tree,
            found: None,
        };
        net.run(&mut scan, Until::Quiescent)?;
        let fire = scan
            .found
            .expect("a frontier edge always reaches a new vertex");
        net.cancel_pending();
        let edge = fire
            .via
            .expect("new vertices are reached through a synapse")
            .0;
        chosen.push(edge);
        tree.join(&mut net, graph, fire.neuron.0)?;
    }

    Ok(Outcome {
        submissions: chosen.clone(),
        chosen,
        bits: None,
        meter: net.meter(),
        valid_steps: Vec::new(),
    }
    .into_report(Algorithm::Prim, graph))
}
