use super::{MstConfig, MstError, MstReport, Outcome, RadixBits, ValidStep};
use crate::costmodel::Algorithm;
use crate::graphio::{Edge, Graph};
use crate::sorters::{bit_width, neuro_radix_sort_guarded, neuro_sort_guarded};
use crate::substrate::{
    EnergyRule, Fire, Flow, Network, NeuronId, Observer, Rewire, Role, SpikeCharge, SynapseId,
    Until,
};
use crate::unionfind::{Forest, UnionFindNet, QUERY_REWIRE_CHARGE, SPIKES_PER_QUERY};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sorter {
    Neuro,
    Radix,
}

fn weights(graph: &Graph) -> Vec<i64> {
    graph.edges().iter().map(|e| e.weight as i64).collect()
}

/// Sequential Kruskal: sort every edge weight to completion, then submit
/// edges in sorted order to the union-find network until the tree is done.
pub fn mst_seq(graph: &Graph, sorter: Sorter, cfg: &MstConfig) -> Result<MstReport, MstError> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(MstError::Empty);
    }
    let w = weights(graph);
    let (sorted, algorithm) = match sorter {
        Sorter::Neuro => (neuro_sort_guarded(&w, cfg.max_steps)?, Algorithm::SeqNeuro),
        Sorter::Radix => {
            let bits = match cfg.radix_bits {
                RadixBits::Fixed(b) => b,
                RadixBits::MaxWeight => bit_width(graph.max_weight().unwrap_or(0)),
            };
            (
                neuro_radix_sort_guarded(&w, Some(bits), cfg.max_steps)?,
                Algorithm::SeqRadix,
            )
        }
    };

    let mut uf = UnionFindNet::build(n)?;
    uf.set_max_steps(cfg.max_steps);
    let mut chosen = Vec::with_capacity(n - 1);
    let mut submissions = Vec::new();
    for &i in &sorted.order {
        if chosen.len() + 1 == n {
            break;
        }
        let e = graph.edges()[i];
        submissions.push(i);
        if uf.query_edge(e.u, e.v)? {
            chosen.push(i);
        }
    }

    Ok(Outcome {
        chosen,
        submissions,
        bits: sorted.bits,
        meter: sorted.meter + uf.meter(),
        valid_steps: Vec::new(),
    }
    .into_report(algorithm, graph))
}

/// Feeds sort-kernel firings straight into the union-find network.
struct Pipeline<'a> {
    edges: &'a [Edge],
    first_edge: usize,
    pipes: Vec<(SynapseId, SynapseId)>,
    forest: Forest,
    target: usize,
    chosen: Vec<usize>,
    submissions: Vec<usize>,
    steps: Vec<ValidStep>,
    error: Option<MstError>,
}

impl Pipeline<'_> {
    fn edge_of(&self, n: NeuronId) -> Option<usize> {
        n.0.checked_sub(self.first_edge)
            .filter(|&i| i < self.edges.len())
    }

    /// Serializes one edge through its pipes and resolves it.
    fn submit(&mut self, net: &mut Network, fire: &Fire, edge: usize) -> Result<(), MstError> {
        match self.steps.last_mut() {
            Some(step) if step.time == fire.time => step.submissions += 1,
            _ => self.steps.push(ValidStep {
                time: fire.time,
                submissions: 1,
            }),
        }
        let k = self.steps.last().map_or(0, |s| s.submissions - 1) as i64;
        let (to_u, to_v) = self.pipes[edge];
        let e = self.edges[edge];

        let mut s = net.suspend();
        s.rewire(
            &[Rewire::of(to_u).delay(1 + k), Rewire::of(to_v).delay(2 + k)],
            QUERY_REWIRE_CHARGE,
        )?;
        s.transmit(fire.neuron)?;
        let roots = self.forest.probe(&mut s)?;
        s.charge_spikes(SPIKES_PER_QUERY);
        self.forest.confirm_roots(&s, e.u, e.v, &roots)?;
        self.submissions.push(edge);
        let alpha = self.forest.alpha();
        if roots.len() > 1 {
            let mods = self.forest.union_mods(&s, e.u, e.v)?;
            s.rewire(&mods, alpha)?;
            self.chosen.push(edge);
        } else {
            s.rewire(&[], alpha)?;
        }
        Ok(())
    }
}

impl Observer for Pipeline<'_> {
    fn on_fire(&mut self, net: &mut Network, fire: &Fire) -> Flow {
        let Some(edge) = self.edge_of(fire.neuron) else {
            return Flow::Propagate;
        };
        match self.submit(net, fire, edge) {
            Ok(()) if self.chosen.len() == self.target => Flow::Halt,
            Ok(()) => Flow::Absorb,
            Err(e) => {
                self.error = Some(e);
                Flow::Halt
            }
        }
    }
}

/// Pipelined Kruskal: sort kernel and union-find share one network. Each
/// edge neuron is wired to both endpoint vertices by a pipe; when it fires,
/// its pipe delays are set to serialize it behind the edges that fired
/// earlier in the same step and the query runs immediately. The run stops
/// at the accepting submission of the last tree edge.
pub fn mst_pipe(graph: &Graph, cfg: &MstConfig) -> Result<MstReport, MstError> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(MstError::Empty);
    }
    let mut net = Network::with_energy_rule(EnergyRule {
        source: SpikeCharge::Excluded,
        value: SpikeCharge::PerOutgoingSynapse,
        vertex: SpikeCharge::Excluded,
    });
    net.set_max_steps(cfg.max_steps);

    let source = net.add_neuron(1, 0, Role::Source)?;
    let first_edge = net.neurons().len();
    for _ in graph.edges() {
        net.add_neuron(0, 0, Role::Value)?;
    }
    for e in graph.edges() {
        net.add_synapse(source, NeuronId(first_edge + e.index), 1, e.weight as i64)?;
    }
    let forest = Forest::build(&mut net, n)?;
    let mut pipes = Vec::with_capacity(graph.edge_count());
    for e in graph.edges() {
        let pre = NeuronId(first_edge + e.index);
        let to_u = net.add_synapse(pre, forest.neuron(e.u), 1, 1)?;
        let to_v = net.add_synapse(pre, forest.neuron(e.v), 1, 2)?;
        pipes.push((to_u, to_v));
    }

    let mut pipeline = Pipeline {
        edges: graph.edges(),
        first_edge,
        pipes,
        forest,
        target: n - 1,
        chosen: Vec::with_capacity(n - 1),
        submissions: Vec::new(),
        steps: Vec::new(),
        error: None,
    };
    if pipeline.target > 0 {
        net.inject(source, 0)?;
        net.run(&mut pipeline, Until::Quiescent)?;
        if let Some(e) = pipeline.error {
            return Err(e);
        }
        net.cancel_pending();
    }

    Ok(Outcome {
        chosen: pipeline.chosen,
        submissions: pipeline.submissions,
        bits: None,
        meter: net.meter(),
        valid_steps: pipeline.steps,
    }
    .into_report(Algorithm::Pipe, graph))
}
