//! Disjoint sets held in synapses.
//!
//! Every vertex neuron has exactly one outgoing "parent" synapse; roots point
//! at themselves. A find query retargets the two query synapses of a source
//! neuron to the endpoints and fires it: spikes climb the parent chains and a
//! root announces itself by re-firing through its own self-loop. Unions are
//! applied as one suspended rewire batch (union by rank, ties to the smaller
//! id, both find paths compressed onto the winner).

use std::collections::HashSet;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::costmodel::inverse_ackermann;
use crate::substrate::{
    CostMeter, EnergyRule, Fire, Flow, Network, NeuronId, Observer, Rewire, Role, SimError,
    SpikeCharge, Stimulus, SynapseId, Until,
};

/// Spikes charged per query: the two endpoints and their two parents.
pub const SPIKES_PER_QUERY: u64 = 4;
/// Structural steps charged per query for retargeting the two query synapses.
pub const QUERY_REWIRE_CHARGE: u64 = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UfError {
    #[error("a union-find network needs at least one vertex")]
    NoVertices,
    #[error("vertex {vertex} is out of range for {count} vertices")]
    UnknownVertex { vertex: usize, count: usize },
    #[error("vertices {u} and {v} are already in the same set")]
    SameSet { u: usize, v: usize },
    #[error("spike roots {spiked:?} disagree with synapse roots {pointed:?}")]
    Inconsistent {
        spiked: Vec<usize>,
        pointed: Vec<usize>,
    },
    #[error(transparent)]
    Sim(#[from] SimError),
}

/// Vertex neurons and their parent synapses, plus the host-side rank table.
#[derive(Debug, Clone)]
pub(crate) struct Forest {
    base: usize,
    parent_syn: Vec<SynapseId>,
    rank: Vec<u32>,
    alpha: u64,
}

impl Forest {
    /// Adds one vertex neuron and one self-loop parent synapse per vertex.
    pub(crate) fn build(net: &mut Network, count: usize) -> Result<Self, SimError> {
        let base = net.neurons().len();
        for _ in 0..count {
            net.add_neuron(1, 0, Role::Vertex)?;
        }
        let parent_syn = (0..count)
            .map(|v| net.add_synapse(NeuronId(base + v), NeuronId(base + v), 1, 1))
            .collect::<Result<_, _>>()?;
        Ok(Forest {
            base,
            parent_syn,
            rank: vec![0; count],
            alpha: inverse_ackermann(count as u64),
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.parent_syn.len()
    }

    pub(crate) fn alpha(&self) -> u64 {
        self.alpha
    }

    pub(crate) fn neuron(&self, v: usize) -> NeuronId {
        NeuronId(self.base + v)
    }

    fn vertex_of(&self, n: NeuronId) -> Option<usize> {
        n.0.checked_sub(self.base).filter(|&v| v < self.len())
    }

    pub(crate) fn check(&self, v: usize) -> Result<(), UfError> {
        if v < self.len() {
            Ok(())
        } else {
            Err(UfError::UnknownVertex {
                vertex: v,
                count: self.len(),
            })
        }
    }

    pub(crate) fn parent(&self, net: &Network, v: usize) -> usize {
        net.synapse(self.parent_syn[v])
            .expect("parent synapse")
            .post
            .0
            - self.base
    }

    /// Vertices from `v` up to and including its root.
    pub(crate) fn path(&self, net: &Network, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut x = v;
        loop {
            let p = self.parent(net, x);
            if p == x {
                return path;
            }
            path.push(p);
            x = p;
        }
    }

    pub(crate) fn root(&self, net: &Network, v: usize) -> usize {
        *self.path(net, v).last().expect("path has a root")
    }

    /// Checks the roots reported by spikes against the parent synapses.
    pub(crate) fn confirm_roots(
        &self,
        net: &Network,
        u: usize,
        v: usize,
        roots: &[usize],
    ) -> Result<(), UfError> {
        let mut pointed = vec![self.root(net, u)];
        let rv = self.root(net, v);
        if rv != pointed[0] {
            pointed.push(rv);
        }
        let spiked: HashSet<_> = roots.iter().copied().collect();
        if spiked == pointed.iter().copied().collect() {
            Ok(())
        } else {
            Err(UfError::Inconsistent {
                spiked: roots.to_vec(),
                pointed,
            })
        }
    }

    /// Rewire batch that unites the sets of `u` and `v`; updates ranks.
    pub(crate) fn union_mods(
        &mut self,
        net: &Network,
        u: usize,
        v: usize,
    ) -> Result<Vec<Rewire>, UfError> {
        let pu = self.path(net, u);
        let pv = self.path(net, v);
        let (ru, rv) = (*pu.last().unwrap(), *pv.last().unwrap());
        if ru == rv {
            return Err(UfError::SameSet { u, v });
        }
        let winner = match self.rank[ru].cmp(&self.rank[rv]) {
            std::cmp::Ordering::Greater => ru,
            std::cmp::Ordering::Less => rv,
            std::cmp::Ordering::Equal => {
                let w = ru.min(rv);
                self.rank[w] += 1;
                w
            }
        };
        let target = self.neuron(winner);
        Ok(pu
            .iter()
            .chain(pv.iter())
            .filter(|&&x| x != winner && self.parent(net, x) != winner)
            .map(|&x| Rewire::of(self.parent_syn[x]).post(target))
            .collect())
    }

    /// Runs a find probe on the suspended network's private timeline and
    /// returns the roots in the order their echoes arrived.
    pub(crate) fn probe(&self, net: &mut Network) -> Result<Vec<usize>, SimError> {
        let mut probe = FindProbe {
            forest: self,
            roots: Vec::with_capacity(2),
        };
        net.run(&mut probe, Until::Quiescent)?;
        Ok(probe.roots)
    }
}

/// Watches a find episode: records self-loop echoes and stops once nothing
/// but echoes of known roots is left in flight.
struct FindProbe<'a> {
    forest: &'a Forest,
    roots: Vec<usize>,
}

impl FindProbe<'_> {
    fn is_echo(&self, target: NeuronId, synapse: SynapseId) -> bool {
        self.forest
            .vertex_of(target)
            .is_some_and(|v| self.forest.parent_syn[v] == synapse)
    }
}

impl Observer for FindProbe<'_> {
    fn on_fire(&mut self, net: &mut Network, fire: &Fire) -> Flow {
        if let (Some(v), Some(via)) = (self.forest.vertex_of(fire.neuron), fire.via) {
            let echo = self.forest.parent_syn[v] == via
                && net.synapse(via).is_some_and(|s| s.is_self_loop());
            if echo && !self.roots.contains(&v) {
                self.roots.push(v);
            }
        }
        Flow::Propagate
    }

    fn on_step_end(&mut self, net: &Network, _time: u64) -> ControlFlow<()> {
        let settled = net.pending().all(|e| match e.stimulus {
            Stimulus::Synaptic { synapse, .. } => {
                self.is_echo(e.target, synapse)
                    && net.synapse(synapse).is_some_and(|s| s.is_self_loop())
                    && self
                        .forest
                        .vertex_of(e.target)
                        .is_some_and(|v| self.roots.contains(&v))
            }
            Stimulus::Injected => false,
        });
        if settled {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    }
}

/// Result of one find query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FindResult {
    /// Distinct roots, in echo order.
    pub roots: Vec<usize>,
}

impl FindResult {
    pub fn root_count(&self) -> usize {
        self.roots.len()
    }
}

/// The union-find network of one source, |V| vertex neurons and |V| + 2
/// synapses.
#[derive(Debug)]
pub struct UnionFindNet {
    net: Network,
    source: NeuronId,
    query: [SynapseId; 2],
    forest: Forest,
    accepted: usize,
}

impl UnionFindNet {
    pub fn build(num_vertices: usize) -> Result<Self, UfError> {
        if num_vertices == 0 {
            return Err(UfError::NoVertices);
        }
        let mut net = Network::with_energy_rule(EnergyRule {
            source: SpikeCharge::Excluded,
            value: SpikeCharge::Excluded,
            vertex: SpikeCharge::Excluded,
        });
        let forest = Forest::build(&mut net, num_vertices)?;
        let source = net.add_neuron(1, 0, Role::Source)?;
        // Query synapses start parked on the first vertex and on the source.
        let a = net.add_synapse(source, forest.neuron(0), 1, 1)?;
        let b = net.add_synapse(source, source, 0, 2)?;
        Ok(UnionFindNet {
            net,
            source,
            query: [a, b],
            forest,
            accepted: 0,
        })
    }

    pub fn meter(&self) -> CostMeter {
        self.net.meter()
    }

    /// Overrides the non-termination guard of every find probe.
    pub fn set_max_steps(&mut self, max_steps: Option<u64>) {
        self.net.set_max_steps(max_steps);
    }

    pub fn network(&self) -> &Network {
        &self.net
    }

    pub fn vertex_count(&self) -> usize {
        self.forest.len()
    }

    /// Edges accepted through [`query_edge`](Self::query_edge) so far.
    pub fn accepted(&self) -> usize {
        self.accepted
    }

    pub fn alpha(&self) -> u64 {
        self.forest.alpha()
    }

    /// Current parent of every vertex, read from the parent synapses.
    pub fn parents(&self) -> Vec<usize> {
        (0..self.forest.len())
            .map(|v| self.forest.parent(&self.net, v))
            .collect()
    }

    pub fn ranks(&self) -> &[u32] {
        &self.forest.rank
    }

    /// Root of `v` by following parent synapses (no spikes, no cost).
    pub fn root_of(&self, v: usize) -> Result<usize, UfError> {
        self.forest.check(v)?;
        Ok(self.forest.root(&self.net, v))
    }

    /// Spike-driven find on `u` and `v`; charges 2 steps and 4 spikes.
    pub fn find(&mut self, u: usize, v: usize) -> Result<FindResult, UfError> {
        self.forest.check(u)?;
        self.forest.check(v)?;
        let [a, b] = self.query;
        let second = if u == v {
            Rewire::of(b).post(self.source).weight(0)
        } else {
            Rewire::of(b).post(self.forest.neuron(v)).weight(1)
        };
        let mut s = self.net.suspend();
        s.rewire(
            &[Rewire::of(a).post(self.forest.neuron(u)), second],
            QUERY_REWIRE_CHARGE,
        )?;
        let now = s.clock();
        s.inject(self.source, now)?;
        let roots = self.forest.probe(&mut s)?;
        s.charge_spikes(SPIKES_PER_QUERY);
        drop(s);
        self.forest.confirm_roots(&self.net, u, v, &roots)?;
        Ok(FindResult { roots })
    }

    /// Unites the sets of `u` and `v`, charging α(|V|).
    pub fn union(&mut self, u: usize, v: usize) -> Result<(), UfError> {
        self.forest.check(u)?;
        self.forest.check(v)?;
        let mods = self.forest.union_mods(&self.net, u, v)?;
        let mut s = self.net.suspend();
        s.rewire(&mods, self.forest.alpha())?;
        Ok(())
    }

    /// One Kruskal step: find, then union if the endpoints are apart.
    ///
    /// Every query is charged `2 + α(|V|)` steps and 4 spikes whether or not
    /// the edge is accepted.
    pub fn query_edge(&mut self, u: usize, v: usize) -> Result<bool, UfError> {
        let found = self.find(u, v)?;
        if found.root_count() > 1 {
            self.union(u, v)?;
            self.accepted += 1;
            Ok(true)
        } else {
            let mut s = self.net.suspend();
            s.rewire(&[], self.forest.alpha())?;
            Ok(false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_counts() {
        let uf = UnionFindNet::build(3).unwrap();
        let m = uf.meter();
        assert_eq!(m.neuron_count, 4);
        assert_eq!(m.compute_neurons(), 3);
        assert_eq!(m.synapse_count, 5);
        assert_eq!(m.setup_steps, 4 + 5);
        assert!(uf.ranks().iter().all(|&r| r == 0));
        assert_eq!(UnionFindNet::build(0).unwrap_err(), UfError::NoVertices);
    }

    #[test]
    fn single_vertex_find_has_one_root() {
        let mut uf = UnionFindNet::build(1).unwrap();
        assert_eq!(uf.find(0, 0).unwrap().roots, vec![0]);
    }

    #[test]
    fn fresh_find_sees_both_endpoints() {
        let mut uf = UnionFindNet::build(4).unwrap();
        let r = uf.find(0, 1).unwrap();
        assert_eq!(r.roots, vec![0, 1]);
        let m = uf.meter();
        assert_eq!(m.charged_structural_steps, 2);
        assert_eq!(m.spike_count, 4);
        assert_eq!(m.run_steps, 0);
        assert!(m.suspended_steps > 0);
        assert_eq!(uf.find(2, 2).unwrap().root_count(), 1);
    }

    #[test]
    fn union_follows_rank_and_tie_rules() {
        let mut uf = UnionFindNet::build(4).unwrap();
        uf.union(1, 0).unwrap();
        // Equal ranks: the smaller id wins.
        assert_eq!(uf.parents(), vec![0, 0, 2, 3]);
        assert_eq!(uf.ranks()[0], 1);
        uf.union(3, 1).unwrap();
        assert_eq!(uf.parents()[3], 0);
        assert_eq!(uf.find(0, 1).unwrap().root_count(), 1);
        // Two unions at alpha = 1, plus one find.
        assert_eq!(uf.meter().charged_structural_steps, 2 + 2);
        assert_eq!(uf.union(1, 3), Err(UfError::SameSet { u: 1, v: 3 }));
    }

    #[test]
    fn query_edge_charges_every_query() {
        let mut uf = UnionFindNet::build(3).unwrap();
        let alpha = uf.alpha();
        assert_eq!(alpha, 1);
        assert!(uf.query_edge(0, 1).unwrap());
        assert_eq!(uf.meter().charged_structural_steps, 2 + alpha);
        assert!(!uf.query_edge(0, 1).unwrap());
        assert_eq!(uf.meter().charged_structural_steps, 2 * (2 + alpha));
        assert!(!uf.query_edge(2, 2).unwrap());
        assert_eq!(uf.meter().spike_count, 12);
        assert_eq!(uf.accepted(), 1);
    }

    #[test]
    fn compression_flattens_long_chains() {
        let n = 9;
        let mut uf = UnionFindNet::build(n).unwrap();
        for v in 1..n {
            uf.query_edge(v - 1, v).unwrap();
        }
        let root = uf.root_of(0).unwrap();
        for v in 0..n {
            let path = uf.forest.path(&uf.net, v);
            assert!(path.len() <= 2, "vertex {v} path {path:?}");
            assert_eq!(*path.last().unwrap(), root);
        }
    }

    #[test]
    fn unknown_vertices_are_rejected() {
        let mut uf = UnionFindNet::build(2).unwrap();
        assert_eq!(
            uf.find(0, 5),
            Err(UfError::UnknownVertex {
                vertex: 5,
                count: 2
            })
        );
    }

    #[test]
    fn synapse_count_stays_fixed() {
        let mut uf = UnionFindNet::build(6).unwrap();
        for (u, v) in [(0, 1), (2, 3), (1, 3), (4, 5), (0, 5), (2, 4)] {
            uf.query_edge(u, v).unwrap();
        }
        assert_eq!(uf.meter().synapse_count, 8);
        assert_eq!(uf.network().synapses().len(), 8);
    }
}
