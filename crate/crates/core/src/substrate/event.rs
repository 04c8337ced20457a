use std::cmp::Ordering;

use super::{NeuronId, SynapseId};

/// What caused a pending delivery.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stimulus {
    /// External stimulus; the target fires regardless of its potential.
    Injected,
    /// A spike travelling along a synapse.
    Synaptic { synapse: SynapseId, weight: i64 },
}

/// A delivery scheduled for a logical timestep.
///
/// Deliveries are totally ordered by `(time, rank, source, seq)`: within a
/// timestep the sub-step rank decides first, then injections before synaptic
/// spikes, then ascending synapse id. `seq` only separates two deliveries of
/// the same synapse landing on the same step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpikeEvent {
    pub time: u64,
    pub rank: u64,
    pub target: NeuronId,
    pub stimulus: Stimulus,
    pub(crate) seq: u64,
}

impl SpikeEvent {
    pub fn synapse(&self) -> Option<SynapseId> {
        match self.stimulus {
            Stimulus::Injected => None,
            Stimulus::Synaptic { synapse, .. } => Some(synapse),
        }
    }

    fn key(&self) -> (u64, u64, u64, u64) {
        let source = match self.stimulus {
            Stimulus::Injected => 0,
            Stimulus::Synaptic { synapse, .. } => synapse.0 as u64 + 1,
        };
        (self.time, self.rank, source, self.seq)
    }
}

impl Ord for SpikeEvent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for SpikeEvent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syn(time: u64, rank: u64, id: usize) -> SpikeEvent {
        SpikeEvent {
            time,
            rank,
            target: NeuronId(0),
            stimulus: Stimulus::Synaptic {
                synapse: SynapseId(id),
                weight: 1,
            },
            seq: 0,
        }
    }

    #[test]
    fn order_is_time_then_rank_then_synapse() {
        let mut events = [syn(2, 0, 0), syn(1, 1, 0), syn(1, 0, 5), syn(1, 0, 3)];
        events.sort();
        let keys: Vec<_> = events
            .iter()
            .map(|e| (e.time, e.rank, e.synapse().unwrap().0))
            .collect();
        assert_eq!(keys, vec![(1, 0, 3), (1, 0, 5), (1, 1, 0), (2, 0, 0)]);
    }

    #[test]
    fn injections_precede_synaptic_spikes_on_the_same_step() {
        let inj = SpikeEvent {
            time: 4,
            rank: 0,
            target: NeuronId(1),
            stimulus: Stimulus::Injected,
            seq: 9,
        };
        assert!(inj < syn(4, 0, 0));
    }
}
