use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

/// Cost ledger of a network.
///
/// `charged_structural_steps` is what each algorithm declares for its
/// structural modifications; `physical_mods` counts what was actually
/// rewired. Likewise `spike_count` is the energy ledger under the network's
/// [`EnergyRule`](super::EnergyRule) (plus algorithm-charged spikes) and
/// `fires` counts every physical firing. Logical time spent inside
/// suspensions goes to `suspended_steps`, never to `run_steps`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostMeter {
    pub setup_steps: u64,
    pub run_steps: u64,
    pub charged_structural_steps: u64,
    pub physical_mods: u64,
    pub neuron_count: u64,
    pub synapse_count: u64,
    pub spike_count: u64,
    pub fires: u64,
    pub suspended_steps: u64,
    pub control_neurons: u64,
}

impl CostMeter {
    /// Run steps plus charged structural steps.
    pub fn charged_time(&self) -> u64 {
        self.run_steps + self.charged_structural_steps
    }

    /// Neurons excluding spike sources and other control neurons.
    pub fn compute_neurons(&self) -> u64 {
        self.neuron_count - self.control_neurons
    }

    /// `spike_count <= charged_time * (neurons + synapses)`.
    pub fn within_energy_bound(&self) -> bool {
        let size = self.neuron_count + self.synapse_count;
        self.spike_count <= self.charged_time().saturating_mul(size)
    }

    /// Field-wise difference `self - earlier`, for attributing cost to a phase.
    pub fn since(&self, earlier: &CostMeter) -> CostMeter {
        CostMeter {
            setup_steps: self.setup_steps - earlier.setup_steps,
            run_steps: self.run_steps - earlier.run_steps,
            charged_structural_steps: self.charged_structural_steps
                - earlier.charged_structural_steps,
            physical_mods: self.physical_mods - earlier.physical_mods,
            neuron_count: self.neuron_count - earlier.neuron_count,
            synapse_count: self.synapse_count - earlier.synapse_count,
            spike_count: self.spike_count - earlier.spike_count,
            fires: self.fires - earlier.fires,
            suspended_steps: self.suspended_steps - earlier.suspended_steps,
            control_neurons: self.control_neurons - earlier.control_neurons,
        }
    }
}

impl AddAssign for CostMeter {
    fn add_assign(&mut self, rhs: CostMeter) {
        self.setup_steps += rhs.setup_steps;
        self.run_steps += rhs.run_steps;
        self.charged_structural_steps += rhs.charged_structural_steps;
        self.physical_mods += rhs.physical_mods;
        self.neuron_count += rhs.neuron_count;
        self.synapse_count += rhs.synapse_count;
        self.spike_count += rhs.spike_count;
        self.fires += rhs.fires;
        self.suspended_steps += rhs.suspended_steps;
        self.control_neurons += rhs.control_neurons;
    }
}

impl Add for CostMeter {
    type Output = CostMeter;

    fn add(mut self, rhs: CostMeter) -> CostMeter {
        self += rhs;
        self
    }
}
