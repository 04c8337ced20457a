//! Deterministic event-driven execution of spiking networks.
//!
//! Neurons are integer LIF units (threshold, leak, potential) joined by
//! delayed integer-weight synapses, at most one per ordered neuron pair.
//! Time is a logical clock that jumps between event times. Structural
//! changes go through [`Network::rewire`], which needs the network to be idle
//! or suspended; every rewire is charged by its caller and the meter keeps
//! the charged cost apart from the physical modification count.
//!
//! A [`Suspension`] pauses the activity in flight: pending deliveries are
//! set aside, the suspended section may rewire and run short probe episodes
//! on a private timeline, and on drop everything that was pending before is
//! restored while the probe's leftovers are discarded.

mod event;
mod meter;

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet, VecDeque};
use std::ops::{ControlFlow, Deref, DerefMut};

use thiserror::Error;

pub use event::{SpikeEvent, Stimulus};
pub use meter::CostMeter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NeuronId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SynapseId(pub usize);

/// Role a neuron plays for the algorithm that built it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    /// Carries a data value (a sort-kernel neuron).
    Value,
    /// Spike source / control neuron. Not counted as compute neurons.
    Source,
    /// One graph vertex (union-find or Prim embedding).
    Vertex,
}

#[derive(Debug, Clone)]
pub struct Neuron {
    pub id: NeuronId,
    pub threshold: u64,
    pub leak: u64,
    pub role: Role,
    potential: i64,
    last_update: u64,
    last_fire_step: Option<u64>,
}

impl Neuron {
    pub fn potential(&self) -> i64 {
        self.potential
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synapse {
    pub id: SynapseId,
    pub pre: NeuronId,
    pub post: NeuronId,
    pub weight: i64,
    pub delay: u64,
    /// Sub-step rank stamped on every delivery made by this synapse.
    pub rank: u64,
}

impl Synapse {
    pub fn is_self_loop(&self) -> bool {
        self.pre == self.post
    }
}

/// How one firing of a neuron is entered in the energy ledger.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpikeCharge {
    Excluded,
    PerFire,
    /// One spike per outgoing synapse driven by the firing.
    PerOutgoingSynapse,
}

/// Per-role energy accounting, chosen by the algorithm that owns the network.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnergyRule {
    pub source: SpikeCharge,
    pub value: SpikeCharge,
    pub vertex: SpikeCharge,
}

impl Default for EnergyRule {
    fn default() -> Self {
        EnergyRule {
            source: SpikeCharge::Excluded,
            value: SpikeCharge::PerFire,
            vertex: SpikeCharge::PerFire,
        }
    }
}

impl EnergyRule {
    fn charge_for(&self, role: Role) -> SpikeCharge {
        match role {
            Role::Source => self.source,
            Role::Value => self.value,
            Role::Vertex => self.vertex,
        }
    }
}

/// One synapse modification inside a [`Network::rewire`] batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rewire {
    pub synapse: SynapseId,
    pub pre: Option<NeuronId>,
    pub post: Option<NeuronId>,
    pub delay: Option<i64>,
    pub weight: Option<i64>,
    pub rank: Option<u64>,
}

impl Rewire {
    pub fn of(synapse: SynapseId) -> Self {
        Rewire {
            synapse,
            pre: None,
            post: None,
            delay: None,
            weight: None,
            rank: None,
        }
    }

    pub fn pre(mut self, pre: NeuronId) -> Self {
        self.pre = Some(pre);
        self
    }

    pub fn post(mut self, post: NeuronId) -> Self {
        self.post = Some(post);
        self
    }

    pub fn delay(mut self, delay: i64) -> Self {
        self.delay = Some(delay);
        self
    }

    pub fn weight(mut self, weight: i64) -> Self {
        self.weight = Some(weight);
        self
    }

    pub fn rank(mut self, rank: u64) -> Self {
        self.rank = Some(rank);
        self
    }
}

/// A firing, as reported to observers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fire {
    pub neuron: NeuronId,
    pub time: u64,
    /// Synapse whose delivery triggered the firing; `None` for injections.
    pub via: Option<SynapseId>,
}

/// Observer verdict for a firing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flow {
    /// Schedule deliveries on the neuron's outgoing synapses as usual.
    Propagate,
    /// The observer took care of the spike; nothing is scheduled.
    Absorb,
    /// Stop the run now, without propagating this spike.
    Halt,
}

/// Callbacks invoked synchronously by [`Network::run`].
///
/// `on_fire` runs before the spike is propagated, so an observer may suspend
/// the network and rewire the firing neuron's synapses first.
pub trait Observer {
    fn on_fire(&mut self, net: &mut Network, fire: &Fire) -> Flow {
        let _ = (net, fire);
        Flow::Propagate
    }

    /// Called once all deliveries of `time` have been processed.
    fn on_step_end(&mut self, net: &Network, time: u64) -> ControlFlow<()> {
        let _ = (net, time);
        ControlFlow::Continue(())
    }
}

impl<F> Observer for F
where
    F: FnMut(&mut Network, &Fire) -> Flow,
{
    fn on_fire(&mut self, net: &mut Network, fire: &Fire) -> Flow {
        self(net, fire)
    }
}

/// Observer that lets everything propagate.
#[derive(Debug, Default, Clone, Copy)]
pub struct Quiet;

impl Observer for Quiet {}

/// Records every firing in order.
#[derive(Debug, Default, Clone)]
pub struct FireLog {
    pub fires: Vec<Fire>,
}

impl Observer for FireLog {
    fn on_fire(&mut self, _net: &mut Network, fire: &Fire) -> Flow {
        self.fires.push(*fire);
        Flow::Propagate
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Until {
    /// Until nothing is pending (or an observer halts).
    Quiescent,
    /// Process deliveries strictly before `t`, then leave the clock at `t`.
    Time(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSummary {
    pub start: u64,
    pub end: u64,
    pub fires: u64,
    pub halted: bool,
}

impl RunSummary {
    pub fn elapsed(&self) -> u64 {
        self.end - self.start
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("{what} must be a whole number, got {value}")]
    Negative { what: &'static str, value: i64 },
    #[error("unknown neuron {0:?}")]
    UnknownNeuron(NeuronId),
    #[error("unknown synapse {0:?}")]
    UnknownSynapse(SynapseId),
    #[error(
        "neurons {pre:?} -> {post:?} are already linked; each ordered pair admits a single synapse"
    )]
    DuplicateSynapse { pre: NeuronId, post: NeuronId },
    #[error("cannot schedule at t={requested}: clock is at {clock}")]
    PastTime { requested: u64, clock: u64 },
    #[error("structural change while activity is running; suspend the network first")]
    NotSuspended,
    #[error("run exceeded the non-termination guard of {limit} logical steps")]
    GuardTripped { limit: u64 },
}

fn whole(what: &'static str, value: i64) -> Result<u64, SimError> {
    u64::try_from(value).map_err(|_| SimError::Negative { what, value })
}

#[derive(Debug, Default)]
pub struct Network {
    neurons: Vec<Neuron>,
    synapses: Vec<Synapse>,
    outgoing: Vec<Vec<SynapseId>>,
    pairs: HashMap<(NeuronId, NeuronId), SynapseId>,
    // Deliveries at or before `clock` live in the heap; later ones are
    // buffered and merged in bulk when the clock is about to move.
    queue: BinaryHeap<Reverse<SpikeEvent>>,
    deferred: Vec<SpikeEvent>,
    // Injections at the current clock. They arrive in key order, so a FIFO
    // beside the heap keeps them sorted for free.
    immediate: VecDeque<SpikeEvent>,
    clock: u64,
    step_serial: u64,
    seq: u64,
    max_delay: u64,
    meter: CostMeter,
    energy: EnergyRule,
    max_steps: Option<u64>,
    running: u32,
    // `running` depth at which each open suspension was taken.
    suspensions: Vec<u32>,
}

impl Network {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_energy_rule(energy: EnergyRule) -> Self {
        Network {
            energy,
            ..Self::default()
        }
    }

    pub fn set_energy_rule(&mut self, energy: EnergyRule) {
        self.energy = energy;
    }

    /// Overrides the per-run non-termination guard (in logical steps).
    pub fn set_max_steps(&mut self, max_steps: Option<u64>) {
        self.max_steps = max_steps;
    }

    pub fn clock(&self) -> u64 {
        self.clock
    }

    pub fn meter(&self) -> CostMeter {
        self.meter
    }

    pub fn neurons(&self) -> &[Neuron] {
        &self.neurons
    }

    pub fn synapses(&self) -> &[Synapse] {
        &self.synapses
    }

    pub fn neuron(&self, id: NeuronId) -> Option<&Neuron> {
        self.neurons.get(id.0)
    }

    pub fn synapse(&self, id: SynapseId) -> Option<&Synapse> {
        self.synapses.get(id.0)
    }

    pub fn outgoing(&self, id: NeuronId) -> &[SynapseId] {
        self.outgoing.get(id.0).map_or(&[], Vec::as_slice)
    }

    pub fn synapse_between(&self, pre: NeuronId, post: NeuronId) -> Option<SynapseId> {
        self.pairs.get(&(pre, post)).copied()
    }

    pub fn is_suspended(&self) -> bool {
        !self.suspensions.is_empty()
    }

    pub fn pending(&self) -> impl Iterator<Item = &SpikeEvent> {
        self.immediate
            .iter()
            .chain(self.queue.iter().map(|r| &r.0))
            .chain(self.deferred.iter())
    }

    pub fn pending_len(&self) -> usize {
        self.immediate.len() + self.queue.len() + self.deferred.len()
    }

    /// Drops every pending delivery and returns how many were dropped.
    /// Activity after a cancel counts as a new step, so neurons that fired
    /// at the current clock may fire again.
    pub fn cancel_pending(&mut self) -> usize {
        let n = self.pending_len();
        self.immediate.clear();
        self.queue.clear();
        self.deferred.clear();
        self.step_serial += 1;
        n
    }

    fn structural_change_allowed(&self) -> Result<(), SimError> {
        match self.suspensions.last() {
            _ if self.running == 0 => Ok(()),
            Some(&depth) if depth == self.running => Ok(()),
            _ => Err(SimError::NotSuspended),
        }
    }

    fn check_neuron(&self, id: NeuronId) -> Result<(), SimError> {
        if id.0 < self.neurons.len() {
            Ok(())
        } else {
            Err(SimError::UnknownNeuron(id))
        }
    }

    pub fn add_neuron(
        &mut self,
        threshold: i64,
        leak: i64,
        role: Role,
    ) -> Result<NeuronId, SimError> {
        self.structural_change_allowed()?;
        let threshold = whole("threshold", threshold)?;
        let leak = whole("leak", leak)?;
        let id = NeuronId(self.neurons.len());
        self.neurons.push(Neuron {
            id,
            threshold,
            leak,
            role,
            potential: 0,
            last_update: self.clock,
            last_fire_step: None,
        });
        self.outgoing.push(Vec::new());
        self.meter.setup_steps += 1;
        self.meter.neuron_count += 1;
        if role == Role::Source {
            self.meter.control_neurons += 1;
        }
        Ok(id)
    }

    pub fn add_synapse(
        &mut self,
        pre: NeuronId,
        post: NeuronId,
        weight: i64,
        delay: i64,
    ) -> Result<SynapseId, SimError> {
        self.add_ranked_synapse(pre, post, weight, delay, 0)
    }

    pub fn add_ranked_synapse(
        &mut self,
        pre: NeuronId,
        post: NeuronId,
        weight: i64,
        delay: i64,
        rank: u64,
    ) -> Result<SynapseId, SimError> {
        self.structural_change_allowed()?;
        self.check_neuron(pre)?;
        self.check_neuron(post)?;
        let delay = whole("delay", delay)?;
        if self.pairs.contains_key(&(pre, post)) {
            return Err(SimError::DuplicateSynapse { pre, post });
        }
        let id = SynapseId(self.synapses.len());
        self.synapses.push(Synapse {
            id,
            pre,
            post,
            weight,
            delay,
            rank,
        });
        self.pairs.insert((pre, post), id);
        self.outgoing[pre.0].push(id);
        self.max_delay = self.max_delay.max(delay);
        self.meter.setup_steps += 1;
        self.meter.synapse_count += 1;
        Ok(id)
    }

    /// Applies `mods` atomically and charges `charge` structural steps.
    ///
    /// The batch is validated against the final configuration, so swapping
    /// two synapses' targets in one call is fine. Pending deliveries are kept
    /// as scheduled.
    pub fn rewire(&mut self, mods: &[Rewire], charge: u64) -> Result<(), SimError> {
        self.structural_change_allowed()?;
        if mods.iter().all(|m| m.pre.is_none() && m.post.is_none()) {
            return self.retune(mods, charge);
        }

        let mut staged: Vec<Synapse> = Vec::with_capacity(mods.len());
        let mut index: HashMap<SynapseId, usize> = HashMap::with_capacity(mods.len());
        for m in mods {
            let slot = match index.get(&m.synapse) {
                Some(&i) => i,
                None => {
                    let current = self
                        .synapses
                        .get(m.synapse.0)
                        .ok_or(SimError::UnknownSynapse(m.synapse))?
                        .clone();
                    staged.push(current);
                    index.insert(m.synapse, staged.len() - 1);
                    staged.len() - 1
                }
            };
            let s = &mut staged[slot];
            if let Some(pre) = m.pre {
                self.check_neuron(pre)?;
                s.pre = pre;
            }
            if let Some(post) = m.post {
                self.check_neuron(post)?;
                s.post = post;
            }
            if let Some(delay) = m.delay {
                s.delay = whole("delay", delay)?;
            }
            if let Some(weight) = m.weight {
                s.weight = weight;
            }
            if let Some(rank) = m.rank {
                s.rank = rank;
            }
        }

        let mut claimed = HashSet::with_capacity(staged.len());
        for s in &staged {
            let pair = (s.pre, s.post);
            let taken_by_other = self
                .pairs
                .get(&pair)
                .is_some_and(|other| !index.contains_key(other));
            if taken_by_other || !claimed.insert(pair) {
                return Err(SimError::DuplicateSynapse {
                    pre: s.pre,
                    post: s.post,
                });
            }
        }

        for s in staged {
            let old = &self.synapses[s.id.0];
            let (old_pre, old_post) = (old.pre, old.post);
            if self.pairs.get(&(old_pre, old_post)) == Some(&s.id) {
                self.pairs.remove(&(old_pre, old_post));
            }
            if old_pre != s.pre {
                self.outgoing[old_pre.0].retain(|&id| id != s.id);
                self.outgoing[s.pre.0].push(s.id);
            }
            self.pairs.insert((s.pre, s.post), s.id);
            self.max_delay = self.max_delay.max(s.delay);
            let id = s.id;
            self.synapses[id.0] = s;
        }

        self.meter.physical_mods += mods.len() as u64;
        self.meter.charged_structural_steps += charge;
        Ok(())
    }

    /// `rewire` for batches that leave every endpoint alone: no pair can
    /// collide, so mods are checked and then applied in order.
    fn retune(&mut self, mods: &[Rewire], charge: u64) -> Result<(), SimError> {
        for m in mods {
            if m.synapse.0 >= self.synapses.len() {
                return Err(SimError::UnknownSynapse(m.synapse));
            }
            if let Some(delay) = m.delay {
                whole("delay", delay)?;
            }
        }
        for m in mods {
            let s = &mut self.synapses[m.synapse.0];
            if let Some(delay) = m.delay {
                s.delay = delay as u64;
                self.max_delay = self.max_delay.max(s.delay);
            }
            if let Some(weight) = m.weight {
                s.weight = weight;
            }
            if let Some(rank) = m.rank {
                s.rank = rank;
            }
        }
        self.meter.physical_mods += mods.len() as u64;
        self.meter.charged_structural_steps += charge;
        Ok(())
    }

    /// Adds algorithm-charged spikes to the energy ledger.
    pub fn charge_spikes(&mut self, spikes: u64) {
        self.meter.spike_count += spikes;
    }

    /// Schedules an external stimulus that makes `neuron` fire at `time`.
    pub fn inject(&mut self, neuron: NeuronId, time: u64) -> Result<(), SimError> {
        self.check_neuron(neuron)?;
        if time < self.clock {
            return Err(SimError::PastTime {
                requested: time,
                clock: self.clock,
            });
        }
        let seq = self.next_seq();
        self.schedule(SpikeEvent {
            time,
            rank: 0,
            target: neuron,
            stimulus: Stimulus::Injected,
            seq,
        });
        Ok(())
    }

    /// Sends a spike from `neuron` along all its outgoing synapses as if it
    /// fired now. Used by observers that absorbed a firing and want to
    /// forward it inside a suspension.
    pub fn transmit(&mut self, neuron: NeuronId) -> Result<(), SimError> {
        self.check_neuron(neuron)?;
        self.propagate(neuron);
        Ok(())
    }

    fn next_seq(&mut self) -> u64 {
        self.seq += 1;
        self.seq
    }

    fn schedule(&mut self, event: SpikeEvent) {
        if event.time == self.clock && event.stimulus == Stimulus::Injected {
            self.immediate.push_back(event);
        } else if event.time <= self.clock {
            self.queue.push(Reverse(event));
        } else {
            self.deferred.push(event);
        }
    }

    fn propagate(&mut self, neuron: NeuronId) {
        for i in 0..self.outgoing[neuron.0].len() {
            let sid = self.outgoing[neuron.0][i];
            let s = &self.synapses[sid.0];
            // A zero-weight spike can never lift a neuron with a positive
            // threshold over it, and leak is applied lazily, so the delivery
            // is unobservable and is not queued.
            if s.weight == 0 && self.neurons[s.post.0].threshold > 0 {
                continue;
            }
            let event = SpikeEvent {
                time: self.clock + s.delay,
                rank: s.rank,
                target: s.post,
                stimulus: Stimulus::Synaptic {
                    synapse: sid,
                    weight: s.weight,
                },
                seq: 0,
            };
            let seq = self.next_seq();
            self.schedule(SpikeEvent { seq, ..event });
        }
    }

    fn next_time(&mut self) -> Option<u64> {
        if !self.immediate.is_empty() {
            return Some(self.clock);
        }
        if let Some(Reverse(top)) = self.queue.peek() {
            if top.time <= self.clock {
                return Some(top.time);
            }
        }
        if !self.deferred.is_empty() {
            self.queue.extend(self.deferred.drain(..).map(Reverse));
        }
        self.queue.peek().map(|r| r.0.time)
    }

    /// Removes the smallest pending event; call after `next_time`.
    fn pop_next(&mut self) -> Option<SpikeEvent> {
        match (self.immediate.front(), self.queue.peek()) {
            (Some(a), Some(Reverse(b))) if b < a => self.queue.pop().map(|r| r.0),
            (Some(_), _) => self.immediate.pop_front(),
            (None, _) => self.queue.pop().map(|r| r.0),
        }
    }

    fn default_guard(&self) -> u64 {
        let horizon = self
            .pending()
            .map(|e| e.time - self.clock)
            .max()
            .unwrap_or(0)
            .max(self.max_delay);
        2 * (horizon + self.synapses.len() as u64 + 2)
    }

    /// Integrates one delivery; returns the firing it caused, if any.
    fn deliver(&mut self, event: SpikeEvent) -> Option<Fire> {
        let clock = self.clock;
        let serial = self.step_serial;
        let n = &mut self.neurons[event.target.0];
        // At most one firing per neuron per timestep.
        if n.last_fire_step == Some(serial) {
            return None;
        }
        let fired = match event.stimulus {
            Stimulus::Injected => true,
            Stimulus::Synaptic { weight, .. } => {
                if n.leak >= 2 {
                    let mut elapsed = clock.saturating_sub(n.last_update);
                    while elapsed > 0 && n.potential != 0 {
                        let next = n.potential.div_euclid(n.leak as i64);
                        if next == n.potential {
                            break;
                        }
                        n.potential = next;
                        elapsed -= 1;
                    }
                }
                n.last_update = clock;
                n.potential += weight;
                n.potential >= n.threshold as i64
            }
        };
        if !fired {
            return None;
        }
        n.potential = 0;
        n.last_update = clock;
        n.last_fire_step = Some(serial);
        let role = n.role;
        self.meter.fires += 1;
        self.meter.spike_count += match self.energy.charge_for(role) {
            SpikeCharge::Excluded => 0,
            SpikeCharge::PerFire => 1,
            SpikeCharge::PerOutgoingSynapse => self.outgoing[event.target.0].len() as u64,
        };
        Some(Fire {
            neuron: event.target,
            time: clock,
            via: event.synapse(),
        })
    }

    /// Processes deliveries in `(time, rank, synapse)` order.
    ///
    /// Elapsed logical time is added to `run_steps` unless the network is
    /// suspended. Fails when the run outlives the non-termination guard.
    pub fn run(
        &mut self,
        observer: &mut dyn Observer,
        until: Until,
    ) -> Result<RunSummary, SimError> {
        self.running += 1;
        let result = self.run_inner(observer, until);
        self.running -= 1;
        result
    }

    fn run_inner(
        &mut self,
        observer: &mut dyn Observer,
        until: Until,
    ) -> Result<RunSummary, SimError> {
        let start = self.clock;
        let limit = self.max_steps.unwrap_or_else(|| self.default_guard());
        let mut fires = 0;
        let mut halted = false;
        let mut open_step: Option<u64> = None;

        loop {
            let next = self.next_time();
            if let Some(t) = open_step.filter(|&t| next != Some(t)) {
                if observer.on_step_end(self, t).is_break() {
                    halted = true;
                    break;
                }
            }
            let Some(t) = next else { break };
            if let Until::Time(bound) = until {
                if t >= bound {
                    break;
                }
            }
            if t - start > limit {
                return Err(SimError::GuardTripped { limit });
            }
            let Some(event) = self.pop_next() else { break };
            if t > self.clock {
                self.clock = t;
                self.step_serial += 1;
            }
            open_step = Some(t);
            if let Some(fire) = self.deliver(event) {
                fires += 1;
                match observer.on_fire(self, &fire) {
                    Flow::Propagate => self.propagate(fire.neuron),
                    Flow::Absorb => {}
                    Flow::Halt => {
                        halted = true;
                        break;
                    }
                }
            }
        }

        if let (Until::Time(bound), false) = (until, halted) {
            if self.clock < bound {
                if bound - start > limit {
                    return Err(SimError::GuardTripped { limit });
                }
                self.clock = bound;
                self.step_serial += 1;
            }
        }
        let end = self.clock;
        if self.suspensions.is_empty() {
            self.meter.run_steps += end - start;
        }
        Ok(RunSummary {
            start,
            end,
            fires,
            halted,
        })
    }

    /// Pauses activity. See [`Suspension`].
    pub fn suspend(&mut self) -> Suspension<'_> {
        let saved_queue = std::mem::take(&mut self.queue);
        let saved_deferred = std::mem::take(&mut self.deferred);
        let saved_immediate = std::mem::take(&mut self.immediate);
        let saved_clock = self.clock;
        self.suspensions.push(self.running);
        self.step_serial += 1;
        Suspension {
            net: self,
            saved_queue,
            saved_deferred,
            saved_immediate,
            saved_clock,
        }
    }
}

/// Guard returned by [`Network::suspend`].
///
/// While it lives, the deliveries that were pending are frozen and the
/// network accepts structural changes. Runs started through the guard use a
/// private timeline whose length is booked as `suspended_steps`. Dropping the
/// guard discards whatever those runs left pending and resumes the frozen
/// activity at the original clock.
pub struct Suspension<'a> {
    net: &'a mut Network,
    saved_queue: BinaryHeap<Reverse<SpikeEvent>>,
    saved_deferred: Vec<SpikeEvent>,
    saved_immediate: VecDeque<SpikeEvent>,
    saved_clock: u64,
}

impl Deref for Suspension<'_> {
    type Target = Network;

    fn deref(&self) -> &Network {
        self.net
    }
}

impl DerefMut for Suspension<'_> {
    fn deref_mut(&mut self) -> &mut Network {
        self.net
    }
}

impl Drop for Suspension<'_> {
    fn drop(&mut self) {
        let net = &mut *self.net;
        net.meter.suspended_steps += net.clock - self.saved_clock;
        net.queue = std::mem::take(&mut self.saved_queue);
        net.deferred = std::mem::take(&mut self.saved_deferred);
        net.immediate = std::mem::take(&mut self.saved_immediate);
        net.clock = self.saved_clock;
        net.suspensions.pop();
        net.step_serial += 1;
    }
}
