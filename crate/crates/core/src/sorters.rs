//! Sorting by synaptic delay.
//!
//! [`neuro_sort`] turns every value into the delay of a synapse from a shared
//! source; the order in which the value neurons fire is the sorted order.
//! [`neuro_radix_sort`] repeats that with one-bit delays, once per bit, on a
//! single network whose synapses are rewired between passes.

use thiserror::Error;

use crate::substrate::{
    CostMeter, Fire, Flow, Network, NeuronId, Rewire, Role, SimError, SynapseId, Until,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SortError {
    #[error("value {value} at position {index} is negative")]
    Negative { index: usize, value: i64 },
    #[error("cannot take the bit width of an empty sequence")]
    Empty,
    #[error("value {value} does not fit in {bits} bits")]
    ValueTooWide { value: i64, bits: u32 },
    #[error("bit width {0} is outside 1..=63")]
    BadBitWidth(u32),
    #[error(transparent)]
    Sim(#[from] SimError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortOutcome {
    pub values: Vec<i64>,
    /// `order[k]` is the input position of the k-th smallest value.
    pub order: Vec<usize>,
    pub meter: CostMeter,
    /// Bit width used by the radix sort, if one ran.
    pub bits: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitCount {
    pub bits: u32,
    pub meter: CostMeter,
}

/// Bit width of `value`; zero still needs one bit.
pub fn bit_width(value: u64) -> u32 {
    (u64::BITS - value.leading_zeros()).max(1)
}

fn check_whole(values: &[i64]) -> Result<(), SortError> {
    match values.iter().position(|&v| v < 0) {
        Some(index) => Err(SortError::Negative {
            index,
            value: values[index],
        }),
        None => Ok(()),
    }
}

struct DelayLine {
    net: Network,
    source: NeuronId,
    first_value: usize,
}

impl DelayLine {
    /// Source plus one value neuron and one synapse per delay.
    fn build(delays: &[i64], max_steps: Option<u64>) -> Result<Self, SimError> {
        let mut net = Network::new();
        net.set_max_steps(max_steps);
        let source = net.add_neuron(1, 0, Role::Source)?;
        let first_value = source.0 + 1;
        for _ in delays {
            net.add_neuron(0, 0, Role::Value)?;
        }
        for (i, &d) in delays.iter().enumerate() {
            net.add_synapse(source, NeuronId(first_value + i), 1, d)?;
        }
        Ok(DelayLine {
            net,
            source,
            first_value,
        })
    }

    /// Fires the source at the current clock and returns value-neuron
    /// positions in firing order.
    fn fire(&mut self, until: Until) -> Result<Vec<usize>, SimError> {
        let mut order = Vec::with_capacity(self.net.neurons().len() - 1);
        let first = self.first_value;
        let source = self.source;
        self.net.inject(source, self.net.clock())?;
        self.net.run(
            &mut |_: &mut Network, fire: &Fire| {
                if fire.neuron != source {
                    order.push(fire.neuron.0 - first);
                }
                Flow::Propagate
            },
            until,
        )?;
        Ok(order)
    }
}

/// Sorts whole numbers by firing one delayed spike per value.
///
/// Ties keep their input order. Running time is `max(values)` steps and one
/// spike is charged per value.
pub fn neuro_sort(values: &[i64]) -> Result<SortOutcome, SortError> {
    neuro_sort_guarded(values, None)
}

/// [`neuro_sort`] with an explicit non-termination guard.
pub fn neuro_sort_guarded(
    values: &[i64],
    max_steps: Option<u64>,
) -> Result<SortOutcome, SortError> {
    check_whole(values)?;
    let mut line = DelayLine::build(values, max_steps)?;
    let order = line.fire(Until::Quiescent)?;
    Ok(SortOutcome {
        values: order.iter().map(|&i| values[i]).collect(),
        order,
        meter: line.net.meter(),
        bits: None,
    })
}

/// Bit width of the largest value, read off the last firing of a
/// [`neuro_sort`] run. The run's cost is returned alongside.
pub fn get_max_bit_count(values: &[i64]) -> Result<BitCount, SortError> {
    max_bit_count(values, None)
}

fn max_bit_count(values: &[i64], max_steps: Option<u64>) -> Result<BitCount, SortError> {
    if values.is_empty() {
        return Err(SortError::Empty);
    }
    let sorted = neuro_sort_guarded(values, max_steps)?;
    let max = *sorted.values.last().expect("non-empty input");
    Ok(BitCount {
        bits: bit_width(max as u64),
        meter: sorted.meter,
    })
}

/// LSD binary radix sort, one delay-sort pass per bit.
///
/// Each pass rewires all value synapses (delay = current bit, rank =
/// position after the previous pass) for a charge of N, then runs a fixed
/// two-step window. With `bits` unset the width is measured with
/// [`get_max_bit_count`] and that cost is included.
pub fn neuro_radix_sort(values: &[i64], bits: Option<u32>) -> Result<SortOutcome, SortError> {
    neuro_radix_sort_guarded(values, bits, None)
}

/// [`neuro_radix_sort`] with an explicit non-termination guard.
pub fn neuro_radix_sort_guarded(
    values: &[i64],
    bits: Option<u32>,
    max_steps: Option<u64>,
) -> Result<SortOutcome, SortError> {
    check_whole(values)?;
    let (bits, mut meter) = match bits {
        Some(b) if !(1..=63).contains(&b) => return Err(SortError::BadBitWidth(b)),
        Some(b) => {
            if let Some(&value) = values.iter().find(|&&v| (v as u64) >> b != 0) {
                return Err(SortError::ValueTooWide { value, bits: b });
            }
            (b, CostMeter::default())
        }
        None if values.is_empty() => {
            return Ok(SortOutcome {
                values: Vec::new(),
                order: Vec::new(),
                meter: CostMeter::default(),
                bits: None,
            })
        }
        None => {
            let count = max_bit_count(values, max_steps)?;
            (count.bits, count.meter)
        }
    };

    let mut line = DelayLine::build(&vec![0; values.len()], max_steps)?;
    let mut order: Vec<usize> = (0..values.len()).collect();
    let mut mods = Vec::with_capacity(values.len());
    for bit in 0..bits {
        mods.clear();
        mods.extend(order.iter().enumerate().map(|(pos, &i)| {
            Rewire::of(SynapseId(i))
                .delay((values[i] >> bit) & 1)
                .rank(pos as u64)
        }));
        line.net.rewire(&mods, values.len() as u64)?;
        let start = line.net.clock();
        order = line.fire(Until::Time(start + 2))?;
    }
    meter += line.net.meter();
    Ok(SortOutcome {
        values: order.iter().map(|&i| values[i]).collect(),
        order,
        meter,
        bits: Some(bits),
    })
}
