use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::graph::{Graph, MAX_WEIGHT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("a connected simple graph on {n} vertices needs between {lo} and {hi} edges, got {m}")]
    Infeasible {
        n: usize,
        m: usize,
        lo: usize,
        hi: usize,
    },
    #[error("weight range {min}..={max} is empty or too large")]
    BadRange { min: u64, max: u64 },
}

/// Connected simple graph with `m` edges: a random spanning tree, then
/// distinct extra edges, then a shuffle. Weights are uniform over
/// `weights`. Fully determined by `seed`.
pub fn gen_random_graph(
    n: usize,
    m: usize,
    weights: (u64, u64),
    seed: u64,
) -> Result<Graph, GenError> {
    let (min, max) = weights;
    if min > max || max > MAX_WEIGHT {
        return Err(GenError::BadRange { min, max });
    }
    let hi = n.saturating_mul(n.saturating_sub(1)) / 2;
    let lo = n.saturating_sub(1);
    if n == 0 || m < lo || m > hi {
        return Err(GenError::Infeasible { n, m, lo, hi });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);

    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(m);
    let mut taken: HashSet<(usize, usize)> = HashSet::with_capacity(m);
    let norm = |a: usize, b: usize| (a.min(b), a.max(b));
    for i in 1..n {
        let p = order[rng.gen_range(0..i)];
        let pair = norm(order[i], p);
        taken.insert(pair);
        pairs.push(pair);
    }

    let extra = m - lo;
    if extra * 2 > hi - lo {
        // Dense: pick from the explicit complement.
        let mut rest: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|p| !taken.contains(p))
            .collect();
        rest.shuffle(&mut rng);
        pairs.extend(rest.into_iter().take(extra));
    } else {
        while pairs.len() < m {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b && taken.insert(norm(a, b)) {
                pairs.push(norm(a, b));
            }
        }
    }
    pairs.shuffle(&mut rng);

    let edges = pairs.into_iter().map(|(a, b)| {
        let w = rng.gen_range(min..=max);
        if rng.gen_bool(0.5) {
            (a, b, w)
        } else {
            (b, a, w)
        }
    });
    Ok(Graph::from_edges(n, edges).expect("generated edges are valid"))
}
