//! Fractional-offset deduplication, realized as sub-step ranks.

use crate::graphio::Edge;

/// Edge weight plus its tie offset among edges of the same weight.
///
/// `(base, offset)` orders exactly like `base + offset / (|E| + 1)` would.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EffectiveWeight {
    pub base: u64,
    pub offset: u64,
}

/// Gives each edge an offset equal to the number of earlier edges with the
/// same weight, so all effective weights are distinct.
pub fn deduplicate(edges: &[Edge]) -> Vec<EffectiveWeight> {
    let mut seen = std::collections::HashMap::new();
    edges
        .iter()
        .map(|e| {
            let n = seen.entry(e.weight).or_insert(0u64);
            let offset = *n;
            *n += 1;
            EffectiveWeight {
                base: e.weight,
                offset,
            }
        })
        .collect()
}
