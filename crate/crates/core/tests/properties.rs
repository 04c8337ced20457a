use std::collections::BTreeMap;

use proptest::prelude::*;

use neuromst::costmodel::Algorithm;
use neuromst::graphio::Graph;
use neuromst::mst::{run, verify_mst, MstConfig, RadixBits};
use neuromst::sorters::{neuro_radix_sort, neuro_sort};
use neuromst::unionfind::UnionFindNet;

/// Simple graph: at most one edge per pair, may be disconnected.
fn simple_graph(max_n: usize, max_w: u64) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n, 0..=max_w), 0..=n * n).prop_map(move |raw| {
            let mut keep = BTreeMap::new();
            for (u, v, w) in raw {
                if u != v {
                    keep.entry((u.min(v), u.max(v))).or_insert(w);
                }
            }
            Graph::from_edges(n, keep.into_iter().map(|((u, v), w)| (u, v, w))).unwrap()
        })
    })
}

/// Dense Prim run from every unreached vertex; total forest weight.
fn classical_forest_weight(g: &Graph) -> u64 {
    let n = g.vertex_count();
    let mut best = vec![u64::MAX; n];
    let mut done = vec![false; n];
    let mut total = 0;
    for _ in 0..n {
        let x = (0..n)
            .filter(|&v| !done[v])
            .min_by_key(|&v| (best[v], v))
            .unwrap();
        if best[x] != u64::MAX {
            total += best[x];
        }
        done[x] = true;
        for e in g.edges() {
            if e.u == x || e.v == x {
                let y = e.other(x);
                if !done[y] {
                    best[y] = best[y].min(e.weight);
                }
            }
        }
    }
    total
}

fn stable_order(values: &[i64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by_key(|&i| values[i]);
    idx
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sorters_match_a_stable_sort(values in prop::collection::vec(0i64..300, 0..120)) {
        let want = stable_order(&values);
        let neuro = neuro_sort(&values).unwrap();
        prop_assert_eq!(&neuro.order, &want);
        let radix = neuro_radix_sort(&values, None).unwrap();
        prop_assert_eq!(&radix.order, &want);
        let wide = neuro_radix_sort(&values, Some(12)).unwrap();
        prop_assert_eq!(&wide.order, &want);
        let n = values.len() as u64;
        prop_assert_eq!(wide.meter.charged_time(), 12 * (2 + n));
        prop_assert_eq!(wide.meter.spike_count, 12 * n);
    }

    #[test]
    fn every_algorithm_finds_a_minimum_forest(g in simple_graph(7, 6), seed in 0u64..1000) {
        let want = classical_forest_weight(&g);
        for bits in [RadixBits::MaxWeight, RadixBits::Fixed(8)] {
            let cfg = MstConfig { seed, radix_bits: bits, max_steps: None };
            for alg in Algorithm::ALL {
                let r = run(alg, &g, &cfg).unwrap();
                prop_assert_eq!(r.total_weight, want, "{}", alg);
                prop_assert_eq!(verify_mst(&g, &r), Ok(()));
                prop_assert!(r.prediction_match, "{} {:?} vs {:?}", alg, r.meter, r.predicted);
            }
        }
    }

    #[test]
    fn pipe_never_trails_seq_neuro(g in simple_graph(9, 40)) {
        let cfg = MstConfig::default();
        let pipe = run(Algorithm::Pipe, &g, &cfg).unwrap();
        let seq = run(Algorithm::SeqNeuro, &g, &cfg).unwrap();
        prop_assert!(pipe.meter.charged_time() <= seq.meter.charged_time());
        prop_assert_eq!(pipe.submissions, seq.submissions);
    }

    #[test]
    fn union_find_partitions_follow_the_queries(
        n in 1usize..40,
        queries in prop::collection::vec((0usize..40, 0usize..40), 0..120),
    ) {
        let mut uf = UnionFindNet::build(n).unwrap();
        let mut label: Vec<usize> = (0..n).collect();
        for (u, v) in queries {
            let (u, v) = (u % n, v % n);
            let apart = label[u] != label[v];
            prop_assert_eq!(uf.query_edge(u, v).unwrap(), apart);
            if apart {
                let (from, to) = (label[u], label[v]);
                for l in label.iter_mut().filter(|l| **l == from) {
                    *l = to;
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let same = uf.root_of(a).unwrap() == uf.root_of(b).unwrap();
                prop_assert_eq!(same, label[a] == label[b]);
            }
        }
    }
}
