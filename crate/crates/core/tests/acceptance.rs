//! Acceptance checks. Runs as a plain binary (`harness = false`) and prints
//! one PASS/FAIL line per criterion; exits non-zero if any criterion fails.

use std::collections::HashSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use neuromst::costmodel::{bottleneck_advice, Algorithm};
use neuromst::graphio::{gen_random_graph, graph_stats, save_matrix_market, Graph};
use neuromst::mst::{run, verify_mst, MstConfig, MstReport, RadixBits};
use neuromst::sorters::{neuro_radix_sort, neuro_sort};
use neuromst::unionfind::UnionFindNet;

// ---------------------------------------------------------------- oracles

/// Plain Kruskal over (weight, index) order.
struct Truth {
    weight: u64,
    /// Edges examined until the tree was complete.
    e_proc: u64,
    t_last: u64,
    complete: bool,
}

fn truth(g: &Graph) -> Truth {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by_key(|&i| (g.edges()[i].weight, i));
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let (mut weight, mut e_proc, mut t_last, mut taken) = (0, 0, 0, 0);
    for i in order {
        if taken + 1 >= n {
            break;
        }
        e_proc += 1;
        let e = g.edges()[i];
        let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
        if a != b {
            parent[a] = b;
            weight += e.weight;
            t_last = e.weight;
            taken += 1;
        }
    }
    Truth {
        weight,
        e_proc,
        t_last,
        complete: taken + 1 >= n,
    }
}

fn alpha(n: u64) -> u64 {
    match n {
        0..=2 => 0,
        3..=4 => 1,
        5..=16 => 2,
        17..=65536 => 3,
        _ => 4,
    }
}

fn width(x: u64) -> u64 {
    (64 - x.leading_zeros() as u64).max(1)
}

fn cfg(seed: u64) -> MstConfig {
    MstConfig {
        seed,
        radix_bits: RadixBits::MaxWeight,
        max_steps: None,
    }
}

// ---------------------------------------------------------------- reporting

#[derive(Default)]
struct Tally {
    checked: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }

    fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn summary(&self) -> String {
        if self.ok() {
            format!("{} checks", self.checked)
        } else {
            let shown: Vec<&str> = self
                .failures
                .iter()
                .filter(|f| !f.is_empty())
                .map(String::as_str)
                .collect();
            format!(
                "{} of {} checks failed; first: {}",
                self.failures.len(),
                self.checked,
                shown.join(" | ")
            )
        }
    }
}

struct Outcome {
    lines: Vec<(bool, String)>,
}

impl Outcome {
    fn record(&mut self, name: &str, ok: bool, detail: String) {
        let line = format!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        println!("{line}");
        self.lines.push((ok, line));
    }
}

// ---------------------------------------------------------------- small graphs

const PAIRS5: [(usize, usize); 10] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

fn pairs(n: usize) -> Vec<(usize, usize)> {
    PAIRS5
        .iter()
        .copied()
        .filter(|&(u, v)| u < n && v < n)
        .collect()
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &(u, v) in edges {
            for (a, b) in [(u, v), (v, u)] {
                if a == x && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..=p.len() {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out
}

fn slot(u: usize, v: usize) -> usize {
    let (a, b) = (u.min(v), u.max(v));
    PAIRS5.iter().position(|&p| p == (a, b)).unwrap()
}

/// Connected edge sets on `n` labeled vertices. With `up_to_iso` only the
/// lexicographically smallest mask of each isomorphism class is kept, along
/// with the class's automorphisms as slot permutations.
fn edge_sets(n: usize, up_to_iso: bool) -> Vec<(Vec<usize>, Vec<Vec<usize>>)> {
    let all = pairs(n);
    let perms = permutations(n);
    let mut out = Vec::new();
    for mask in 0u32..(1 << all.len()) {
        let slots: Vec<usize> = (0..all.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let edges: Vec<_> = slots.iter().map(|&i| all[i]).collect();
        if n > 0 && !connected(n, &edges) {
            continue;
        }
        if !up_to_iso {
            out.push((slots, Vec::new()));
            continue;
        }
        let image =
            |p: &[usize]| -> u32 { edges.iter().map(|&(u, v)| 1u32 << slot(p[u], p[v])).sum() };
        if perms.iter().any(|p| image(p) < mask) {
            continue;
        }
        // Automorphisms, as maps from slot position in `slots` to slot position.
        let autos = perms
            .iter()
            .filter(|p| image(p) == mask)
            .map(|p| {
                slots
                    .iter()
                    .map(|&s| {
                        let (u, v) = all[s];
                        let t = slot(p[u], p[v]);
                        slots.iter().position(|&x| x == t).unwrap()
                    })
                    .collect()
            })
            .collect();
        out.push((slots, autos));
    }
    out
}

/// Runs every algorithm on `g` and checks weight and the energy bound.
fn check_all(g: &Graph, seed: u64, weight: &mut Tally, energy: &mut Tally) -> Vec<MstReport> {
    let t = truth(g);
    Algorithm::ALL
        .iter()
        .filter_map(|&alg| {
            let r = run(alg, g, &cfg(seed));
            weight.check(r.is_ok(), || {
                format!("{alg} failed on {:?}: {:?}", g.edges(), r.as_ref().err())
            });
            let r = r.ok()?;
            let verified = verify_mst(g, &r);
            weight.check(
                r.total_weight == t.weight && r.complete == t.complete && verified.is_ok(),
                || {
                    format!(
                        "{alg} weight {} vs {} on {:?} ({:?})",
                        r.total_weight,
                        t.weight,
                        g.edges(),
                        verified
                    )
                },
            );
            energy.check(r.meter.within_energy_bound(), || {
                format!(
                    "{alg} spikes {} time {} on {:?}",
                    r.meter.spike_count,
                    r.meter.charged_time(),
                    g.edges()
                )
            });
            Some(r)
        })
        .collect()
}

fn exhaustive_suite(weight: &mut Tally, energy: &mut Tally) -> u64 {
    let mut graphs = 0;
    let mut run_graph =
        |n: usize, edges: Vec<(usize, usize, u64)>, weight: &mut Tally, energy: &mut Tally| {
            let g = Graph::from_edges(n, edges).unwrap();
            check_all(&g, graphs, weight, energy);
            graphs += 1;
        };
    // Every labeled graph on up to four vertices.
    for n in 1..=4 {
        let all = pairs(n);
        for (slots, _) in edge_sets(n, false) {
            let m = slots.len();
            for code in 0..4u64.pow(m as u32) {
                let edges = slots
                    .iter()
                    .enumerate()
                    .map(|(k, &s)| (all[s].0, all[s].1, 1 + code / 4u64.pow(k as u32) % 4))
                    .collect();
                run_graph(n, edges, weight, energy);
            }
        }
    }
    // Five vertices: one labeling per weighted isomorphism class.
    for (slots, autos) in edge_sets(5, true) {
        let m = slots.len();
        let mut w = vec![0u8; m];
        for code in 0..4u64.pow(m as u32) {
            for (k, x) in w.iter_mut().enumerate() {
                *x = (code / 4u64.pow(k as u32) % 4) as u8;
            }
            let smaller = autos.iter().any(|a: &Vec<usize>| {
                // Weighting after relabeling, compared by the same base-4 code.
                let mut img = vec![0u8; m];
                for (k, &t) in a.iter().enumerate() {
                    img[t] = w[k];
                }
                img.iter().rev().lt(w.iter().rev())
            });
            if smaller {
                continue;
            }
            let edges = slots
                .iter()
                .zip(&w)
                .map(|(&s, &x)| (PAIRS5[s].0, PAIRS5[s].1, 1 + x as u64))
                .collect();
            run_graph(5, edges, weight, energy);
        }
    }
    graphs
}

fn random_suite_graph(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=200usize);
    let hi = (n * (n - 1) / 2).min(2000);
    let m = rng.gen_range(n - 1..=hi);
    // A quarter of the graphs use few distinct weights to exercise ties.
    let wmax = if seed.is_multiple_of(4) { 10 } else { 10_000 };
    gen_random_graph(n, m, (1, wmax), seed).unwrap()
}

// ---------------------------------------------------------------- main

fn main() {
    let mut out = Outcome { lines: Vec::new() };

    // Suites (a) and (b).
    let started = Instant::now();
    let mut weight = Tally::default();
    let mut energy = Tally::default();
    let mut meters = Tally::default();
    let mut dominance = Tally::default();
    let mut bottleneck = Tally::default();
    let small = exhaustive_suite(&mut weight, &mut energy);
    let (mut positive, mut negative) = (0, 0);
    for seed in 0..1000 {
        let g = random_suite_graph(seed);
        let t = truth(&g);
        let reports = check_all(&g, seed, &mut weight, &mut energy);
        if reports.len() != 4 {
            continue;
        }
        let (v, e) = (g.vertex_count() as u64, g.edge_count() as u64);
        let a = alpha(v);
        let max_w = g.edges().iter().map(|e| e.weight).max().unwrap();
        let b = width(max_w);
        let uf = t.e_proc * (2 + a);
        let expected = [
            (t.weight, (v - 1) * (v + 2) / 2),
            (max_w + uf, e + 4 * t.e_proc),
            (b * (2 + e) + uf, b * e + 4 * t.e_proc),
            (t.t_last + uf, 6 * t.e_proc),
        ];
        for (r, (time, spikes)) in reports.iter().zip(expected) {
            let m = r.meter;
            meters.check(
                m.charged_time() == time
                    && m.spike_count == spikes
                    && r.edges_processed
                        == if r.algorithm == Algorithm::Prim {
                            v - 1
                        } else {
                            t.e_proc
                        }
                    && m.compute_neurons()
                        == if r.algorithm == Algorithm::Prim {
                            v
                        } else {
                            e + v
                        }
                    && r.prediction_match,
                || {
                    format!(
                        "seed {seed} {}: time {} (want {time}) spikes {} (want {spikes})",
                        r.algorithm,
                        m.charged_time(),
                        m.spike_count
                    )
                },
            );
            if r.algorithm == Algorithm::Prim {
                meters.check(m.spike_count <= v * v, || {
                    format!("seed {seed}: prim spikes over |V|^2")
                });
            }
        }
        let time = |alg: Algorithm| reports[alg as usize].meter.charged_time() as i64;
        dominance.check(time(Algorithm::Pipe) <= time(Algorithm::SeqNeuro), || {
            format!(
                "seed {seed}: pipe {} > seq-neuro {}",
                time(Algorithm::Pipe),
                time(Algorithm::SeqNeuro)
            )
        });
        let margin = (b * (2 + e)) as i64 - t.t_last as i64;
        if margin != 0 {
            if margin > 0 {
                positive += 1;
            } else {
                negative += 1;
            }
            let diff = time(Algorithm::SeqRadix) - time(Algorithm::Pipe);
            bottleneck.check(diff.signum() == margin.signum(), || {
                format!("seed {seed}: seq-radix - pipe = {diff}, margin {margin}")
            });
            let stats = graph_stats(&g);
            let advice = bottleneck_advice(&stats, stats.t_last);
            let faster = if diff > 0 {
                Algorithm::Pipe
            } else {
                Algorithm::SeqRadix
            };
            bottleneck.check(
                advice.recommendation == faster && advice.margin == Some(margin),
                || {
                    format!(
                        "seed {seed}: advice {:?} but {faster} was faster",
                        advice.recommendation
                    )
                },
            );
        }
    }
    let elapsed = started.elapsed();
    let in_time = elapsed < Duration::from_secs(120);
    out.record(
        "correctness suite",
        weight.ok() && in_time,
        format!(
            "{small} exhaustive + 1000 random graphs, 4 algorithms, {} in {:.1}s (limit 120s)",
            weight.summary(),
            elapsed.as_secs_f64()
        ),
    );
    out.record(
        "meter formulas",
        meters.ok(),
        format!("1000 random graphs, {}", meters.summary()),
    );
    out.record(
        "dominance and bottleneck identities",
        dominance.ok() && bottleneck.ok(),
        format!(
            "pipe <= seq-neuro: {}; {positive} positive and {negative} negative margins: {}",
            dominance.summary(),
            bottleneck.summary()
        ),
    );
    out.record(
        "energy bound",
        energy.ok(),
        format!("both suites, {}", energy.summary()),
    );

    sorter_criterion(&mut out);
    speedup_criterion(&mut out);
    union_find_criterion(&mut out);
    determinism_criterion(&mut out);

    let failed = out.lines.iter().filter(|(ok, _)| !ok).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        out.lines.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

fn sorter_criterion(out: &mut Outcome) {
    let started = Instant::now();
    let mut tally = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5027);
    for case in 0..10_000u64 {
        let n = rng.gen_range(1..=4096usize);
        let values: Vec<i64> = (0..n).map(|_| rng.gen_range(0..1 << 16)).collect();
        let mut oracle: Vec<usize> = (0..n).collect();
        oracle.sort_by_key(|&i| values[i]);
        let max = *values.iter().max().unwrap() as u64;
        let b = if case % 2 == 0 { 16 } else { width(max) };

        let neuro = neuro_sort(&values).unwrap();
        tally.check(neuro.order == oracle, || {
            format!("case {case}: neuro_sort order")
        });
        tally.check(
            neuro.meter.charged_time() == max && neuro.meter.spike_count == n as u64,
            || format!("case {case}: neuro_sort meter {:?}", neuro.meter),
        );
        let radix = neuro_radix_sort(&values, Some(b as u32)).unwrap();
        tally.check(radix.order == oracle, || {
            format!("case {case}: radix order")
        });
        tally.check(
            radix.meter.charged_time() == b * (2 + n as u64)
                && radix.meter.spike_count == b * n as u64,
            || format!("case {case}: radix meter {:?} for b={b}", radix.meter),
        );
    }

    let mut sweep = Tally::default();
    for b in 4..=16u32 {
        let top = (1i64 << b) - 1;
        let n0 = (1usize << b).div_ceil(b as usize);
        for n in [n0, n0 + 1, 2 * n0, 4 * n0] {
            let mut values: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=top)).collect();
            let at = rng.gen_range(0..n);
            values[at] = top;
            let neuro = neuro_sort(&values).unwrap();
            let radix = neuro_radix_sort(&values, Some(b)).unwrap();
            sweep.check(
                neuro.meter.charged_time() < radix.meter.charged_time()
                    && neuro.values == radix.values,
                || {
                    format!(
                        "b={b} N={n}: neuro {} vs radix {}",
                        neuro.meter.charged_time(),
                        radix.meter.charged_time()
                    )
                },
            );
        }
    }
    out.record(
        "sorter properties",
        tally.ok() && sweep.ok(),
        format!(
            "10000 arrays: {}; crossover sweep b=4..16: {} ({:.1}s)",
            tally.summary(),
            sweep.summary(),
            started.elapsed().as_secs_f64()
        ),
    );
}

fn speedup_criterion(out: &mut Outcome) {
    let started = Instant::now();
    let mut speedups = Vec::new();
    let mut problems = Vec::new();
    for seed in 0..10u64 {
        let g = gen_random_graph(10_000, 25_000, (9, 1_000_000), seed).unwrap();
        let prim = run(Algorithm::Prim, &g, &cfg(seed));
        let pipe = run(Algorithm::Pipe, &g, &cfg(seed));
        match (prim, pipe) {
            (Ok(prim), Ok(pipe)) => {
                if prim.total_weight != pipe.total_weight {
                    problems.push(format!("seed {seed}: weights differ"));
                }
                speedups.push(prim.meter.charged_time() as f64 / pipe.meter.charged_time() as f64);
            }
            (a, b) => problems.push(format!("seed {seed}: {:?} {:?}", a.err(), b.err())),
        }
    }
    let over = speedups.iter().filter(|&&s| s > 100.0).count();
    let elapsed = started.elapsed();
    let mut sorted = speedups.clone();
    sorted.sort_by(f64::total_cmp);
    let ok = problems.is_empty() && over >= 9 && elapsed < Duration::from_secs(300);
    out.record(
        "scaled speedup",
        ok,
        format!(
            "pipe over prim > 100x on {over}/10 seeds (min {:.1}x, median {:.1}x, max {:.1}x) in {:.1}s (limit 300s){}",
            sorted.first().copied().unwrap_or(0.0),
            sorted.get(sorted.len() / 2).copied().unwrap_or(0.0),
            sorted.last().copied().unwrap_or(0.0),
            elapsed.as_secs_f64(),
            if problems.is_empty() { String::new() } else { format!("; {}", problems.join("; ")) }
        ),
    );
}

/// Union by rank, ties to the smaller id, both find paths compressed onto
/// the winner at union time; finds do not compress.
struct RankDsu {
    parent: Vec<usize>,
    rank: Vec<u32>,
}

impl RankDsu {
    fn path(&self, mut x: usize) -> Vec<usize> {
        let mut p = vec![x];
        while self.parent[x] != x {
            x = self.parent[x];
            p.push(x);
        }
        p
    }

    fn root(&self, x: usize) -> usize {
        *self.path(x).last().unwrap()
    }

    fn union(&mut self, u: usize, v: usize) -> bool {
        let (pu, pv) = (self.path(u), self.path(v));
        let (ru, rv) = (*pu.last().unwrap(), *pv.last().unwrap());
        if ru == rv {
            return false;
        }
        let w = if self.rank[ru] > self.rank[rv] {
            ru
        } else if self.rank[ru] < self.rank[rv] {
            rv
        } else {
            let w = ru.min(rv);
            self.rank[w] += 1;
            w
        };
        for x in pu.into_iter().chain(pv) {
            self.parent[x] = w;
        }
        true
    }
}

fn forest_invariant(parents: &[usize], ranks: &[u32]) -> bool {
    let n = parents.len();
    // Ranks strictly increase towards the root, which also rules out cycles.
    (0..n).all(|x| parents[x] < n && (parents[x] == x || ranks[parents[x]] > ranks[x]))
}

fn union_find_criterion(out: &mut Outcome) {
    const N: usize = 10_000;
    let started = Instant::now();
    let mut tally = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xD5);
    let mut uf = UnionFindNet::build(N).unwrap();
    let mut dsu = RankDsu {
        parent: (0..N).collect(),
        rank: vec![0; N],
    };
    let (mut unions, mut finds) = (0, 0);
    for op in 0..100_000 {
        let u = rng.gen_range(0..N);
        let v = rng.gen_range(0..N);
        if rng.gen_bool(0.3) {
            finds += 1;
            let got: HashSet<usize> = uf.find(u, v).unwrap().roots.into_iter().collect();
            let want: HashSet<usize> = [dsu.root(u), dsu.root(v)].into_iter().collect();
            tally.check(got == want, || {
                format!("op {op}: find({u},{v}) roots {got:?} vs {want:?}")
            });
            continue;
        }
        let accepted = uf.query_edge(u, v).unwrap();
        let expected = dsu.union(u, v);
        tally.check(accepted == expected, || {
            format!("op {op}: query({u},{v}) gave {accepted}")
        });
        if expected {
            unions += 1;
            let parents = uf.parents();
            tally.check(parents == dsu.parent && uf.ranks() == dsu.rank, || {
                format!("op {op}: parent or rank arrays diverge")
            });
            tally.check(forest_invariant(&parents, uf.ranks()), || {
                format!("op {op}: forest invariant broken")
            });
        }
    }
    let same_partition = (0..N).all(|x| uf.root_of(x).unwrap() == dsu.root(x));
    tally.check(same_partition, || "final partitions differ".into());
    out.record(
        "union-find oracle",
        tally.ok(),
        format!(
            "{unions} unions, {finds} finds, {} rejected queries on |V|={N}: {} ({:.1}s)",
            100_000 - unions - finds,
            tally.summary(),
            started.elapsed().as_secs_f64()
        ),
    );
}

fn determinism_criterion(out: &mut Outcome) {
    let dir = tempfile::tempdir().unwrap();
    let mut inputs: Vec<PathBuf> = Vec::new();
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let n = rng.gen_range(10..=300usize);
        let m = rng.gen_range(n - 1..=(n * (n - 1) / 2).min(4 * n));
        let g = gen_random_graph(n, m, (1, 5000), seed).unwrap();
        let path = dir.path().join(format!("g{seed:02}.mtx"));
        save_matrix_market(&g, &path).unwrap();
        inputs.push(path);
    }
    let csv_for = |jobs: u32| -> Result<Vec<u8>, String> {
        let csv = dir.path().join(format!("jobs{jobs}.csv"));
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_neuromst"));
        cmd.arg("compare")
            .arg("--jobs")
            .arg(jobs.to_string())
            .arg("--csv")
            .arg(&csv);
        for p in &inputs {
            cmd.arg("--input").arg(p);
        }
        let status = cmd.status().map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("compare --jobs {jobs} exited with {status}"));
        }
        std::fs::read(&csv).map_err(|e| e.to_string())
    };
    let detail;
    let ok = match (csv_for(1), csv_for(8)) {
        (Ok(a), Ok(b)) => {
            let rows = a.iter().filter(|&&c| c == b'\n').count().saturating_sub(1);
            detail = format!("{rows} rows, {} bytes, identical: {}", a.len(), a == b);
            a == b && rows == 80
        }
        (a, b) => {
            detail = format!("{:?} / {:?}", a.err(), b.err());
            false
        }
    };
    out.record(
        "determinism",
        ok,
        format!("compare on 20 graphs with --jobs 1 vs 8: {detail}"),
    );
}
