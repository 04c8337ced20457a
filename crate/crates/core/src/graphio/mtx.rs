//! Matrix Market coordinate files as undirected graphs.

use std::collections::HashMap;
use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::graph::{Graph, MAX_WEIGHT};

#[derive(Debug, Error)]
pub enum MtxError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: negative weight {value}")]
    NegativeWeight { line: usize, value: String },
    #[error("line {line}: real weight {value}; pass a quantization (round or scale:10^k)")]
    NeedsQuantization { line: usize, value: String },
    #[error("pattern files carry no weights; synthesize them instead")]
    NoValues,
    #[error("weight range {min}..={max} is empty")]
    BadRange { min: u64, max: u64 },
}

fn malformed(line: usize, msg: impl Into<String>) -> MtxError {
    MtxError::Malformed {
        line,
        msg: msg.into(),
    }
}

/// Turns real entries into whole-number weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantize {
    Round,
    /// Multiply by `10^k`, then round.
    Scale(u32),
}

impl Quantize {
    fn apply(self, value: f64) -> f64 {
        match self {
            Quantize::Round => value.round(),
            Quantize::Scale(k) => (value * 10f64.powi(k as i32)).round(),
        }
    }
}

impl FromStr for Quantize {
    type Err = String;

    /// Accepts `round`, `scale:10^k` or `scale:k`.
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "round" {
            return Ok(Quantize::Round);
        }
        let exp = s
            .strip_prefix("scale:")
            .map(|rest| rest.strip_prefix("10^").unwrap_or(rest))
            .ok_or_else(|| format!("unknown quantization {s:?}"))?;
        exp.parse()
            .map(Quantize::Scale)
            .map_err(|_| format!("bad scale exponent in {s:?}"))
    }
}

impl fmt::Display for Quantize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantize::Round => f.write_str("round"),
            Quantize::Scale(k) => write!(f, "scale:10^{k}"),
        }
    }
}

/// Where edge weights come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WeightMode {
    FromValues,
    Uniform { min: u64, max: u64, seed: u64 },
}

impl FromStr for WeightMode {
    type Err = String;

    /// Accepts `from-values` or `uniform:MIN:MAX:SEED`.
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "from-values" {
            return Ok(WeightMode::FromValues);
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["uniform", min, max, seed] => {
                let num = |x: &str| {
                    x.parse::<u64>()
                        .map_err(|_| format!("bad number {x:?} in {s:?}"))
                };
                Ok(WeightMode::Uniform {
                    min: num(min)?,
                    max: num(max)?,
                    seed: num(seed)?,
                })
            }
            _ => Err(format!(
                "unknown weight mode {s:?} (expected from-values or uniform:MIN:MAX:SEED)"
            )),
        }
    }
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightMode::FromValues => f.write_str("from-values"),
            WeightMode::Uniform { min, max, seed } => write!(f, "uniform:{min}:{max}:{seed}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadOptions {
    pub weights: WeightMode,
    pub quantize: Option<Quantize>,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            weights: WeightMode::FromValues,
            quantize: None,
        }
    }
}

/// A loaded graph plus what was dropped on the way in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loaded {
    pub graph: Graph,
    pub self_loops_dropped: usize,
    pub duplicates_collapsed: usize,
    /// Entries of a general file above the diagonal, ignored.
    pub upper_entries_ignored: usize,
    pub weights_synthesized: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Pattern,
    Integer,
    Real,
}

pub fn load_matrix_market(path: &Path, opts: &LoadOptions) -> Result<Loaded, MtxError> {
    parse_matrix_market(BufReader::new(File::open(path)?), opts)
}

pub fn parse_matrix_market<R: BufRead>(reader: R, opts: &LoadOptions) -> Result<Loaded, MtxError> {
    if let WeightMode::Uniform { min, max, .. } = opts.weights {
        if min > max || max > MAX_WEIGHT {
            return Err(MtxError::BadRange { min, max });
        }
    }
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (_, header) = lines.next().ok_or_else(|| malformed(1, "empty file"))?;
    let header = header?;
    let words: Vec<String> = header
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(malformed(
            1,
            "expected '%%MatrixMarket matrix coordinate <field> <symmetry>'",
        ));
    }
    if words[2] != "coordinate" {
        return Err(malformed(1, format!("unsupported format {:?}", words[2])));
    }
    let field = match words[3].as_str() {
        "pattern" => Field::Pattern,
        "integer" => Field::Integer,
        "real" => Field::Real,
        other => return Err(malformed(1, format!("unsupported field {other:?}"))),
    };
    let symmetric = match words[4].as_str() {
        "symmetric" => true,
        "general" => false,
        other => return Err(malformed(1, format!("unsupported symmetry {other:?}"))),
    };
    if field == Field::Pattern && opts.weights == WeightMode::FromValues {
        return Err(MtxError::NoValues);
    }

    let mut size = None;
    let mut entries: Vec<(usize, usize, u64)> = Vec::new();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut loaded = Loaded {
        graph: Graph::default(),
        self_loops_dropped: 0,
        duplicates_collapsed: 0,
        upper_entries_ignored: 0,
        weights_synthesized: opts.weights != WeightMode::FromValues,
    };
    let mut seen = 0usize;

    for (n, line) in lines {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('%') {
            continue;
        }
        let cols: Vec<&str> = text.split_whitespace().collect();
        let Some((rows, _, nnz)) = size else {
            let [r, c, z] = cols.as_slice() else {
                return Err(malformed(n, "expected 'rows cols entries'"));
            };
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| malformed(n, format!("bad count {s:?}")))
            };
            let (r, c, z) = (parse(r)?, parse(c)?, parse(z)?);
            if r != c {
                return Err(malformed(
                    n,
                    format!("adjacency matrix must be square, got {r}x{c}"),
                ));
            }
            size = Some((r, c, z));
            continue;
        };

        seen += 1;
        if seen > nnz {
            return Err(malformed(
                n,
                format!("more than the declared {nnz} entries"),
            ));
        }
        let want = if field == Field::Pattern { 2 } else { 3 };
        if cols.len() < want {
            return Err(malformed(n, format!("expected {want} columns")));
        }
        let coord = |s: &str| match s.parse::<usize>() {
            Ok(i) if (1..=rows).contains(&i) => Ok(i - 1),
            _ => Err(malformed(n, format!("index {s:?} outside 1..={rows}"))),
        };
        let (i, j) = (coord(cols[0])?, coord(cols[1])?);
        let weight = match (field, opts.weights) {
            (_, WeightMode::Uniform { .. }) | (Field::Pattern, _) => 0,
            (Field::Integer, _) => {
                let v: i64 = cols[2]
                    .parse()
                    .map_err(|_| malformed(n, format!("bad integer {:?}", cols[2])))?;
                u64::try_from(v).map_err(|_| MtxError::NegativeWeight {
                    line: n,
                    value: cols[2].to_string(),
                })?
            }
            (Field::Real, _) => {
                let v: f64 = cols[2]
                    .parse()
                    .map_err(|_| malformed(n, format!("bad real {:?}", cols[2])))?;
                let Some(q) = opts.quantize else {
                    return Err(MtxError::NeedsQuantization {
                        line: n,
                        value: cols[2].to_string(),
                    });
                };
                let w = q.apply(v);
                if !w.is_finite() || w > MAX_WEIGHT as f64 {
                    return Err(malformed(n, format!("weight {:?} out of range", cols[2])));
                }
                if w < 0.0 {
                    return Err(MtxError::NegativeWeight {
                        line: n,
                        value: cols[2].to_string(),
                    });
                }
                w as u64
            }
        };
        if weight > MAX_WEIGHT {
            return Err(malformed(n, format!("weight {weight} out of range")));
        }
        if i == j {
            loaded.self_loops_dropped += 1;
            continue;
        }
        if !symmetric && i < j {
            loaded.upper_entries_ignored += 1;
            continue;
        }
        let key = (i.min(j), i.max(j));
        match index.get(&key) {
            Some(&k) => {
                loaded.duplicates_collapsed += 1;
                entries[k].2 = entries[k].2.min(weight);
            }
            None => {
                index.insert(key, entries.len());
                entries.push((key.1, key.0, weight));
            }
        }
    }

    let Some((rows, _, nnz)) = size else {
        return Err(malformed(1, "missing size line"));
    };
    if seen != nnz {
        return Err(malformed(
            0,
            format!("declared {nnz} entries, found {seen}"),
        ));
    }
    if let WeightMode::Uniform { min, max, seed } = opts.weights {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for e in &mut entries {
            e.2 = rng.gen_range(min..=max);
        }
    }
    loaded.graph = Graph::from_edges(rows, entries).expect("entries validated while parsing");
    Ok(loaded)
}

/// Writes `coordinate integer symmetric`, one lower-triangle entry per edge.
pub fn write_matrix_market<W: Write>(graph: &Graph, out: W) -> io::Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "%%MatrixMarket matrix coordinate integer symmetric")?;
    let n = graph.vertex_count();
    writeln!(out, "{n} {n} {}", graph.edge_count())?;
    for e in graph.edges() {
        let (lo, hi) = e.key();
        writeln!(out, "{} {} {}", hi + 1, lo + 1, e.weight)?;
    }
    out.flush()
}

pub fn save_matrix_market(graph: &Graph, path: &Path) -> io::Result<()> {
    write_matrix_market(graph, File::create(path)?)
}
