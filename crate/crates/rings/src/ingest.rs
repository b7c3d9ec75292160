//! Dataset ingestion: the TU benchmark on-disk format, a JSON-lines canonical
//! format, and synthetic fixture generation.
//!
//! Parsers clean their input (self-loops and duplicate edges are dropped and
//! counted in a [`ParseReport`]) and never emit a graph that violates the
//! core invariants. Graph order always follows file order.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use ndarray::Array2;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::data::{AttributedGraph, GraphDataset, Target, Task};
use crate::{Error, Result};

/// Outcome of a parse: how much was read and what was cleaned away.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ParseReport {
    pub graphs_read: usize,
    /// Self-loop lines and duplicate listings of an already-seen edge.
    pub edges_dropped: usize,
    pub warnings: Vec<String>,
}

/// Options for the TU parser.
#[derive(Debug, Clone, Copy, Default)]
pub struct TuOptions {
    /// For datasets without node attributes or labels, encode each node as a
    /// one-hot of its degree instead of the default constant 1.0 column.
    pub degree_onehot: bool,
}

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        line,
        msg: msg.into(),
    }
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    let file = File::open(path).map_err(|_| Error::MissingFile(path.display().to_string()))?;
    let mut lines = Vec::new();
    for line in BufReader::new(file).lines() {
        lines.push(line?.trim().to_string());
    }
    while lines.last().is_some_and(|l| l.is_empty()) {
        lines.pop();
    }
    Ok(lines)
}

/// Tracks undirected edges of one graph while tolerating the TU convention of
/// listing each edge in both directions.
#[derive(Default)]
struct EdgeAccumulator {
    unordered: HashSet<(usize, usize)>,
    ordered_seen: HashSet<(usize, usize)>,
    dropped: usize,
}

impl EdgeAccumulator {
    /// Returns true when the pair was dropped (self-loop or duplicate).
    fn add(&mut self, u: usize, v: usize, count_reverse_as_duplicate: bool) -> bool {
        if u == v {
            self.dropped += 1;
            return true;
        }
        let key = (u.min(v), u.max(v));
        if self.unordered.contains(&key) {
            if count_reverse_as_duplicate || self.ordered_seen.contains(&(u, v)) {
                self.dropped += 1;
                return true;
            }
            self.ordered_seen.insert((u, v));
            return false;
        }
        self.unordered.insert(key);
        self.ordered_seen.insert((u, v));
        false
    }

    fn into_edges(self) -> (Vec<(usize, usize)>, usize) {
        let mut edges: Vec<_> = self.unordered.into_iter().collect();
        edges.sort_unstable();
        (edges, self.dropped)
    }
}

/// Parse a dataset in the TU benchmark layout from `dir`.
///
/// Mandatory files: `<name>_A.txt` (comma-separated 1-indexed global node-id
/// pairs) and `<name>_graph_indicator.txt` (1-indexed graph id per node line).
/// Optional: `<name>_graph_labels.txt`, `<name>_node_attributes.txt`,
/// `<name>_node_labels.txt`. Node ids are re-based to 0 per graph preserving
/// file order; features are the attribute columns concatenated with a one-hot
/// encoding of the node labels; datasets with neither get a constant column.
pub fn parse_tu_dataset(dir: &Path, name: &str) -> Result<(GraphDataset, ParseReport)> {
    parse_tu_dataset_with(dir, name, TuOptions::default())
}

pub fn parse_tu_dataset_with(
    dir: &Path,
    name: &str,
    options: TuOptions,
) -> Result<(GraphDataset, ParseReport)> {
    let file = |suffix: &str| dir.join(format!("{name}_{suffix}.txt"));

    let indicator_path = file("graph_indicator");
    let indicator = read_lines(&indicator_path)?;
    let total_nodes = indicator.len();
    if total_nodes == 0 {
        return Err(parse_err(&indicator_path, 1, "no nodes listed"));
    }
    // node_graph[global] = 0-based graph index; nodes are re-based per graph
    // in file order.
    let mut node_graph = Vec::with_capacity(total_nodes);
    let mut max_graph = 0usize;
    for (i, line) in indicator.iter().enumerate() {
        let gid: usize = line
            .parse()
            .map_err(|_| parse_err(&indicator_path, i + 1, format!("bad graph id {line:?}")))?;
        if gid == 0 {
            return Err(parse_err(&indicator_path, i + 1, "graph ids are 1-indexed"));
        }
        max_graph = max_graph.max(gid);
        node_graph.push(gid - 1);
    }
    let mut local_index = Vec::with_capacity(total_nodes);
    let mut graph_sizes = vec![0usize; max_graph];
    for &g in &node_graph {
        local_index.push(graph_sizes[g]);
        graph_sizes[g] += 1;
    }
    if let Some(empty) = graph_sizes.iter().position(|&s| s == 0) {
        return Err(parse_err(
            &indicator_path,
            0,
            format!("graph id {} is never assigned a node", empty + 1),
        ));
    }

    let adjacency_path = file("A");
    let adjacency = read_lines(&adjacency_path)?;
    let mut accumulators: Vec<EdgeAccumulator> =
        (0..max_graph).map(|_| EdgeAccumulator::default()).collect();
    for (i, line) in adjacency.iter().enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',').map(str::trim);
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => return Err(parse_err(&adjacency_path, i + 1, "expected two node ids")),
        };
        let parse_node = |tok: &str| -> Result<usize> {
            let id: usize = tok
                .parse()
                .map_err(|_| parse_err(&adjacency_path, i + 1, format!("bad node id {tok:?}")))?;
            if id == 0 || id > total_nodes {
                return Err(parse_err(
                    &adjacency_path,
                    i + 1,
                    format!("node id {id} outside 1..={total_nodes}"),
                ));
            }
            Ok(id - 1)
        };
        let (u, v) = (parse_node(u)?, parse_node(v)?);
        let g = node_graph[u];
        if node_graph[v] != g {
            return Err(parse_err(
                &adjacency_path,
                i + 1,
                format!("edge joins graphs {} and {}", g + 1, node_graph[v] + 1),
            ));
        }
        accumulators[g].add(local_index[u], local_index[v], false);
    }

    // Optional node attributes.
    let attributes_path = file("node_attributes");
    let attributes: Option<Vec<Vec<f64>>> = if attributes_path.exists() {
        let lines = read_lines(&attributes_path)?;
        if lines.len() != total_nodes {
            return Err(parse_err(
                &attributes_path,
                lines.len(),
                format!("{} attribute rows for {} nodes", lines.len(), total_nodes),
            ));
        }
        let mut rows = Vec::with_capacity(total_nodes);
        let mut width = None;
        for (i, line) in lines.iter().enumerate() {
            let row: Vec<f64> = line
                .split(',')
                .map(|tok| {
                    tok.trim().parse::<f64>().map_err(|_| {
                        parse_err(&attributes_path, i + 1, format!("bad attribute {tok:?}"))
                    })
                })
                .collect::<Result<_>>()?;
            match width {
                None => width = Some(row.len()),
                Some(w) if w != row.len() => {
                    return Err(parse_err(&attributes_path, i + 1, "ragged attribute row"))
                }
                _ => {}
            }
            rows.push(row);
        }
        Some(rows)
    } else {
        None
    };

    // Optional node labels, one-hot encoded over the dataset-wide range.
    let labels_path = file("node_labels");
    let node_labels: Option<Vec<i64>> = if labels_path.exists() {
        let lines = read_lines(&labels_path)?;
        if lines.len() != total_nodes {
            return Err(parse_err(
                &labels_path,
                lines.len(),
                format!("{} label rows for {} nodes", lines.len(), total_nodes),
            ));
        }
        Some(
            lines
                .iter()
                .enumerate()
                .map(|(i, line)| {
                    line.parse::<i64>()
                        .map_err(|_| parse_err(&labels_path, i + 1, format!("bad node label {line:?}")))
                })
                .collect::<Result<_>>()?,
        )
    } else {
        None
    };
    let label_range = node_labels.as_ref().map(|ls| {
        let lo = *ls.iter().min().unwrap();
        let hi = *ls.iter().max().unwrap();
        (lo, (hi - lo + 1) as usize)
    });

    // Optional graph labels.
    let graph_labels_path = file("graph_labels");
    let graph_labels: Option<Vec<i64>> = if graph_labels_path.exists() {
        let lines = read_lines(&graph_labels_path)?;
        if lines.len() != max_graph {
            return Err(parse_err(
                &graph_labels_path,
                lines.len(),
                format!("{} labels for {} graphs", lines.len(), max_graph),
            ));
        }
        Some(
            lines
                .iter()
                .enumerate()
                .map(|(i, line)| {
                    line.parse::<i64>().map_err(|_| {
                        parse_err(&graph_labels_path, i + 1, format!("bad graph label {line:?}"))
                    })
                })
                .collect::<Result<_>>()?,
        )
    } else {
        None
    };

    let mut warnings = Vec::new();
    let featureless = attributes.is_none() && node_labels.is_none();
    if featureless {
        warnings.push(format!(
            "{name}: no node attributes or labels; using {}",
            if options.degree_onehot {
                "one-hot degree encoding"
            } else {
                "a constant 1.0 feature column"
            }
        ));
    }

    // Group global node ids per graph, in file order.
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); max_graph];
    for (global, &g) in node_graph.iter().enumerate() {
        members[g].push(global);
    }

    let mut edges_dropped = 0;
    let mut graphs = Vec::with_capacity(max_graph);
    let mut edges_per_graph: Vec<Vec<(usize, usize)>> = Vec::with_capacity(max_graph);
    for acc in accumulators {
        let (edges, dropped) = acc.into_edges();
        edges_dropped += dropped;
        edges_per_graph.push(edges);
    }

    // Degree one-hot width must be consistent across the dataset.
    let max_degree = if featureless && options.degree_onehot {
        let mut md = 0usize;
        for (g, edges) in edges_per_graph.iter().enumerate() {
            let mut deg = vec![0usize; graph_sizes[g]];
            for &(u, v) in edges {
                deg[u] += 1;
                deg[v] += 1;
            }
            md = md.max(deg.iter().copied().max().unwrap_or(0));
        }
        md
    } else {
        0
    };

    for (g, edges) in edges_per_graph.into_iter().enumerate() {
        let nodes = &members[g];
        let n = graph_sizes[g];
        let attr_width = attributes.as_ref().map_or(0, |a| a[0].len());
        let label_width = label_range.map_or(0, |(_, w)| w);
        let width = if featureless {
            if options.degree_onehot {
                max_degree + 1
            } else {
                1
            }
        } else {
            attr_width + label_width
        };
        let mut features = Array2::zeros((n, width));
        if featureless {
            if options.degree_onehot {
                let mut deg = vec![0usize; n];
                for &(u, v) in &edges {
                    deg[u] += 1;
                    deg[v] += 1;
                }
                for (local, &d) in deg.iter().enumerate() {
                    features[(local, d)] = 1.0;
                }
            } else {
                features.fill(1.0);
            }
        } else {
            for (local, &global) in nodes.iter().enumerate() {
                if let Some(attrs) = &attributes {
                    for (c, &x) in attrs[global].iter().enumerate() {
                        features[(local, c)] = x;
                    }
                }
                if let (Some(labels), Some((lo, _))) = (&node_labels, label_range) {
                    let slot = (labels[global] - lo) as usize;
                    features[(local, attr_width + slot)] = 1.0;
                }
            }
        }
        let target = graph_labels.as_ref().map(|ls| Target::Class(ls[g]));
        graphs.push(AttributedGraph::new(g as u64, n, edges, features, target)?);
    }

    let task = match &graph_labels {
        Some(ls) => {
            let mut distinct: Vec<i64> = ls.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() <= 2 {
                Task::BinaryClass
            } else {
                Task::MultiClass
            }
        }
        None => Task::None,
    };

    let report = ParseReport {
        graphs_read: graphs.len(),
        edges_dropped,
        warnings,
    };
    Ok((GraphDataset::new(name, graphs, task)?, report))
}

#[derive(Serialize, Deserialize)]
struct JsonlGraph {
    id: u64,
    n: usize,
    edges: Vec<(usize, usize)>,
    features: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<serde_json::Value>,
}

fn target_to_json(t: &Target) -> serde_json::Value {
    match t {
        Target::Class(c) => serde_json::json!(c),
        Target::Labels(ls) => serde_json::json!(ls),
        Target::Real(x) => serde_json::json!(x),
    }
}

fn target_from_json(v: &serde_json::Value) -> Option<Target> {
    match v {
        serde_json::Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                Some(Target::Class(i))
            } else {
                num.as_f64().map(Target::Real)
            }
        }
        serde_json::Value::Array(items) => {
            let labels: Option<Vec<i64>> = items.iter().map(|x| x.as_i64()).collect();
            labels.map(Target::Labels)
        }
        _ => None,
    }
}

/// Parse the canonical JSON-lines format: one object per line with fields
/// `id`, `n`, `edges`, `features`, and optional `target`. Cleaning rules
/// match the TU parser; malformed lines are reported with their line number.
pub fn parse_jsonl(path: &Path) -> Result<(GraphDataset, ParseReport)> {
    let file = File::open(path).map_err(|_| Error::MissingFile(path.display().to_string()))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".to_string());

    let mut graphs = Vec::new();
    let mut edges_dropped = 0;
    let mut targets_seen: Vec<Option<Target>> = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: JsonlGraph = serde_json::from_str(&line)
            .map_err(|e| parse_err(path, i + 1, e.to_string()))?;
        if raw.features.len() != raw.n {
            return Err(parse_err(
                path,
                i + 1,
                format!("{} feature rows for n={}", raw.features.len(), raw.n),
            ));
        }
        let width = raw.features.first().map_or(0, Vec::len);
        if width == 0 {
            return Err(parse_err(path, i + 1, "feature rows must be non-empty"));
        }
        let mut features = Array2::zeros((raw.n, width));
        for (r, row) in raw.features.iter().enumerate() {
            if row.len() != width {
                return Err(parse_err(path, i + 1, "ragged feature rows"));
            }
            for (c, &x) in row.iter().enumerate() {
                features[(r, c)] = x;
            }
        }
        let mut acc = EdgeAccumulator::default();
        for &(u, v) in &raw.edges {
            if u >= raw.n || v >= raw.n {
                return Err(parse_err(
                    path,
                    i + 1,
                    format!("edge ({u}, {v}) out of range for n={}", raw.n),
                ));
            }
            acc.add(u, v, true);
        }
        let (edges, dropped) = acc.into_edges();
        edges_dropped += dropped;
        let target = match &raw.target {
            Some(v) => Some(
                target_from_json(v)
                    .ok_or_else(|| parse_err(path, i + 1, format!("bad target {v}")))?,
            ),
            None => None,
        };
        targets_seen.push(target.clone());
        graphs.push(AttributedGraph::new(raw.id, raw.n, edges, features, target)?);
    }

    let task = infer_task(&targets_seen);
    let report = ParseReport {
        graphs_read: graphs.len(),
        edges_dropped,
        warnings: Vec::new(),
    };
    Ok((GraphDataset::new(name, graphs, task)?, report))
}

fn infer_task(targets: &[Option<Target>]) -> Task {
    let mut classes: Vec<i64> = Vec::new();
    let mut any = false;
    for t in targets.iter().flatten() {
        any = true;
        match t {
            Target::Labels(_) => return Task::MultiLabel,
            Target::Real(_) => return Task::Regression,
            Target::Class(c) => classes.push(*c),
        }
    }
    if !any {
        return Task::None;
    }
    classes.sort_unstable();
    classes.dedup();
    if classes.len() <= 2 {
        Task::BinaryClass
    } else {
        Task::MultiClass
    }
}

/// Write a dataset in the canonical JSON-lines format. Field order and float
/// rendering are deterministic, and floats survive a round trip bit-exactly.
pub fn write_jsonl(d: &GraphDataset, path: &Path) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    for g in d.graphs() {
        let raw = JsonlGraph {
            id: g.graph_id(),
            n: g.n(),
            edges: g.edges().to_vec(),
            features: g.features().rows().into_iter().map(|r| r.to_vec()).collect(),
            target: g.target().map(target_to_json),
        };
        serde_json::to_writer(&mut out, &raw).map_err(|e| Error::InvalidInput(e.to_string()))?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Generate a ring of `num_cliques` cliques of `clique_size` nodes each,
/// joined in a cycle by single bridge edges between the first nodes of
/// consecutive cliques. Features are i.i.d. standard normal.
pub fn gen_ring_of_cliques(
    num_cliques: usize,
    clique_size: usize,
    feature_dim: usize,
    seed: u64,
) -> Result<AttributedGraph> {
    if num_cliques < 3 {
        return Err(Error::InvalidInput("need at least 3 cliques".into()));
    }
    if clique_size < 2 {
        return Err(Error::InvalidInput("cliques need at least 2 nodes".into()));
    }
    if feature_dim < 1 {
        return Err(Error::InvalidInput("feature dimension must be at least 1".into()));
    }
    let n = num_cliques * clique_size;
    let mut edges = Vec::new();
    for c in 0..num_cliques {
        let base = c * clique_size;
        for a in 0..clique_size {
            for b in (a + 1)..clique_size {
                edges.push((base + a, base + b));
            }
        }
        let next = ((c + 1) % num_cliques) * clique_size;
        edges.push((base, next));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let features = Array2::from_shape_simple_fn((n, feature_dim), || rng.sample(StandardNormal));
    AttributedGraph::new(0, n, edges, features, None)
}
