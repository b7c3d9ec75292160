//! Core domain types: attributed graphs, datasets, distance matrices, and
//! basic per-graph statistics.
//!
//! All types are immutable after construction and safe to share across
//! threads; constructors enforce the structural invariants so downstream
//! modules never have to re-validate.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Prediction target attached to a single graph.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    /// Class index for (binary or multi-class) classification.
    Class(i64),
    /// Label set for multi-label classification.
    Labels(Vec<i64>),
    /// Real value for regression.
    Real(f64),
}

/// Task associated with a dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    BinaryClass,
    MultiClass,
    MultiLabel,
    Regression,
    None,
}

/// One attributed graph: an undirected simple edge set over `n` nodes plus a
/// real feature matrix with one row per node.
///
/// Invariants (enforced by [`AttributedGraph::new`]):
/// - every edge endpoint lies in `[0, n)`, no self-loops, no duplicate pairs;
/// - the feature matrix has exactly `n` rows, at least one column, and only
///   finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributedGraph {
    graph_id: u64,
    n: usize,
    edges: Vec<(usize, usize)>,
    features: Array2<f64>,
    target: Option<Target>,
}

impl AttributedGraph {
    /// Construct a graph, validating all invariants. Edges are stored once as
    /// unordered pairs `(u, v)` with `u < v`, sorted lexicographically.
    pub fn new(
        graph_id: u64,
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        features: Array2<f64>,
        target: Option<Target>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("node count must be at least 1".into()));
        }
        let mut canon: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at node {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} nodes"
                )));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        let before = canon.len();
        canon.dedup();
        if canon.len() != before {
            return Err(Error::InvalidGraph("duplicate edge".into()));
        }
        if features.nrows() != n {
            return Err(Error::InvalidGraph(format!(
                "feature matrix has {} rows for {} nodes",
                features.nrows(),
                n
            )));
        }
        if features.ncols() == 0 {
            return Err(Error::InvalidGraph("feature dimension must be at least 1".into()));
        }
        if features.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidGraph("non-finite feature entry".into()));
        }
        Ok(Self {
            graph_id,
            n,
            edges: canon,
            features,
            target,
        })
    }

    pub fn graph_id(&self) -> u64 {
        self.graph_id
    }

    /// Number of nodes.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Undirected edges, each stored once with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Node-feature matrix of shape `n x k`.
    pub fn features(&self) -> &Array2<f64> {
        &self.features
    }

    pub fn target(&self) -> Option<&Target> {
        self.target.as_ref()
    }

    /// Degree of every node.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Adjacency lists indexed by node.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Array2<f64> {
        let mut a = Array2::zeros((self.n, self.n));
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        a
    }

    /// Connected components as sorted node lists, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency_lists();
        let mut seen = vec![false; self.n];
        let mut components = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Whether the edge set contains all `n(n-1)/2` pairs.
    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }

    /// Restriction to a node subset. Nodes are re-indexed by their position in
    /// `nodes` (which must be sorted and duplicate-free); edges with an
    /// endpoint outside the subset are dropped.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<Self> {
        let mut index = vec![usize::MAX; self.n];
        for (local, &global) in nodes.iter().enumerate() {
            index[global] = local;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        let features = self.features.select(ndarray::Axis(0), nodes);
        Self::new(self.graph_id, nodes.len(), edges, features, self.target.clone())
    }
}

/// A named, ordered collection of attributed graphs.
#[derive(Debug, Clone)]
pub struct GraphDataset {
    name: String,
    graphs: Vec<AttributedGraph>,
    task: Task,
}

impl GraphDataset {
    /// Build a dataset, checking that graph ids are unique.
    pub fn new(name: impl Into<String>, graphs: Vec<AttributedGraph>, task: Task) -> Result<Self> {
        let mut ids: Vec<u64> = graphs.iter().map(|g| g.graph_id()).collect();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != graphs.len() {
            return Err(Error::InvalidGraph("duplicate graph_id in dataset".into()));
        }
        Ok(Self {
            name: name.into(),
            graphs,
            task,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graphs(&self) -> &[AttributedGraph] {
        &self.graphs
    }

    pub fn task(&self) -> Task {
        self.task
    }

    /// Number of graphs.
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }
}

/// Symmetric nonnegative `n x n` matrix with zero diagonal: the lift of one
/// mode into a (pseudo-)metric space over the node set.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    values: Array2<f64>,
}

impl DistanceMatrix {
    /// Validate and wrap a matrix. Entries must be finite and nonnegative, the
    /// diagonal exactly zero, and the matrix exactly symmetric.
    pub fn new(values: Array2<f64>) -> Result<Self> {
        let (r, c) = values.dim();
        if r != c {
            return Err(Error::InvalidDistanceMatrix(format!("shape {r}x{c} is not square")));
        }
        for i in 0..r {
            if values[(i, i)] != 0.0 {
                return Err(Error::InvalidDistanceMatrix(format!("nonzero diagonal at {i}")));
            }
            for j in 0..r {
                let x = values[(i, j)];
                if !x.is_finite() || x < 0.0 {
                    return Err(Error::InvalidDistanceMatrix(format!(
                        "entry ({i}, {j}) = {x} is negative or non-finite"
                    )));
                }
                if values[(i, j)] != values[(j, i)] {
                    return Err(Error::InvalidDistanceMatrix(format!("asymmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Self { values })
    }

    /// Trivial metric space: all distances zero.
    pub fn zeros(n: usize) -> Self {
        Self {
            values: Array2::zeros((n, n)),
        }
    }

    /// Discrete metric space: all distinct points at distance exactly 1.
    pub fn discrete(n: usize) -> Self {
        let mut values = Array2::from_elem((n, n), 1.0);
        for i in 0..n {
            values[(i, i)] = 0.0;
        }
        Self { values }
    }

    /// Build from a callback over unordered pairs `u < v`; symmetry and the
    /// zero diagonal hold by construction. Tiny negative values from floating
    /// point cancellation are clamped to zero.
    pub fn from_pairwise(n: usize, mut dist: impl FnMut(usize, usize) -> f64) -> Self {
        let mut values = Array2::zeros((n, n));
        for u in 0..n {
            for v in (u + 1)..n {
                let d = dist(u, v).max(0.0);
                values[(u, v)] = d;
                values[(v, u)] = d;
            }
        }
        Self { values }
    }

    pub fn n(&self) -> usize {
        self.values.nrows()
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    /// Largest entry.
    pub fn diameter(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

/// Basic statistics of one graph. Edge counts follow the directed convention:
/// `m_directed` counts both orientations of every undirected edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m_directed: usize,
    pub mean_degree: f64,
    pub density: f64,
}

/// Per-graph statistics: node count, directed edge count `2|E|`, mean degree
/// `2|E|/n`, and density `2|E|/(n(n-1))` (zero for a single node).
pub fn graph_stats(g: &AttributedGraph) -> GraphStats {
    let n = g.n();
    let m_directed = 2 * g.edges().len();
    let mean_degree = m_directed as f64 / n as f64;
    let density = if n > 1 {
        m_directed as f64 / (n as f64 * (n as f64 - 1.0))
    } else {
        0.0
    };
    GraphStats {
        n,
        m_directed,
        mean_degree,
        density,
    }
}

/// Mean and standard deviation of one statistic across a dataset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanSd {
    pub mean: f64,
    pub sd: f64,
}

/// Dataset-level aggregation of [`GraphStats`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetStats {
    pub graphs: usize,
    pub n: MeanSd,
    pub m_directed: MeanSd,
    pub mean_degree: MeanSd,
    pub density: MeanSd,
    /// True when the dataset holds a single graph, in which case the sample
    /// standard deviation is undefined and reported as 0.
    pub sd_undefined: bool,
    /// Divisor convention used for the standard deviation.
    pub sd_divisor: &'static str,
}

fn mean_sd(values: &[f64]) -> MeanSd {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let sd = if values.len() > 1 {
        let ss = values.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
        (ss / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    MeanSd { mean, sd }
}

/// Mean and sample standard deviation (divisor `N-1`) of every [`GraphStats`]
/// field over the dataset.
pub fn dataset_stats(d: &GraphDataset) -> Result<DatasetStats> {
    if d.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let stats: Vec<GraphStats> = d.graphs().iter().map(graph_stats).collect();
    let col = |f: fn(&GraphStats) -> f64| -> Vec<f64> { stats.iter().map(f).collect() };
    Ok(DatasetStats {
        graphs: d.len(),
        n: mean_sd(&col(|s| s.n as f64)),
        m_directed: mean_sd(&col(|s| s.m_directed as f64)),
        mean_degree: mean_sd(&col(|s| s.mean_degree)),
        density: mean_sd(&col(|s| s.density)),
        sd_undefined: d.len() == 1,
        sd_divisor: "N-1",
    })
}
