//! Mode perturbations: replace the edge set or the feature matrix of an
//! attributed graph with a controlled variant, leaving the other mode (and the
//! node count, graph id, and target) untouched.
//!
//! Randomized kinds derive their randomness from an explicit seed;
//! [`perturb_dataset`] mixes a per-graph seed from the master seed, dataset
//! name, and graph id so that parallel and serial runs agree.

use ndarray::Array2;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::data::{AttributedGraph, GraphDataset};
use crate::Result;

/// Default feature dimension for the random-features perturbation.
pub const DEFAULT_RANDOM_FEATURE_DIM: usize = 10;

/// The nine mode perturbations. CLI codes: `o`, `ef`, `cf`, `rf`, `sf`, `eg`,
/// `cg`, `rg`, `sg`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PerturbationKind {
    /// Identity.
    Original,
    /// Features replaced by an `n x 1` zero matrix.
    EmptyFeatures,
    /// Features replaced by the `n x n` identity (one-hot node encodings).
    CompleteFeatures,
    /// Features drawn i.i.d. standard normal with the given dimension.
    RandomFeatures { dim: usize },
    /// Feature rows permuted by a uniform random permutation.
    ShuffledFeatures,
    /// Edge set emptied.
    EmptyGraph,
    /// Edge set replaced by all `n(n-1)/2` pairs.
    CompleteGraph,
    /// Edge set resampled as Erdos-Renyi. `None` matches the input density
    /// `2|E| / (n(n-1))` so the expected edge count is preserved.
    RandomGraph { p: Option<f64> },
    /// Edge endpoints relabeled by a uniform random node permutation.
    ShuffledGraph,
}

impl PerturbationKind {
    /// Short code used on the CLI and in record files.
    pub fn code(&self) -> &'static str {
        match self {
            PerturbationKind::Original => "o",
            PerturbationKind::EmptyFeatures => "ef",
            PerturbationKind::CompleteFeatures => "cf",
            PerturbationKind::RandomFeatures { .. } => "rf",
            PerturbationKind::ShuffledFeatures => "sf",
            PerturbationKind::EmptyGraph => "eg",
            PerturbationKind::CompleteGraph => "cg",
            PerturbationKind::RandomGraph { .. } => "rg",
            PerturbationKind::ShuffledGraph => "sg",
        }
    }

    /// Parse a CLI code, using the default parameters for `rf` and `rg`.
    pub fn parse(code: &str) -> Option<Self> {
        Some(match code {
            "o" => PerturbationKind::Original,
            "ef" => PerturbationKind::EmptyFeatures,
            "cf" => PerturbationKind::CompleteFeatures,
            "rf" => PerturbationKind::RandomFeatures {
                dim: DEFAULT_RANDOM_FEATURE_DIM,
            },
            "sf" => PerturbationKind::ShuffledFeatures,
            "eg" => PerturbationKind::EmptyGraph,
            "cg" => PerturbationKind::CompleteGraph,
            "rg" => PerturbationKind::RandomGraph { p: None },
            "sg" => PerturbationKind::ShuffledGraph,
            _ => return None,
        })
    }

    /// Whether the perturbation consumes randomness.
    pub fn is_random(&self) -> bool {
        matches!(
            self,
            PerturbationKind::RandomFeatures { .. }
                | PerturbationKind::ShuffledFeatures
                | PerturbationKind::RandomGraph { .. }
                | PerturbationKind::ShuffledGraph
        )
    }

    /// Whether the perturbation acts on the feature mode.
    pub fn is_feature(&self) -> bool {
        matches!(
            self,
            PerturbationKind::EmptyFeatures
                | PerturbationKind::CompleteFeatures
                | PerturbationKind::RandomFeatures { .. }
                | PerturbationKind::ShuffledFeatures
        )
    }
}

impl std::fmt::Display for PerturbationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code())
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stable 64-bit mix of (master seed, dataset name, graph id). Used to give
/// every graph its own reproducible stream regardless of processing order.
pub fn derive_seed(master_seed: u64, dataset_name: &str, graph_id: u64) -> u64 {
    // FNV-1a over the name; independent of std's unstable hasher.
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in dataset_name.as_bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    splitmix64(splitmix64(master_seed ^ h) ^ graph_id)
}

pub(crate) fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

fn complete_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect()
}

fn erdos_renyi_edges(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Apply one mode perturbation. The seed is consumed only by the random and
/// shuffled kinds; node count, graph id, and target are always preserved.
pub fn perturb_graph(g: &AttributedGraph, kind: PerturbationKind, seed: u64) -> AttributedGraph {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rebuild = |edges: Vec<(usize, usize)>, features: Array2<f64>| {
        AttributedGraph::new(g.graph_id(), n, edges, features, g.target().cloned())
            .expect("perturbation preserves graph invariants")
    };
    match kind {
        PerturbationKind::Original => g.clone(),
        PerturbationKind::EmptyFeatures => rebuild(g.edges().to_vec(), Array2::zeros((n, 1))),
        PerturbationKind::CompleteFeatures => rebuild(g.edges().to_vec(), Array2::eye(n)),
        PerturbationKind::RandomFeatures { dim } => {
            assert!(dim >= 1, "random-features dimension must be at least 1");
            let features = Array2::from_shape_simple_fn((n, dim), || rng.sample(StandardNormal));
            rebuild(g.edges().to_vec(), features)
        }
        PerturbationKind::ShuffledFeatures => {
            let perm = random_permutation(n, &mut rng);
            let mut features = Array2::zeros((n, g.features().ncols()));
            for (i, &src) in perm.iter().enumerate() {
                features.row_mut(i).assign(&g.features().row(src));
            }
            rebuild(g.edges().to_vec(), features)
        }
        PerturbationKind::EmptyGraph => rebuild(Vec::new(), g.features().clone()),
        PerturbationKind::CompleteGraph => rebuild(complete_edges(n), g.features().clone()),
        PerturbationKind::RandomGraph { p } => {
            let p_eff = p.unwrap_or_else(|| {
                if n > 1 {
                    2.0 * g.edges().len() as f64 / (n as f64 * (n as f64 - 1.0))
                } else {
                    0.0
                }
            });
            assert!((0.0..=1.0).contains(&p_eff), "edge probability must lie in [0, 1]");
            rebuild(erdos_renyi_edges(n, p_eff, &mut rng), g.features().clone())
        }
        PerturbationKind::ShuffledGraph => {
            let perm = random_permutation(n, &mut rng);
            let edges: Vec<_> = g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
            rebuild(edges, g.features().clone())
        }
    }
}

/// Apply one perturbation to every graph of a dataset, in parallel. Graph `i`
/// is perturbed with `derive_seed(master_seed, dataset.name(), graph_id)`, so
/// the output is independent of thread count and identical to a serial run.
pub fn perturb_dataset(
    d: &GraphDataset,
    kind: PerturbationKind,
    master_seed: u64,
) -> Result<GraphDataset> {
    let graphs: Vec<AttributedGraph> = d
        .graphs()
        .par_iter()
        .map(|g| perturb_graph(g, kind, derive_seed(master_seed, d.name(), g.graph_id())))
        .collect();
    GraphDataset::new(d.name(), graphs, d.task())
}
