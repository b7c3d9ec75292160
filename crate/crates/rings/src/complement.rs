//! Metric-space comparison, mode complementarity, and mode diversity.
//!
//! Mode complementarity compares the diameter-normalized metric spaces lifted
//! from the two modes of one attributed graph: 0 means the modes carry
//! redundant geometry, 1 means they are maximally different.
//!
//! Disconnected graphs are scored as a node-weighted average over parts: every
//! connected component of size >= 2 is one part, and all isolated nodes
//! together form one additional part whose structural space is trivial. A lone
//! isolated node is a one-point space on both sides and carries no geometry;
//! it is excluded from the average (weights renormalize over the remaining
//! parts), which keeps the complete/empty perturbation duality exact on every
//! graph. A graph with no edges at all is a single trivial-structure part, so
//! its score reduces to the norm of the normalized feature space.

use ndarray::Array2;
use rayon::prelude::*;
use serde::Serialize;

use crate::data::{AttributedGraph, DistanceMatrix, GraphDataset};
use crate::lift::{
    self, diffusion_from_eigen, heat_kernel_from_eigen, normalize_diameter, structural_distance,
    EigenvalueConvention, FeatureMetric, StructuralMetric,
};
use crate::perturb::{derive_seed, perturb_graph, PerturbationKind};
use crate::{Error, Result};

/// Settings for complementarity computations.
#[derive(Debug, Clone, Serialize)]
pub struct ComplementarityConfig {
    /// Structural metric template; for t-dependent metrics the `t` inside is
    /// replaced by each entry of `t_values`.
    pub structural: StructuralMetric,
    pub feature: FeatureMetric,
    /// Norm orders, both >= 1 and finite.
    pub p: f64,
    pub q: f64,
    pub t_values: Vec<u32>,
    /// Seeds evaluated for randomized perturbation kinds.
    pub random_seeds: Vec<u64>,
    /// Aggregate all (graph, seed) values directly instead of averaging the
    /// seeds of each graph first.
    pub pool_seeds: bool,
}

impl Default for ComplementarityConfig {
    fn default() -> Self {
        Self {
            structural: StructuralMetric::Diffusion {
                t: 1,
                convention: EigenvalueConvention::LaplacianLiteral,
            },
            feature: FeatureMetric::Euclidean,
            p: 1.0,
            q: 1.0,
            t_values: (1..=10).collect(),
            random_seeds: vec![0, 2, 4, 8, 16],
            pool_seeds: false,
        }
    }
}

impl ComplementarityConfig {
    /// The `t` sweep actually used: `t_values` for t-dependent structural
    /// metrics, a single placeholder `0` otherwise.
    pub fn effective_t_values(&self) -> Vec<u32> {
        match self.structural {
            StructuralMetric::Diffusion { .. } | StructuralMetric::HeatKernel { .. } => {
                self.t_values.clone()
            }
            _ => vec![0],
        }
    }

    /// Instantiate the structural metric at one diffusion step count.
    pub fn metric_at(&self, t: u32) -> StructuralMetric {
        with_t(&self.structural, t)
    }
}

fn with_t(metric: &StructuralMetric, t: u32) -> StructuralMetric {
    match *metric {
        StructuralMetric::Diffusion { convention, .. } => StructuralMetric::Diffusion { t, convention },
        StructuralMetric::HeatKernel { .. } => StructuralMetric::HeatKernel { t: t as f64 },
        other => other,
    }
}

/// One complementarity measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplementarityRecord {
    pub dataset: String,
    pub graph_id: u64,
    pub kind: String,
    pub t: u32,
    /// Seed for randomized kinds, `None` for deterministic ones.
    pub seed: Option<u64>,
    pub value: f64,
    /// Set for fully degenerate graphs (single node) whose score is 0 by
    /// convention.
    pub degenerate: bool,
}

/// Aggregated complementarity for one (kind, t) cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplementaritySummary {
    pub kind: String,
    pub t: u32,
    pub mean: f64,
    pub sd: f64,
    pub p2_5: f64,
    pub p97_5: f64,
    pub graphs: usize,
}

fn validate_orders(p: f64, q: f64) -> Result<()> {
    if !(p.is_finite() && q.is_finite() && p >= 1.0 && q >= 1.0) {
        return Err(Error::InvalidInput(format!(
            "norm orders must be finite and >= 1, got p={p}, q={q}"
        )));
    }
    Ok(())
}

/// Normalized `L_{p,q}` norm of an `n x n` matrix: row sums of `|x|^p` are
/// averaged over the `n - 1` off-diagonal slots, raised to `q/p`, averaged
/// over rows, and taken to the power `1/q`.
///
/// The normalization is a fixed point on the discrete matrix: the all-ones
/// matrix with zero diagonal maps to exactly 1 for every `(p, q)`, and for
/// `p = q` the value coincides with the plain `(sum |x|^p / (n^2 - n))^{1/p}`.
pub fn lpq_norm(m: &Array2<f64>, p: f64, q: f64) -> Result<f64> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::SizeMismatch(format!("{}x{} matrix is not square", n, m.ncols())));
    }
    if n < 2 {
        return Err(Error::InvalidInput("L_{p,q} norm requires n >= 2".into()));
    }
    validate_orders(p, q)?;
    let mut acc = 0.0;
    for i in 0..n {
        let row_sum: f64 = m.row(i).iter().map(|x| x.abs().powf(p)).sum();
        acc += (row_sum / (n as f64 - 1.0)).powf(q / p);
    }
    Ok((acc / n as f64).powf(1.0 / q))
}

/// Normalized distance between two metric spaces over the same points: the
/// `L_{p,q}` norm of the difference of their diameter-normalized matrices.
/// Symmetric, zero iff the inputs coincide, and bounded by 1.
pub fn compare_spaces(d1: &DistanceMatrix, d2: &DistanceMatrix, p: f64, q: f64) -> Result<f64> {
    if d1.n() != d2.n() {
        return Err(Error::SizeMismatch(format!(
            "distance matrices of sizes {} and {}",
            d1.n(),
            d2.n()
        )));
    }
    if d1.diameter() > 1.0 + 1e-9 || d2.diameter() > 1.0 + 1e-9 {
        return Err(Error::InvalidInput(
            "compare_spaces expects diameter-normalized inputs".into(),
        ));
    }
    let diff = d1.values() - d2.values();
    Ok(lpq_norm(&diff, p, q)?.clamp(0.0, 1.0))
}

/// Diameter-normalized structural space of one graph part.
///
/// The degenerate limits are exact by construction: an edgeless part is the
/// trivial space and a complete part is the discrete space under every
/// structural metric, so both skip the numeric lift.
pub fn normalized_structural_space(
    g: &AttributedGraph,
    metric: &StructuralMetric,
) -> Result<DistanceMatrix> {
    if g.edges().is_empty() {
        return Ok(DistanceMatrix::zeros(g.n()));
    }
    if g.is_complete() {
        return Ok(DistanceMatrix::discrete(g.n()));
    }
    Ok(normalize_diameter(&structural_distance(g, metric)?))
}

/// Diameter-normalized feature space.
pub fn normalized_feature_space(features: &Array2<f64>, metric: FeatureMetric) -> DistanceMatrix {
    normalize_diameter(&lift::feature_distance(features, metric))
}

/// The partition used for disconnected scoring: components of size >= 2 plus
/// one pooled part holding the isolated nodes (only when there are >= 2 of
/// them; a single isolated node carries no pairwise geometry).
fn score_parts(g: &AttributedGraph) -> (Vec<Vec<usize>>, Option<Vec<usize>>) {
    let mut parts = Vec::new();
    let mut isolated = Vec::new();
    for comp in g.connected_components() {
        if comp.len() >= 2 {
            parts.push(comp);
        } else {
            isolated.extend(comp);
        }
    }
    let pooled = if isolated.len() >= 2 { Some(isolated) } else { None };
    (parts, pooled)
}

/// Normalized structural spaces of one part for several structural metrics at
/// once; the normalized-Laplacian eigendecomposition is shared by all
/// diffusion and heat-kernel entries.
fn part_structural_spaces(
    sub: &AttributedGraph,
    metrics: &[StructuralMetric],
) -> Result<Vec<DistanceMatrix>> {
    if sub.edges().is_empty() {
        return Ok(vec![DistanceMatrix::zeros(sub.n()); metrics.len()]);
    }
    if sub.is_complete() {
        return Ok(vec![DistanceMatrix::discrete(sub.n()); metrics.len()]);
    }
    let spectral = metrics.iter().any(|m| {
        matches!(
            m,
            StructuralMetric::Diffusion { .. } | StructuralMetric::HeatKernel { .. }
        )
    });
    let eig = if spectral {
        Some(lift::sym_eigendecomposition(&lift::normalized_laplacian(sub))?)
    } else {
        None
    };
    metrics
        .iter()
        .map(|metric| match *metric {
            StructuralMetric::Diffusion { t, convention } => Ok(normalize_diameter(
                &diffusion_from_eigen(eig.as_ref().unwrap(), t, convention),
            )),
            StructuralMetric::HeatKernel { t } => Ok(normalize_diameter(&heat_kernel_from_eigen(
                eig.as_ref().unwrap(),
                t,
            ))),
            other => Ok(normalize_diameter(&structural_distance(sub, &other)?)),
        })
        .collect()
}

/// Mode complementarity of one graph under each of several structural
/// metrics, sharing the partition, feature spaces, and spectral
/// decompositions across the batch. Returns one value in `[0, 1]` per metric.
pub fn complementarity_multi(
    g: &AttributedGraph,
    metrics: &[StructuralMetric],
    feature: FeatureMetric,
    p: f64,
    q: f64,
) -> Result<Vec<f64>> {
    validate_orders(p, q)?;
    if g.n() == 1 {
        // Fully degenerate: a one-point space on both sides.
        return Ok(vec![0.0; metrics.len()]);
    }
    let (components, pooled) = score_parts(g);

    let mut weighted = vec![0.0; metrics.len()];
    let mut total_weight = 0.0;

    for comp in &components {
        let sub = g.induced_subgraph(comp)?;
        let df = normalized_feature_space(sub.features(), feature);
        let spaces = part_structural_spaces(&sub, metrics)?;
        for (slot, ds) in spaces.iter().enumerate() {
            weighted[slot] += comp.len() as f64 * compare_spaces(ds, &df, p, q)?;
        }
        total_weight += comp.len() as f64;
    }

    if let Some(nodes) = pooled {
        let features = g.features().select(ndarray::Axis(0), &nodes);
        let df = normalized_feature_space(&features, feature);
        let trivial = DistanceMatrix::zeros(nodes.len());
        let score = compare_spaces(&trivial, &df, p, q)?;
        for slot in weighted.iter_mut() {
            *slot += nodes.len() as f64 * score;
        }
        total_weight += nodes.len() as f64;
    }

    if total_weight == 0.0 {
        // Unreachable for n >= 2 (edgeless graphs pool all nodes), but keep a
        // defined value.
        return Ok(vec![0.0; metrics.len()]);
    }
    Ok(weighted.iter().map(|w| (w / total_weight).clamp(0.0, 1.0)).collect())
}

/// Mode complementarity of one graph: the normalized distance between its
/// structural and feature metric spaces.
pub fn complementarity(g: &AttributedGraph, cfg: &ComplementarityConfig) -> Result<f64> {
    Ok(complementarity_multi(g, &[cfg.structural], cfg.feature, cfg.p, cfg.q)?[0])
}

/// Complementarity of the perturbed graph `kind(g)`.
pub fn perturbed_complementarity(
    g: &AttributedGraph,
    kind: PerturbationKind,
    cfg: &ComplementarityConfig,
    seed: u64,
) -> Result<f64> {
    complementarity(&perturb_graph(g, kind, seed), cfg)
}

/// Which mode a diversity score describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DiversityMode {
    /// Geometric diversity of the graph structure; probed by emptying the
    /// features.
    Structure,
    /// Geometric diversity of the node features; probed by emptying the
    /// graph.
    Features,
}

/// Mode diversity `1 - |1 - 2 * gamma|` where `gamma` is the complementarity
/// under the empty perturbation of the dual mode. Peaks at 1 when the
/// surviving mode sits halfway between the trivial and discrete limits and
/// vanishes at both degenerate extremes.
pub fn mode_diversity(
    g: &AttributedGraph,
    mode: DiversityMode,
    cfg: &ComplementarityConfig,
) -> Result<f64> {
    let kind = match mode {
        DiversityMode::Structure => PerturbationKind::EmptyFeatures,
        DiversityMode::Features => PerturbationKind::EmptyGraph,
    };
    let gamma = perturbed_complementarity(g, kind, cfg, 0)?;
    Ok(1.0 - (1.0 - 2.0 * gamma).abs())
}

/// Linear-interpolation percentile of a sorted slice.
pub(crate) fn percentile_sorted(sorted: &[f64], pct: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    if sorted.len() == 1 {
        return sorted[0];
    }
    let h = pct / 100.0 * (sorted.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

fn summarize(kind: &str, t: u32, values: &[f64]) -> ComplementaritySummary {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let sd = if values.len() > 1 {
        (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ComplementaritySummary {
        kind: kind.to_string(),
        t,
        mean,
        sd,
        p2_5: percentile_sorted(&sorted, 2.5),
        p97_5: percentile_sorted(&sorted, 97.5),
        graphs: values.len(),
    }
}

/// Per-graph complementarity records for every requested perturbation kind,
/// plus per-(kind, t) summaries.
///
/// Deterministic kinds are computed once per graph; randomized kinds once per
/// (graph, seed) with the per-graph values averaged over seeds before
/// aggregation (unless `pool_seeds` is set). Graphs are processed in parallel;
/// per-graph seed derivation keeps the output independent of thread count.
pub fn dataset_complementarity(
    d: &GraphDataset,
    kinds: &[PerturbationKind],
    cfg: &ComplementarityConfig,
) -> Result<(Vec<ComplementarityRecord>, Vec<ComplementaritySummary>)> {
    if d.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let ts = cfg.effective_t_values();
    if ts.is_empty() {
        return Err(Error::InvalidInput("no t values requested".into()));
    }
    let metrics: Vec<StructuralMetric> = ts.iter().map(|&t| cfg.metric_at(t)).collect();

    let per_graph: Vec<Vec<ComplementarityRecord>> = d
        .graphs()
        .par_iter()
        .map(|g| -> Result<Vec<ComplementarityRecord>> {
            let mut records = Vec::new();
            for &kind in kinds {
                let seeds: Vec<Option<u64>> = if kind.is_random() {
                    if cfg.random_seeds.is_empty() {
                        return Err(Error::InvalidInput(format!(
                            "kind {kind} needs at least one seed"
                        )));
                    }
                    cfg.random_seeds.iter().map(|&s| Some(s)).collect()
                } else {
                    vec![None]
                };
                for seed in seeds {
                    let perturbed = perturb_graph(
                        g,
                        kind,
                        derive_seed(seed.unwrap_or(0), d.name(), g.graph_id()),
                    );
                    let values =
                        complementarity_multi(&perturbed, &metrics, cfg.feature, cfg.p, cfg.q)?;
                    for (&t, &value) in ts.iter().zip(values.iter()) {
                        records.push(ComplementarityRecord {
                            dataset: d.name().to_string(),
                            graph_id: g.graph_id(),
                            kind: kind.code().to_string(),
                            t,
                            seed,
                            value,
                            degenerate: perturbed.n() == 1,
                        });
                    }
                }
            }
            Ok(records)
        })
        .collect::<Result<Vec<_>>>()?;

    let records: Vec<ComplementarityRecord> = per_graph.into_iter().flatten().collect();

    // Group values per (kind, t, graph) in one pass; records arrive in graph
    // order, so insertion order is deterministic.
    let mut cells: std::collections::BTreeMap<(String, u32), Vec<(u64, f64)>> =
        std::collections::BTreeMap::new();
    for r in &records {
        cells
            .entry((r.kind.clone(), r.t))
            .or_default()
            .push((r.graph_id, r.value));
    }
    let mut summaries = Vec::new();
    for &kind in kinds {
        for &t in &ts {
            let cell = &cells[&(kind.code().to_string(), t)];
            let values: Vec<f64> = if kind.is_random() && !cfg.pool_seeds {
                // Average each graph over its seeds first.
                let mut per_graph: std::collections::BTreeMap<u64, (f64, usize)> =
                    std::collections::BTreeMap::new();
                for &(graph_id, value) in cell {
                    let slot = per_graph.entry(graph_id).or_insert((0.0, 0));
                    slot.0 += value;
                    slot.1 += 1;
                }
                per_graph.values().map(|&(sum, count)| sum / count as f64).collect()
            } else {
                cell.iter().map(|&(_, value)| value).collect()
            };
            summaries.push(summarize(kind.code(), t, &values));
        }
    }
    Ok((records, summaries))
}

/// Write records as CSV with header `dataset,graph_id,kind,t,seed,value`.
pub fn write_records_csv<W: std::io::Write>(
    records: &[ComplementarityRecord],
    mut out: W,
) -> Result<()> {
    writeln!(out, "dataset,graph_id,kind,t,seed,value")?;
    for r in records {
        let seed = r.seed.map(|s| s.to_string()).unwrap_or_default();
        writeln!(out, "{},{},{},{},{},{}", r.dataset, r.graph_id, r.kind, r.t, seed, r.value)?;
    }
    Ok(())
}

/// Largest duality violation `max(|g_cg - (1 - g_eg)|, |g_cf - (1 - g_ef)|)`
/// over all graphs of a dataset, evaluated at `p = q = 1`.
pub fn max_duality_violation(d: &GraphDataset, cfg: &ComplementarityConfig) -> Result<f64> {
    let cfg = ComplementarityConfig {
        p: 1.0,
        q: 1.0,
        ..cfg.clone()
    };
    let pairs = [
        (PerturbationKind::CompleteGraph, PerturbationKind::EmptyGraph),
        (PerturbationKind::CompleteFeatures, PerturbationKind::EmptyFeatures),
    ];
    let mut worst = 0.0f64;
    for g in d.graphs() {
        for (complete, empty) in pairs {
            let gc = perturbed_complementarity(g, complete, &cfg, 0)?;
            let ge = perturbed_complementarity(g, empty, &cfg, 0)?;
            worst = worst.max((gc - (1.0 - ge)).abs());
        }
    }
    Ok(worst)
}
