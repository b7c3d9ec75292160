//! Performance-separability statistics over externally produced
//! model-performance records.
//!
//! The pipeline: pick the best model per (dataset, perturbation), compare the
//! performance distributions of all perturbation pairs with permutation tests
//! (KS or Wilcoxon rank-sum statistic), Bonferroni-correct within the dataset,
//! condense the decisions into ordered mode groups, and score how informative
//! each mode is for the task.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::perturb::PerturbationKind;
use crate::report::Symbol;
use crate::{Error, Result};

/// One externally produced performance measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerformanceRecord {
    pub dataset: String,
    /// Perturbation code (`o`, `eg`, ...).
    pub kind: String,
    pub arch: String,
    pub hparams: String,
    pub run: String,
    pub metric: String,
    pub value: f64,
}

/// Per-graph correctness of one model run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphOutcomeRecord {
    pub dataset: String,
    pub kind: String,
    pub arch: String,
    pub run: String,
    pub graph_id: u64,
    pub correct: bool,
}

fn check_kind(kind: &str, path: &Path, line: usize) -> Result<()> {
    if PerturbationKind::parse(kind).is_none() {
        return Err(Error::Parse {
            path: path.display().to_string(),
            line,
            msg: format!("unknown perturbation kind {kind:?}"),
        });
    }
    Ok(())
}

/// Load performance records from CSV with header
/// `dataset,kind,arch,hparams,run,metric,value`.
pub fn load_performance_records(path: &Path) -> Result<Vec<PerformanceRecord>> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|_| Error::MissingFile(path.display().to_string()))?;
    let mut records = Vec::new();
    for row in reader.deserialize::<PerformanceRecord>() {
        let record = row.map_err(|e| Error::Parse {
            path: path.display().to_string(),
            line: e.position().map_or(0, |p| p.line() as usize),
            msg: e.to_string(),
        })?;
        let line = records.len() + 2;
        check_kind(&record.kind, path, line)?;
        if !record.value.is_finite() {
            return Err(Error::Parse {
                path: path.display().to_string(),
                line,
                msg: format!("non-finite value {}", record.value),
            });
        }
        records.push(record);
    }
    Ok(records)
}

/// Write performance records with the canonical header.
pub fn write_performance_records<W: std::io::Write>(
    records: &[PerformanceRecord],
    out: W,
) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for r in records {
        writer.serialize(r).map_err(|e| Error::InvalidInput(e.to_string()))?;
    }
    writer.flush()?;
    Ok(())
}

/// Load graph-outcome records from CSV with header
/// `dataset,kind,arch,run,graph_id,correct`.
pub fn load_graph_outcomes(path: &Path) -> Result<Vec<GraphOutcomeRecord>> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|_| Error::MissingFile(path.display().to_string()))?;
    let mut records = Vec::new();
    for row in reader.deserialize::<GraphOutcomeRecord>() {
        let record = row.map_err(|e| Error::Parse {
            path: path.display().to_string(),
            line: e.position().map_or(0, |p| p.line() as usize),
            msg: e.to_string(),
        })?;
        check_kind(&record.kind, path, records.len() + 2)?;
        records.push(record);
    }
    Ok(records)
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Pick the model (architecture, hyperparameter id) with the best mean of the
/// target metric for one (dataset, kind). Ties break by mean accuracy
/// (higher), then mean loss (lower), then the lexically smallest model id.
pub fn select_best_model(
    records: &[PerformanceRecord],
    dataset: &str,
    kind: &str,
    target_metric: &str,
) -> Result<(String, String)> {
    let mut by_model: BTreeMap<(String, String), BTreeMap<String, Vec<f64>>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.dataset == dataset && r.kind == kind) {
        by_model
            .entry((r.arch.clone(), r.hparams.clone()))
            .or_default()
            .entry(r.metric.clone())
            .or_default()
            .push(r.value);
    }
    let mut best: Option<((String, String), f64, f64, f64)> = None;
    for (model, metrics) in &by_model {
        let Some(target) = metrics.get(target_metric) else {
            continue;
        };
        let target_mean = mean(target);
        let acc_mean = metrics.get("accuracy").map_or(f64::NEG_INFINITY, |v| mean(v));
        let loss_mean = metrics.get("loss").map_or(f64::INFINITY, |v| mean(v));
        let better = match &best {
            None => true,
            Some((cur_model, cur_target, cur_acc, cur_loss)) => {
                (target_mean, acc_mean, -loss_mean, std::cmp::Reverse(model))
                    > (*cur_target, *cur_acc, -*cur_loss, std::cmp::Reverse(cur_model))
            }
        };
        if better {
            best = Some((model.clone(), target_mean, acc_mean, loss_mean));
        }
    }
    best.map(|(model, ..)| model).ok_or_else(|| {
        Error::InvalidInput(format!(
            "no {target_metric:?} records for dataset {dataset:?}, kind {kind:?}"
        ))
    })
}

/// Two-sample Kolmogorov-Smirnov statistic: the supremum over all sample
/// points of the absolute difference of the right-continuous empirical CDFs.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_by(|x, y| x.partial_cmp(y).unwrap());
    sb.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let cdf = |sorted: &[f64], x: f64| -> f64 {
        // count of entries <= x
        let mut lo = 0usize;
        let mut hi = sorted.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            if sorted[mid] <= x {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo as f64 / sorted.len() as f64
    };
    let mut d: f64 = 0.0;
    for &x in sa.iter().chain(sb.iter()) {
        d = d.max((cdf(&sa, x) - cdf(&sb, x)).abs());
    }
    Ok(d)
}

/// Wilcoxon rank-sum statistic: the sum of the ranks of sample `a` in the
/// pooled ordering, with midranks for ties.
pub fn wilcoxon_statistic(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut pooled: Vec<(f64, bool)> = a
        .iter()
        .map(|&x| (x, true))
        .chain(b.iter().map(|&x| (x, false)))
        .collect();
    pooled.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let mut w = 0.0;
    let mut i = 0;
    while i < pooled.len() {
        let mut j = i;
        while j < pooled.len() && pooled[j].0 == pooled[i].0 {
            j += 1;
        }
        // ranks i+1 ..= j share the midrank
        let midrank = (i + 1 + j) as f64 / 2.0;
        for item in &pooled[i..j] {
            if item.1 {
                w += midrank;
            }
        }
        i = j;
    }
    Ok(w)
}

/// Test statistic for permutation testing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TestStatistic {
    Ks,
    Wilcoxon,
}

impl TestStatistic {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "ks" => Some(TestStatistic::Ks),
            "wilcoxon" => Some(TestStatistic::Wilcoxon),
            _ => None,
        }
    }
}

/// Outcome of one permutation test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PermutationOutcome {
    pub p_value: f64,
    /// All label assignments were enumerated instead of sampled.
    pub exhaustive: bool,
    /// All pooled values were identical; `p_value` is 1 by convention.
    pub degenerate: bool,
}

/// Number of distinct size-`k` relabelings of the pooled sample at or below
/// which the test enumerates exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 20_000;

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u64::MAX,
        };
    }
    acc
}

/// Advance to the next lexicographic size-`k` combination out of `0..n`.
/// Returns false once the last combination has been consumed.
fn next_combination(indices: &mut [usize], n: usize) -> bool {
    let k = indices.len();
    for slot in (0..k).rev() {
        if indices[slot] != slot + n - k {
            indices[slot] += 1;
            for j in (slot + 1)..k {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn mix(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_mul(0xBF58_476D_1CE4_E5B9)
        ^ index.wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 29;
    z = z.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z ^ (z >> 32)
}

/// Extremity of a statistic under the permutation null: larger means further
/// from the null. KS is one-sided in its own magnitude; Wilcoxon is two-sided
/// around its null mean `n_a (N + 1) / 2`.
fn extremity(statistic: TestStatistic, stat: f64, n_a: usize, n_total: usize) -> f64 {
    match statistic {
        TestStatistic::Ks => stat,
        TestStatistic::Wilcoxon => {
            let null_mean = n_a as f64 * (n_total as f64 + 1.0) / 2.0;
            (stat - null_mean).abs()
        }
    }
}

fn eval_stat(statistic: TestStatistic, a: &[f64], b: &[f64]) -> Result<f64> {
    match statistic {
        TestStatistic::Ks => ks_statistic(a, b),
        TestStatistic::Wilcoxon => wilcoxon_statistic(a, b),
    }
}

/// Permutation test of the null that both samples come from one distribution.
///
/// When the number of distinct relabelings is at most [`EXHAUSTIVE_LIMIT`]
/// they are all enumerated and `p` is the exact fraction with extremity at
/// least the observed one. Otherwise `n_perm` random relabelings are drawn and
/// `p = (1 + #{extreme}) / (1 + n_perm)`. Sampling uses one counter-based
/// substream per permutation index, so the result is deterministic for a seed
/// and independent of thread count.
pub fn permutation_test(
    a: &[f64],
    b: &[f64],
    statistic: TestStatistic,
    n_perm: usize,
    seed: u64,
) -> Result<PermutationOutcome> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    if n_perm == 0 {
        return Err(Error::InvalidInput("n_perm must be at least 1".into()));
    }
    let pooled: Vec<f64> = a.iter().chain(b.iter()).copied().collect();
    if pooled.iter().all(|&x| x == pooled[0]) {
        return Ok(PermutationOutcome {
            p_value: 1.0,
            exhaustive: false,
            degenerate: true,
        });
    }
    let n_a = a.len();
    let n = pooled.len();
    let observed = extremity(statistic, eval_stat(statistic, a, b)?, n_a, n);

    if binomial(n as u64, n_a as u64) <= EXHAUSTIVE_LIMIT {
        let mut hits = 0u64;
        let mut total = 0u64;
        let mut indices: Vec<usize> = (0..n_a).collect();
        loop {
            let in_a: BTreeSet<usize> = indices.iter().copied().collect();
            let pa: Vec<f64> = indices.iter().map(|&i| pooled[i]).collect();
            let pb: Vec<f64> = (0..n).filter(|i| !in_a.contains(i)).map(|i| pooled[i]).collect();
            let e = extremity(statistic, eval_stat(statistic, &pa, &pb)?, n_a, n);
            total += 1;
            if e >= observed {
                hits += 1;
            }
            if !next_combination(&mut indices, n) {
                return Ok(PermutationOutcome {
                    p_value: hits as f64 / total as f64,
                    exhaustive: true,
                    degenerate: false,
                });
            }
        }
    }

    permutation_test_sampled(a, b, statistic, n_perm, seed)
}

/// Monte-Carlo permutation test that always samples, regardless of how small
/// the pooled sample is: `p = (1 + #{extreme}) / (1 + n_perm)`.
pub fn permutation_test_sampled(
    a: &[f64],
    b: &[f64],
    statistic: TestStatistic,
    n_perm: usize,
    seed: u64,
) -> Result<PermutationOutcome> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    if n_perm == 0 {
        return Err(Error::InvalidInput("n_perm must be at least 1".into()));
    }
    let pooled: Vec<f64> = a.iter().chain(b.iter()).copied().collect();
    if pooled.iter().all(|&x| x == pooled[0]) {
        return Ok(PermutationOutcome {
            p_value: 1.0,
            exhaustive: false,
            degenerate: true,
        });
    }
    let n_a = a.len();
    let n = pooled.len();
    let observed = extremity(statistic, eval_stat(statistic, a, b)?, n_a, n);
    let hits: u64 = (0..n_perm as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, i));
            let mut shuffled = pooled.clone();
            shuffled.shuffle(&mut rng);
            let (pa, pb) = shuffled.split_at(n_a);
            let stat = eval_stat(statistic, pa, pb).expect("non-empty splits");
            u64::from(extremity(statistic, stat, n_a, n) >= observed)
        })
        .sum();
    Ok(PermutationOutcome {
        p_value: (1.0 + hits as f64) / (1.0 + n_perm as f64),
        exhaustive: false,
        degenerate: false,
    })
}

/// Bonferroni-adjusted significance level `alpha / m`.
pub fn bonferroni_adjust(alpha: f64, m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidInput("cannot adjust for zero hypotheses".into()));
    }
    Ok(alpha / m as f64)
}

/// Settings for the pairwise testing stage.
#[derive(Debug, Clone, Serialize)]
pub struct TestConfig {
    pub statistic: TestStatistic,
    pub n_perm: usize,
    pub alpha: f64,
    pub seed: u64,
}

impl Default for TestConfig {
    fn default() -> Self {
        Self {
            statistic: TestStatistic::Ks,
            n_perm: 10_000,
            alpha: 0.01,
            seed: 0,
        }
    }
}

/// Result of the pairwise-separability pipeline for one (dataset, metric).
#[derive(Debug, Clone, Serialize)]
pub struct SeparabilityResult {
    pub dataset: String,
    pub metric: String,
    /// Modes in canonical code order.
    pub modes: Vec<String>,
    pub best_models: Vec<(String, String)>,
    pub sample_sizes: Vec<usize>,
    pub means: Vec<f64>,
    /// Raw p-values, symmetric with 1.0 on the diagonal.
    pub raw_p: Vec<Vec<f64>>,
    pub adjusted_alpha: f64,
    /// Pairwise decisions `p < adjusted_alpha`, symmetric.
    pub separable: Vec<Vec<bool>>,
    /// Mode groups, best first; members sorted alphabetically.
    pub groups: Vec<Vec<String>>,
    pub warnings: Vec<String>,
}

impl SeparabilityResult {
    /// Condensed notation such as `o > cg > eg/rf`.
    pub fn condensed(&self) -> String {
        self.groups
            .iter()
            .map(|g| g.join("/"))
            .collect::<Vec<_>>()
            .join(" > ")
    }
}

const KIND_ORDER: [&str; 9] = ["o", "ef", "cf", "rf", "sf", "eg", "cg", "rg", "sg"];

fn kind_rank(code: &str) -> usize {
    KIND_ORDER.iter().position(|&k| k == code).unwrap_or(KIND_ORDER.len())
}

/// Group modes by the connected components of the not-separable relation and
/// order groups by descending mean of member means.
///
/// Taking components is exactly the merge closure the condensed notation
/// needs: cross-component pairs are separable by construction, and any
/// intra-component pair that is still separable is a non-transitivity, which
/// is kept but reported in the warnings.
pub fn partial_order(
    modes: &[String],
    means: &[f64],
    separable: &[Vec<bool>],
) -> (Vec<Vec<String>>, Vec<String>) {
    let k = modes.len();
    let mut warnings = Vec::new();
    let mut component = vec![usize::MAX; k];
    let mut groups_idx: Vec<Vec<usize>> = Vec::new();
    for start in 0..k {
        if component[start] != usize::MAX {
            continue;
        }
        let id = groups_idx.len();
        let mut stack = vec![start];
        component[start] = id;
        let mut members = Vec::new();
        while let Some(i) = stack.pop() {
            members.push(i);
            for j in 0..k {
                if j != i && !separable[i][j] && component[j] == usize::MAX {
                    component[j] = id;
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        groups_idx.push(members);
    }

    for group in &groups_idx {
        for (slot, &i) in group.iter().enumerate() {
            for &j in &group[slot + 1..] {
                if separable[i][j] {
                    warnings.push(format!(
                        "non-transitive separability: {} and {} are separable but share a group",
                        modes[i], modes[j]
                    ));
                }
            }
        }
    }

    let group_mean = |g: &Vec<usize>| g.iter().map(|&i| means[i]).sum::<f64>() / g.len() as f64;
    groups_idx.sort_by(|a, b| {
        group_mean(b)
            .partial_cmp(&group_mean(a))
            .unwrap()
            .then_with(|| modes[a[0]].cmp(&modes[b[0]]))
    });
    for w in groups_idx.windows(2) {
        if group_mean(&w[0]) == group_mean(&w[1]) {
            warnings.push("tied group means; order falls back to mode names".to_string());
        }
    }

    let groups = groups_idx
        .iter()
        .map(|g| {
            let mut names: Vec<String> = g.iter().map(|&i| modes[i].clone()).collect();
            names.sort();
            names
        })
        .collect();
    (groups, warnings)
}

/// Run the full pairwise-separability pipeline for one dataset and metric:
/// best-model selection per mode, all-pairs permutation tests, Bonferroni
/// correction over the pair count, and partial-order extraction.
pub fn pairwise_separability(
    records: &[PerformanceRecord],
    dataset: &str,
    metric: &str,
    cfg: &TestConfig,
) -> Result<SeparabilityResult> {
    let mut modes: Vec<String> = records
        .iter()
        .filter(|r| r.dataset == dataset && r.metric == metric)
        .map(|r| r.kind.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    modes.sort_by(|a, b| kind_rank(a).cmp(&kind_rank(b)).then_with(|| a.cmp(b)));
    let k = modes.len();
    if k < 2 {
        return Err(Error::InvalidInput(format!(
            "need at least 2 modes with {metric:?} records for dataset {dataset:?}, found {k}"
        )));
    }

    let mut warnings = Vec::new();
    let mut best_models = Vec::with_capacity(k);
    let mut samples: Vec<Vec<f64>> = Vec::with_capacity(k);
    for mode in &modes {
        let best = select_best_model(records, dataset, mode, metric)?;
        let sample: Vec<f64> = records
            .iter()
            .filter(|r| {
                r.dataset == dataset
                    && r.kind == *mode
                    && r.metric == metric
                    && r.arch == best.0
                    && r.hparams == best.1
            })
            .map(|r| r.value)
            .collect();
        best_models.push(best);
        samples.push(sample);
    }
    let means: Vec<f64> = samples.iter().map(|s| mean(s)).collect();
    let sample_sizes: Vec<usize> = samples.iter().map(Vec::len).collect();

    let m = k * (k - 1) / 2;
    let adjusted_alpha = bonferroni_adjust(cfg.alpha, m)?;

    let mut raw_p = vec![vec![1.0; k]; k];
    let mut separable = vec![vec![false; k]; k];
    for i in 0..k {
        for j in (i + 1)..k {
            let outcome = permutation_test(
                &samples[i],
                &samples[j],
                cfg.statistic,
                cfg.n_perm,
                mix(cfg.seed, (i * k + j) as u64),
            )?;
            if outcome.degenerate {
                warnings.push(format!(
                    "degenerate samples for {} vs {}: all pooled values identical",
                    modes[i], modes[j]
                ));
            }
            raw_p[i][j] = outcome.p_value;
            raw_p[j][i] = outcome.p_value;
            let decision = outcome.p_value < adjusted_alpha;
            separable[i][j] = decision;
            separable[j][i] = decision;
        }
    }

    let (groups, order_warnings) = partial_order(&modes, &means, &separable);
    warnings.extend(order_warnings);

    Ok(SeparabilityResult {
        dataset: dataset.to_string(),
        metric: metric.to_string(),
        modes,
        best_models,
        sample_sizes,
        means,
        raw_p,
        adjusted_alpha,
        separable,
        groups,
        warnings,
    })
}

/// Informativeness of one mode for the task.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Informativeness {
    Uninformative,
    /// The two evaluation metrics disagree; rendered as `(un)informative`.
    Mixed,
    Informative,
}

impl Informativeness {
    /// Numeric level used by the evaluation score: 0, 1, or 2.
    pub fn level(self) -> f64 {
        match self {
            Informativeness::Uninformative => 0.0,
            Informativeness::Mixed => 1.0,
            Informativeness::Informative => 2.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Informativeness::Uninformative => "uninformative",
            Informativeness::Mixed => "(un)informative",
            Informativeness::Informative => "informative",
        }
    }
}

/// Combined structure/features informativeness verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeInformativeness {
    pub structure: Informativeness,
    pub features: Informativeness,
    pub warnings: Vec<String>,
}

fn group_index(groups: &[Vec<String>], mode: &str) -> Option<usize> {
    groups.iter().position(|g| g.iter().any(|m| m == mode))
}

/// Whether the original mode group strictly precedes the groups of every
/// listed perturbation present in the order.
fn original_strictly_precedes(
    groups: &[Vec<String>],
    perturbations: &[&str],
    warnings: &mut Vec<String>,
    side: &str,
) -> bool {
    let Some(o_pos) = group_index(groups, "o") else {
        warnings.push(format!("{side}: original mode missing from the order"));
        return false;
    };
    let present: Vec<usize> = perturbations.iter().filter_map(|m| group_index(groups, m)).collect();
    if present.len() < perturbations.len() {
        let missing: Vec<&&str> = perturbations
            .iter()
            .filter(|m| group_index(groups, m).is_none())
            .collect();
        warnings.push(format!("{side}: modes {missing:?} absent; judged on the present set"));
    }
    if present.is_empty() {
        warnings.push(format!("{side}: no relevant perturbations present"));
        return false;
    }
    present.iter().all(|&pos| o_pos < pos)
}

/// Judge mode informativeness from the accuracy and AUROC orders. A mode is
/// informative under one metric when destroying it separably degrades
/// performance: the original must strictly precede the groups of all its
/// perturbations ({eg, cg, rg} for structure, {cf, rf} for features). Metrics
/// that disagree yield `Mixed`.
pub fn mode_informativeness(
    order_accuracy: &[Vec<String>],
    order_auroc: &[Vec<String>],
) -> ModeInformativeness {
    let mut warnings = Vec::new();
    let combine = |acc: bool, auroc: bool| match (acc, auroc) {
        (true, true) => Informativeness::Informative,
        (false, false) => Informativeness::Uninformative,
        _ => Informativeness::Mixed,
    };
    let structure = combine(
        original_strictly_precedes(order_accuracy, &["eg", "cg", "rg"], &mut warnings, "structure/accuracy"),
        original_strictly_precedes(order_auroc, &["eg", "cg", "rg"], &mut warnings, "structure/auroc"),
    );
    let features = combine(
        original_strictly_precedes(order_accuracy, &["cf", "rf"], &mut warnings, "features/accuracy"),
        original_strictly_precedes(order_auroc, &["cf", "rf"], &mut warnings, "features/auroc"),
    );
    ModeInformativeness {
        structure,
        features,
        warnings,
    }
}

/// Evaluation score `1.5 * S + F` over informativeness levels, binned onto the
/// five-symbol ladder: `[0,1] --`, `(1,2] -`, `(2,3] o`, `(3,4] +`, `(4,5] ++`.
pub fn evaluation_score(structure: Informativeness, features: Informativeness) -> (f64, Symbol) {
    let score = 1.5 * structure.level() + features.level();
    let symbol = if score <= 1.0 {
        Symbol::MuchWorse
    } else if score <= 2.0 {
        Symbol::Worse
    } else if score <= 3.0 {
        Symbol::Neutral
    } else if score <= 4.0 {
        Symbol::Better
    } else {
        Symbol::MuchBetter
    };
    (score, symbol)
}

/// Percentile bootstrap confidence interval for the mean.
pub fn bootstrap_ci(sample: &[f64], n_boot: usize, level: f64, seed: u64) -> Result<(f64, f64)> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidInput(format!("level {level} outside (0, 1)")));
    }
    if n_boot == 0 {
        return Err(Error::InvalidInput("n_boot must be at least 1".into()));
    }
    let mut means: Vec<f64> = (0..n_boot as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, i));
            let total: f64 = (0..sample.len())
                .map(|_| sample[rng.gen_range(0..sample.len())])
                .sum();
            total / sample.len() as f64
        })
        .collect();
    means.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let tail = (1.0 - level) / 2.0 * 100.0;
    Ok((
        crate::complement::percentile_sorted(&means, tail),
        crate::complement::percentile_sorted(&means, 100.0 - tail),
    ))
}

/// Set similarity of correctly classified graphs: Jaccard `|A n B| / |A u B|`
/// and the asymmetric overlap `|A n B| / |B|` (the fraction of `B` that also
/// lies in `A`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SetSimilarity {
    pub jaccard: f64,
    pub asymmetric: f64,
    /// `B` was empty; the asymmetric overlap defaults to 1.
    pub asymmetric_undefined: bool,
}

pub fn graph_set_similarity(a: &BTreeSet<u64>, b: &BTreeSet<u64>) -> SetSimilarity {
    let intersection = a.intersection(b).count() as f64;
    let union = a.union(b).count() as f64;
    let jaccard = if union == 0.0 { 1.0 } else { intersection / union };
    let (asymmetric, asymmetric_undefined) = if b.is_empty() {
        (1.0, true)
    } else {
        (intersection / b.len() as f64, false)
    };
    SetSimilarity {
        jaccard,
        asymmetric,
        asymmetric_undefined,
    }
}
