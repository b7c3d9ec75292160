//! Diversity binning, dataset taxonomy, correlation analysis, and
//! machine-readable report emission.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Serialize, Serializer};

use crate::complement::ComplementaritySummary;
use crate::data::DatasetStats;
use crate::separability::{ModeInformativeness, SeparabilityResult};
use crate::{Error, Result};

/// Five-symbol judgment ladder used across the reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbol {
    MuchWorse,
    Worse,
    Neutral,
    Better,
    MuchBetter,
}

impl Symbol {
    pub fn as_str(&self) -> &'static str {
        match self {
            Symbol::MuchWorse => "--",
            Symbol::Worse => "-",
            Symbol::Neutral => "∘",
            Symbol::Better => "+",
            Symbol::MuchBetter => "++",
        }
    }

    /// A measure is called high when judged neutral or better.
    pub fn is_high(&self) -> bool {
        matches!(self, Symbol::Neutral | Symbol::Better | Symbol::MuchBetter)
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "--" => Symbol::MuchWorse,
            "-" => Symbol::Worse,
            "∘" | "o" => Symbol::Neutral,
            "+" => Symbol::Better,
            "++" => Symbol::MuchBetter,
            _ => return None,
        })
    }
}

impl std::fmt::Display for Symbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Bin a diversity mean and standard deviation onto the symbol ladder.
///
/// Means use five equal-width bins over `[0, 1]`; standard deviations use the
/// narrower brackets 0.05/0.1/0.15/0.2. Bins are left-closed, the last bin is
/// closed, and values of 0.6 and above all render as `++`.
pub fn diversity_bins(mu: f64, sigma: f64) -> Result<(Symbol, Symbol)> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::InvalidInput(format!("diversity mean {mu} outside [0, 1]")));
    }
    if sigma.is_nan() || sigma < 0.0 {
        return Err(Error::InvalidInput(format!("bad diversity sd {sigma}")));
    }
    let ladder = [
        Symbol::MuchWorse,
        Symbol::Worse,
        Symbol::Neutral,
        Symbol::MuchBetter,
        Symbol::MuchBetter,
    ];
    let mu_bin = if mu >= 1.0 { 4 } else { (mu / 0.2) as usize };
    let sigma_bin = if sigma < 0.05 {
        0
    } else if sigma < 0.1 {
        1
    } else if sigma < 0.15 {
        2
    } else if sigma < 0.2 {
        3
    } else {
        4
    };
    Ok((ladder[mu_bin], ladder[sigma_bin]))
}

/// Mean/sd of the structural and feature diversity of one dataset, with the
/// binned symbols for all four values.
#[derive(Debug, Clone, Serialize)]
pub struct DiversitySummary {
    pub dataset: String,
    pub delta_s_mean: f64,
    pub delta_s_sd: f64,
    pub delta_f_mean: f64,
    pub delta_f_sd: f64,
    pub delta_s_mean_symbol: Symbol,
    pub delta_s_sd_symbol: Symbol,
    pub delta_f_mean_symbol: Symbol,
    pub delta_f_sd_symbol: Symbol,
}

fn mean_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let sd = if values.len() > 1 {
        (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    (mean, sd)
}

/// Aggregate per-graph diversity scores into a [`DiversitySummary`].
pub fn summarize_diversity(
    dataset: &str,
    delta_s: &[f64],
    delta_f: &[f64],
) -> Result<DiversitySummary> {
    if delta_s.is_empty() || delta_f.is_empty() {
        return Err(Error::EmptySample);
    }
    let (s_mean, s_sd) = mean_sd(delta_s);
    let (f_mean, f_sd) = mean_sd(delta_f);
    let (s_mu_sym, s_sd_sym) = diversity_bins(s_mean, s_sd)?;
    let (f_mu_sym, f_sd_sym) = diversity_bins(f_mean, f_sd)?;
    Ok(DiversitySummary {
        dataset: dataset.to_string(),
        delta_s_mean: s_mean,
        delta_s_sd: s_sd,
        delta_f_mean: f_mean,
        delta_f_sd: f_sd,
        delta_s_mean_symbol: s_mu_sym,
        delta_s_sd_symbol: s_sd_sym,
        delta_f_mean_symbol: f_mu_sym,
        delta_f_sd_symbol: f_sd_sym,
    })
}

/// Recommended action for a dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaxonomyAction {
    Keep,
    Realign,
    DeprecateStructural,
    DeprecateFull,
}

impl TaxonomyAction {
    pub fn as_str(&self) -> &'static str {
        match self {
            TaxonomyAction::Keep => "Keep",
            TaxonomyAction::Realign => "Realign",
            TaxonomyAction::DeprecateStructural => "Deprecate-structural",
            TaxonomyAction::DeprecateFull => "Deprecate-full",
        }
    }
}

impl Serialize for TaxonomyAction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl std::fmt::Display for TaxonomyAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Taxonomy verdict with the two evidence flags that determine it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TaxonomyVerdict {
    pub action: TaxonomyAction,
    pub separability_high: bool,
    pub structural_diversity_high: bool,
}

/// Classify a dataset from its evaluation symbol (performance separability)
/// and its structural-diversity mean symbol. High separability with high
/// diversity keeps a dataset; high diversity alone asks for realignment; high
/// separability alone deprecates the structural mode; neither deprecates the
/// dataset outright.
pub fn taxonomy_classify(evaluation: Symbol, structural_diversity_mu: Symbol) -> TaxonomyVerdict {
    let separability_high = evaluation.is_high();
    let structural_diversity_high = structural_diversity_mu.is_high();
    let action = match (separability_high, structural_diversity_high) {
        (true, true) => TaxonomyAction::Keep,
        (false, true) => TaxonomyAction::Realign,
        (true, false) => TaxonomyAction::DeprecateStructural,
        (false, false) => TaxonomyAction::DeprecateFull,
    };
    TaxonomyVerdict {
        action,
        separability_high,
        structural_diversity_high,
    }
}

/// Correlation coefficients for one paired sample, `None` when undefined
/// (zero variance or all ties).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Correlations {
    pub pearson: Option<f64>,
    pub spearman: Option<f64>,
    pub kendall: Option<f64>,
    pub pearson_symbol: Option<Symbol>,
    pub spearman_symbol: Option<Symbol>,
    pub kendall_symbol: Option<Symbol>,
}

/// Bin a correlation onto the symbol ladder with five equal-width bins over
/// `[-1, 1]`.
pub fn correlation_symbol(r: f64) -> Symbol {
    if r < -0.6 {
        Symbol::MuchWorse
    } else if r < -0.2 {
        Symbol::Worse
    } else if r < 0.2 {
        Symbol::Neutral
    } else if r < 0.6 {
        Symbol::Better
    } else {
        Symbol::MuchBetter
    }
}

fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
        sxy += (a - mx) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

/// Midranks of a sample (average rank across ties).
fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        let midrank = (i + 1 + j) as f64 / 2.0;
        for &idx in &order[i..j] {
            ranks[idx] = midrank;
        }
        i = j;
    }
    ranks
}

fn kendall_tau_b(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len();
    let mut concordant = 0.0f64;
    let mut discordant = 0.0f64;
    let mut ties_x = 0.0f64;
    let mut ties_y = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = x[i] - x[j];
            let dy = y[i] - y[j];
            if dx == 0.0 && dy == 0.0 {
                // tied in both: contributes to neither correction term
            } else if dx == 0.0 {
                ties_x += 1.0;
            } else if dy == 0.0 {
                ties_y += 1.0;
            } else if dx * dy > 0.0 {
                concordant += 1.0;
            } else {
                discordant += 1.0;
            }
        }
    }
    let denom = ((concordant + discordant + ties_x) * (concordant + discordant + ties_y)).sqrt();
    if denom == 0.0 {
        return None;
    }
    Some((concordant - discordant) / denom)
}

/// Pearson, Spearman (Pearson over midranks), and Kendall tau-b (with tie
/// correction) of one paired sample of at least 3 points.
pub fn correlations(x: &[f64], y: &[f64]) -> Result<Correlations> {
    if x.len() != y.len() {
        return Err(Error::SizeMismatch(format!(
            "paired vectors of lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "correlations need at least 3 pairs, got {}",
            x.len()
        )));
    }
    let p = pearson(x, y);
    let s = pearson(&midranks(x), &midranks(y));
    let k = kendall_tau_b(x, y);
    Ok(Correlations {
        pearson: p,
        spearman: s,
        kendall: k,
        pearson_symbol: p.map(correlation_symbol),
        spearman_symbol: s.map(correlation_symbol),
        kendall_symbol: k.map(correlation_symbol),
    })
}

/// One (kind, t) point relating mean complementarity to mean performance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationPoint {
    pub kind: String,
    pub t: u32,
    pub complementarity: f64,
    pub performance: f64,
}

/// Correlation section for one performance metric.
#[derive(Debug, Clone, Serialize)]
pub struct CorrelationSection {
    pub metric: String,
    pub points: Vec<CorrelationPoint>,
    pub correlations: Correlations,
}

/// Per-metric separability entry with its condensed notation.
#[derive(Debug, Clone, Serialize)]
pub struct SeparabilityEntry {
    pub condensed: String,
    pub result: SeparabilityResult,
}

/// Separability section combining the available evaluation metrics.
#[derive(Debug, Clone, Serialize)]
pub struct SeparabilitySection {
    pub entries: Vec<SeparabilityEntry>,
    pub informativeness: Option<ModeInformativeness>,
    pub evaluation_score: Option<f64>,
    pub evaluation: Option<Symbol>,
}

/// Complementarity section: configuration echo plus the per-(kind, t)
/// aggregation.
#[derive(Debug, Clone, Serialize)]
pub struct ComplementaritySection {
    pub structural_metric: String,
    pub feature_metric: String,
    pub p: f64,
    pub q: f64,
    pub summaries: Vec<ComplementaritySummary>,
}

/// One dataset's full report. Sections that were not computed serialize as
/// `null`; the set of top-level keys is fixed.
#[derive(Debug, Clone, Serialize)]
pub struct DatasetReport {
    pub dataset: String,
    pub stats: Option<DatasetStats>,
    pub complementarity: Option<ComplementaritySection>,
    pub diversity: Option<DiversitySummary>,
    pub separability: Option<SeparabilitySection>,
    pub correlations: Option<Vec<CorrelationSection>>,
    pub taxonomy: Option<TaxonomyVerdict>,
}

/// Write `<dataset>.json` plus flat CSV sidecars into `dir`: a plot-ready
/// complementarity summary (`kind,t,mean,sd,p2_5,p97_5`) and the
/// complementarity-vs-performance pairs (`metric,kind,t,complementarity,
/// performance`). Emission is deterministic: stable key order and float
/// rendering.
pub fn write_report(report: &DatasetReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();

    let json_path = dir.join(format!("{}.json", report.dataset));
    let mut body = serde_json::to_string_pretty(report).map_err(|e| Error::InvalidInput(e.to_string()))?;
    body.push('\n');
    fs::write(&json_path, body)?;
    written.push(json_path);

    if let Some(section) = &report.complementarity {
        let path = dir.join(format!("{}_complementarity.csv", report.dataset));
        let mut out = fs::File::create(&path)?;
        writeln!(out, "kind,t,mean,sd,p2_5,p97_5")?;
        for s in &section.summaries {
            writeln!(out, "{},{},{},{},{},{}", s.kind, s.t, s.mean, s.sd, s.p2_5, s.p97_5)?;
        }
        written.push(path);
    }

    if let Some(sections) = &report.correlations {
        let path = dir.join(format!("{}_correlation_pairs.csv", report.dataset));
        let mut out = fs::File::create(&path)?;
        writeln!(out, "metric,kind,t,complementarity,performance")?;
        for section in sections {
            for p in &section.points {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    section.metric, p.kind, p.t, p.complementarity, p.performance
                )?;
            }
        }
        written.push(path);
    }

    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn diversity_mu_bins() {
        let sym = |mu: f64| diversity_bins(mu, 0.0).unwrap().0;
        assert_eq!(sym(0.62), Symbol::MuchBetter);
        assert_eq!(sym(0.30), Symbol::Worse);
        assert_eq!(sym(0.40), Symbol::Neutral);
        assert_eq!(sym(0.0), Symbol::MuchWorse);
        assert_eq!(sym(0.19), Symbol::MuchWorse);
        assert_eq!(sym(0.2), Symbol::Worse);
        assert_eq!(sym(0.52), Symbol::Neutral);
        assert_eq!(sym(1.0), Symbol::MuchBetter);
        assert!(diversity_bins(1.2, 0.0).is_err());
        assert!(diversity_bins(-0.1, 0.0).is_err());
    }

    #[test]
    fn diversity_sigma_bins() {
        let sym = |sd: f64| diversity_bins(0.5, sd).unwrap().1;
        assert_eq!(sym(0.02), Symbol::MuchWorse);
        assert_eq!(sym(0.07), Symbol::Worse);
        assert_eq!(sym(0.12), Symbol::Neutral);
        assert_eq!(sym(0.16), Symbol::MuchBetter);
        assert_eq!(sym(0.25), Symbol::MuchBetter);
    }

    #[test]
    fn taxonomy_quadrants() {
        let v = taxonomy_classify(Symbol::MuchBetter, Symbol::Neutral);
        assert_eq!(v.action, TaxonomyAction::Keep);

        let v = taxonomy_classify(Symbol::MuchWorse, Symbol::MuchBetter);
        assert_eq!(v.action, TaxonomyAction::Realign);

        let v = taxonomy_classify(Symbol::MuchBetter, Symbol::Worse);
        assert_eq!(v.action, TaxonomyAction::DeprecateStructural);

        let v = taxonomy_classify(Symbol::Worse, Symbol::Worse);
        assert_eq!(v.action, TaxonomyAction::DeprecateFull);
        assert!(!v.separability_high && !v.structural_diversity_high);
    }

    #[test]
    fn correlation_monotone_affine() {
        let x = [1.0, 2.0, 3.0, 4.5];
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
        let c = correlations(&x, &y).unwrap();
        assert_relative_eq!(c.pearson.unwrap(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(c.spearman.unwrap(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(c.kendall.unwrap(), 1.0, epsilon = 1e-12);
        assert_eq!(c.pearson_symbol, Some(Symbol::MuchBetter));

        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        let c = correlations(&x, &neg).unwrap();
        assert_relative_eq!(c.pearson.unwrap(), -1.0, epsilon = 1e-12);
        assert_relative_eq!(c.spearman.unwrap(), -1.0, epsilon = 1e-12);
        assert_relative_eq!(c.kendall.unwrap(), -1.0, epsilon = 1e-12);
        assert_eq!(c.kendall_symbol, Some(Symbol::MuchWorse));
    }

    #[test]
    fn kendall_matches_signed_pair_oracle() {
        // Independent route: count sign agreements over explicit pair lists.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let n = rng.gen_range(3..10);
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(0..5) as f64).collect();
            let y: Vec<f64> = (0..n).map(|_| rng.gen_range(0..5) as f64).collect();
            let mut nc = 0i64;
            let mut nd = 0i64;
            let mut n1 = 0i64; // pairs tied in x
            let mut n2 = 0i64; // pairs tied in y
            let mut pairs = 0i64;
            let sign = |a: f64, b: f64| -> i64 {
                if a > b {
                    1
                } else if a < b {
                    -1
                } else {
                    0
                }
            };
            for i in 0..n {
                for j in (i + 1)..n {
                    pairs += 1;
                    let sx = sign(x[i], x[j]);
                    let sy = sign(y[i], y[j]);
                    if sx == 0 {
                        n1 += 1;
                    }
                    if sy == 0 {
                        n2 += 1;
                    }
                    if sx != 0 && sy != 0 {
                        if sx == sy {
                            nc += 1;
                        } else {
                            nd += 1;
                        }
                    }
                }
            }
            // Tau-b in the classical form (n0 - n1)(n0 - n2) under the root,
            // with n0 the total pair count.
            let expected = {
                let d = (((pairs - n1) as f64) * ((pairs - n2) as f64)).sqrt();
                if d == 0.0 {
                    None
                } else {
                    Some((nc - nd) as f64 / d)
                }
            };
            let got = kendall_tau_b(&x, &y);
            match (got, expected) {
                (None, None) => {}
                (Some(a), Some(b)) => assert_relative_eq!(a, b, epsilon = 1e-12),
                other => panic!("mismatch: {other:?}"),
            }
        }
    }

    #[test]
    fn spearman_equals_pearson_on_ranks() {
        let x = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0];
        let y = [2.0, 7.0, 1.0, 8.0, 2.0, 8.0, 1.0];
        let c = correlations(&x, &y).unwrap();
        let manual = pearson(&midranks(&x), &midranks(&y)).unwrap();
        assert_eq!(c.spearman, Some(manual));
    }

    #[test]
    fn correlation_errors_and_degenerate() {
        assert!(correlations(&[1.0, 2.0], &[1.0, 2.0]).is_err());
        assert!(correlations(&[1.0, 2.0, 3.0], &[1.0, 2.0]).is_err());
        let c = correlations(&[2.0, 2.0, 2.0], &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(c.pearson, None);
        assert_eq!(c.kendall, None);
        assert_eq!(c.pearson_symbol, None);
    }

    #[test]
    fn report_round_trip_and_keys() {
        let tmp = tempfile::TempDir::new().unwrap();
        let report = DatasetReport {
            dataset: "toy".into(),
            stats: None,
            complementarity: Some(ComplementaritySection {
                structural_metric: "diffusion".into(),
                feature_metric: "euclidean".into(),
                p: 1.0,
                q: 1.0,
                summaries: vec![ComplementaritySummary {
                    kind: "o".into(),
                    t: 1,
                    mean: 0.5,
                    sd: 0.1,
                    p2_5: 0.3,
                    p97_5: 0.7,
                    graphs: 10,
                }],
            }),
            diversity: None,
            separability: None,
            correlations: Some(vec![CorrelationSection {
                metric: "auroc".into(),
                points: vec![CorrelationPoint {
                    kind: "o".into(),
                    t: 1,
                    complementarity: 0.5,
                    performance: 0.9,
                }],
                correlations: Correlations {
                    pearson: Some(0.5),
                    spearman: Some(0.5),
                    kendall: Some(0.4),
                    pearson_symbol: Some(Symbol::Better),
                    spearman_symbol: Some(Symbol::Better),
                    kendall_symbol: Some(Symbol::Better),
                },
            }]),
            taxonomy: Some(taxonomy_classify(Symbol::MuchBetter, Symbol::Neutral)),
        };
        let written = write_report(&report, tmp.path()).unwrap();
        assert_eq!(written.len(), 3);

        let body = std::fs::read_to_string(&written[0]).unwrap();
        let value: serde_json::Value = serde_json::from_str(&body).unwrap();
        let object = value.as_object().unwrap();
        assert_eq!(object.len(), 7);
        // Emission order on disk is the declared section order.
        let expected = ["dataset", "stats", "complementarity", "diversity", "separability", "correlations", "taxonomy"];
        let mut last = 0;
        for key in expected {
            let pos = body.find(&format!("\"{key}\"")).unwrap_or_else(|| panic!("missing key {key}"));
            assert!(pos > last || key == "dataset", "key {key} out of order");
            last = pos;
        }
        assert!(value["stats"].is_null());
        assert_eq!(value["taxonomy"]["action"], "Keep");

        // Deterministic bytes on rerun.
        let again = write_report(&report, tmp.path()).unwrap();
        assert_eq!(std::fs::read(&written[0]).unwrap(), std::fs::read(&again[0]).unwrap());
    }
}
