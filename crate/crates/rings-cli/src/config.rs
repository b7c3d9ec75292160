//! Declarative run configuration: one JSON document describing datasets,
//! perturbation kinds, complementarity settings, and test settings. Command
//! line flags override individual fields.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use rings::complement::ComplementarityConfig;
use rings::data::GraphDataset;
use rings::ingest::{self, ParseReport, TuOptions};
use rings::lift::{EigenvalueConvention, FeatureMetric, StructuralMetric};
use rings::perturb::PerturbationKind;
use rings::separability::{TestConfig, TestStatistic};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DatasetFormat {
    Tu,
    Jsonl,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetSpec {
    pub name: String,
    pub path: PathBuf,
    pub format: DatasetFormat,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ComplementaritySettings {
    /// `diffusion`, `heat-kernel`, `resistance`, or `shortest-path`.
    pub structural_metric: String,
    /// `laplacian-literal` or `diffusion-operator`.
    pub eigenvalue_convention: String,
    /// `euclidean` or `cosine`.
    pub feature_metric: String,
    pub p: f64,
    pub q: f64,
    pub t_values: Vec<u32>,
    pub random_seeds: Vec<u64>,
    pub pool_seeds: bool,
    /// Dimension for the random-features perturbation.
    pub rf_dim: usize,
    /// Edge probability for the random-graph perturbation; matches the input
    /// density when absent.
    pub rg_p: Option<f64>,
}

impl Default for ComplementaritySettings {
    fn default() -> Self {
        Self {
            structural_metric: "diffusion".into(),
            eigenvalue_convention: "laplacian-literal".into(),
            feature_metric: "euclidean".into(),
            p: 1.0,
            q: 1.0,
            t_values: (1..=10).collect(),
            random_seeds: vec![0, 2, 4, 8, 16],
            pool_seeds: false,
            rf_dim: 10,
            rg_p: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TestSettings {
    /// `ks` or `wilcoxon`.
    pub statistic: String,
    pub n_perm: usize,
    pub alpha: f64,
}

impl Default for TestSettings {
    fn default() -> Self {
        Self {
            statistic: "ks".into(),
            n_perm: 10_000,
            alpha: 0.01,
        }
    }
}

fn default_kinds() -> Vec<String> {
    ["o", "eg", "cg", "rg", "sg", "ef", "cf", "rf", "sf"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

fn default_output() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub datasets: Vec<DatasetSpec>,
    #[serde(default = "default_kinds")]
    pub kinds: Vec<String>,
    #[serde(default)]
    pub complementarity: ComplementaritySettings,
    #[serde(default)]
    pub test: TestSettings,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
    /// One-hot degree encoding for featureless TU datasets.
    #[serde(default)]
    pub degree_onehot: bool,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let body = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let config: RunConfig = serde_json::from_str(&body)
            .map_err(|e| format!("bad config {}: {e}", path.display()))?;
        for spec in &config.datasets {
            if !spec.path.exists() {
                return Err(format!(
                    "dataset {} path does not exist: {}",
                    spec.name,
                    spec.path.display()
                ));
            }
        }
        for kind in &config.kinds {
            if PerturbationKind::parse(kind).is_none() {
                return Err(format!("unknown perturbation kind {kind:?} in config"));
            }
        }
        Ok(config)
    }

    /// Parse one kind code, instantiating the configured `rf` and `rg`
    /// parameters.
    pub fn instantiate_kind(&self, code: &str) -> Result<PerturbationKind, String> {
        let kind = PerturbationKind::parse(code)
            .ok_or_else(|| format!("unknown perturbation kind {code:?}"))?;
        Ok(match kind {
            PerturbationKind::RandomFeatures { .. } => {
                if self.complementarity.rf_dim == 0 {
                    return Err("rf_dim must be at least 1".into());
                }
                PerturbationKind::RandomFeatures {
                    dim: self.complementarity.rf_dim,
                }
            }
            PerturbationKind::RandomGraph { .. } => {
                if let Some(p) = self.complementarity.rg_p {
                    if !(0.0..=1.0).contains(&p) {
                        return Err(format!("rg_p {p} outside [0, 1]"));
                    }
                }
                PerturbationKind::RandomGraph {
                    p: self.complementarity.rg_p,
                }
            }
            other => other,
        })
    }

    /// Parse the configured kinds, instantiating `rf` and `rg` parameters.
    pub fn perturbation_kinds(&self) -> Result<Vec<PerturbationKind>, String> {
        self.kinds.iter().map(|code| self.instantiate_kind(code)).collect()
    }

    pub fn complementarity_config(&self) -> Result<ComplementarityConfig, String> {
        let settings = &self.complementarity;
        let convention = match settings.eigenvalue_convention.as_str() {
            "laplacian-literal" => EigenvalueConvention::LaplacianLiteral,
            "diffusion-operator" => EigenvalueConvention::DiffusionOperator,
            other => return Err(format!("unknown eigenvalue convention {other:?}")),
        };
        let first_t = settings.t_values.first().copied().unwrap_or(1);
        let structural = match settings.structural_metric.as_str() {
            "diffusion" => StructuralMetric::Diffusion { t: first_t, convention },
            "heat-kernel" => StructuralMetric::HeatKernel { t: first_t as f64 },
            "resistance" => StructuralMetric::Resistance,
            "shortest-path" => StructuralMetric::ShortestPath,
            other => return Err(format!("unknown structural metric {other:?}")),
        };
        let feature = match settings.feature_metric.as_str() {
            "euclidean" => FeatureMetric::Euclidean,
            "cosine" => FeatureMetric::Cosine,
            other => return Err(format!("unknown feature metric {other:?}")),
        };
        Ok(ComplementarityConfig {
            structural,
            feature,
            p: settings.p,
            q: settings.q,
            t_values: settings.t_values.clone(),
            random_seeds: settings.random_seeds.clone(),
            pool_seeds: settings.pool_seeds,
        })
    }

    pub fn test_config(&self) -> Result<TestConfig, String> {
        let statistic = TestStatistic::parse(&self.test.statistic)
            .ok_or_else(|| format!("unknown test statistic {:?}", self.test.statistic))?;
        Ok(TestConfig {
            statistic,
            n_perm: self.test.n_perm,
            alpha: self.test.alpha,
            seed: self.seed,
        })
    }

    pub fn load_dataset(&self, spec: &DatasetSpec) -> rings::Result<(GraphDataset, ParseReport)> {
        match spec.format {
            DatasetFormat::Tu => ingest::parse_tu_dataset_with(
                &spec.path,
                &spec.name,
                TuOptions {
                    degree_onehot: self.degree_onehot,
                },
            ),
            DatasetFormat::Jsonl => {
                let (dataset, report) = ingest::parse_jsonl(&spec.path)?;
                // Keep the configured name regardless of the file stem.
                let graphs = dataset.graphs().to_vec();
                let task = dataset.task();
                Ok((GraphDataset::new(&spec.name, graphs, task)?, report))
            }
        }
    }
}
