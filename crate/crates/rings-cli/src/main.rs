//! `rings` command line: dataset statistics, perturbations, complementarity,
//! diversity, performance separability, and full reports.

mod config;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::RunConfig;
use rings::complement::{
    dataset_complementarity, max_duality_violation, mode_diversity, write_records_csv,
    ComplementaritySummary, DiversityMode,
};
use rings::data::{dataset_stats, GraphDataset};
use rings::ingest;
use rings::perturb::{perturb_dataset, PerturbationKind};
use rings::report::{
    correlations, summarize_diversity, taxonomy_classify, ComplementaritySection,
    CorrelationPoint, CorrelationSection, DatasetReport, DiversitySummary, SeparabilityEntry,
    SeparabilitySection,
};
use rings::separability::{
    evaluation_score, graph_set_similarity, load_graph_outcomes, load_performance_records,
    mode_informativeness, pairwise_separability, PerformanceRecord, SeparabilityResult,
};

const DUALITY_TOLERANCE: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "rings",
    version,
    about = "Evaluate attributed-graph datasets via mode perturbations"
)]
struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Master seed (overrides the config; default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads (overrides the config and RINGS_THREADS; default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output directory (overrides the config).
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Perturbation kinds, comma separated (overrides the config).
    #[arg(long, global = true, value_delimiter = ',')]
    kinds: Option<Vec<String>>,

    /// Diffusion steps, comma separated (overrides the config).
    #[arg(long, global = true, value_delimiter = ',')]
    t_values: Option<Vec<u32>>,

    /// Structural metric: diffusion, heat-kernel, resistance, shortest-path.
    #[arg(long, global = true)]
    structural_metric: Option<String>,

    /// Diffusion eigenvalue convention: laplacian-literal or diffusion-operator.
    #[arg(long, global = true)]
    convention: Option<String>,

    /// Feature metric: euclidean or cosine.
    #[arg(long, global = true)]
    feature_metric: Option<String>,

    /// Dimension for the random-features perturbation.
    #[arg(long, global = true)]
    rf_dim: Option<usize>,

    /// Explicit edge probability for the random-graph perturbation.
    #[arg(long, global = true)]
    rg_p: Option<f64>,

    /// Pool seeds of randomized kinds instead of averaging per graph.
    #[arg(long, global = true)]
    pool_seeds: bool,

    /// One-hot degree features for featureless TU datasets.
    #[arg(long, global = true)]
    degree_onehot: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-dataset node/edge/degree/density statistics as CSV.
    Stats,
    /// Apply one perturbation to every configured dataset, writing JSONL.
    Perturb {
        /// Perturbation code: o, ef, cf, rf, sf, eg, cg, rg, sg.
        #[arg(long)]
        kind: String,
    },
    /// Complementarity records and per-(kind, t) summaries as CSV.
    Complement {
        /// Exit 1 if any complete/empty duality violation exceeds 1e-9.
        #[arg(long)]
        check_duality: bool,
    },
    /// Structural and feature diversity summary per dataset.
    Diversity,
    /// Performance-separability pipeline over a performance CSV.
    Separability {
        /// CSV with header dataset,kind,arch,hparams,run,metric,value.
        #[arg(long)]
        performance: PathBuf,
        /// Optional CSV with header dataset,kind,arch,run,graph_id,correct.
        #[arg(long)]
        graph_outcomes: Option<PathBuf>,
        /// Test statistic: ks or wilcoxon (overrides the config).
        #[arg(long)]
        statistic: Option<String>,
        /// Significance level before correction (overrides the config).
        #[arg(long)]
        alpha: Option<f64>,
        /// Random permutations per test (overrides the config).
        #[arg(long)]
        n_perm: Option<usize>,
    },
    /// Full per-dataset JSON reports, including the taxonomy.
    Report {
        #[arg(long)]
        performance: Option<PathBuf>,
        #[arg(long)]
        statistic: Option<String>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        n_perm: Option<usize>,
    },
    /// Generate ring-of-cliques fixtures as JSONL.
    Gen {
        #[arg(long, default_value_t = 4)]
        cliques: usize,
        #[arg(long, default_value_t = 3)]
        clique_size: usize,
        #[arg(long, default_value_t = 12)]
        feature_dim: usize,
        /// Number of graphs to generate (seeds advance per graph).
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Output JSONL path.
        #[arg(long, short = 'f')]
        file: PathBuf,
    },
}

/// Failures sorted by exit code: 1 for violated invariants, 2 for bad input.
enum Failure {
    Violation(String),
    Input(String),
}

impl From<rings::Error> for Failure {
    fn from(e: rings::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(msg: String) -> Self {
        Failure::Input(msg)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = load_config(&cli)?;
    init_threads(&cli, &config);
    let out_dir = cli
        .output
        .clone()
        .unwrap_or_else(|| config.output_dir.clone());

    match &cli.command {
        Command::Stats => cmd_stats(&config, &out_dir),
        Command::Perturb { kind } => cmd_perturb(&config, kind, &out_dir),
        Command::Complement { check_duality } => cmd_complement(&config, *check_duality, &out_dir),
        Command::Diversity => cmd_diversity(&config, &out_dir),
        Command::Separability {
            performance,
            graph_outcomes,
            statistic,
            alpha,
            n_perm,
        } => {
            let tcfg = test_config(&config, statistic, alpha, n_perm)?;
            cmd_separability(performance, graph_outcomes.as_deref(), &tcfg, &out_dir)
        }
        Command::Report {
            performance,
            statistic,
            alpha,
            n_perm,
        } => {
            let tcfg = test_config(&config, statistic, alpha, n_perm)?;
            cmd_report(&config, performance.as_deref(), &tcfg, &out_dir)
        }
        Command::Gen {
            cliques,
            clique_size,
            feature_dim,
            count,
            file,
        } => cmd_gen(*cliques, *clique_size, *feature_dim, *count, config.seed, file),
    }
}

/// Load the config file when given, apply flag overrides (flags win), and
/// fall back to defaults when no config is needed.
fn load_config(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path).map_err(Failure::Input)?,
        None => RunConfig {
            datasets: Vec::new(),
            kinds: ["o", "eg", "cg", "rg", "sg", "ef", "cf", "rf", "sf"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            complementarity: Default::default(),
            test: Default::default(),
            seed: 0,
            threads: None,
            output_dir: PathBuf::from("out"),
            degree_onehot: false,
        },
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(kinds) = &cli.kinds {
        config.kinds = kinds.clone();
        for kind in &config.kinds {
            if PerturbationKind::parse(kind).is_none() {
                return Err(Failure::Input(format!("unknown perturbation kind {kind:?}")));
            }
        }
    }
    if let Some(ts) = &cli.t_values {
        config.complementarity.t_values = ts.clone();
    }
    if let Some(metric) = &cli.structural_metric {
        config.complementarity.structural_metric = metric.clone();
    }
    if let Some(convention) = &cli.convention {
        config.complementarity.eigenvalue_convention = convention.clone();
    }
    if let Some(metric) = &cli.feature_metric {
        config.complementarity.feature_metric = metric.clone();
    }
    if let Some(dim) = cli.rf_dim {
        config.complementarity.rf_dim = dim;
    }
    if let Some(p) = cli.rg_p {
        config.complementarity.rg_p = Some(p);
    }
    if cli.pool_seeds {
        config.complementarity.pool_seeds = true;
    }
    if cli.degree_onehot {
        config.degree_onehot = true;
    }
    Ok(config)
}

fn init_threads(cli: &Cli, config: &RunConfig) {
    let threads = cli
        .threads
        .or_else(|| {
            std::env::var("RINGS_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .or(config.threads);
    if let Some(n) = threads {
        // Results are thread-count independent; this only caps parallelism.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn test_config(
    config: &RunConfig,
    statistic: &Option<String>,
    alpha: &Option<f64>,
    n_perm: &Option<usize>,
) -> Result<rings::separability::TestConfig, Failure> {
    let mut merged = config.clone();
    if let Some(s) = statistic {
        merged.test.statistic = s.clone();
    }
    if let Some(a) = alpha {
        merged.test.alpha = *a;
    }
    if let Some(n) = n_perm {
        merged.test.n_perm = *n;
    }
    merged.test_config().map_err(Failure::Input)
}

fn datasets(config: &RunConfig) -> Result<Vec<GraphDataset>, Failure> {
    if config.datasets.is_empty() {
        return Err(Failure::Input(
            "no datasets configured; pass --config with a datasets list".into(),
        ));
    }
    let mut loaded = Vec::new();
    for spec in &config.datasets {
        let (dataset, report) = config.load_dataset(spec)?;
        for warning in &report.warnings {
            eprintln!("warning: {warning}");
        }
        if report.edges_dropped > 0 {
            eprintln!(
                "warning: {}: dropped {} self-loop/duplicate edge lines",
                spec.name, report.edges_dropped
            );
        }
        loaded.push(dataset);
    }
    Ok(loaded)
}

fn create_out_dir(out_dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(out_dir).map_err(|e| {
        Failure::Input(format!("cannot create output directory {}: {e}", out_dir.display()))
    })
}

fn cmd_stats(config: &RunConfig, out_dir: &Path) -> Result<(), Failure> {
    let loaded = datasets(config)?;
    create_out_dir(out_dir)?;
    let path = out_dir.join("stats.csv");
    let mut out = fs::File::create(&path).map_err(rings::Error::from)?;
    writeln!(
        out,
        "dataset,N,n_mean,n_sd,m_mean,m_sd,degree_mean,degree_sd,density_mean,density_sd,sd_divisor"
    )
    .map_err(rings::Error::from)?;
    for dataset in &loaded {
        let s = dataset_stats(dataset)?;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            dataset.name(),
            s.graphs,
            s.n.mean,
            s.n.sd,
            s.m_directed.mean,
            s.m_directed.sd,
            s.mean_degree.mean,
            s.mean_degree.sd,
            s.density.mean,
            s.density.sd,
            s.sd_divisor,
        )
        .map_err(rings::Error::from)?;
        println!(
            "{}: N={} n={:.2}±{:.2} m={:.2}±{:.2} degree={:.2}±{:.2} density={:.3}±{:.3}",
            dataset.name(),
            s.graphs,
            s.n.mean,
            s.n.sd,
            s.m_directed.mean,
            s.m_directed.sd,
            s.mean_degree.mean,
            s.mean_degree.sd,
            s.density.mean,
            s.density.sd,
        );
    }
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_perturb(config: &RunConfig, kind_code: &str, out_dir: &Path) -> Result<(), Failure> {
    let kind = config.instantiate_kind(kind_code)?;
    let loaded = datasets(config)?;
    create_out_dir(out_dir)?;
    for dataset in &loaded {
        let perturbed = perturb_dataset(dataset, kind, config.seed)?;
        let path = out_dir.join(format!("{}_{}.jsonl", dataset.name(), kind.code()));
        ingest::write_jsonl(&perturbed, &path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn write_summary_csv(summaries: &[ComplementaritySummary], path: &Path) -> Result<(), Failure> {
    let mut out = fs::File::create(path).map_err(rings::Error::from)?;
    writeln!(out, "kind,t,mean,sd,p2_5,p97_5,graphs").map_err(rings::Error::from)?;
    for s in summaries {
        writeln!(out, "{},{},{},{},{},{},{}", s.kind, s.t, s.mean, s.sd, s.p2_5, s.p97_5, s.graphs)
            .map_err(rings::Error::from)?;
    }
    Ok(())
}

fn cmd_complement(config: &RunConfig, check_duality: bool, out_dir: &Path) -> Result<(), Failure> {
    let ccfg = config.complementarity_config()?;
    let kinds = config.perturbation_kinds()?;
    let loaded = datasets(config)?;
    create_out_dir(out_dir)?;
    for dataset in &loaded {
        let (records, summaries) = dataset_complementarity(dataset, &kinds, &ccfg)?;
        let records_path = out_dir.join(format!("{}_records.csv", dataset.name()));
        let file = fs::File::create(&records_path).map_err(rings::Error::from)?;
        write_records_csv(&records, file)?;
        let summary_path = out_dir.join(format!("{}_summary.csv", dataset.name()));
        write_summary_csv(&summaries, &summary_path)?;
        println!("wrote {} and {}", records_path.display(), summary_path.display());

        if check_duality {
            let violation = max_duality_violation(dataset, &ccfg)?;
            if violation > DUALITY_TOLERANCE {
                return Err(Failure::Violation(format!(
                    "{}: complete/empty duality violated by {violation:e}",
                    dataset.name()
                )));
            }
            println!("{}: duality holds (max violation {violation:.2e})", dataset.name());
        }
    }
    Ok(())
}

fn diversity_summary(
    dataset: &GraphDataset,
    config: &RunConfig,
) -> Result<DiversitySummary, Failure> {
    let ccfg = config.complementarity_config()?;
    let mut delta_s = Vec::with_capacity(dataset.len());
    let mut delta_f = Vec::with_capacity(dataset.len());
    for g in dataset.graphs() {
        delta_s.push(mode_diversity(g, DiversityMode::Structure, &ccfg)?);
        delta_f.push(mode_diversity(g, DiversityMode::Features, &ccfg)?);
    }
    Ok(summarize_diversity(dataset.name(), &delta_s, &delta_f)?)
}

fn cmd_diversity(config: &RunConfig, out_dir: &Path) -> Result<(), Failure> {
    let loaded = datasets(config)?;
    create_out_dir(out_dir)?;
    let path = out_dir.join("diversity.csv");
    let mut out = fs::File::create(&path).map_err(rings::Error::from)?;
    writeln!(
        out,
        "dataset,delta_s_mean,delta_s_sd,delta_f_mean,delta_f_sd,s_mean_symbol,s_sd_symbol,f_mean_symbol,f_sd_symbol"
    )
    .map_err(rings::Error::from)?;
    for dataset in &loaded {
        let d = diversity_summary(dataset, config)?;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            d.dataset,
            d.delta_s_mean,
            d.delta_s_sd,
            d.delta_f_mean,
            d.delta_f_sd,
            d.delta_s_mean_symbol,
            d.delta_s_sd_symbol,
            d.delta_f_mean_symbol,
            d.delta_f_sd_symbol,
        )
        .map_err(rings::Error::from)?;
        println!(
            "{}: structural {:.3}±{:.3} ({}/{}), feature {:.3}±{:.3} ({}/{})",
            d.dataset,
            d.delta_s_mean,
            d.delta_s_sd,
            d.delta_s_mean_symbol,
            d.delta_s_sd_symbol,
            d.delta_f_mean,
            d.delta_f_sd,
            d.delta_f_mean_symbol,
            d.delta_f_sd_symbol,
        );
    }
    println!("wrote {}", path.display());
    Ok(())
}

/// Separability results per metric for one dataset, combined into the report
/// section with informativeness and the evaluation symbol when both standard
/// metrics are present.
fn separability_section(
    records: &[PerformanceRecord],
    dataset: &str,
    tcfg: &rings::separability::TestConfig,
) -> Result<SeparabilitySection, Failure> {
    let metrics: BTreeSet<String> = records
        .iter()
        .filter(|r| r.dataset == dataset)
        .map(|r| r.metric.clone())
        .collect();
    let mut entries = Vec::new();
    let mut by_metric: BTreeMap<String, SeparabilityResult> = BTreeMap::new();
    for metric in &metrics {
        let result = pairwise_separability(records, dataset, metric, tcfg)?;
        by_metric.insert(metric.clone(), result.clone());
        entries.push(SeparabilityEntry {
            condensed: result.condensed(),
            result,
        });
    }
    let (informativeness, score, symbol) = match (by_metric.get("accuracy"), by_metric.get("auroc"))
    {
        (Some(acc), Some(auroc)) => {
            let verdict = mode_informativeness(&acc.groups, &auroc.groups);
            let (score, symbol) = evaluation_score(verdict.structure, verdict.features);
            (Some(verdict), Some(score), Some(symbol))
        }
        _ => (None, None, None),
    };
    Ok(SeparabilitySection {
        entries,
        informativeness,
        evaluation_score: score,
        evaluation: symbol,
    })
}

fn cmd_separability(
    performance: &Path,
    graph_outcomes: Option<&Path>,
    tcfg: &rings::separability::TestConfig,
    out_dir: &Path,
) -> Result<(), Failure> {
    let records = load_performance_records(performance)?;
    if records.is_empty() {
        return Err(Failure::Input(format!("no records in {}", performance.display())));
    }
    create_out_dir(out_dir)?;
    let dataset_names: BTreeSet<String> = records.iter().map(|r| r.dataset.clone()).collect();

    let text_path = out_dir.join("separability.txt");
    let mut text = fs::File::create(&text_path).map_err(rings::Error::from)?;
    for name in &dataset_names {
        let section = separability_section(&records, name, tcfg)?;
        for entry in &section.entries {
            writeln!(text, "{name} {}: {}", entry.result.metric, entry.condensed)
                .map_err(rings::Error::from)?;
            println!("{name} {}: {}", entry.result.metric, entry.condensed);
        }
        if let (Some(v), Some(symbol)) = (&section.informativeness, section.evaluation) {
            writeln!(
                text,
                "{name} structure: {}, features: {}, evaluation: {symbol}",
                v.structure.label(),
                v.features.label()
            )
            .map_err(rings::Error::from)?;
        }
        let json_path = out_dir.join(format!("{name}_separability.json"));
        let mut body =
            serde_json::to_string_pretty(&section).map_err(|e| Failure::Input(e.to_string()))?;
        body.push('\n');
        fs::write(&json_path, body).map_err(rings::Error::from)?;
        println!("wrote {}", json_path.display());
    }

    if let Some(outcome_path) = graph_outcomes {
        let outcomes = load_graph_outcomes(outcome_path)?;
        for name in &dataset_names {
            let overlap = overlap_matrix(&outcomes, name);
            if overlap.is_empty() {
                continue;
            }
            let path = out_dir.join(format!("{name}_graph_overlap.json"));
            let mut body =
                serde_json::to_string_pretty(&overlap).map_err(|e| Failure::Input(e.to_string()))?;
            body.push('\n');
            fs::write(&path, body).map_err(rings::Error::from)?;
            println!("wrote {}", path.display());
        }
    }
    println!("wrote {}", text_path.display());
    Ok(())
}

/// Mean Jaccard and asymmetric overlap of correctly classified graph sets for
/// every ordered perturbation pair, averaged over matching (arch, run) pairs.
fn overlap_matrix(
    outcomes: &[rings::separability::GraphOutcomeRecord],
    dataset: &str,
) -> BTreeMap<String, BTreeMap<String, serde_json::Value>> {
    let mut sets: BTreeMap<(String, String, String), BTreeSet<u64>> = BTreeMap::new();
    for record in outcomes.iter().filter(|r| r.dataset == dataset) {
        let entry = sets
            .entry((record.kind.clone(), record.arch.clone(), record.run.clone()))
            .or_default();
        if record.correct {
            entry.insert(record.graph_id);
        }
    }
    let kinds: BTreeSet<String> = sets.keys().map(|(k, ..)| k.clone()).collect();
    let mut matrix = BTreeMap::new();
    for a in &kinds {
        let mut row = BTreeMap::new();
        for b in &kinds {
            let mut jaccards = Vec::new();
            let mut asymmetrics = Vec::new();
            for ((ka, arch_a, run_a), set_a) in &sets {
                if ka != a {
                    continue;
                }
                if let Some(set_b) = sets.get(&(b.clone(), arch_a.clone(), run_a.clone())) {
                    let s = graph_set_similarity(set_a, set_b);
                    jaccards.push(s.jaccard);
                    asymmetrics.push(s.asymmetric);
                }
            }
            if jaccards.is_empty() {
                continue;
            }
            let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
            row.insert(
                b.clone(),
                serde_json::json!({
                    "jaccard": mean(&jaccards),
                    "asymmetric": mean(&asymmetrics),
                    "pairs": jaccards.len(),
                }),
            );
        }
        if !row.is_empty() {
            matrix.insert(a.clone(), row);
        }
    }
    matrix
}

fn correlation_sections(
    summaries: &[ComplementaritySummary],
    section: &SeparabilitySection,
) -> Vec<CorrelationSection> {
    let mut sections = Vec::new();
    for entry in &section.entries {
        let result = &entry.result;
        let mut points = Vec::new();
        for summary in summaries {
            if let Some(slot) = result.modes.iter().position(|m| *m == summary.kind) {
                points.push(CorrelationPoint {
                    kind: summary.kind.clone(),
                    t: summary.t,
                    complementarity: summary.mean,
                    performance: result.means[slot],
                });
            }
        }
        if points.len() < 3 {
            continue;
        }
        let xs: Vec<f64> = points.iter().map(|p| p.complementarity).collect();
        let ys: Vec<f64> = points.iter().map(|p| p.performance).collect();
        if let Ok(stats) = correlations(&xs, &ys) {
            sections.push(CorrelationSection {
                metric: result.metric.clone(),
                points,
                correlations: stats,
            });
        }
    }
    sections
}

fn cmd_report(
    config: &RunConfig,
    performance: Option<&Path>,
    tcfg: &rings::separability::TestConfig,
    out_dir: &Path,
) -> Result<(), Failure> {
    let loaded = datasets(config)?;
    let ccfg = config.complementarity_config()?;
    let kinds = config.perturbation_kinds()?;
    let performance_records = match performance {
        Some(path) => Some(load_performance_records(path)?),
        None => None,
    };
    create_out_dir(out_dir)?;

    for dataset in &loaded {
        let stats = dataset_stats(dataset)?;
        let (_, summaries) = dataset_complementarity(dataset, &kinds, &ccfg)?;
        let diversity = diversity_summary(dataset, config)?;

        let separability = match &performance_records {
            Some(records) if records.iter().any(|r| r.dataset == dataset.name()) => {
                Some(separability_section(records, dataset.name(), tcfg)?)
            }
            Some(_) => {
                eprintln!(
                    "warning: {}: no performance records; separability and taxonomy omitted",
                    dataset.name()
                );
                None
            }
            None => {
                eprintln!(
                    "warning: {}: no performance CSV; separability and taxonomy omitted",
                    dataset.name()
                );
                None
            }
        };

        let correlation = separability
            .as_ref()
            .map(|section| correlation_sections(&summaries, section))
            .filter(|sections| !sections.is_empty());

        let taxonomy = separability
            .as_ref()
            .and_then(|s| s.evaluation)
            .map(|evaluation| taxonomy_classify(evaluation, diversity.delta_s_mean_symbol));

        let report = DatasetReport {
            dataset: dataset.name().to_string(),
            stats: Some(stats),
            complementarity: Some(ComplementaritySection {
                structural_metric: config.complementarity.structural_metric.clone(),
                feature_metric: config.complementarity.feature_metric.clone(),
                p: ccfg.p,
                q: ccfg.q,
                summaries,
            }),
            diversity: Some(diversity),
            separability,
            correlations: correlation,
            taxonomy,
        };
        let written = rings::report::write_report(&report, out_dir)?;
        for path in written {
            println!("wrote {}", path.display());
        }
        if let Some(verdict) = &report.taxonomy {
            println!("{}: {}", dataset.name(), verdict.action);
        }
    }
    Ok(())
}

fn cmd_gen(
    cliques: usize,
    clique_size: usize,
    feature_dim: usize,
    count: usize,
    seed: u64,
    file: &Path,
) -> Result<(), Failure> {
    if count == 0 {
        return Err(Failure::Input("count must be at least 1".into()));
    }
    let mut graphs = Vec::with_capacity(count);
    for i in 0..count {
        let g = ingest::gen_ring_of_cliques(cliques, clique_size, feature_dim, seed + i as u64)?;
        graphs.push(rings::data::AttributedGraph::new(
            i as u64,
            g.n(),
            g.edges().to_vec(),
            g.features().clone(),
            None,
        )?);
    }
    let dataset = GraphDataset::new("ring_of_cliques", graphs, rings::data::Task::None)?;
    if let Some(parent) = file.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(rings::Error::from)?;
        }
    }
    ingest::write_jsonl(&dataset, file)?;
    println!("wrote {} ({} graphs)", file.display(), count);
    Ok(())
}
