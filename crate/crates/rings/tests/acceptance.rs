//! Acceptance suite: one test per shipping criterion, each printing a
//! PASS/SKIP line (run with `--nocapture` to see them).
//!
//! Criteria 2 and 3 reproduce published dataset-level numbers and need the
//! MUTAG / AIDS benchmark files in the TU layout. Point `RINGS_DATA_DIR` at a
//! directory containing `MUTAG/MUTAG_A.txt` etc., or place them under
//! `./data`; without the files those tests report SKIP.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use ndarray::Array2;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use rings::complement::{
    complementarity_multi, dataset_complementarity, mode_diversity, normalized_feature_space,
    normalized_structural_space, ComplementarityConfig, DiversityMode,
};
use rings::data::{AttributedGraph, DistanceMatrix, GraphDataset, Task};
use rings::lift::{
    structural_distance, EigenvalueConvention, FeatureMetric, StructuralMetric,
};
use rings::perturb::{perturb_graph, PerturbationKind};
use rings::report::{diversity_bins, taxonomy_classify, Symbol, TaxonomyAction};
use rings::separability::{
    evaluation_score, ks_statistic, permutation_test, permutation_test_sampled,
    wilcoxon_statistic, Informativeness, TestStatistic,
};

fn gaussian_features(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Array2<f64> {
    Array2::from_shape_simple_fn((n, k), || rng.sample(StandardNormal))
}

fn erdos_renyi(id: u64, n: usize, p: f64, k: usize, rng: &mut ChaCha8Rng) -> AttributedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    let features = gaussian_features(n, k, rng);
    AttributedGraph::new(id, n, edges, features, None).unwrap()
}

/// Connected graph: random spanning tree plus extra random edges.
fn random_connected(id: u64, n: usize, extra_p: f64, rng: &mut ChaCha8Rng) -> AttributedGraph {
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < extra_p {
                edges.insert((u, v));
            }
        }
    }
    let features = gaussian_features(n, 3, rng);
    AttributedGraph::new(id, n, edges, features, None).unwrap()
}

fn all_structural_metrics(ts: &[u32]) -> Vec<StructuralMetric> {
    let mut metrics = Vec::new();
    for &t in ts {
        metrics.push(StructuralMetric::Diffusion {
            t,
            convention: EigenvalueConvention::LaplacianLiteral,
        });
        metrics.push(StructuralMetric::Diffusion {
            t,
            convention: EigenvalueConvention::DiffusionOperator,
        });
        metrics.push(StructuralMetric::HeatKernel { t: t as f64 });
    }
    metrics.push(StructuralMetric::Resistance);
    metrics.push(StructuralMetric::ShortestPath);
    metrics
}

#[test]
fn criterion_1_perturbation_duality() {
    let start = Instant::now();
    let metrics = all_structural_metrics(&[1, 5, 10]);
    let mut rng = ChaCha8Rng::seed_from_u64(0xD0A1);
    let mut worst: f64 = 0.0;
    for id in 0..1000u64 {
        let n = rng.gen_range(2..=30);
        let p = rng.gen_range(0.1..=1.0);
        let k = rng.gen_range(1..=16);
        let g = erdos_renyi(id, n, p, k, &mut rng);

        let gamma = |kind: PerturbationKind| -> Vec<f64> {
            let perturbed = perturb_graph(&g, kind, 0);
            complementarity_multi(&perturbed, &metrics, FeatureMetric::Euclidean, 1.0, 1.0)
                .unwrap()
        };
        let cg = gamma(PerturbationKind::CompleteGraph);
        let eg = gamma(PerturbationKind::EmptyGraph);
        let cf = gamma(PerturbationKind::CompleteFeatures);
        let ef = gamma(PerturbationKind::EmptyFeatures);
        for slot in 0..metrics.len() {
            worst = worst.max((cg[slot] - (1.0 - eg[slot])).abs());
            worst = worst.max((cf[slot] - (1.0 - ef[slot])).abs());
        }
    }
    let elapsed = start.elapsed();
    assert!(worst <= 1e-9, "duality violation {worst:e}");
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!("criterion 1 (perturbation duality, 1000 ER graphs): PASS (max violation {worst:.2e}, {elapsed:.2?})");
}

fn data_dir() -> Option<PathBuf> {
    let mut candidates: Vec<PathBuf> = Vec::new();
    if let Ok(dir) = std::env::var("RINGS_DATA_DIR") {
        candidates.push(PathBuf::from(dir));
    }
    candidates.push(PathBuf::from("data"));
    candidates.push(PathBuf::from("../data"));
    candidates.push(PathBuf::from("../../data"));
    candidates.into_iter().find(|c| c.join("MUTAG").join("MUTAG_A.txt").exists()
        || c.join("AIDS").join("AIDS_A.txt").exists())
}

struct TableSevenTarget {
    name: &'static str,
    gamma1_mean: f64,
    gamma1_sd: Option<f64>,
    gamma10_mean: Option<f64>,
    budget_secs: f64,
}

#[test]
fn criterion_2_table7_complementarity() {
    let Some(root) = data_dir() else {
        println!(
            "criterion 2 (published complementarity means): SKIP \
             (TU benchmark files not found; set RINGS_DATA_DIR or populate ./data \
             with MUTAG/ and AIDS/ in the TU layout)"
        );
        return;
    };
    let targets = [
        TableSevenTarget {
            name: "MUTAG",
            gamma1_mean: 0.51,
            gamma1_sd: Some(0.07),
            gamma10_mean: Some(0.48),
            budget_secs: 10.0,
        },
        TableSevenTarget {
            name: "AIDS",
            gamma1_mean: 0.29,
            gamma1_sd: None,
            gamma10_mean: None,
            budget_secs: 180.0,
        },
    ];
    for target in targets {
        let dir = root.join(target.name);
        if !dir.join(format!("{}_A.txt", target.name)).exists() {
            println!(
                "criterion 2 ({} complementarity): SKIP (files not found under {})",
                target.name,
                dir.display()
            );
            continue;
        }
        let start = Instant::now();
        let (dataset, _) = rings::ingest::parse_tu_dataset(&dir, target.name).unwrap();
        if target.name == "MUTAG" {
            // Published basic statistics for the same files.
            assert_eq!(dataset.len(), 188);
            let stats = rings::data::dataset_stats(&dataset).unwrap();
            assert!((stats.n.mean - 17.93).abs() <= 0.05, "n mean {}", stats.n.mean);
            assert!((stats.n.sd - 4.59).abs() <= 0.05, "n sd {}", stats.n.sd);
            assert!((stats.m_directed.mean - 39.59).abs() <= 0.05, "m mean {}", stats.m_directed.mean);
            assert!((stats.mean_degree.mean - 2.19).abs() <= 0.05, "degree {}", stats.mean_degree.mean);
            assert!((stats.density.mean - 0.14).abs() <= 0.05, "density {}", stats.density.mean);
        }
        let mut matched = None;
        for convention in [
            EigenvalueConvention::LaplacianLiteral,
            EigenvalueConvention::DiffusionOperator,
        ] {
            let cfg = ComplementarityConfig {
                structural: StructuralMetric::Diffusion { t: 1, convention },
                t_values: vec![1, 10],
                ..ComplementarityConfig::default()
            };
            let (_, summaries) =
                dataset_complementarity(&dataset, &[PerturbationKind::Original], &cfg).unwrap();
            let cell = |t: u32| summaries.iter().find(|s| s.t == t).unwrap();
            let g1 = cell(1);
            let mut ok = (g1.mean - target.gamma1_mean).abs() <= 0.03;
            if let Some(sd) = target.gamma1_sd {
                ok &= (g1.sd - sd).abs() <= 0.03;
            }
            if let Some(g10_mean) = target.gamma10_mean {
                ok &= (cell(10).mean - g10_mean).abs() <= 0.03;
            }
            if ok {
                matched = Some((convention, g1.mean, g1.sd, cell(10).mean));
                break;
            }
        }
        let elapsed = start.elapsed();
        let (convention, g1, sd1, g10) = matched.unwrap_or_else(|| {
            panic!(
                "criterion 2 ({}): FAIL - no diffusion eigenvalue convention reproduces the published means",
                target.name
            )
        });
        assert!(
            elapsed.as_secs_f64() < target.budget_secs,
            "{} took {elapsed:?}",
            target.name
        );
        println!(
            "criterion 2 ({} complementarity): PASS (convention {convention:?}: g1 mean {g1:.3} sd {sd1:.3}, g10 mean {g10:.3}, {elapsed:.2?})",
            target.name
        );
    }
}

#[test]
fn criterion_3_table2_diversity() {
    let Some(root) = data_dir() else {
        println!(
            "criterion 3 (published diversity means): SKIP \
             (TU benchmark files not found; set RINGS_DATA_DIR or populate ./data)"
        );
        return;
    };
    let dir = root.join("MUTAG");
    if !dir.join("MUTAG_A.txt").exists() {
        println!("criterion 3 (MUTAG diversity): SKIP (files not found under {})", dir.display());
        return;
    }
    let (dataset, _) = rings::ingest::parse_tu_dataset(&dir, "MUTAG").unwrap();
    let mut matched = None;
    for convention in [
        EigenvalueConvention::LaplacianLiteral,
        EigenvalueConvention::DiffusionOperator,
    ] {
        let cfg = ComplementarityConfig {
            structural: StructuralMetric::Diffusion { t: 1, convention },
            ..ComplementarityConfig::default()
        };
        let mut delta_s = Vec::new();
        let mut delta_f = Vec::new();
        for g in dataset.graphs() {
            delta_s.push(mode_diversity(g, DiversityMode::Structure, &cfg).unwrap());
            delta_f.push(mode_diversity(g, DiversityMode::Features, &cfg).unwrap());
        }
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        let (ms, mf) = (mean(&delta_s), mean(&delta_f));
        if (ms - 0.51).abs() <= 0.03 && (mf - 0.76).abs() <= 0.05 {
            matched = Some((convention, ms, mf));
            break;
        }
    }
    let (convention, ms, mf) = matched
        .expect("criterion 3: FAIL - no convention reproduces the published diversity means");
    println!(
        "criterion 3 (MUTAG diversity): PASS (convention {convention:?}: structural {ms:.3}, feature {mf:.3})"
    );
}

#[test]
fn criterion_4_taxonomy_reproduction() {
    use TaxonomyAction::*;
    // (dataset, published evaluation symbol, published structural-diversity
    // mean, expected action).
    let rows: [(&str, &str, f64, TaxonomyAction); 13] = [
        ("AIDS", "--", 0.52, Realign),
        ("COLLAB", "++", 0.30, DeprecateStructural),
        ("DD", "--", 0.62, Realign),
        ("Enzymes", "-", 0.38, DeprecateFull),
        ("IMDB-B", "∘", 0.18, DeprecateStructural),
        ("IMDB-M", "+", 0.09, DeprecateStructural),
        ("MUTAG", "-", 0.51, Realign),
        ("MolHIV", "++", 0.55, Keep),
        ("NCI1", "++", 0.56, Keep),
        ("Peptides", "+", 0.61, Keep),
        ("Proteins", "--", 0.36, DeprecateFull),
        ("Reddit-B", "--", 0.71, Realign),
        ("Reddit-M", "--", 0.72, Realign),
    ];
    for (name, eval, delta_s_mean, expected) in rows {
        let evaluation = Symbol::parse(eval).unwrap();
        let (mu_symbol, _) = diversity_bins(delta_s_mean, 0.0).unwrap();
        let verdict = taxonomy_classify(evaluation, mu_symbol);
        assert_eq!(verdict.action, expected, "{name}: got {:?}", verdict.action);
    }
    println!("criterion 4 (taxonomy reproduction): PASS (13/13 assignments)");
}

#[test]
fn criterion_5_scoring_table() {
    use Informativeness::*;
    let cases = [
        (Informative, Informative, Symbol::MuchBetter), // NCI1
        (Uninformative, Informative, Symbol::Worse),    // Enzymes
        (Mixed, Mixed, Symbol::Neutral),                // IMDB-B
        (Uninformative, Uninformative, Symbol::MuchWorse), // AIDS
    ];
    for (s, f, expected) in cases {
        let (_, symbol) = evaluation_score(s, f);
        assert_eq!(symbol, expected, "({s:?}, {f:?})");
    }
    println!("criterion 5 (evaluation scoring table): PASS");
}

/// Independent enumeration oracle: walk every size-`n_a` subset of the pooled
/// sample recursively and count extremity >= observed.
fn enumeration_oracle(a: &[f64], b: &[f64], statistic: TestStatistic) -> f64 {
    let pooled: Vec<f64> = a.iter().chain(b.iter()).copied().collect();
    let n = pooled.len();
    let n_a = a.len();
    let stat = |xs: &[f64], ys: &[f64]| -> f64 {
        match statistic {
            TestStatistic::Ks => ks_statistic(xs, ys).unwrap(),
            TestStatistic::Wilcoxon => {
                let w = wilcoxon_statistic(xs, ys).unwrap();
                (w - n_a as f64 * (n as f64 + 1.0) / 2.0).abs()
            }
        }
    };
    let observed = stat(a, b);
    let mut counts = (0u64, 0u64); // (hits, total)
    let mut chosen = Vec::with_capacity(n_a);
    fn walk(
        pooled: &[f64],
        n_a: usize,
        next: usize,
        chosen: &mut Vec<usize>,
        counts: &mut (u64, u64),
        observed: f64,
        stat: &dyn Fn(&[f64], &[f64]) -> f64,
    ) {
        if chosen.len() == n_a {
            let xs: Vec<f64> = chosen.iter().map(|&i| pooled[i]).collect();
            let ys: Vec<f64> = (0..pooled.len())
                .filter(|i| !chosen.contains(i))
                .map(|i| pooled[i])
                .collect();
            counts.1 += 1;
            if stat(&xs, &ys) >= observed {
                counts.0 += 1;
            }
            return;
        }
        if next >= pooled.len() {
            return;
        }
        chosen.push(next);
        walk(pooled, n_a, next + 1, chosen, counts, observed, stat);
        chosen.pop();
        walk(pooled, n_a, next + 1, chosen, counts, observed, stat);
    }
    walk(&pooled, n_a, 0, &mut chosen, &mut counts, observed, &stat);
    counts.0 as f64 / counts.1 as f64
}

#[test]
fn criterion_6_permutation_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let n_perm = 100_000;
    for pooled_n in 2..=10usize {
        for n_a in 1..pooled_n {
            // A lattice sample with ties and a visible group offset.
            let a: Vec<f64> = (0..n_a)
                .map(|_| rng.gen_range(0..4) as f64 * 0.5)
                .collect();
            let b: Vec<f64> = (0..pooled_n - n_a)
                .map(|_| rng.gen_range(0..4) as f64 * 0.5 + 0.5)
                .collect();
            for statistic in [TestStatistic::Ks, TestStatistic::Wilcoxon] {
                let exact = enumeration_oracle(&a, &b, statistic);

                let lib = permutation_test(&a, &b, statistic, 10, 0).unwrap();
                if lib.degenerate {
                    assert_eq!(lib.p_value, 1.0);
                    continue;
                }
                assert!(lib.exhaustive, "pooled {pooled_n} should enumerate");
                assert_eq!(
                    lib.p_value, exact,
                    "exhaustive != oracle for split ({n_a}, {})",
                    pooled_n - n_a
                );

                let mc = permutation_test_sampled(&a, &b, statistic, n_perm, 7).unwrap();
                // The +1-smoothed estimator is centered on
                // p + (1 - p)/(n_perm + 1).
                let center = exact + (1.0 - exact) / (n_perm as f64 + 1.0);
                let se = (exact * (1.0 - exact) / n_perm as f64).sqrt();
                assert!(
                    (mc.p_value - center).abs() <= 3.0 * se + f64::EPSILON,
                    "split ({n_a}, {}), {statistic:?}: MC {} vs exact {exact} (se {se:.2e})",
                    pooled_n - n_a,
                    mc.p_value
                );
            }
        }
    }
    // The exhaustive branch stays exact up to pooled size 12.
    for pooled_n in 11..=12usize {
        for n_a in [1, pooled_n / 2, pooled_n - 1] {
            let a: Vec<f64> = (0..n_a).map(|_| rng.gen_range(0..4) as f64 * 0.5).collect();
            let b: Vec<f64> = (0..pooled_n - n_a)
                .map(|_| rng.gen_range(0..4) as f64 * 0.5 + 0.5)
                .collect();
            for statistic in [TestStatistic::Ks, TestStatistic::Wilcoxon] {
                let lib = permutation_test(&a, &b, statistic, 10, 0).unwrap();
                if lib.degenerate {
                    continue;
                }
                assert!(lib.exhaustive);
                assert_eq!(lib.p_value, enumeration_oracle(&a, &b, statistic));
            }
        }
    }
    println!(
        "criterion 6 (permutation-test oracle, all splits pooled n <= 10): PASS ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_7_metric_axioms() {
    let start = Instant::now();
    let metrics = [
        StructuralMetric::Diffusion {
            t: 1,
            convention: EigenvalueConvention::LaplacianLiteral,
        },
        StructuralMetric::Diffusion {
            t: 2,
            convention: EigenvalueConvention::DiffusionOperator,
        },
        StructuralMetric::HeatKernel { t: 0.5 },
        StructuralMetric::Resistance,
        StructuralMetric::ShortestPath,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for id in 0..500u64 {
        let n = rng.gen_range(2..=12);
        let extra = rng.gen_range(0.0..0.5);
        let g = random_connected(id, n, extra, &mut rng);
        for metric in &metrics {
            let d = structural_distance(&g, metric).unwrap();
            let v = d.values();
            for i in 0..n {
                assert_eq!(v[(i, i)], 0.0, "diagonal {metric:?}");
                for j in 0..n {
                    assert!(v[(i, j)] >= 0.0, "negativity {metric:?}");
                    assert_eq!(v[(i, j)], v[(j, i)], "symmetry {metric:?}");
                    for k in 0..n {
                        assert!(
                            v[(i, j)] <= v[(i, k)] + v[(k, j)] + 1e-9,
                            "triangle inequality {metric:?}: d({i},{j}) > d({i},{k}) + d({k},{j})"
                        );
                    }
                }
            }
        }
    }

    // Classical resistance values.
    let k2 = AttributedGraph::new(0, 2, [(0, 1)], Array2::zeros((2, 1)), None).unwrap();
    let p3 = AttributedGraph::new(0, 3, [(0, 1), (1, 2)], Array2::zeros((3, 1)), None).unwrap();
    let k3 =
        AttributedGraph::new(0, 3, [(0, 1), (1, 2), (0, 2)], Array2::zeros((3, 1)), None).unwrap();
    let resistance = |g: &AttributedGraph| structural_distance(g, &StructuralMetric::Resistance).unwrap();
    assert!((resistance(&k2).values()[(0, 1)] - 1.0).abs() <= 1e-9);
    assert!((resistance(&p3).values()[(0, 2)] - 2.0).abs() <= 1e-9);
    for i in 0..3 {
        for j in (i + 1)..3 {
            assert!((resistance(&k3).values()[(i, j)] - 2.0 / 3.0).abs() <= 1e-9);
        }
    }
    println!(
        "criterion 7 (metric axioms on 500 random connected graphs): PASS ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_8_degenerate_lifts_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let bases = [
        random_connected(0, 6, 0.3, &mut rng),
        // Disconnected base with an isolated node.
        AttributedGraph::new(1, 5, [(0, 1), (1, 2)], gaussian_features(5, 4, &mut rng), None)
            .unwrap(),
    ];
    let metrics = all_structural_metrics(&[1, 3]);
    for g in &bases {
        let eg = perturb_graph(g, PerturbationKind::EmptyGraph, 0);
        let cg = perturb_graph(g, PerturbationKind::CompleteGraph, 0);
        for metric in &metrics {
            // Empty perturbations lift to the trivial space, exactly.
            let trivial = normalized_structural_space(&eg, metric).unwrap();
            assert_eq!(trivial, DistanceMatrix::zeros(g.n()), "{metric:?}");
            // Complete perturbations normalize to the discrete space, exactly.
            let discrete = normalized_structural_space(&cg, metric).unwrap();
            assert_eq!(discrete, DistanceMatrix::discrete(g.n()), "{metric:?}");
        }

        let ef = perturb_graph(g, PerturbationKind::EmptyFeatures, 0);
        let cf = perturb_graph(g, PerturbationKind::CompleteFeatures, 0);
        for feature_metric in [FeatureMetric::Euclidean, FeatureMetric::Cosine] {
            let trivial = normalized_feature_space(ef.features(), feature_metric);
            assert_eq!(trivial, DistanceMatrix::zeros(g.n()), "{feature_metric:?}");
            let discrete = normalized_feature_space(cf.features(), feature_metric);
            assert_eq!(discrete, DistanceMatrix::discrete(g.n()), "{feature_metric:?}");
        }
    }
    println!("criterion 8 (trivial/discrete degenerate lifts are exact): PASS");
}

fn pipeline_artifacts(threads: usize) -> Vec<(String, Vec<u8>)> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    pool.install(|| {
        let graphs: Vec<AttributedGraph> = (0..6)
            .map(|i| {
                let g = rings::ingest::gen_ring_of_cliques(3 + (i % 3), 2 + (i % 2), 4, i as u64)
                    .unwrap();
                AttributedGraph::new(i as u64, g.n(), g.edges().to_vec(), g.features().clone(), None)
                    .unwrap()
            })
            .collect();
        let dataset = GraphDataset::new("threads", graphs, Task::None).unwrap();
        let cfg = ComplementarityConfig {
            t_values: vec![1, 2, 3],
            ..ComplementarityConfig::default()
        };
        let kinds = [
            PerturbationKind::Original,
            PerturbationKind::EmptyGraph,
            PerturbationKind::CompleteGraph,
            PerturbationKind::RandomGraph { p: None },
            PerturbationKind::ShuffledGraph,
            PerturbationKind::EmptyFeatures,
            PerturbationKind::CompleteFeatures,
            PerturbationKind::RandomFeatures { dim: 10 },
            PerturbationKind::ShuffledFeatures,
        ];
        let (records, summaries) = dataset_complementarity(&dataset, &kinds, &cfg).unwrap();
        let mut csv = Vec::new();
        rings::complement::write_records_csv(&records, &mut csv).unwrap();
        let summary_json = serde_json::to_vec_pretty(&summaries).unwrap();

        // Separability leg over synthetic records exercises the permutation
        // sampler's parallel substreams.
        let mut perf = Vec::new();
        for (kind, base) in [("o", 0.9), ("eg", 0.5), ("cg", 0.7)] {
            for i in 0..25 {
                perf.push(rings::separability::PerformanceRecord {
                    dataset: "threads".into(),
                    kind: kind.into(),
                    arch: "gcn".into(),
                    hparams: "h0".into(),
                    run: format!("r{i}"),
                    metric: "auroc".into(),
                    value: base + 0.005 * ((i * 37 % 11) as f64 / 11.0 - 0.5),
                });
            }
        }
        let sep = rings::separability::pairwise_separability(
            &perf,
            "threads",
            "auroc",
            &rings::separability::TestConfig::default(),
        )
        .unwrap();
        let sep_json = serde_json::to_vec_pretty(&sep).unwrap();

        vec![
            ("records.csv".to_string(), csv),
            ("summaries.json".to_string(), summary_json),
            ("separability.json".to_string(), sep_json),
        ]
    })
}

#[test]
fn criterion_9_thread_count_determinism() {
    let one = pipeline_artifacts(1);
    let four = pipeline_artifacts(4);
    for ((name_a, bytes_a), (name_b, bytes_b)) in one.iter().zip(four.iter()) {
        assert_eq!(name_a, name_b);
        assert_eq!(bytes_a, bytes_b, "artifact {name_a} differs across thread counts");
    }
    println!("criterion 9 (byte-identical artifacts across thread counts): PASS");
}
