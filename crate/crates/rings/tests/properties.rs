//! Property tests over randomly generated attributed graphs.

use ndarray::Array2;
use proptest::prelude::*;

use rings::complement::{complementarity, perturbed_complementarity, ComplementarityConfig};
use rings::data::{AttributedGraph, GraphDataset, Task};
use rings::lift::{EigenvalueConvention, StructuralMetric};
use rings::perturb::{perturb_graph, PerturbationKind};

fn arb_graph() -> impl Strategy<Value = AttributedGraph> {
    (2usize..=8)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(any::<bool>(), n * (n - 1) / 2),
                prop::collection::vec(-10.0f64..10.0, n * 2),
            )
        })
        .prop_map(|(n, edge_bits, feats)| {
            let mut edges = Vec::new();
            let mut slot = 0;
            for u in 0..n {
                for v in (u + 1)..n {
                    if edge_bits[slot] {
                        edges.push((u, v));
                    }
                    slot += 1;
                }
            }
            let features = Array2::from_shape_vec((n, 2), feats).unwrap();
            AttributedGraph::new(0, n, edges, features, None).unwrap()
        })
}

fn configs() -> Vec<ComplementarityConfig> {
    let base = ComplementarityConfig::default();
    vec![
        ComplementarityConfig {
            structural: StructuralMetric::Diffusion {
                t: 1,
                convention: EigenvalueConvention::LaplacianLiteral,
            },
            ..base.clone()
        },
        ComplementarityConfig {
            structural: StructuralMetric::Diffusion {
                t: 2,
                convention: EigenvalueConvention::DiffusionOperator,
            },
            ..base.clone()
        },
        ComplementarityConfig {
            structural: StructuralMetric::ShortestPath,
            ..base
        },
    ]
}

proptest! {
    #[test]
    fn duality_on_random_graphs(g in arb_graph()) {
        for cfg in configs() {
            for (complete, empty) in [
                (PerturbationKind::CompleteGraph, PerturbationKind::EmptyGraph),
                (PerturbationKind::CompleteFeatures, PerturbationKind::EmptyFeatures),
            ] {
                let gc = perturbed_complementarity(&g, complete, &cfg, 0).unwrap();
                let ge = perturbed_complementarity(&g, empty, &cfg, 0).unwrap();
                prop_assert!((gc - (1.0 - ge)).abs() <= 1e-12,
                    "duality violated for {complete:?}: {gc} vs {}", 1.0 - ge);
            }
        }
    }

    #[test]
    fn complementarity_in_unit_interval(g in arb_graph(), seed in any::<u64>()) {
        let cfg = ComplementarityConfig::default();
        for kind in [
            PerturbationKind::Original,
            PerturbationKind::RandomGraph { p: None },
            PerturbationKind::ShuffledGraph,
            PerturbationKind::RandomFeatures { dim: 3 },
            PerturbationKind::ShuffledFeatures,
        ] {
            let gamma = perturbed_complementarity(&g, kind, &cfg, seed).unwrap();
            prop_assert!((0.0..=1.0).contains(&gamma), "{kind:?}: {gamma}");
        }
    }

    #[test]
    fn complementarity_permutation_equivariance(g in arb_graph(), perm_seed in any::<u64>()) {
        let n = g.n();
        // Recover the permutation that ShuffledFeatures draws for this seed by
        // shuffling an identity marker column: row j of the result holds
        // perm[j], i.e. shuffled features are new[j] = old[perm[j]].
        let mut marker = Array2::zeros((n, 1));
        for i in 0..n {
            marker[(i, 0)] = i as f64;
        }
        let marker_graph = AttributedGraph::new(0, n, g.edges().to_vec(), marker, None).unwrap();
        let shuffled = perturb_graph(&marker_graph, PerturbationKind::ShuffledFeatures, perm_seed);
        let perm: Vec<usize> = (0..n).map(|j| shuffled.features()[(j, 0)] as usize).collect();
        // Relabel nodes by sigma = perm^{-1}; then node j of the relabeled
        // graph carries feature row old[perm[j]], which is exactly the
        // shuffled-features output, so both modes stay consistently paired.
        let mut sigma = vec![0usize; n];
        for (j, &p) in perm.iter().enumerate() {
            sigma[p] = j;
        }
        let edges: Vec<_> = g.edges().iter().map(|&(u, v)| (sigma[u], sigma[v])).collect();
        let sf = perturb_graph(&g, PerturbationKind::ShuffledFeatures, perm_seed);
        let relabeled = AttributedGraph::new(0, n, edges, sf.features().clone(), None).unwrap();

        let cfg = ComplementarityConfig::default();
        let a = complementarity(&g, &cfg).unwrap();
        let b = complementarity(&relabeled, &cfg).unwrap();
        prop_assert!((a - b).abs() <= 1e-9, "{a} vs {b}");
    }

    #[test]
    fn jsonl_round_trip_is_identity(g in arb_graph()) {
        let dataset = GraphDataset::new("prop", vec![g], Task::None).unwrap();
        let tmp = tempfile::TempDir::new().unwrap();
        let path = tmp.path().join("g.jsonl");
        rings::ingest::write_jsonl(&dataset, &path).unwrap();
        let (back, report) = rings::ingest::parse_jsonl(&path).unwrap();
        prop_assert_eq!(report.edges_dropped, 0);
        prop_assert_eq!(back.graphs(), dataset.graphs());
    }

    #[test]
    fn shuffles_preserve_invariants(g in arb_graph(), seed in any::<u64>()) {
        let sg = perturb_graph(&g, PerturbationKind::ShuffledGraph, seed);
        prop_assert_eq!(sg.edges().len(), g.edges().len());
        prop_assert_eq!(rings::data::graph_stats(&sg).m_directed, rings::data::graph_stats(&g).m_directed);

        let sf = perturb_graph(&g, PerturbationKind::ShuffledFeatures, seed);
        let mut original: Vec<Vec<u64>> = g.features().rows().into_iter()
            .map(|r| r.iter().map(|x| x.to_bits()).collect()).collect();
        let mut shuffled: Vec<Vec<u64>> = sf.features().rows().into_iter()
            .map(|r| r.iter().map(|x| x.to_bits()).collect()).collect();
        original.sort();
        shuffled.sort();
        prop_assert_eq!(original, shuffled);
    }
}
