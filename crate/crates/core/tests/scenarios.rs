//! Monte Carlo checks of the scenario runners at the shipped configurations.

use std::path::Path;

use motifspectra::estimators::estimate_delta;
use motifspectra::evaluation::misclustering_rate;
use motifspectra::experiments::{
    kendall_tau, median, run_concentration_scaling, run_misclustering_vs_gap, run_sbm_triangle_density,
    run_weighted_sweep, trial_seed, ConcentrationConfig, DensityConfig, Scenario, ScenarioConfig,
};
use motifspectra::generators::{gen_hypergraph_3uniform, gen_nonuniform_hypergraph_sbm};
use motifspectra::spectral::{cluster_matrix, ClusterOptions};
use motifspectra::{BlockParams, CommunityAssignment};

fn config(name: &str) -> ScenarioConfig {
    ScenarioConfig::load(&Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)).unwrap()
}

#[test]
fn homogeneous_concentration_ratios_are_finite() {
    let cfg = ConcentrationConfig {
        n_values: vec![100],
        k: 1,
        a_e: 6.0,
        b_e: 6.0,
        a_t: 0.2,
        b_t: 0.2,
        expectation_trials: 50,
        epsilon: 0.05,
    };
    for r in run_concentration_scaling(&cfg, 3, 5).unwrap() {
        assert!(r.max_ratio.is_finite() && r.mean_ratio >= 0.0, "{r:?}");
    }
}

#[test]
fn misclustering_falls_with_the_gap() {
    let cfg = config("misclustering_vs_gap.json");
    let Scenario::MisclusteringVsGap(c) = &cfg.scenario else { panic!() };
    let rows = run_misclustering_vs_gap(c, cfg.master_seed, cfg.trials).unwrap();
    let gaps: Vec<f64> = rows.iter().map(|r| r.gap).collect();
    for med in [
        rows.iter().map(|r| r.supsbm_median_r).collect::<Vec<_>>(),
        rows.iter().map(|r| r.hypergraph_median_r).collect::<Vec<_>>(),
    ] {
        assert!(kendall_tau(&gaps, &med) <= 0.0, "{med:?}");
        // No signal: best-matching rate sits just under chance 1 - 1/k.
        assert!((0.4..=0.5).contains(&med[0]), "{med:?}");
    }
    assert_eq!(rows.last().unwrap().hypergraph_frac_small, 1.0);
}

#[test]
fn strong_triangle_signal_is_recovered() {
    let (n, k) = (400, 2);
    let p = BlockParams::new(n, k, 0.0, 0.0, 40.0, 5.0).unwrap();
    let c = CommunityAssignment::balanced(n, k).unwrap();
    let trials = 10;
    let good = (0..trials)
        .filter(|&t| {
            let seed = trial_seed(21, "strong_signal", 0, t);
            let g = gen_hypergraph_3uniform(&p, &c, seed).unwrap();
            let est = cluster_matrix(&g.hyperedge_motif_matrix(), k, false, seed, &ClusterOptions::default()).unwrap();
            misclustering_rate(&c, &est).unwrap() < 0.05
        })
        .count();
    assert!(good * 10 >= trials * 9, "{good}/{trials}");
}

#[test]
fn triangle_clustering_needs_dense_sbm() {
    let cfg = config("sbm_triangle_density.json");
    let Scenario::SbmTriangleDensity(c) = &cfg.scenario else { panic!() };
    let rows = run_sbm_triangle_density(c, cfg.master_seed, cfg.trials).unwrap();
    let sparse = rows.first().unwrap();
    let dense = rows.last().unwrap();
    assert!((sparse.a_e - 2.0 * (400f64).ln()).abs() < 0.01);
    assert_eq!(dense.a_e, 4.0 * 20.0);
    assert!(sparse.triangle_median_r >= sparse.edge_median_r, "{sparse:?}");
    assert!(dense.triangle_median_r <= 2.0 * dense.edge_median_r, "{dense:?}");

    let flat = DensityConfig {
        a_e_values: vec![20.0],
        b_ratio: 1.0,
        ..c.clone()
    };
    let r = &run_sbm_triangle_density(&flat, 1, 10).unwrap()[0];
    assert!(r.edge_median_r > 0.4 && r.triangle_median_r > 0.4, "{r:?}");
}

#[test]
fn intermediate_weight_beats_both_extremes() {
    let cfg = config("weighted_sweep.json");
    let Scenario::WeightedSweep(c) = &cfg.scenario else { panic!() };
    let rows = run_weighted_sweep(c, cfg.master_seed, cfg.trials).unwrap();
    let best = rows.iter().map(|r| r.median_r).fold(f64::INFINITY, f64::min);
    assert!(best < rows.first().unwrap().median_r && best < rows.last().unwrap().median_r);
}

#[test]
fn delta_hat_converges_without_community_structure() {
    // With a_e = delta a_t and flat blocks the estimator targets delta exactly.
    let delta = 20.0;
    let errors: Vec<f64> = [500, 1000, 2000]
        .iter()
        .map(|&n| {
            let p = BlockParams::new(n, 2, delta, delta, 1.0, 1.0).unwrap();
            let c = CommunityAssignment::balanced(n, 2).unwrap();
            let e: Vec<f64> = (0..15u64)
                .map(|s| {
                    let g = gen_nonuniform_hypergraph_sbm(&p, &c, s).unwrap();
                    (estimate_delta(&g).unwrap() - delta).abs() / delta
                })
                .collect();
            median(&e)
        })
        .collect();
    // Adjacent sizes sit within seed noise of each other; compare across the 4x range.
    assert!(errors[2] < errors[0], "{errors:?}");
    assert!(errors.iter().all(|&e| e < 0.02), "{errors:?}");
}
