use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluation::misclustering_rate;
use crate::generators::gen_nonuniform_hypergraph_sbm;
use crate::graph_model::CommunityAssignment;
use crate::spectral::{cluster_matrix, weighted_hyperedge_matrix, ClusterOptions, DEFAULT_RESTARTS};

use super::crossover::CrossoverConfig;
use super::{mean, median, trial_seed};

/// Sweep of the hyperedge weight `w` in `A_E2 + w A_T2` at a fixed `(delta, m)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedConfig {
    pub n: usize,
    #[serde(default = "default_k")]
    pub k: usize,
    pub m: f64,
    pub a_e: f64,
    pub b_e: f64,
    pub delta: f64,
    pub weights: Vec<f64>,
    #[serde(default)]
    pub row_normalize: bool,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
}

fn default_k() -> usize {
    2
}

fn default_restarts() -> usize {
    DEFAULT_RESTARTS
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightedRow {
    pub grid_index: usize,
    pub weight: f64,
    pub n: usize,
    pub k: usize,
    pub m: f64,
    pub delta: f64,
    pub a_e: f64,
    pub b_e: f64,
    pub a_t: f64,
    pub b_t: f64,
    pub mean_r: f64,
    pub median_r: f64,
    /// `((1 + w sqrt(n/delta)) / (1 + w m n / delta))^2 a_e / (a_e - b_e)^2`, constants dropped.
    pub bound_shape: f64,
    pub trials: usize,
    pub restarts: usize,
    pub master_seed: u64,
}

pub fn weighted_bound_shape(n: usize, delta: f64, m: f64, a_e: f64, b_e: f64, w: f64) -> f64 {
    let n = n as f64;
    let ratio = (1.0 + (n / delta).sqrt() * w) / (1.0 + m * n / delta * w);
    ratio * ratio * a_e / ((a_e - b_e) * (a_e - b_e))
}

pub fn run_weighted_sweep(cfg: &WeightedConfig, master_seed: u64, trials: usize) -> Result<Vec<WeightedRow>> {
    if let Some(w) = cfg.weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
        return Err(Error::InvalidParams(format!("weight {w} must be finite and >= 0")));
    }
    let p = CrossoverConfig {
        n: cfg.n,
        k: cfg.k,
        m: cfg.m,
        a_e: cfg.a_e,
        b_e: cfg.b_e,
        deltas: vec![cfg.delta],
        weight: None,
        row_normalize: cfg.row_normalize,
        restarts: cfg.restarts,
    }
    .params(cfg.delta)?;
    let c = CommunityAssignment::balanced(cfg.n, cfg.k)?;
    let opts = ClusterOptions {
        restarts: cfg.restarts,
        ..ClusterOptions::default()
    };
    // The same draws are reused for every weight so the curve compares like with like.
    let per_trial: Vec<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let seed = trial_seed(master_seed, "weighted_sweep", 0, t);
            let g = gen_nonuniform_hypergraph_sbm(&p, &c, seed)?;
            let (a_e2, a_t2) = (g.dyadic_matrix(), g.hyperedge_motif_matrix());
            cfg.weights
                .iter()
                .map(|&w| {
                    let a_w = weighted_hyperedge_matrix(&a_e2, &a_t2, w)?;
                    misclustering_rate(&c, &cluster_matrix(&a_w, cfg.k, cfg.row_normalize, seed, &opts)?)
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(cfg
        .weights
        .iter()
        .enumerate()
        .map(|(gi, &weight)| {
            let r: Vec<f64> = per_trial.iter().map(|t| t[gi]).collect();
            WeightedRow {
                grid_index: gi,
                weight,
                n: cfg.n,
                k: cfg.k,
                m: cfg.m,
                delta: cfg.delta,
                a_e: cfg.a_e,
                b_e: cfg.b_e,
                a_t: p.a_t,
                b_t: p.b_t,
                mean_r: mean(&r),
                median_r: median(&r),
                bound_shape: weighted_bound_shape(cfg.n, cfg.delta, cfg.m, cfg.a_e, cfg.b_e, weight),
                trials,
                restarts: cfg.restarts,
                master_seed,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn bound_shape_limits() {
        // w = 0 is the edge-only bound a_e / (a_e - b_e)^2.
        assert_relative_eq!(weighted_bound_shape(100, 10.0, 1.0, 10.0, 4.0, 0.0), 10.0 / 36.0);
        // Large w approaches the triangle-only shape delta / (m^2 n) a_e / (a_e - b_e)^2.
        let big = weighted_bound_shape(100, 10.0, 1.0, 10.0, 4.0, 1e9);
        assert_relative_eq!(big, 0.1 * 10.0 / 36.0, max_relative = 1e-6);
    }

    #[test]
    fn sweep_shapes_rows() {
        let cfg = WeightedConfig {
            n: 40,
            k: 2,
            m: 1.0,
            a_e: 12.0,
            b_e: 2.0,
            delta: 4.0,
            weights: vec![0.0, 0.5],
            row_normalize: false,
            restarts: 3,
        };
        let rows = run_weighted_sweep(&cfg, 2, 2).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| (0.0..=0.5).contains(&r.median_r)));
        let bad = WeightedConfig { weights: vec![-1.0], ..cfg };
        assert!(run_weighted_sweep(&bad, 2, 1).is_err());
    }
}
