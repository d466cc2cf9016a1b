use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluation::misclustering_rate;
use crate::generators::gen_sbm;
use crate::graph_model::{BlockParams, CommunityAssignment};
use crate::motif::triangle_motif_observed;
use crate::spectral::{cluster_matrix, ClusterOptions, DEFAULT_RESTARTS};

use super::{mean, median, trial_seed};

/// Plain SBM with `b_e = b_ratio * a_e`, swept over `a_e`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityConfig {
    pub n: usize,
    #[serde(default = "default_k")]
    pub k: usize,
    pub a_e_values: Vec<f64>,
    pub b_ratio: f64,
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
pub struct DensityRow {
    pub grid_index: usize,
    pub n: usize,
    pub k: usize,
    pub a_e: f64,
    pub b_e: f64,
    /// `log(a_e) / log(n)`, to read off the side of `n^(2/5)`.
    pub density_exponent: f64,
    pub edge_mean_r: f64,
    pub edge_median_r: f64,
    pub triangle_mean_r: f64,
    pub triangle_median_r: f64,
    pub trials: usize,
    pub restarts: usize,
    pub master_seed: u64,
}

/// Rates of edge clustering and dyadic-triangle clustering on one SBM draw.
pub(crate) fn density_trial(
    p: &BlockParams,
    c: &CommunityAssignment,
    seed: u64,
    row_normalize: bool,
    opts: &ClusterOptions,
) -> Result<(f64, f64)> {
    let g = gen_sbm(p, c, seed)?;
    let a_e2 = g.dyadic_matrix();
    let a_e3 = triangle_motif_observed(&a_e2)?;
    let r_e = misclustering_rate(c, &cluster_matrix(&a_e2, p.k, row_normalize, seed, opts)?)?;
    let r_t = misclustering_rate(c, &cluster_matrix(&a_e3, p.k, row_normalize, seed, opts)?)?;
    Ok((r_e, r_t))
}

pub fn run_sbm_triangle_density(cfg: &DensityConfig, master_seed: u64, trials: usize) -> Result<Vec<DensityRow>> {
    if !(0.0..=1.0).contains(&cfg.b_ratio) {
        return Err(Error::InvalidParams(format!("b_ratio {} must lie in [0, 1]", cfg.b_ratio)));
    }
    let c = CommunityAssignment::balanced(cfg.n, cfg.k)?;
    let opts = ClusterOptions {
        restarts: cfg.restarts,
        ..ClusterOptions::default()
    };
    cfg.a_e_values
        .iter()
        .enumerate()
        .map(|(gi, &a_e)| {
            let b_e = cfg.b_ratio * a_e;
            let p = BlockParams::new(cfg.n, cfg.k, a_e, b_e, 0.0, 0.0)?;
            let rates = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let seed = trial_seed(master_seed, "sbm_triangle_density", gi, t);
                    density_trial(&p, &c, seed, cfg.row_normalize, &opts)
                })
                .collect::<Result<Vec<_>>>()?;
            let (e, tri): (Vec<f64>, Vec<f64>) = rates.into_iter().unzip();
            Ok(DensityRow {
                grid_index: gi,
                n: cfg.n,
                k: cfg.k,
                a_e,
                b_e,
                density_exponent: a_e.ln() / (cfg.n as f64).ln(),
                edge_mean_r: mean(&e),
                edge_median_r: median(&e),
                triangle_mean_r: mean(&tri),
                triangle_median_r: median(&tri),
                trials,
                restarts: cfg.restarts,
                master_seed,
            })
        })
        .collect()
}
