use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::evaluation::misclustering_rate;
use crate::generators::{gen_hypergraph_3uniform, gen_supsbm};
use crate::graph_model::{BlockParams, CommunityAssignment};
use crate::motif::{decompose_triangles, triangle_motif_generative};
use crate::spectral::{cluster_matrix, ClusterOptions, DEFAULT_RESTARTS};

use super::{mean, median, trial_seed};

/// Rates below this count as exact recovery in `*_frac_small`.
pub const SMALL_RATE: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapConfig {
    pub n: usize,
    pub k: usize,
    /// Dyadic rates of the superimposed model; ignored by the hypergraph-only path.
    pub a_e: f64,
    pub b_e: f64,
    pub b_t: f64,
    /// Values of `a_t - b_t`.
    pub gaps: Vec<f64>,
    #[serde(default)]
    pub row_normalize: bool,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
}

fn default_restarts() -> usize {
    DEFAULT_RESTARTS
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapRow {
    pub grid_index: usize,
    pub gap: f64,
    pub n: usize,
    pub k: usize,
    pub a_e: f64,
    pub b_e: f64,
    pub a_t: f64,
    pub b_t: f64,
    /// `k^2 a_t / (n (a_t - b_t)^2)`, infinite at zero gap.
    pub rate_bound: f64,
    pub supsbm_mean_r: f64,
    pub supsbm_median_r: f64,
    pub supsbm_frac_small: f64,
    pub hypergraph_mean_r: f64,
    pub hypergraph_median_r: f64,
    pub hypergraph_frac_small: f64,
    pub trials: usize,
    pub restarts: usize,
    pub master_seed: u64,
}

/// Misclustering rates of one draw: superimposed model clustered on the
/// generative triangle matrix, hypergraph-only model on its hyperedge matrix.
pub(crate) fn gap_trial(
    p: &BlockParams,
    c: &CommunityAssignment,
    seed: u64,
    row_normalize: bool,
    opts: &ClusterOptions,
) -> Result<(f64, f64)> {
    let sup = gen_supsbm(p, c, seed)?;
    let a_t = triangle_motif_generative(&decompose_triangles(&sup))?;
    let r_sup = misclustering_rate(c, &cluster_matrix(&a_t, p.k, row_normalize, seed, opts)?)?;
    let hyp = gen_hypergraph_3uniform(p, c, seed)?;
    let a_t2 = hyp.hyperedge_motif_matrix();
    let r_hyp = misclustering_rate(c, &cluster_matrix(&a_t2, p.k, row_normalize, seed, opts)?)?;
    Ok((r_sup, r_hyp))
}

fn frac_below(xs: &[f64], t: f64) -> f64 {
    xs.iter().filter(|&&x| x < t).count() as f64 / xs.len() as f64
}

pub fn run_misclustering_vs_gap(cfg: &GapConfig, master_seed: u64, trials: usize) -> Result<Vec<GapRow>> {
    let opts = ClusterOptions {
        restarts: cfg.restarts,
        ..ClusterOptions::default()
    };
    let c = CommunityAssignment::balanced(cfg.n, cfg.k)?;
    cfg.gaps
        .iter()
        .enumerate()
        .map(|(gi, &gap)| {
            let a_t = cfg.b_t + gap;
            let p = BlockParams::new(cfg.n, cfg.k, cfg.a_e, cfg.b_e, a_t, cfg.b_t)?;
            let rates = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let seed = trial_seed(master_seed, "misclustering_vs_gap", gi, t);
                    gap_trial(&p, &c, seed, cfg.row_normalize, &opts)
                })
                .collect::<Result<Vec<_>>>()?;
            let (sup, hyp): (Vec<f64>, Vec<f64>) = rates.into_iter().unzip();
            let k = cfg.k as f64;
            Ok(GapRow {
                grid_index: gi,
                gap,
                n: cfg.n,
                k: cfg.k,
                a_e: cfg.a_e,
                b_e: cfg.b_e,
                a_t,
                b_t: cfg.b_t,
                rate_bound: if gap == 0.0 {
                    f64::INFINITY
                } else {
                    k * k * a_t / (cfg.n as f64 * gap * gap)
                },
                supsbm_mean_r: mean(&sup),
                supsbm_median_r: median(&sup),
                supsbm_frac_small: frac_below(&sup, SMALL_RATE),
                hypergraph_mean_r: mean(&hyp),
                hypergraph_median_r: median(&hyp),
                hypergraph_frac_small: frac_below(&hyp, SMALL_RATE),
                trials,
                restarts: cfg.restarts,
                master_seed,
            })
        })
        .collect()
}
