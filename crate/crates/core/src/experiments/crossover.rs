use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluation::misclustering_rate;
use crate::generators::gen_nonuniform_hypergraph_sbm;
use crate::graph_model::{BlockParams, CommunityAssignment};
use crate::spectral::{cluster_matrix, weighted_hyperedge_matrix, ClusterOptions, DEFAULT_RESTARTS};

use super::{mean, median, trial_seed};

/// Non-uniform hypergraph SBM indexed by `(delta, m)`:
/// `a_t = a_e / delta` and `a_t - b_t = m (a_e - b_e) / delta`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossoverConfig {
    pub n: usize,
    #[serde(default = "default_k")]
    pub k: usize,
    pub m: f64,
    pub a_e: f64,
    pub b_e: f64,
    pub deltas: Vec<f64>,
    /// Weight on the hyperedge matrix; `m / k` when absent.
    #[serde(default)]
    pub weight: Option<f64>,
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

impl CrossoverConfig {
    pub fn params(&self, delta: f64) -> Result<BlockParams> {
        if delta.is_nan() || delta <= 0.0 {
            return Err(Error::InvalidParams(format!("delta must be positive, got {delta}")));
        }
        let a_t = self.a_e / delta;
        let b_t = (self.a_e - self.m * (self.a_e - self.b_e)) / delta;
        BlockParams::new(self.n, self.k, self.a_e, self.b_e, a_t, b_t)
    }

    pub fn resolved_weight(&self) -> f64 {
        self.weight.unwrap_or(self.m / self.k as f64)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossoverRow {
    pub grid_index: usize,
    pub delta: f64,
    /// `delta / (m^2 n)`.
    pub criterion: f64,
    pub n: usize,
    pub k: usize,
    pub m: f64,
    pub a_e: f64,
    pub b_e: f64,
    pub a_t: f64,
    pub b_t: f64,
    pub weight: f64,
    pub edge_mean_r: f64,
    pub edge_median_r: f64,
    pub triangle_mean_r: f64,
    pub triangle_median_r: f64,
    pub weighted_mean_r: f64,
    pub weighted_median_r: f64,
    pub trials: usize,
    pub restarts: usize,
    pub master_seed: u64,
}

impl CrossoverRow {
    /// Median triangle rate minus median edge rate; negative favours triangles.
    pub fn diff(&self) -> f64 {
        self.triangle_median_r - self.edge_median_r
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossoverSummary {
    /// Log-interpolated delta where the median curves first cross; NaN if they never do.
    pub delta_star: f64,
    pub criterion_star: f64,
    /// Triangles strictly better at the smallest delta.
    pub low_end_triangles_better: bool,
    /// Edges strictly better at the largest delta.
    pub high_end_edges_better: bool,
    pub n: usize,
    pub m: f64,
    pub master_seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossoverReport {
    pub rows: Vec<CrossoverRow>,
    pub summary: CrossoverSummary,
}

/// Rates for edge-only, hyperedge-only and weighted clustering of one draw.
pub(crate) fn crossover_trial(
    p: &BlockParams,
    c: &CommunityAssignment,
    weight: f64,
    seed: u64,
    row_normalize: bool,
    opts: &ClusterOptions,
) -> Result<[f64; 3]> {
    let g = gen_nonuniform_hypergraph_sbm(p, c, seed)?;
    let a_e2 = g.dyadic_matrix();
    let a_t2 = g.hyperedge_motif_matrix();
    let a_w = weighted_hyperedge_matrix(&a_e2, &a_t2, weight)?;
    let mut out = [0.0; 3];
    for (slot, m) in out.iter_mut().zip([&a_e2, &a_t2, &a_w]) {
        *slot = misclustering_rate(c, &cluster_matrix(m, p.k, row_normalize, seed, opts)?)?;
    }
    Ok(out)
}

/// First sign change of `diff` from negative to non-negative, interpolated in `log delta`.
pub fn crossover_point(rows: &[CrossoverRow]) -> f64 {
    for w in rows.windows(2) {
        let (d0, d1) = (w[0].diff(), w[1].diff());
        if d0 < 0.0 && d1 >= 0.0 {
            let (l0, l1) = (w[0].delta.ln(), w[1].delta.ln());
            let t = d0 / (d0 - d1);
            return (l0 + t * (l1 - l0)).exp();
        }
    }
    f64::NAN
}

pub fn run_tradeoff_crossover(cfg: &CrossoverConfig, master_seed: u64, trials: usize) -> Result<CrossoverReport> {
    if cfg.deltas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams("deltas must be strictly increasing".into()));
    }
    let opts = ClusterOptions {
        restarts: cfg.restarts,
        ..ClusterOptions::default()
    };
    let c = CommunityAssignment::balanced(cfg.n, cfg.k)?;
    let weight = cfg.resolved_weight();
    let scale = cfg.m * cfg.m * cfg.n as f64;
    let rows = cfg
        .deltas
        .iter()
        .enumerate()
        .map(|(gi, &delta)| {
            let p = cfg.params(delta)?;
            let rates = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let seed = trial_seed(master_seed, "tradeoff_crossover", gi, t);
                    crossover_trial(&p, &c, weight, seed, cfg.row_normalize, &opts)
                })
                .collect::<Result<Vec<_>>>()?;
            let col = |i: usize| -> Vec<f64> { rates.iter().map(|r| r[i]).collect() };
            let (e, t, w) = (col(0), col(1), col(2));
            Ok(CrossoverRow {
                grid_index: gi,
                delta,
                criterion: delta / scale,
                n: cfg.n,
                k: cfg.k,
                m: cfg.m,
                a_e: cfg.a_e,
                b_e: cfg.b_e,
                a_t: p.a_t,
                b_t: p.b_t,
                weight,
                edge_mean_r: mean(&e),
                edge_median_r: median(&e),
                triangle_mean_r: mean(&t),
                triangle_median_r: median(&t),
                weighted_mean_r: mean(&w),
                weighted_median_r: median(&w),
                trials,
                restarts: cfg.restarts,
                master_seed,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let delta_star = crossover_point(&rows);
    let summary = CrossoverSummary {
        delta_star,
        criterion_star: delta_star / scale,
        low_end_triangles_better: rows.first().is_some_and(|r| r.diff() < 0.0),
        high_end_edges_better: rows.last().is_some_and(|r| r.diff() > 0.0),
        n: cfg.n,
        m: cfg.m,
        master_seed,
    };
    Ok(CrossoverReport { rows, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn row(delta: f64, t: f64, e: f64) -> CrossoverRow {
        CrossoverRow {
            grid_index: 0,
            delta,
            criterion: 0.0,
            n: 0,
            k: 2,
            m: 1.0,
            a_e: 0.0,
            b_e: 0.0,
            a_t: 0.0,
            b_t: 0.0,
            weight: 0.0,
            edge_mean_r: e,
            edge_median_r: e,
            triangle_mean_r: t,
            triangle_median_r: t,
            weighted_mean_r: 0.0,
            weighted_median_r: 0.0,
            trials: 1,
            restarts: 1,
            master_seed: 0,
        }
    }

    #[test]
    fn interpolates_in_log_space() {
        let rows = [row(10.0, 0.0, 0.2), row(100.0, 0.1, 0.2), row(1000.0, 0.3, 0.2), row(1e4, 0.0, 0.2)];
        assert_relative_eq!(crossover_point(&rows), 1000.0f64.powf(0.5) * 100.0f64.powf(0.5), max_relative = 1e-12);
        assert!(crossover_point(&rows[2..]).is_nan());
    }

    #[test]
    fn parameterisation_recovers_m() {
        let cfg = CrossoverConfig {
            n: 100,
            k: 2,
            m: 2.0,
            a_e: 10.0,
            b_e: 6.0,
            deltas: vec![4.0],
            weight: None,
            row_normalize: false,
            restarts: 1,
        };
        let p = cfg.params(4.0).unwrap();
        assert_relative_eq!(4.0 * (p.a_t - p.b_t) / (p.a_e - p.b_e), 2.0);
        assert_eq!(cfg.resolved_weight(), 1.0);
        assert!(cfg.params(0.0).is_err());
    }
}
