//! Plug-in estimates of the edge/hyperedge density ratio `δ` and the signal
//! ratio `m` of the non-uniform hypergraph SBM, and the edge-vs-triangle
//! decision rule built on them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph_model::{CommunityAssignment, SuperimposedGraph};
use crate::spectral::{cluster_matrix, ClusterOptions};

pub const DEFAULT_MARGIN: f64 = 0.1;

/// `n * mean edge degree / mean triangle degree`, read from the separately
/// observed dyadic edges and hyperedges.
pub fn estimate_delta(g: &SuperimposedGraph) -> Result<f64> {
    let edges = g.dyadic_edges().len() as f64;
    let hyper = g.hyperedges().len() as f64;
    if hyper == 0.0 {
        return Err(Error::UndefinedEstimate("no hyperedges, triangle degree is zero".into()));
    }
    // Row sums of A_E2 total 2|E|, those of A_T2 total 6|H|.
    Ok(g.n() as f64 * (2.0 * edges) / (6.0 * hyper))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EstimatedParams {
    pub a_e: f64,
    pub b_e: f64,
    pub a_t: f64,
    pub b_t: f64,
}

fn choose2(s: usize) -> f64 {
    let s = s as f64;
    s * (s - 1.0) / 2.0
}

fn choose3(s: usize) -> f64 {
    let s = s as f64;
    s * (s - 1.0) * (s - 2.0) / 6.0
}

fn check_labels(g: &SuperimposedGraph, labels: &CommunityAssignment) -> Result<Vec<usize>> {
    if labels.n() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: labels.n(),
        });
    }
    let sizes = labels.sizes();
    let usable = sizes.iter().filter(|&&s| s > 0).count();
    if usable < 2 || sizes.iter().any(|&s| s > 0 && s < 3) {
        return Err(Error::UndefinedEstimate(
            "need at least two clusters, each with three or more vertices".into(),
        ));
    }
    Ok(sizes)
}

fn ratio(count: usize, slots: f64, n: usize, what: &str) -> Result<f64> {
    if slots <= 0.0 {
        return Err(Error::UndefinedEstimate(format!("no {what} to estimate from")));
    }
    Ok(n as f64 * count as f64 / slots)
}

/// `(â_e, b̂_e)` from dyadic edges within and across the given clusters.
pub fn estimate_edge_params(g: &SuperimposedGraph, labels: &CommunityAssignment) -> Result<(f64, f64)> {
    let sizes = check_labels(g, labels)?;
    let n = g.n();
    let within_pairs: f64 = sizes.iter().map(|&s| choose2(s)).sum();
    let within = g
        .dyadic_edges()
        .iter()
        .filter(|&&(i, j)| labels.label(i as usize) == labels.label(j as usize))
        .count();
    let across = g.dyadic_edges().len() - within;
    Ok((
        ratio(within, within_pairs, n, "within-cluster pairs")?,
        ratio(across, choose2(n) - within_pairs, n, "cross-cluster pairs")?,
    ))
}

/// `(â_t, b̂_t)` from hyperedges inside one cluster and all others.
pub fn estimate_triangle_params(g: &SuperimposedGraph, labels: &CommunityAssignment) -> Result<(f64, f64)> {
    let sizes = check_labels(g, labels)?;
    let n = g.n();
    let same_triples: f64 = sizes.iter().map(|&s| choose3(s)).sum();
    let same = g
        .hyperedges()
        .iter()
        .filter(|h| {
            let l = labels.label(h[0] as usize);
            labels.label(h[1] as usize) == l && labels.label(h[2] as usize) == l
        })
        .count();
    let rest = g.hyperedges().len() - same;
    Ok((
        ratio(same, same_triples, n, "within-cluster triples")?,
        ratio(rest, choose3(n) - same_triples, n, "mixed triples")?,
    ))
}

pub fn estimate_block_params(g: &SuperimposedGraph, labels: &CommunityAssignment) -> Result<EstimatedParams> {
    estimate_block_params_split(g, labels, labels)
}

/// Edge parameters from `edge_labels` and hyperedge parameters from `triangle_labels`.
pub fn estimate_block_params_split(
    g: &SuperimposedGraph,
    edge_labels: &CommunityAssignment,
    triangle_labels: &CommunityAssignment,
) -> Result<EstimatedParams> {
    let (a_e, b_e) = estimate_edge_params(g, edge_labels)?;
    let (a_t, b_t) = estimate_triangle_params(g, triangle_labels)?;
    Ok(EstimatedParams { a_e, b_e, a_t, b_t })
}

/// `δ̂ (â_t - b̂_t) / (â_e - b̂_e)`.
pub fn estimate_m(delta_hat: f64, p: &EstimatedParams) -> Result<f64> {
    let gap = p.a_e - p.b_e;
    if gap == 0.0 {
        return Err(Error::UndefinedEstimate("edge parameters coincide, m is undefined".into()));
    }
    Ok(delta_hat * (p.a_t - p.b_t) / gap)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Recommendation {
    Edges,
    Triangles,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TradeoffReport {
    pub delta_hat: f64,
    pub m_hat: f64,
    /// `δ̂ / (m̂² n)`; infinite when `m̂ = 0`.
    pub criterion: f64,
    pub recommendation: Recommendation,
    /// Set when `m̂ = 0` and the criterion is meaningless.
    pub degenerate: bool,
}

pub fn tradeoff_decision(delta_hat: f64, m_hat: f64, n: usize) -> TradeoffReport {
    tradeoff_decision_with_margin(delta_hat, m_hat, n, DEFAULT_MARGIN)
}

pub fn tradeoff_decision_with_margin(delta_hat: f64, m_hat: f64, n: usize, margin: f64) -> TradeoffReport {
    if m_hat == 0.0 || n == 0 {
        return TradeoffReport {
            delta_hat,
            m_hat,
            criterion: f64::INFINITY,
            recommendation: Recommendation::Indeterminate,
            degenerate: true,
        };
    }
    let criterion = delta_hat / (m_hat * m_hat * n as f64);
    let recommendation = if criterion < 1.0 - margin {
        Recommendation::Triangles
    } else if criterion > 1.0 + margin {
        Recommendation::Edges
    } else {
        Recommendation::Indeterminate
    };
    TradeoffReport {
        delta_hat,
        m_hat,
        criterion,
        recommendation,
        degenerate: false,
    }
}

/// Which estimated partition feeds the block-rate estimates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelSource {
    /// Clusters of the dyadic adjacency for both rate pairs.
    Edges,
    /// Clusters of the hyperedge motif matrix for both rate pairs.
    Triangles,
    /// Each rate pair from the clusters of its own matrix.
    Split,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlugInEstimate {
    pub params: EstimatedParams,
    pub delta_hat: f64,
    pub m_hat: f64,
    pub report: TradeoffReport,
}

/// Full plug-in pipeline without ground truth: cluster, estimate block rates,
/// then `δ̂`, `m̂` and the decision.
pub fn plug_in_estimate(
    g: &SuperimposedGraph,
    k: usize,
    source: LabelSource,
    seed: u64,
    opts: &ClusterOptions,
) -> Result<PlugInEstimate> {
    let by_edges = || cluster_matrix(&g.dyadic_matrix(), k, false, seed, opts);
    let by_triangles = || cluster_matrix(&g.hyperedge_motif_matrix(), k, false, seed, opts);
    let params = match source {
        LabelSource::Edges => estimate_block_params(g, &by_edges()?)?,
        LabelSource::Triangles => estimate_block_params(g, &by_triangles()?)?,
        LabelSource::Split => estimate_block_params_split(g, &by_edges()?, &by_triangles()?)?,
    };
    let delta_hat = estimate_delta(g)?;
    let m_hat = estimate_m(delta_hat, &params)?;
    Ok(PlugInEstimate {
        params,
        delta_hat,
        m_hat,
        report: tradeoff_decision(delta_hat, m_hat, g.n()),
    })
}
