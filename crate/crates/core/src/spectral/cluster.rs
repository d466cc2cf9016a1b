use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_model::{CommunityAssignment, SuperimposedGraph, SymmetricMatrix};
use crate::motif::observed_triangle_matrix;

use super::eigen::{top_k_abs_eigenpairs, DEFAULT_TOL};
use super::kmeans::{kmeans, DEFAULT_RESTARTS};
use super::laplacian::{normalized_laplacian, regularized_laplacian, row_normalize, Tau};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseMatrix {
    /// Multiplicity adjacency `A_E`.
    EdgeAdjacency,
    /// `A_E + w A_T` with `A_T` counted on the simple projection.
    WeightedEdgeTriangle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    None,
    NormalizedLaplacian,
    /// Degrees inflated by the mean degree.
    RegularizedLaplacian,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterMethod {
    pub base: BaseMatrix,
    pub transform: Transform,
    pub weight: f64,
    pub row_normalize: bool,
}

impl ClusterMethod {
    pub const NAMES: [&'static str; 6] = ["spA", "hospA", "spL", "hospL", "rspL", "horspL"];

    pub const fn new(base: BaseMatrix, transform: Transform) -> Self {
        Self {
            base,
            transform,
            weight: 1.0,
            row_normalize: true,
        }
    }

    pub const SP_A: Self = Self::new(BaseMatrix::EdgeAdjacency, Transform::None);
    pub const SP_L: Self = Self::new(BaseMatrix::EdgeAdjacency, Transform::NormalizedLaplacian);
    pub const RSP_L: Self = Self::new(BaseMatrix::EdgeAdjacency, Transform::RegularizedLaplacian);
    pub const HOSP_A: Self = Self::new(BaseMatrix::WeightedEdgeTriangle, Transform::None);
    pub const HOSP_L: Self = Self::new(BaseMatrix::WeightedEdgeTriangle, Transform::NormalizedLaplacian);
    pub const HORSP_L: Self = Self::new(BaseMatrix::WeightedEdgeTriangle, Transform::RegularizedLaplacian);

    /// The six named variants in table order.
    pub fn named() -> [(&'static str, Self); 6] {
        [
            ("spA", Self::SP_A),
            ("hospA", Self::HOSP_A),
            ("spL", Self::SP_L),
            ("hospL", Self::HOSP_L),
            ("rspL", Self::RSP_L),
            ("horspL", Self::HORSP_L),
        ]
    }

    pub fn name(&self) -> Option<&'static str> {
        Self::named()
            .into_iter()
            .find(|(_, m)| m.base == self.base && m.transform == self.transform)
            .map(|(n, _)| n)
    }

    pub fn with_weight(mut self, w: f64) -> Self {
        self.weight = w;
        self
    }

    pub fn with_row_normalize(mut self, on: bool) -> Self {
        self.row_normalize = on;
        self
    }
}

impl fmt::Display for ClusterMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(n) => f.write_str(n),
            None => write!(f, "{:?}", self),
        }
    }
}

impl FromStr for ClusterMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::named()
            .into_iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(s))
            .map(|(_, m)| m)
            .ok_or_else(|| {
                Error::InvalidParams(format!(
                    "unknown method {s:?}; expected one of {}",
                    Self::NAMES.join(", ")
                ))
            })
    }
}

/// Knobs shared by every clustering call.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClusterOptions {
    pub restarts: usize,
    pub tol: f64,
}

impl Default for ClusterOptions {
    fn default() -> Self {
        Self {
            restarts: DEFAULT_RESTARTS,
            tol: DEFAULT_TOL,
        }
    }
}

/// `a_edge + w a_tri`.
pub fn weighted_hyperedge_matrix(
    a_edge: &SymmetricMatrix,
    a_tri: &SymmetricMatrix,
    w: f64,
) -> Result<SymmetricMatrix> {
    if !w.is_finite() || w < 0.0 {
        return Err(Error::InvalidParams(format!("weight {w} must be finite and >= 0")));
    }
    a_edge.add_scaled(a_tri, w)
}

/// Base matrix of `method` before any transform.
pub fn base_matrix(g: &SuperimposedGraph, method: &ClusterMethod) -> Result<SymmetricMatrix> {
    let a_e = g.multiplicity_matrix();
    match method.base {
        BaseMatrix::EdgeAdjacency => Ok(a_e),
        BaseMatrix::WeightedEdgeTriangle => {
            weighted_hyperedge_matrix(&a_e, &observed_triangle_matrix(g), method.weight)
        }
    }
}

pub fn apply_transform(m: &SymmetricMatrix, t: Transform) -> Result<SymmetricMatrix> {
    match t {
        Transform::None => Ok(m.clone()),
        Transform::NormalizedLaplacian => normalized_laplacian(m),
        Transform::RegularizedLaplacian => regularized_laplacian(m, Tau::MeanDegree),
    }
}

/// Spectral clustering of an arbitrary symmetric matrix: top-`k` eigenvectors
/// by absolute eigenvalue, optional row normalization, then k-means.
pub fn cluster_matrix(
    m: &SymmetricMatrix,
    k: usize,
    row_norm: bool,
    seed: u64,
    opts: &ClusterOptions,
) -> Result<CommunityAssignment> {
    let eig = top_k_abs_eigenpairs(m, k, opts.tol)?;
    let points = if row_norm { row_normalize(&eig.vectors) } else { eig.vectors };
    Ok(kmeans(&points, k, opts.restarts, seed)?.assignment)
}

pub fn cluster(
    g: &SuperimposedGraph,
    method: &ClusterMethod,
    k: usize,
    seed: u64,
) -> Result<CommunityAssignment> {
    cluster_with(g, method, k, seed, &ClusterOptions::default())
}

pub fn cluster_with(
    g: &SuperimposedGraph,
    method: &ClusterMethod,
    k: usize,
    seed: u64,
    opts: &ClusterOptions,
) -> Result<CommunityAssignment> {
    let m = apply_transform(&base_matrix(g, method)?, method.transform)?;
    cluster_matrix(&m, k, method.row_normalize, seed, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cliques(size: usize) -> SuperimposedGraph {
        let mut edges = Vec::new();
        for off in [0, size] {
            for i in 0..size {
                for j in (i + 1)..size {
                    edges.push((off + i, off + j));
                }
            }
        }
        SuperimposedGraph::from_edges(2 * size, edges).unwrap()
    }

    #[test]
    fn named_variants_round_trip() {
        for (name, m) in ClusterMethod::named() {
            assert_eq!(name.parse::<ClusterMethod>().unwrap(), m);
            assert_eq!(m.to_string(), name);
            assert!(m.row_normalize);
        }
        assert!("nope".parse::<ClusterMethod>().is_err());
    }

    #[test]
    fn two_cliques_are_recovered_by_every_method() {
        let g = two_cliques(10);
        for (_, m) in ClusterMethod::named() {
            let c = cluster(&g, &m, 2, 1).unwrap();
            let l = c.labels();
            assert!(l[..10].iter().all(|&x| x == l[0]));
            assert!(l[10..].iter().all(|&x| x == l[10]));
            assert_ne!(l[0], l[10]);
        }
    }

    #[test]
    fn weighted_matrix_edge_cases() {
        let a = SymmetricMatrix::identity(3).unwrap();
        let b = SymmetricMatrix::from_upper_fn(3, |_, _| 2.0).unwrap();
        assert_eq!(weighted_hyperedge_matrix(&a, &b, 0.0).unwrap(), a);
        assert_eq!(weighted_hyperedge_matrix(&a, &b, 1.0).unwrap(), a.try_add(&b).unwrap());
        assert!(weighted_hyperedge_matrix(&a, &b, -0.5).is_err());
        let c = SymmetricMatrix::identity(4).unwrap();
        assert!(weighted_hyperedge_matrix(&a, &c, 1.0).is_err());
    }
}
