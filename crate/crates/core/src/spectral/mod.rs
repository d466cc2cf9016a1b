//! Spectral clustering: eigensolvers, Laplacian variants, k-means and the
//! six named pipelines.

mod cluster;
mod eigen;
mod kmeans;
mod laplacian;

pub use cluster::{
    apply_transform, base_matrix, cluster, cluster_matrix, cluster_with, weighted_hyperedge_matrix,
    BaseMatrix, ClusterMethod, ClusterOptions, Transform,
};
pub use eigen::{
    spectral_norm, top_k_abs_eigenpairs, top_k_abs_eigenpairs_with, EigenResult, EigenSolver,
    DEFAULT_TOL, DENSE_LIMIT,
};
pub use kmeans::{kmeans, kmeans_objective, KMeansResult, DEFAULT_RESTARTS};
pub use laplacian::{normalized_laplacian, regularized_laplacian, row_normalize, Tau};
