//! Graph, matrix and labeling types shared by every other module.

mod assignment;
mod graph;
mod matrix;
mod params;

pub use assignment::CommunityAssignment;
pub use graph::SuperimposedGraph;
pub(crate) use matrix::dot;
pub use matrix::SymmetricMatrix;
pub use params::BlockParams;

/// 0/1 adjacency of the observed graph.
pub fn simple_projection(g: &SuperimposedGraph) -> SymmetricMatrix {
    g.simple_projection()
}

/// `A_E`, the observed edge-count matrix.
pub fn multiplicity_matrix(g: &SuperimposedGraph) -> SymmetricMatrix {
    g.multiplicity_matrix()
}

pub fn degree_vector(m: &SymmetricMatrix) -> Vec<f64> {
    m.degree_vector()
}
