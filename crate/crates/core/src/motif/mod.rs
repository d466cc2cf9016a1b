//! Triangle motif matrices, their generative decomposition, and expected
//! motif matrices of the balanced block model.

mod decompose;
mod expected;
mod observed;

pub use decompose::{
    classify_triple, decompose_triangles, triangle_census, triangle_motif_generative,
    TriangleCensus, TriangleDecomposition, TripleIndicators,
};
pub use expected::{
    expected_ae2, expected_ae3, expected_at2, expected_matrix, lambda_min_ae2, lambda_min_ae3,
    lambda_min_at2, lambda_min_weighted, BlockExpectation, Diagonal, ExpectedMotif, LambdaMin,
};
pub use observed::{observed_triangle_matrix, triangle_motif_observed};

pub(crate) use decompose::for_each_projection_triangle;
