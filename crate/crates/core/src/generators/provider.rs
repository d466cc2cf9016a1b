use crate::graph_model::{BlockParams, CommunityAssignment};

/// Edge and hyperedge probabilities of an inhomogeneous superimposed model,
/// given as functions so the `n^3` hyperedge tensor is never materialized.
/// Implementations must be symmetric under argument permutation.
pub trait ProbabilityProvider {
    fn edge_prob(&self, i: usize, j: usize) -> f64;
    fn triangle_prob(&self, i: usize, j: usize, k: usize) -> f64;
}

/// Same probability for every pair and every triple.
#[derive(Clone, Copy, Debug)]
pub struct ConstantProvider {
    pub p_e: f64,
    pub p_t: f64,
}

impl ProbabilityProvider for ConstantProvider {
    fn edge_prob(&self, _: usize, _: usize) -> f64 {
        self.p_e
    }

    fn triangle_prob(&self, _: usize, _: usize, _: usize) -> f64 {
        self.p_t
    }
}

/// Block-constant probabilities of the balanced block model.
#[derive(Clone, Copy, Debug)]
pub struct BlockProvider<'a> {
    pub params: &'a BlockParams,
    pub assignment: &'a CommunityAssignment,
}

impl ProbabilityProvider for BlockProvider<'_> {
    fn edge_prob(&self, i: usize, j: usize) -> f64 {
        if self.assignment.label(i) == self.assignment.label(j) {
            self.params.p_in_edge()
        } else {
            self.params.p_out_edge()
        }
    }

    fn triangle_prob(&self, i: usize, j: usize, k: usize) -> f64 {
        let c = self.assignment;
        if c.label(i) == c.label(j) && c.label(j) == c.label(k) {
            self.params.p_in_triangle()
        } else {
            self.params.p_out_triangle()
        }
    }
}
