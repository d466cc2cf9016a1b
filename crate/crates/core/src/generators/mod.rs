//! Random graph samplers: classical SBM, 3-uniform hypergraph SBM, the
//! superimposed SBM, the non-uniform hypergraph SBM and the general
//! inhomogeneous superimposed model.
//!
//! All samplers are pure functions of their parameters and a `u64` seed.

mod growth;
mod provider;
mod rng;

use rand::Rng;

pub use growth::{check_growth_window, growth_window, GrowthReport, GrowthWindow};
pub use provider::{BlockProvider, ConstantProvider, ProbabilityProvider};
pub use rng::{derive_seed, stream_rng, tag, Stream};
pub(crate) use rng::for_each_success;

use crate::error::{Error, Result};
use crate::graph_model::{BlockParams, CommunityAssignment, SuperimposedGraph};

pub fn gen_balanced_assignment(n: usize, k: usize) -> Result<CommunityAssignment> {
    CommunityAssignment::balanced(n, k)
}

fn check_inputs(p: &BlockParams, c: &CommunityAssignment) -> Result<()> {
    p.validate()?;
    if c.n() != p.n {
        return Err(Error::DimensionMismatch {
            expected: p.n,
            found: c.n(),
        });
    }
    if c.k() != p.k {
        return Err(Error::InvalidParams(format!(
            "assignment has k={} but parameters have k={}",
            c.k(),
            p.k
        )));
    }
    Ok(())
}

/// One Bernoulli draw per pair in lexicographic order.
fn sample_dyadic(n: usize, seed: u64, mut prob: impl FnMut(usize, usize) -> f64) -> Vec<(u32, u32)> {
    let mut rng = stream_rng(seed, Stream::Dyadic);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let p = prob(i, j);
            if rng.gen::<f64>() < p {
                edges.push((i as u32, j as u32));
            }
        }
    }
    edges
}

/// Hyperedges of the block model. For each pair `i < j` the candidates
/// `k > j` are split by block membership and each group is scanned with
/// geometric jumps, which gives the same law as one Bernoulli draw per triple.
fn sample_block_hyperedges(p: &BlockParams, c: &CommunityAssignment, seed: u64) -> Vec<[u32; 3]> {
    let n = p.n;
    let (p_in, p_out) = (p.p_in_triangle(), p.p_out_triangle());
    let mut rng = stream_rng(seed, Stream::Triadic);
    let members = c.members();
    let mut position = vec![0usize; n];
    for list in &members {
        for (idx, &v) in list.iter().enumerate() {
            position[v] = idx;
        }
    }
    let mut out = Vec::new();
    if p_in <= 0.0 && p_out <= 0.0 {
        return out;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let (ci, cj) = (c.label(i), c.label(j));
            if ci == cj {
                let own = &members[ci][position[j] + 1..];
                for_each_success(own.len(), p_in, &mut rng, |x| {
                    out.push([i as u32, j as u32, own[x] as u32]);
                });
                for (b, list) in members.iter().enumerate() {
                    if b == ci {
                        continue;
                    }
                    let tail = &list[list.partition_point(|&v| v <= j)..];
                    for_each_success(tail.len(), p_out, &mut rng, |x| {
                        out.push([i as u32, j as u32, tail[x] as u32]);
                    });
                }
            } else {
                for_each_success(n - j - 1, p_out, &mut rng, |x| {
                    out.push([i as u32, j as u32, (j + 1 + x) as u32]);
                });
            }
        }
    }
    out
}

fn dyadic_block_edges(p: &BlockParams, c: &CommunityAssignment, seed: u64) -> Vec<(u32, u32)> {
    let (p_in, p_out) = (p.p_in_edge(), p.p_out_edge());
    sample_dyadic(p.n, seed, |i, j| if c.label(i) == c.label(j) { p_in } else { p_out })
}

/// Classical SBM: dyadic edges only.
pub fn gen_sbm(p: &BlockParams, c: &CommunityAssignment, seed: u64) -> Result<SuperimposedGraph> {
    check_inputs(p, c)?;
    let edges = dyadic_block_edges(p, c, seed);
    Ok(SuperimposedGraph::from_parts(p.n, edges, Vec::new()))
}

/// 3-uniform hypergraph SBM: hyperedges only.
pub fn gen_hypergraph_3uniform(
    p: &BlockParams,
    c: &CommunityAssignment,
    seed: u64,
) -> Result<SuperimposedGraph> {
    check_inputs(p, c)?;
    let triples = sample_block_hyperedges(p, c, seed);
    Ok(SuperimposedGraph::from_parts(p.n, Vec::new(), triples))
}

/// Superimposed SBM: an SBM draw and an independent hypergraph SBM draw on
/// the same vertices. The dyadic part equals `gen_sbm(p, c, seed)` and the
/// triadic part equals `gen_hypergraph_3uniform(p, c, seed)`.
pub fn gen_supsbm(p: &BlockParams, c: &CommunityAssignment, seed: u64) -> Result<SuperimposedGraph> {
    check_inputs(p, c)?;
    let edges = dyadic_block_edges(p, c, seed);
    let triples = sample_block_hyperedges(p, c, seed);
    Ok(SuperimposedGraph::from_parts(p.n, edges, triples))
}

/// Non-uniform hypergraph SBM. The sampling law is that of [`gen_supsbm`];
/// the difference is that consumers read the dyadic edges and hyperedges as
/// separately observed (`dyadic_matrix` and `hyperedge_motif_matrix`).
pub fn gen_nonuniform_hypergraph_sbm(
    p: &BlockParams,
    c: &CommunityAssignment,
    seed: u64,
) -> Result<SuperimposedGraph> {
    gen_supsbm(p, c, seed)
}

fn checked_prob(p: f64, what: impl FnOnce() -> String) -> Result<f64> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(Error::InvalidParams(format!("{} = {p} is not in [0, 1]", what())))
    }
}

/// General inhomogeneous superimposed graph: one Bernoulli draw per pair and per triple.
pub fn gen_inhomogeneous(
    n: usize,
    pp: &dyn ProbabilityProvider,
    seed: u64,
) -> Result<SuperimposedGraph> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be positive".into()));
    }
    let mut edges = Vec::new();
    let mut rng = stream_rng(seed, Stream::Dyadic);
    for i in 0..n {
        for j in (i + 1)..n {
            let p = checked_prob(pp.edge_prob(i, j), || format!("edge probability ({i},{j})"))?;
            if rng.gen::<f64>() < p {
                edges.push((i as u32, j as u32));
            }
        }
    }
    let mut triples = Vec::new();
    let mut rng = stream_rng(seed, Stream::Triadic);
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let p = checked_prob(pp.triangle_prob(i, j, k), || {
                    format!("triangle probability ({i},{j},{k})")
                })?;
                if rng.gen::<f64>() < p {
                    triples.push([i as u32, j as u32, k as u32]);
                }
            }
        }
    }
    Ok(SuperimposedGraph::from_parts(n, edges, triples))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, k: usize, a_e: f64, b_e: f64, a_t: f64, b_t: f64) -> (BlockParams, CommunityAssignment) {
        (
            BlockParams::new(n, k, a_e, b_e, a_t, b_t).unwrap(),
            CommunityAssignment::balanced(n, k).unwrap(),
        )
    }

    #[test]
    fn zero_and_full_probabilities() {
        let (p, c) = params(12, 2, 0.0, 0.0, 0.0, 0.0);
        let g = gen_supsbm(&p, &c, 3).unwrap();
        assert!(g.dyadic_edges().is_empty() && g.hyperedges().is_empty());

        let (p, c) = params(12, 3, 12.0, 12.0, 12.0, 12.0);
        assert_eq!(gen_sbm(&p, &c, 3).unwrap().dyadic_edges().len(), 66);
        assert_eq!(gen_hypergraph_3uniform(&p, &c, 3).unwrap().hyperedges().len(), 220);
    }

    #[test]
    fn supsbm_marginals_match_standalone_generators() {
        let (p, c) = params(30, 3, 6.0, 2.0, 3.0, 1.0);
        for seed in 0..5 {
            let s = gen_supsbm(&p, &c, seed).unwrap();
            let e = gen_sbm(&p, &c, seed).unwrap();
            let t = gen_hypergraph_3uniform(&p, &c, seed).unwrap();
            assert_eq!(s.dyadic_edges(), e.dyadic_edges());
            assert_eq!(s.hyperedges(), t.hyperedges());
            assert!(e.hyperedges().is_empty());
            assert!(t.dyadic_edges().is_empty());
        }
    }

    #[test]
    fn supsbm_degenerates_to_components() {
        let (p, c) = params(30, 3, 6.0, 2.0, 0.0, 0.0);
        assert_eq!(gen_supsbm(&p, &c, 9).unwrap(), gen_sbm(&p, &c, 9).unwrap());
        let (p, c) = params(30, 3, 0.0, 0.0, 3.0, 1.0);
        assert_eq!(
            gen_supsbm(&p, &c, 9).unwrap(),
            gen_hypergraph_3uniform(&p, &c, 9).unwrap()
        );
        assert_eq!(
            gen_nonuniform_hypergraph_sbm(&p, &c, 9).unwrap(),
            gen_supsbm(&p, &c, 9).unwrap()
        );
    }

    #[test]
    fn deterministic_given_seed() {
        let (p, c) = params(40, 2, 8.0, 2.0, 4.0, 1.0);
        assert_eq!(gen_supsbm(&p, &c, 17).unwrap(), gen_supsbm(&p, &c, 17).unwrap());
        assert_ne!(gen_supsbm(&p, &c, 17).unwrap(), gen_supsbm(&p, &c, 18).unwrap());
    }

    #[test]
    fn double_edges_appear_where_processes_overlap() {
        let (p, c) = params(10, 1, 10.0, 10.0, 10.0, 10.0);
        let g = gen_supsbm(&p, &c, 0).unwrap();
        assert_eq!(g.multiplicity(0, 1), 2);
    }

    #[test]
    fn mismatched_assignment_rejected() {
        let p = BlockParams::new(12, 2, 1.0, 1.0, 1.0, 1.0).unwrap();
        let c = CommunityAssignment::balanced(12, 3).unwrap();
        assert!(gen_sbm(&p, &c, 0).is_err());
        let c = CommunityAssignment::balanced(6, 2).unwrap();
        assert!(gen_supsbm(&p, &c, 0).is_err());
    }

    #[test]
    fn inhomogeneous_zero_and_constant_providers() {
        let zero = ConstantProvider { p_e: 0.0, p_t: 0.0 };
        let g = gen_inhomogeneous(8, &zero, 1).unwrap();
        assert!(g.dyadic_edges().is_empty() && g.hyperedges().is_empty());
        let full = ConstantProvider { p_e: 1.0, p_t: 1.0 };
        let g = gen_inhomogeneous(6, &full, 1).unwrap();
        assert_eq!(g.dyadic_edges().len(), 15);
        assert_eq!(g.hyperedges().len(), 20);
    }

    #[test]
    fn inhomogeneous_rejects_out_of_range() {
        let bad = ConstantProvider { p_e: 1.5, p_t: 0.0 };
        assert!(matches!(gen_inhomogeneous(4, &bad, 0), Err(Error::InvalidParams(_))));
        let bad = ConstantProvider { p_e: 0.5, p_t: -0.1 };
        assert!(matches!(gen_inhomogeneous(4, &bad, 0), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn block_provider_dyadic_part_is_identical_to_sbm() {
        let (p, c) = params(24, 2, 8.0, 2.0, 2.0, 1.0);
        let provider = BlockProvider {
            params: &p,
            assignment: &c,
        };
        let g = gen_inhomogeneous(24, &provider, 5).unwrap();
        assert_eq!(g.dyadic_edges(), gen_sbm(&p, &c, 5).unwrap().dyadic_edges());
    }
}
