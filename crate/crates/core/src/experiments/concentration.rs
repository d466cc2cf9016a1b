use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::evaluation::{concentration_ratio, normalizers, ConcentrationNormalizer, Exponent};
use crate::generators::{check_growth_window, gen_supsbm};
use crate::graph_model::{BlockParams, CommunityAssignment, SuperimposedGraph, SymmetricMatrix};
use crate::motif::{
    classify_triple, decompose_triangles, for_each_projection_triangle, triangle_motif_generative, BlockExpectation,
    Diagonal, ExpectedMotif,
};

use super::{max, mean, median, trial_seed};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationConfig {
    pub n_values: Vec<usize>,
    pub k: usize,
    pub a_e: f64,
    pub b_e: f64,
    pub a_t: f64,
    pub b_t: f64,
    /// Size of the independent batch estimating expectations without a closed form.
    #[serde(default = "default_expectation_trials")]
    pub expectation_trials: usize,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
}

fn default_expectation_trials() -> usize {
    200
}

fn default_epsilon() -> f64 {
    0.05
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConcentrationRow {
    pub grid_index: usize,
    pub n: usize,
    pub component: &'static str,
    pub normalizer_name: &'static str,
    pub normalizer: f64,
    pub exponent: Exponent,
    pub mean_ratio: f64,
    pub median_ratio: f64,
    pub max_ratio: f64,
    pub trials: usize,
    pub expectation_trials: usize,
    pub k: usize,
    pub a_e: f64,
    pub b_e: f64,
    pub a_t: f64,
    pub b_t: f64,
    pub epsilon: f64,
    pub edge_lower: bool,
    pub edge_upper: bool,
    pub triangle_lower: bool,
    pub triangle_upper: bool,
    pub coupling: bool,
    pub master_seed: u64,
}

const COMPONENTS: [&str; 6] = ["A_T2", "A_E3", "A_T3", "A_T2E", "A_TE2", "A_T"];

fn normalizer_for(component: &str, c: &ConcentrationNormalizer) -> (&'static str, f64, Exponent) {
    match component {
        "A_T2" | "A_T" => ("delta_t", c.delta_t, Exponent::Half),
        "A_E3" => ("d_e3", c.d_e3, Exponent::Half),
        "A_T3" => ("delta_t3", c.delta_t3, Exponent::One),
        "A_T2E" => ("delta_t2e", c.delta_t2e, Exponent::One),
        _ => ("delta_te2", c.delta_te2, Exponent::One),
    }
}

/// Within/across entry sums of the three imposed-triangle classes.
#[derive(Clone, Copy, Default)]
struct BlockSums {
    within: [f64; 3],
    across: [f64; 3],
}

impl BlockSums {
    fn add(mut self, o: Self) -> Self {
        for c in 0..3 {
            self.within[c] += o.within[c];
            self.across[c] += o.across[c];
        }
        self
    }
}

fn imposed_block_sums(g: &SuperimposedGraph, c: &CommunityAssignment) -> BlockSums {
    let mut s = BlockSums::default();
    for_each_projection_triangle(g, |i, j, k| {
        let ind = classify_triple(g, i, j, k);
        let vals = [ind.t3, ind.t2e, ind.te2];
        if vals.iter().all(|&v| v == 0) {
            return;
        }
        for (a, b) in [(i, j), (j, k), (i, k)] {
            let slot = if c.label(a) == c.label(b) { &mut s.within } else { &mut s.across };
            for (x, v) in slot.iter_mut().zip(vals) {
                *x += f64::from(v);
            }
        }
    });
    s
}

/// Expected matrices of every component, from closed forms where the model
/// admits them and from an independent Monte Carlo batch otherwise.
fn expectations(
    p: &BlockParams,
    c: &CommunityAssignment,
    trials: usize,
    seed_of: impl Fn(usize) -> u64 + Sync,
) -> Result<Vec<SymmetricMatrix>> {
    let sums = (0..trials)
        .into_par_iter()
        .map(|t| Ok(imposed_block_sums(&gen_supsbm(p, c, seed_of(t))?, c)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(BlockSums::default(), BlockSums::add);
    let s = p.block_size() as f64;
    let n = p.n as f64;
    let within_pairs = p.k as f64 * s * (s - 1.0) / 2.0;
    let across_pairs = n * (n - 1.0) / 2.0 - within_pairs;
    let denom = |pairs: f64| if pairs > 0.0 { pairs * trials as f64 } else { 1.0 };
    let mut out = vec![
        BlockExpectation::of(ExpectedMotif::HyperedgeT2, p).matrix(c, Diagonal::Zero)?,
        BlockExpectation::of(ExpectedMotif::EdgeTriangleE3, p).matrix(c, Diagonal::Zero)?,
    ];
    for cls in 0..3 {
        let e = BlockExpectation {
            within: sums.within[cls] / denom(within_pairs),
            across: sums.across[cls] / denom(across_pairs),
        };
        out.push(e.matrix(c, Diagonal::Zero)?);
    }
    let mut total = out[0].clone();
    for m in &out[1..] {
        total.accumulate(m)?;
    }
    out.push(total);
    Ok(out)
}

pub fn run_concentration_scaling(
    cfg: &ConcentrationConfig,
    master_seed: u64,
    trials: usize,
) -> Result<Vec<ConcentrationRow>> {
    let mut rows = Vec::new();
    for (gi, &n) in cfg.n_values.iter().enumerate() {
        let p = BlockParams::new(n, cfg.k, cfg.a_e, cfg.b_e, cfg.a_t, cfg.b_t)?;
        let c = CommunityAssignment::balanced(n, cfg.k)?;
        let window = check_growth_window(&p, cfg.epsilon);
        let norms = normalizers(n, p.p_e_max(), p.p_t_max())?;
        let expected = expectations(&p, &c, cfg.expectation_trials, |t| {
            trial_seed(master_seed, "concentration_scaling/expectation", gi, t)
        })?;
        let ratios: Vec<Vec<f64>> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let g = gen_supsbm(&p, &c, trial_seed(master_seed, "concentration_scaling", gi, t))?;
                let d = decompose_triangles(&g);
                let a_t = triangle_motif_generative(&d)?;
                let observed = [&d.a_t2, &d.a_e3, &d.a_t3, &d.a_t2e, &d.a_te2, &a_t];
                observed
                    .iter()
                    .zip(&expected)
                    .zip(COMPONENTS)
                    .map(|((x, ex), name)| {
                        let (_, value, exponent) = normalizer_for(name, &norms);
                        concentration_ratio(x, ex, value, exponent)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        for (ci, component) in COMPONENTS.into_iter().enumerate() {
            let r: Vec<f64> = ratios.iter().map(|t| t[ci]).collect();
            let (normalizer_name, normalizer, exponent) = normalizer_for(component, &norms);
            rows.push(ConcentrationRow {
                grid_index: gi,
                n,
                component,
                normalizer_name,
                normalizer,
                exponent,
                mean_ratio: mean(&r),
                median_ratio: median(&r),
                max_ratio: max(&r),
                trials,
                expectation_trials: cfg.expectation_trials,
                k: cfg.k,
                a_e: cfg.a_e,
                b_e: cfg.b_e,
                a_t: cfg.a_t,
                b_t: cfg.b_t,
                epsilon: cfg.epsilon,
                edge_lower: window.edge_lower,
                edge_upper: window.edge_upper,
                triangle_lower: window.triangle_lower,
                triangle_upper: window.triangle_upper,
                coupling: window.coupling,
                master_seed,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homogeneous_small_case_is_finite() {
        let cfg = ConcentrationConfig {
            n_values: vec![60],
            k: 1,
            a_e: 5.0,
            b_e: 5.0,
            a_t: 0.5,
            b_t: 0.5,
            expectation_trials: 20,
            epsilon: 0.05,
        };
        let rows = run_concentration_scaling(&cfg, 1, 3).unwrap();
        assert_eq!(rows.len(), 6);
        for r in &rows {
            assert!(r.mean_ratio.is_finite() && r.max_ratio >= r.median_ratio, "{r:?}");
        }
    }

    #[test]
    fn block_sums_match_decomposition_totals() {
        let p = BlockParams::new(30, 2, 8.0, 3.0, 2.0, 1.0).unwrap();
        let c = CommunityAssignment::balanced(30, 2).unwrap();
        let g = gen_supsbm(&p, &c, 5).unwrap();
        let s = imposed_block_sums(&g, &c);
        let d = decompose_triangles(&g);
        for (cls, m) in [&d.a_t3, &d.a_t2e, &d.a_te2].into_iter().enumerate() {
            let total: f64 = m.as_slice().iter().sum::<f64>() / 2.0;
            assert_eq!(s.within[cls] + s.across[cls], total);
        }
    }
}
