//! Misclustering rate, spectral-norm concentration ratios and the
//! normalizing quantities of the concentration bounds.

use itertools::Itertools;
use pathfinding::kuhn_munkres::kuhn_munkres;
use pathfinding::matrix::Matrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph_model::{CommunityAssignment, SymmetricMatrix};
use crate::spectral::spectral_norm;

/// Label count up to which [`misclustering_rate`] enumerates permutations.
pub const ENUMERATION_LIMIT: usize = 8;

/// `confusion[e][t]` counts vertices with estimated label `e` and true label `t`,
/// padded to a square matrix.
fn confusion(truth: &CommunityAssignment, est: &CommunityAssignment) -> Result<Vec<Vec<i64>>> {
    if truth.n() != est.n() {
        return Err(Error::DimensionMismatch {
            expected: truth.n(),
            found: est.n(),
        });
    }
    let k = truth.k().max(est.k());
    let mut c = vec![vec![0i64; k]; k];
    for (&t, &e) in truth.labels().iter().zip(est.labels()) {
        c[e][t] += 1;
    }
    Ok(c)
}

fn best_agreement_enumerated(c: &[Vec<i64>]) -> i64 {
    let k = c.len();
    (0..k)
        .permutations(k)
        .map(|perm| perm.iter().enumerate().map(|(e, &t)| c[e][t]).sum::<i64>())
        .max()
        .unwrap_or(0)
}

fn best_agreement_assignment(c: &[Vec<i64>]) -> i64 {
    if c.is_empty() {
        return 0;
    }
    let weights = Matrix::from_rows(c.iter().cloned()).expect("square confusion matrix");
    kuhn_munkres(&weights).0
}

/// Misclustering count by enumerating every label permutation.
pub fn misclustered_count_enumerated(truth: &CommunityAssignment, est: &CommunityAssignment) -> Result<usize> {
    let c = confusion(truth, est)?;
    if c.len() > ENUMERATION_LIMIT {
        return Err(Error::InvalidParams(format!(
            "enumeration supports at most {ENUMERATION_LIMIT} labels, got {}",
            c.len()
        )));
    }
    Ok(truth.n() - best_agreement_enumerated(&c) as usize)
}

/// Misclustering count via an optimal assignment (Kuhn-Munkres) on the confusion matrix.
pub fn misclustered_count_assignment(truth: &CommunityAssignment, est: &CommunityAssignment) -> Result<usize> {
    let c = confusion(truth, est)?;
    Ok(truth.n() - best_agreement_assignment(&c) as usize)
}

/// Number of vertices misclassified under the best relabeling of `est`.
pub fn misclustered_count(truth: &CommunityAssignment, est: &CommunityAssignment) -> Result<usize> {
    if truth.k().max(est.k()) <= ENUMERATION_LIMIT {
        misclustered_count_enumerated(truth, est)
    } else {
        misclustered_count_assignment(truth, est)
    }
}

/// Fraction of vertices misclassified under the best relabeling of `est`.
pub fn misclustering_rate(truth: &CommunityAssignment, est: &CommunityAssignment) -> Result<f64> {
    Ok(misclustered_count(truth, est)? as f64 / truth.n() as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exponent {
    Half,
    One,
}

/// `||a - ea||_2 / normalizer^{1/2 or 1}`.
pub fn concentration_ratio(
    a: &SymmetricMatrix,
    ea: &SymmetricMatrix,
    normalizer: f64,
    exponent: Exponent,
) -> Result<f64> {
    if !normalizer.is_finite() || normalizer <= 0.0 {
        return Err(Error::InvalidParams(format!("normalizer {normalizer} must be positive")));
    }
    let diff = a.try_sub(ea)?;
    let norm = if diff.as_slice().iter().all(|&x| x == 0.0) {
        0.0
    } else {
        spectral_norm(&diff, 1e-8)?
    };
    Ok(match exponent {
        Exponent::Half => norm / normalizer.sqrt(),
        Exponent::One => norm / normalizer,
    })
}

/// Normalizing quantities of the concentration bounds, constants set to 1
/// and natural logarithms throughout.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConcentrationNormalizer {
    /// `max(n p_e, log n)`
    pub delta: f64,
    /// `max(n^2 p_t, log n)`
    pub delta_t: f64,
    /// `max(n p_e^2, log n)`
    pub tau_max: f64,
    /// `max(n^3 p_e^5, n p_e (log n)^2)`
    pub d_e3: f64,
    /// `max(n^5 p_t^3, (log n)^4)`
    pub delta_t3: f64,
    /// `max(n^4 p_t^2 p_e, (log n)^4)`
    pub delta_t2e: f64,
    /// `max(n^3 p_t p_e^2, (log n)^3)`
    pub delta_te2: f64,
}

pub fn normalizers(n: usize, p_e_max: f64, p_t_max: f64) -> Result<ConcentrationNormalizer> {
    if n < 2 {
        return Err(Error::InvalidParams("normalizers need n >= 2".into()));
    }
    for (name, p) in [("p_e_max", p_e_max), ("p_t_max", p_t_max)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParams(format!("{name} = {p} is not in [0, 1]")));
        }
    }
    let nf = n as f64;
    let l = nf.ln();
    let (pe, pt) = (p_e_max, p_t_max);
    Ok(ConcentrationNormalizer {
        delta: (nf * pe).max(l),
        delta_t: (nf * nf * pt).max(l),
        tau_max: (nf * pe * pe).max(l),
        d_e3: (nf.powi(3) * pe.powi(5)).max(nf * pe * l * l),
        delta_t3: (nf.powi(5) * pt.powi(3)).max(l.powi(4)),
        delta_t2e: (nf.powi(4) * pt * pt * pe).max(l.powi(4)),
        delta_te2: (nf.powi(3) * pt * pe * pe).max(l.powi(3)),
    })
}
