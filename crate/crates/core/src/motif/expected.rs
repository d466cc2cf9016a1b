use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph_model::{BlockParams, CommunityAssignment, SymmetricMatrix};

/// What to put on the diagonal of an expected motif matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diagonal {
    /// Zero, as for any simple-graph motif matrix.
    Zero,
    /// The within-block value, giving the low-rank form `C((g-h)I + h11^T)C^T`.
    BlockForm,
}

/// Which expected motif matrix to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExpectedMotif {
    /// Dyadic edges.
    EdgeE2,
    /// Hyperedge motif counts.
    HyperedgeT2,
    /// Triangles closed by three dyadic edges.
    EdgeTriangleE3,
}

/// Within-block and across-block entries of a block-constant expected matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BlockExpectation {
    pub within: f64,
    pub across: f64,
}

impl BlockExpectation {
    pub fn of(kind: ExpectedMotif, p: &BlockParams) -> Self {
        let n = p.n as f64;
        let k = p.k as f64;
        let s = n / k;
        match kind {
            ExpectedMotif::EdgeE2 => Self {
                within: p.a_e / n,
                across: p.b_e / n,
            },
            ExpectedMotif::HyperedgeT2 => Self {
                within: (s - 2.0) * p.a_t / n + (k - 1.0) * s * p.b_t / n,
                across: (n - 2.0) * p.b_t / n,
            },
            ExpectedMotif::EdgeTriangleE3 => {
                let (a, b) = (p.a_e, p.b_e);
                let n2 = n * n;
                Self {
                    within: (a / n) * ((s - 2.0) * a * a / n2 + (k - 1.0) * s * b * b / n2),
                    across: (b / n) * (2.0 * (s - 1.0) * a * b / n2 + (k - 2.0) * s * b * b / n2),
                }
            }
        }
    }

    pub fn matrix(&self, c: &CommunityAssignment, diagonal: Diagonal) -> Result<SymmetricMatrix> {
        SymmetricMatrix::from_upper_fn(c.n(), |i, j| {
            if i == j {
                match diagonal {
                    Diagonal::Zero => 0.0,
                    Diagonal::BlockForm => self.within,
                }
            } else if c.label(i) == c.label(j) {
                self.within
            } else {
                self.across
            }
        })
    }
}

pub fn expected_matrix(
    kind: ExpectedMotif,
    p: &BlockParams,
    c: &CommunityAssignment,
    diagonal: Diagonal,
) -> Result<SymmetricMatrix> {
    p.check_assignment(c)?;
    BlockExpectation::of(kind, p).matrix(c, diagonal)
}

/// Expected dyadic adjacency of the balanced block model, zero diagonal.
pub fn expected_ae2(p: &BlockParams, c: &CommunityAssignment) -> Result<SymmetricMatrix> {
    expected_matrix(ExpectedMotif::EdgeE2, p, c, Diagonal::Zero)
}

/// Expected hyperedge motif matrix, zero diagonal.
pub fn expected_at2(p: &BlockParams, c: &CommunityAssignment) -> Result<SymmetricMatrix> {
    expected_matrix(ExpectedMotif::HyperedgeT2, p, c, Diagonal::Zero)
}

/// Expected dyadic-triangle motif matrix, zero diagonal.
pub fn expected_ae3(p: &BlockParams, c: &CommunityAssignment) -> Result<SymmetricMatrix> {
    expected_matrix(ExpectedMotif::EdgeTriangleE3, p, c, Diagonal::Zero)
}

/// Smallest nonzero eigenvalue of a block-form expected matrix.
///
/// `degenerate` is set when the community signal vanishes, i.e. the within
/// and across entries coincide; `value` is then zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LambdaMin {
    pub value: f64,
    pub degenerate: bool,
}

impl LambdaMin {
    fn new(value: f64) -> Self {
        let degenerate = value.abs() <= 1e-300 || !value.is_finite();
        Self {
            value: if degenerate { 0.0 } else { value },
            degenerate,
        }
    }
}

/// `(n/k - 2)(a_t - b_t)/k`.
pub fn lambda_min_at2(p: &BlockParams) -> LambdaMin {
    let n = p.n as f64;
    let k = p.k as f64;
    LambdaMin::new((n / k - 2.0) * (p.a_t - p.b_t) / k)
}

/// Smallest nonzero eigenvalue of the expected dyadic-triangle matrix.
pub fn lambda_min_ae3(p: &BlockParams) -> LambdaMin {
    let n = p.n as f64;
    let k = p.k as f64;
    let (a, b) = (p.a_e, p.b_e);
    let lead = (k * b * b + a * a + a * b - 2.0 * b * b) * (a - b) / (k * k * n);
    let corr = 2.0 * a * (a + b) * (a - b) / (k * n * n);
    LambdaMin::new(lead - corr)
}

/// `(a_e - b_e)/k`.
pub fn lambda_min_ae2(p: &BlockParams) -> LambdaMin {
    LambdaMin::new((p.a_e - p.b_e) / p.k as f64)
}

/// Smallest nonzero eigenvalue of `E[A_E2] + w E[A_T2]` in block form.
pub fn lambda_min_weighted(p: &BlockParams, w: f64) -> Result<LambdaMin> {
    if !w.is_finite() || w < 0.0 {
        return Err(Error::InvalidParams(format!("weight {w} must be finite and non-negative")));
    }
    Ok(LambdaMin::new(lambda_min_ae2(p).value + w * lambda_min_at2(p).value))
}
