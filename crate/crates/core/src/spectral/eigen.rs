use std::cmp::Ordering;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;

use crate::error::{Error, Result};
use crate::generators::{stream_rng, Stream};
use crate::graph_model::{dot, SymmetricMatrix};

pub const DEFAULT_TOL: f64 = 1e-10;

/// Largest dimension handled by the dense solver under [`EigenSolver::Auto`].
pub const DENSE_LIMIT: usize = 256;

const LANCZOS_SEED: u64 = 0x6c61_6e63_7a6f_7321;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EigenSolver {
    /// Dense up to [`DENSE_LIMIT`], Lanczos above it.
    #[default]
    Auto,
    Dense,
    Lanczos,
}

/// The `k` eigenpairs of largest absolute value.
#[derive(Clone, Debug)]
pub struct EigenResult {
    /// Ordered by descending `|value|`; ties put the larger signed value first.
    pub values: Vec<f64>,
    /// `n x k`, orthonormal columns. Each column has its largest-magnitude
    /// component positive.
    pub vectors: DMatrix<f64>,
    /// Largest `||M v - λ v|| / ||M||` over the returned pairs.
    pub residual: f64,
}

impl EigenResult {
    pub fn k(&self) -> usize {
        self.values.len()
    }
}

pub fn top_k_abs_eigenpairs(m: &SymmetricMatrix, k: usize, tol: f64) -> Result<EigenResult> {
    top_k_abs_eigenpairs_with(m, k, tol, EigenSolver::Auto)
}

pub fn top_k_abs_eigenpairs_with(
    m: &SymmetricMatrix,
    k: usize,
    tol: f64,
    solver: EigenSolver,
) -> Result<EigenResult> {
    let n = m.dim();
    if k == 0 || k > n {
        return Err(Error::InvalidParams(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParams(format!("tolerance {tol} must be positive")));
    }
    let use_dense = match solver {
        EigenSolver::Dense => true,
        EigenSolver::Lanczos => false,
        EigenSolver::Auto => n <= DENSE_LIMIT,
    };
    if use_dense {
        return dense(m, k, tol);
    }
    match lanczos(m, k, tol) {
        Ok(r) => Ok(r),
        Err(Error::SolverFailure { .. }) if solver == EigenSolver::Auto => dense(m, k, tol),
        Err(e) => Err(e),
    }
}

/// Largest absolute eigenvalue, which for a symmetric matrix is the spectral norm.
pub fn spectral_norm(m: &SymmetricMatrix, tol: f64) -> Result<f64> {
    Ok(top_k_abs_eigenpairs(m, 1, tol)?.values[0].abs())
}

fn dense(m: &SymmetricMatrix, k: usize, tol: f64) -> Result<EigenResult> {
    let eig = SymmetricEigen::try_new(m.to_nalgebra(), f64::EPSILON, 100_000).ok_or_else(|| {
        Error::SolverFailure {
            residual: f64::NAN,
            message: "dense symmetric eigensolver did not converge".into(),
        }
    })?;
    let pairs: Vec<(f64, Vec<f64>)> = (0..m.dim())
        .map(|c| (eig.eigenvalues[c], eig.eigenvectors.column(c).iter().copied().collect()))
        .collect();
    finish(m, pairs, k, tol)
}

fn random_unit(n: usize, rng: &mut impl Rng, basis: &[Vec<f64>]) -> Option<Vec<f64>> {
    for _ in 0..8 {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
        orthogonalize(&mut v, basis);
        orthogonalize(&mut v, basis);
        let norm = dot(&v, &v).sqrt();
        if norm > 1e-8 {
            v.iter_mut().for_each(|x| *x /= norm);
            return Some(v);
        }
    }
    None
}

fn orthogonalize(v: &mut [f64], basis: &[Vec<f64>]) {
    for q in basis {
        let c = dot(v, q);
        v.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
    }
}

/// Lanczos with full reorthogonalization. On an invariant-subspace breakdown
/// a fresh start vector orthogonal to the basis is drawn, so eigenvalues of
/// higher multiplicity are still found.
fn lanczos(m: &SymmetricMatrix, k: usize, tol: f64) -> Result<EigenResult> {
    let n = m.dim();
    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut rng = stream_rng(LANCZOS_SEED, Stream::Solver);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    // betas[i] couples basis[i] and basis[i + 1]
    let mut betas: Vec<f64> = Vec::new();
    let mut q = random_unit(n, &mut rng, &basis).expect("n >= 1");
    let mut w = vec![0.0; n];
    let min_steps = (2 * k + 20).min(n);
    let mut next_check = min_steps;
    loop {
        m.matvec(&q, &mut w);
        let alpha = dot(&q, &w);
        basis.push(q.clone());
        alphas.push(alpha);
        orthogonalize(&mut w, &basis);
        orthogonalize(&mut w, &basis);
        let beta = dot(&w, &w).sqrt();
        let steps = basis.len();
        if steps == n {
            break;
        }
        let breakdown = beta <= 1e-12 * scale;
        if steps >= next_check {
            next_check = steps + 10;
            let ritz = ritz_pairs(&alphas, &betas);
            let chosen = select_top(&ritz.0, k);
            let top = chosen.first().map_or(0.0, |&c| ritz.0[c].abs()).max(f64::MIN_POSITIVE);
            let bound = chosen
                .iter()
                .map(|&c| if breakdown { 0.0 } else { (beta * ritz.1[(steps - 1, c)]).abs() })
                .fold(0.0, f64::max);
            if bound <= 0.1 * tol * top {
                break;
            }
        }
        if breakdown {
            betas.push(0.0);
            match random_unit(n, &mut rng, &basis) {
                Some(v) => q = v,
                None => break,
            }
        } else {
            betas.push(beta);
            q = w.iter().map(|x| x / beta).collect();
        }
    }
    let (theta, s) = ritz_pairs(&alphas, &betas);
    let pairs: Vec<(f64, Vec<f64>)> = select_top(&theta, k)
        .into_iter()
        .map(|c| {
            let mut v = vec![0.0; n];
            for (i, qi) in basis.iter().enumerate() {
                let coef = s[(i, c)];
                v.iter_mut().zip(qi).for_each(|(x, y)| *x += coef * y);
            }
            let norm = dot(&v, &v).sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
            (theta[c], v)
        })
        .collect();
    finish(m, pairs, k, tol)
}

fn ritz_pairs(alphas: &[f64], betas: &[f64]) -> (Vec<f64>, DMatrix<f64>) {
    let m = alphas.len();
    let mut t = DMatrix::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alphas[i];
        if i + 1 < m {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

fn select_top(values: &[f64], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].abs().total_cmp(&values[a].abs()));
    idx.truncate(k);
    idx
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// Largest-magnitude component made positive; the first index wins near-ties.
fn normalize_sign(v: &mut [f64]) {
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(x) = v.iter().find(|x| near(x.abs(), max)) {
        if *x < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

fn tie_order(a: &(f64, Vec<f64>), b: &(f64, Vec<f64>)) -> Ordering {
    if !near(a.0.abs(), b.0.abs()) {
        return b.0.abs().total_cmp(&a.0.abs());
    }
    if !near(a.0, b.0) {
        return b.0.total_cmp(&a.0);
    }
    for (x, y) in a.1.iter().zip(&b.1) {
        if !near(*x, *y) {
            return y.total_cmp(x);
        }
    }
    Ordering::Equal
}

fn finish(m: &SymmetricMatrix, mut pairs: Vec<(f64, Vec<f64>)>, k: usize, tol: f64) -> Result<EigenResult> {
    let n = m.dim();
    for p in pairs.iter_mut() {
        normalize_sign(&mut p.1);
    }
    pairs.sort_by(tie_order);
    pairs.truncate(k);
    let scale = pairs.first().map_or(0.0, |p| p.0.abs()).max(f64::MIN_POSITIVE);
    let mut residual = 0.0f64;
    let mut mv = vec![0.0; n];
    for (lambda, v) in &pairs {
        m.matvec(v, &mut mv);
        let r: f64 = mv.iter().zip(v).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt();
        residual = residual.max(r / scale);
    }
    if residual.is_nan() || residual > tol {
        return Err(Error::SolverFailure {
            residual,
            message: format!("eigenpair residual {residual:e} exceeds tolerance {tol:e}"),
        });
    }
    let mut vectors = DMatrix::zeros(n, k);
    for (c, (_, v)) in pairs.iter().enumerate() {
        vectors.column_mut(c).copy_from_slice(v);
    }
    Ok(EigenResult {
        values: pairs.into_iter().map(|p| p.0).collect(),
        vectors,
        residual,
    })
}
