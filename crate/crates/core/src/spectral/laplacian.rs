use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph_model::SymmetricMatrix;

/// Degree regularizer for [`regularized_laplacian`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tau {
    Fixed(f64),
    /// Mean degree of the input.
    MeanDegree,
}

fn scale_by(a: &SymmetricMatrix, inv_sqrt: &[f64]) -> SymmetricMatrix {
    SymmetricMatrix::from_upper_fn(a.dim(), |i, j| a.get(i, j) * inv_sqrt[i] * inv_sqrt[j])
        .expect("dimension already validated")
}

fn check_nonnegative(a: &SymmetricMatrix) -> Result<()> {
    if a.min_entry() < 0.0 {
        return Err(Error::InvalidInput("Laplacian input must have non-negative entries".into()));
    }
    Ok(())
}

/// `D^{-1/2} A D^{-1/2}`; rows and columns of zero-degree vertices are zero.
pub fn normalized_laplacian(a: &SymmetricMatrix) -> Result<SymmetricMatrix> {
    check_nonnegative(a)?;
    let inv: Vec<f64> = a
        .degree_vector()
        .into_iter()
        .map(|d| if d > 0.0 { 1.0 / d.sqrt() } else { 0.0 })
        .collect();
    Ok(scale_by(a, &inv))
}

/// `(D + τI)^{-1/2} A (D + τI)^{-1/2}`.
pub fn regularized_laplacian(a: &SymmetricMatrix, tau: Tau) -> Result<SymmetricMatrix> {
    check_nonnegative(a)?;
    let deg = a.degree_vector();
    let tau = match tau {
        Tau::Fixed(t) if t.is_finite() && t >= 0.0 => t,
        Tau::Fixed(t) => return Err(Error::InvalidParams(format!("tau {t} must be finite and >= 0"))),
        Tau::MeanDegree => deg.iter().sum::<f64>() / deg.len() as f64,
    };
    let inv: Vec<f64> = deg
        .into_iter()
        .map(|d| if d + tau > 0.0 { 1.0 / (d + tau).sqrt() } else { 0.0 })
        .collect();
    Ok(scale_by(a, &inv))
}

/// Scales each nonzero row to unit length; zero rows pass through.
pub fn row_normalize(v: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = v.clone();
    for mut row in out.row_iter_mut() {
        let norm = row.norm();
        if norm > 0.0 {
            row /= norm;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn k3() -> SymmetricMatrix {
        SymmetricMatrix::from_upper_fn(3, |i, j| if i == j { 0.0 } else { 1.0 }).unwrap()
    }

    #[test]
    fn k3_normalized() {
        let l = normalized_laplacian(&k3()).unwrap();
        assert_relative_eq!(l.get(0, 1), 0.5, epsilon = 1e-15);
        let eig = nalgebra::SymmetricEigen::new(l.to_nalgebra());
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| b.total_cmp(a));
        assert_relative_eq!(vals[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(vals[1], -0.5, epsilon = 1e-12);
        assert_relative_eq!(vals[2], -0.5, epsilon = 1e-12);
    }

    #[test]
    fn isolated_vertex_rows_are_zero() {
        let mut a = SymmetricMatrix::zeros(3).unwrap();
        a.set(0, 1, 1.0);
        for l in [
            normalized_laplacian(&a).unwrap(),
            regularized_laplacian(&a, Tau::Fixed(1.0)).unwrap(),
            regularized_laplacian(&a, Tau::Fixed(0.0)).unwrap(),
        ] {
            assert!(l.row(2).iter().all(|&x| x == 0.0));
            assert!(l.row(0).iter().all(|x| x.is_finite()));
        }
    }

    #[test]
    fn k3_regularized() {
        let l = regularized_laplacian(&k3(), Tau::Fixed(1.0)).unwrap();
        assert_relative_eq!(l.get(0, 2), 1.0 / 3.0, epsilon = 1e-15);
        // mean degree of K3 is 2
        let l = regularized_laplacian(&k3(), Tau::MeanDegree).unwrap();
        assert_relative_eq!(l.get(0, 2), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn zero_tau_is_plain_normalization() {
        let a = SymmetricMatrix::from_upper_fn(6, |i, j| if i == j { 0.0 } else { ((i + 2 * j) % 3) as f64 + 1.0 })
            .unwrap();
        assert_eq!(regularized_laplacian(&a, Tau::Fixed(0.0)).unwrap(), normalized_laplacian(&a).unwrap());
    }

    #[test]
    fn rejects_negative_entries_and_tau() {
        let mut a = k3();
        a.set(0, 1, -1.0);
        assert!(normalized_laplacian(&a).is_err());
        assert!(regularized_laplacian(&k3(), Tau::Fixed(-1.0)).is_err());
    }

    #[test]
    fn row_normalization() {
        let v = DMatrix::from_row_slice(3, 2, &[3.0, 4.0, 0.0, 0.0, 0.6, 0.8]);
        let r = row_normalize(&v);
        assert_relative_eq!(r[(0, 0)], 0.6, epsilon = 1e-15);
        assert_relative_eq!(r[(0, 1)], 0.8, epsilon = 1e-15);
        assert_eq!((r[(1, 0)], r[(1, 1)]), (0.0, 0.0));
        assert_relative_eq!(r[(2, 1)], 0.8, epsilon = 1e-12);
    }
}
