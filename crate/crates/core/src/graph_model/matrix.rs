use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Dense real symmetric matrix stored in full row-major order.
///
/// Every mutating method writes both `(i, j)` and `(j, i)`, so
/// `get(i, j) == get(j, i)` holds bit-for-bit.
#[derive(Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("matrix dimension must be at least 1".into()));
        }
        Ok(Self {
            n,
            data: vec![0.0; n * n],
        })
    }

    /// Builds a matrix from `f(i, j)` evaluated on the upper triangle (`i <= j`).
    pub fn from_upper_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        Ok(m)
    }

    /// Builds a matrix from nested rows, rejecting anything not exactly symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if rows[j][i] != v {
                    return Err(Error::InvalidInput(format!(
                        "entry ({i},{j}) = {v} differs from ({j},{i}) = {}",
                        rows[j][i]
                    )));
                }
                m.data[i * n + j] = v;
            }
        }
        Ok(m)
    }

    pub fn from_nalgebra(m: &DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        let rows: Vec<Vec<f64>> = (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        Ok(m)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    /// Adds `value` to the off-diagonal pair `(i, j)` and `(j, i)`.
    #[inline]
    pub fn add_pair(&mut self, i: usize, j: usize, value: f64) {
        debug_assert_ne!(i, j);
        self.data[i * self.n + j] += value;
        self.data[j * self.n + i] += value;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Row sums.
    pub fn degree_vector(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `y = self * x`.
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.n);
        assert_eq!(y.len(), self.n);
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = dot(self.row(i), x);
        }
    }

    pub fn is_binary(&self) -> bool {
        self.data.iter().all(|&v| v == 0.0 || v == 1.0)
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i) == 0.0)
    }

    pub fn min_entry(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// `self + scale * other`.
    pub fn add_scaled(&self, other: &Self, scale: f64) -> Result<Self> {
        self.check_same_dim(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + scale * b)
            .collect();
        Ok(Self { n: self.n, data })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, 1.0)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, -1.0)
    }

    pub fn scaled(&self, scale: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| v * scale).collect(),
        }
    }

    /// Accumulates `other` into `self` in place.
    pub fn accumulate(&mut self, other: &Self) -> Result<()> {
        self.check_same_dim(other)?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(())
    }

    /// Symmetric permutation: entry `(perm[i], perm[j])` of the result is entry `(i, j)` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut out = Self::zeros(self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
                out.data[perm[i] * self.n + perm[j]] = self.data[i * self.n + j];
            }
        }
        Ok(out)
    }

    pub fn to_nalgebra(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.n, self.n, &self.data)
    }
}

impl fmt::Debug for SymmetricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymmetricMatrix({}x{})", self.n, self.n)?;
        if self.n <= 12 {
            for i in 0..self.n {
                writeln!(f, "  {:?}", self.row(i))?;
            }
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    // Four accumulators let the compiler vectorize without reassociation flags.
    let mut acc = [0.0f64; 4];
    let chunks = a.len() / 4;
    for c in 0..chunks {
        let o = c * 4;
        acc[0] += a[o] * b[o];
        acc[1] += a[o + 1] * b[o + 1];
        acc[2] += a[o + 2] * b[o + 2];
        acc[3] += a[o + 3] * b[o + 3];
    }
    let mut tail = 0.0;
    for o in chunks * 4..a.len() {
        tail += a[o] * b[o];
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_dimension_rejected() {
        assert!(SymmetricMatrix::zeros(0).is_err());
    }

    #[test]
    fn from_rows_rejects_asymmetry() {
        let err = SymmetricMatrix::from_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]);
        assert!(matches!(err, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn degree_vector_examples() {
        let m = SymmetricMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(m.degree_vector(), vec![1.0, 1.0]);
        assert_eq!(SymmetricMatrix::zeros(3).unwrap().degree_vector(), vec![0.0; 3]);
        let k4 = SymmetricMatrix::from_upper_fn(4, |i, j| if i == j { 0.0 } else { 1.0 }).unwrap();
        assert_eq!(k4.degree_vector(), vec![3.0; 4]);
    }

    #[test]
    fn set_keeps_symmetry() {
        let mut m = SymmetricMatrix::zeros(3).unwrap();
        m.set(0, 2, 4.5);
        m.add_pair(1, 2, 1.0);
        assert_eq!(m.get(2, 0), 4.5);
        assert_eq!(m.get(2, 1), 1.0);
    }

    #[test]
    fn dimension_mismatch_reported() {
        let a = SymmetricMatrix::zeros(2).unwrap();
        let b = SymmetricMatrix::zeros(3).unwrap();
        assert!(matches!(
            a.try_add(&b),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn dot_matches_naive_sum() {
        let a: Vec<f64> = (0..11).map(|i| i as f64 * 0.5).collect();
        let b: Vec<f64> = (0..11).map(|i| 1.0 - i as f64).collect();
        let naive: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
        assert!((dot(&a, &b) - naive).abs() < 1e-12);
    }
}
