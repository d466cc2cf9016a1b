use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Community label per vertex, each in `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommunityAssignment {
    labels: Vec<usize>,
    k: usize,
}

impl CommunityAssignment {
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("number of communities must be positive".into()));
        }
        if let Some((i, &l)) = labels.iter().enumerate().find(|(_, &l)| l >= k) {
            return Err(Error::InvalidInput(format!(
                "label {l} of vertex {i} is not below k={k}"
            )));
        }
        Ok(Self { labels, k })
    }

    /// Infers `k` as one more than the largest label.
    pub fn from_labels(labels: Vec<usize>) -> Result<Self> {
        let k = labels.iter().max().map_or(1, |&m| m + 1);
        Self::new(labels, k)
    }

    /// Contiguous balanced layout: vertices `0..n/k` get label 0 and so on.
    pub fn balanced(n: usize, k: usize) -> Result<Self> {
        if k == 0 || n == 0 || !n.is_multiple_of(k) {
            return Err(Error::InvalidParams(format!(
                "cannot split {n} vertices into {k} equal communities"
            )));
        }
        let size = n / k;
        Ok(Self {
            labels: (0..n).map(|v| v / size).collect(),
            k,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }

    /// True when all `k` communities have exactly `n / k` members.
    pub fn is_balanced(&self) -> bool {
        let n = self.n();
        n.is_multiple_of(self.k) && self.sizes().iter().all(|&s| s == n / self.k)
    }

    /// Members of each community in increasing vertex order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (v, &l) in self.labels.iter().enumerate() {
            out[l].push(v);
        }
        out
    }

    /// Applies a relabeling of the communities: label `l` becomes `perm[l]`.
    pub fn relabel_communities(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: perm.len(),
            });
        }
        Self::new(self.labels.iter().map(|&l| perm[l]).collect(), self.k)
    }

    /// Moves vertex `v`'s label to position `perm[v]`.
    pub fn permute_vertices(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: perm.len(),
            });
        }
        let mut labels = vec![0; self.n()];
        for (v, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[v];
        }
        Self::new(labels, self.k)
    }

    /// One-hot `n x k` assignment matrix, row-major.
    pub fn one_hot(&self) -> Vec<Vec<f64>> {
        self.labels
            .iter()
            .map(|&l| {
                let mut row = vec![0.0; self.k];
                row[l] = 1.0;
                row
            })
            .collect()
    }
}
