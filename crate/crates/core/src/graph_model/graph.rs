use crate::error::{Error, Result};

use super::matrix::SymmetricMatrix;

/// Index of the unordered pair `{i, j}` (with `i < j`) in the packed upper triangle.
#[inline]
pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

#[inline]
fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

/// A graph observed as the superposition of a dyadic edge process and a
/// 3-uniform hyperedge process.
///
/// The edge and hyperedge sets are stored canonically (sorted, deduplicated,
/// each tuple in increasing vertex order), so two graphs compare equal exactly
/// when they have the same vertex count, edges and hyperedges. Per-pair
/// provenance (the dyadic flag and the number of hyperedges covering the pair)
/// is precomputed so lookups are O(1).
#[derive(Clone, PartialEq, Eq)]
pub struct SuperimposedGraph {
    n: usize,
    dyadic_edges: Vec<(u32, u32)>,
    hyperedges: Vec<[u32; 3]>,
    dyadic_flag: Vec<bool>,
    cover: Vec<u32>,
}

impl std::fmt::Debug for SuperimposedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SuperimposedGraph")
            .field("n", &self.n)
            .field("dyadic_edges", &self.dyadic_edges.len())
            .field("hyperedges", &self.hyperedges.len())
            .finish()
    }
}

impl SuperimposedGraph {
    /// Validates and canonicalizes the given edges and hyperedges.
    /// Repeated pairs or triples are merged, since both collections are sets.
    pub fn new(
        n: usize,
        dyadic_edges: impl IntoIterator<Item = (usize, usize)>,
        hyperedges: impl IntoIterator<Item = [usize; 3]>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("graph must have at least one vertex".into()));
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidInput(format!("too many vertices: {n}")));
        }
        let mut edges = Vec::new();
        for (i, j) in dyadic_edges {
            if i >= n || j >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({i},{j}) out of range for n={n}"
                )));
            }
            if i == j {
                return Err(Error::InvalidInput(format!("self-loop at vertex {i}")));
            }
            let (a, b) = ordered(i, j);
            edges.push((a as u32, b as u32));
        }
        let mut triples = Vec::new();
        for t in hyperedges {
            let mut t = t;
            t.sort_unstable();
            if t[2] >= n {
                return Err(Error::InvalidInput(format!(
                    "hyperedge {t:?} out of range for n={n}"
                )));
            }
            if t[0] == t[1] || t[1] == t[2] {
                return Err(Error::InvalidInput(format!(
                    "hyperedge {t:?} has repeated vertices"
                )));
            }
            triples.push([t[0] as u32, t[1] as u32, t[2] as u32]);
        }
        Ok(Self::from_parts(n, edges, triples))
    }

    /// Graph with only dyadic edges.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(n, edges, std::iter::empty())
    }

    /// Trusted constructor: tuples must already be in increasing vertex order and in range.
    pub(crate) fn from_parts(n: usize, mut edges: Vec<(u32, u32)>, mut triples: Vec<[u32; 3]>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        triples.sort_unstable();
        triples.dedup();
        let pairs = n * (n - 1) / 2;
        let mut dyadic_flag = vec![false; pairs];
        for &(i, j) in &edges {
            dyadic_flag[pair_index(n, i as usize, j as usize)] = true;
        }
        let mut cover = vec![0u32; pairs];
        for t in &triples {
            let [a, b, c] = t.map(|v| v as usize);
            cover[pair_index(n, a, b)] += 1;
            cover[pair_index(n, a, c)] += 1;
            cover[pair_index(n, b, c)] += 1;
        }
        Self {
            n,
            dyadic_edges: edges,
            hyperedges: triples,
            dyadic_flag,
            cover,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dyadic_edges(&self) -> &[(u32, u32)] {
        &self.dyadic_edges
    }

    pub fn hyperedges(&self) -> &[[u32; 3]] {
        &self.hyperedges
    }

    /// `E_ij`.
    #[inline]
    pub fn has_dyadic(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let (a, b) = ordered(i, j);
        self.dyadic_flag[pair_index(self.n, a, b)]
    }

    /// Number of hyperedges containing both `i` and `j`.
    #[inline]
    pub fn triangle_cover_count(&self, i: usize, j: usize) -> u32 {
        if i == j {
            return 0;
        }
        let (a, b) = ordered(i, j);
        self.cover[pair_index(self.n, a, b)]
    }

    /// `T_ijk`.
    pub fn has_hyperedge(&self, i: usize, j: usize, k: usize) -> bool {
        let mut t = [i, j, k];
        t.sort_unstable();
        if t[0] == t[1] || t[1] == t[2] {
            return false;
        }
        let key = [t[0] as u32, t[1] as u32, t[2] as u32];
        self.hyperedges.binary_search(&key).is_ok()
    }

    /// Observed number of parallel edges between `i` and `j`: one for a dyadic
    /// edge plus one if any hyperedge covers the pair.
    #[inline]
    pub fn multiplicity(&self, i: usize, j: usize) -> u8 {
        u8::from(self.has_dyadic(i, j)) + u8::from(self.triangle_cover_count(i, j) > 0)
    }

    fn pair_matrix(&self, f: impl Fn(bool, u32) -> f64) -> SymmetricMatrix {
        let n = self.n;
        let mut m = SymmetricMatrix::zeros(n).expect("n >= 1");
        for i in 0..n {
            for j in (i + 1)..n {
                let p = pair_index(n, i, j);
                let v = f(self.dyadic_flag[p], self.cover[p]);
                if v != 0.0 {
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// 0/1 view: an entry is 1 wherever at least one edge is observed.
    pub fn simple_projection(&self) -> SymmetricMatrix {
        self.pair_matrix(|e, c| if e || c > 0 { 1.0 } else { 0.0 })
    }

    /// `A_E`: entries in {0, 1, 2} following the double-edge rule.
    pub fn multiplicity_matrix(&self) -> SymmetricMatrix {
        self.pair_matrix(|e, c| f64::from(u8::from(e) + u8::from(c > 0)))
    }

    /// `A_{E^2}`: adjacency of the dyadic process alone.
    pub fn dyadic_matrix(&self) -> SymmetricMatrix {
        self.pair_matrix(|e, _| if e { 1.0 } else { 0.0 })
    }

    /// `A_{T^2}`: entry `(i, j)` counts the hyperedges containing both vertices.
    pub fn hyperedge_motif_matrix(&self) -> SymmetricMatrix {
        self.pair_matrix(|_, c| f64::from(c))
    }

    /// Sorted neighbour lists of the simple projection.
    pub fn projection_neighbors(&self) -> Vec<Vec<u32>> {
        let n = self.n;
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in (i + 1)..n {
                let p = pair_index(n, i, j);
                if self.dyadic_flag[p] || self.cover[p] > 0 {
                    adj[i].push(j as u32);
                    adj[j].push(i as u32);
                }
            }
        }
        adj
    }

    /// Number of unordered pairs joined in the simple projection.
    pub fn projection_edge_count(&self) -> usize {
        self.dyadic_flag
            .iter()
            .zip(&self.cover)
            .filter(|(&e, &c)| e || c > 0)
            .count()
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidInput("relabeling is not a permutation".into()));
            }
        }
        Self::new(
            self.n,
            self.dyadic_edges
                .iter()
                .map(|&(i, j)| (perm[i as usize], perm[j as usize])),
            self.hyperedges
                .iter()
                .map(|t| t.map(|v| perm[v as usize])),
        )
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.n as u32;
        let edges = self
            .dyadic_edges
            .iter()
            .copied()
            .chain(other.dyadic_edges.iter().map(|&(i, j)| (i + shift, j + shift)))
            .collect();
        let triples = self
            .hyperedges
            .iter()
            .copied()
            .chain(other.hyperedges.iter().map(|t| t.map(|v| v + shift)))
            .collect();
        Self::from_parts(self.n + other.n, edges, triples)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_index_is_dense() {
        let n = 7;
        let mut seen = vec![false; n * (n - 1) / 2];
        for i in 0..n {
            for j in (i + 1)..n {
                let p = pair_index(n, i, j);
                assert!(!seen[p]);
                seen[p] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn rejects_self_loops_and_out_of_range() {
        assert!(SuperimposedGraph::from_edges(3, [(1, 1)]).is_err());
        assert!(SuperimposedGraph::from_edges(3, [(0, 3)]).is_err());
        assert!(SuperimposedGraph::new(3, [], [[0, 1, 1]]).is_err());
        assert!(SuperimposedGraph::new(0, [], []).is_err());
    }

    #[test]
    fn canonical_storage() {
        let a = SuperimposedGraph::new(4, [(1, 0), (0, 1), (3, 2)], [[2, 1, 0], [0, 1, 2]]).unwrap();
        let b = SuperimposedGraph::new(4, [(2, 3), (0, 1)], [[0, 1, 2]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dyadic_edges(), &[(0, 1), (2, 3)]);
        assert_eq!(a.hyperedges(), &[[0, 1, 2]]);
    }

    #[test]
    fn simple_projection_examples() {
        let empty = SuperimposedGraph::new(3, [], []).unwrap();
        assert_eq!(empty.simple_projection(), SymmetricMatrix::zeros(3).unwrap());

        let tri = SuperimposedGraph::new(3, [], [[0, 1, 2]]).unwrap();
        let p = tri.simple_projection();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p.get(i, j), if i == j { 0.0 } else { 1.0 });
            }
        }

        let both = SuperimposedGraph::new(3, [(0, 1)], [[0, 1, 2]]).unwrap();
        assert_eq!(both.simple_projection().get(0, 1), 1.0);
    }

    #[test]
    fn multiplicity_matrix_examples() {
        let g = SuperimposedGraph::new(3, [(0, 1)], [[0, 1, 2]]).unwrap();
        let a = g.multiplicity_matrix();
        assert_eq!(a.get(0, 1), 2.0);
        assert_eq!(a.get(0, 2), 1.0);
        assert_eq!(a.get(1, 2), 1.0);

        let g = SuperimposedGraph::new(4, [], [[0, 1, 2], [0, 1, 3]]).unwrap();
        assert_eq!(g.multiplicity_matrix().get(0, 1), 1.0);
        assert_eq!(g.triangle_cover_count(0, 1), 2);

        let g = SuperimposedGraph::new(5, [], []).unwrap();
        assert_eq!(g.multiplicity_matrix(), SymmetricMatrix::zeros(5).unwrap());
    }

    #[test]
    fn has_hyperedge_any_order() {
        let g = SuperimposedGraph::new(5, [], [[4, 0, 2]]).unwrap();
        assert!(g.has_hyperedge(2, 4, 0));
        assert!(!g.has_hyperedge(0, 1, 2));
        assert!(!g.has_hyperedge(0, 0, 2));
    }

    #[test]
    fn relabel_round_trip() {
        let g = SuperimposedGraph::new(4, [(0, 3)], [[0, 1, 2]]).unwrap();
        let perm = [2, 0, 3, 1];
        let mut inv = [0; 4];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        assert_eq!(g.relabeled(&perm).unwrap().relabeled(&inv).unwrap(), g);
        assert!(g.relabeled(&[0, 0, 1, 2]).is_err());
    }
}
