use crate::error::{Error, Result};
use crate::graph_model::{SuperimposedGraph, SymmetricMatrix};

/// Number of common elements of two sorted lists.
#[inline]
pub(crate) fn sorted_intersection_count(a: &[u32], b: &[u32]) -> usize {
    let (mut x, mut y, mut count) = (0, 0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                x += 1;
                y += 1;
            }
        }
    }
    count
}

/// Calls `f(k)` for every common element of two sorted lists.
#[inline]
pub(crate) fn for_each_common(a: &[u32], b: &[u32], mut f: impl FnMut(u32)) {
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                f(a[x]);
                x += 1;
                y += 1;
            }
        }
    }
}

fn motif_from_neighbors(n: usize, nbrs: &[Vec<u32>]) -> SymmetricMatrix {
    let mut out = SymmetricMatrix::zeros(n).expect("n >= 1");
    for (i, ni) in nbrs.iter().enumerate() {
        for &j in ni.iter().filter(|&&j| j as usize > i) {
            let common = sorted_intersection_count(ni, &nbrs[j as usize]);
            if common > 0 {
                out.set(i, j as usize, common as f64);
            }
        }
    }
    out
}

/// Triangle motif matrix of a 0/1 adjacency matrix: entry `(i, j)` is the
/// number of vertices `k` closing a triangle with the edge `{i, j}`.
///
/// Uses sorted neighbour-list intersection, so after the adjacency scan the
/// cost is proportional to the sum of endpoint degrees over all edges.
pub fn triangle_motif_observed(adj: &SymmetricMatrix) -> Result<SymmetricMatrix> {
    if !adj.is_binary() {
        return Err(Error::InvalidInput("adjacency matrix must be 0/1".into()));
    }
    if !adj.has_zero_diagonal() {
        return Err(Error::InvalidInput("adjacency matrix must have a zero diagonal".into()));
    }
    let n = adj.dim();
    let nbrs: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            adj.row(i)
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == 1.0)
                .map(|(j, _)| j as u32)
                .collect()
        })
        .collect();
    Ok(motif_from_neighbors(n, &nbrs))
}

/// Observed `A_T` of a graph, counted on its simple projection.
pub fn observed_triangle_matrix(g: &SuperimposedGraph) -> SymmetricMatrix {
    motif_from_neighbors(g.n(), &g.projection_neighbors())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> SymmetricMatrix {
        SymmetricMatrix::from_upper_fn(n, |i, j| if i == j { 0.0 } else { 1.0 }).unwrap()
    }

    #[test]
    fn k4_has_two_triangles_per_pair() {
        let t = triangle_motif_observed(&complete(4)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(t.get(i, j), if i == j { 0.0 } else { 2.0 });
            }
        }
    }

    #[test]
    fn path_has_none() {
        let mut a = SymmetricMatrix::zeros(3).unwrap();
        a.set(0, 1, 1.0);
        a.set(1, 2, 1.0);
        assert_eq!(triangle_motif_observed(&a).unwrap(), SymmetricMatrix::zeros(3).unwrap());
    }

    #[test]
    fn rejects_non_binary_input() {
        let mut a = complete(3);
        a.set(0, 1, 2.0);
        assert!(matches!(triangle_motif_observed(&a), Err(Error::InvalidInput(_))));
        let mut a = complete(3);
        a.set(1, 1, 1.0);
        assert!(triangle_motif_observed(&a).is_err());
    }

    #[test]
    fn intersection_helpers_agree() {
        let a = [1, 3, 5, 7, 9];
        let b = [2, 3, 4, 7, 10];
        let mut common = Vec::new();
        for_each_common(&a, &b, |k| common.push(k));
        assert_eq!(common, vec![3, 7]);
        assert_eq!(sorted_intersection_count(&a, &b), 2);
    }

    #[test]
    fn graph_route_matches_matrix_route() {
        let g = SuperimposedGraph::new(6, [(0, 1), (1, 2), (3, 4)], [[0, 2, 5], [2, 3, 4]]).unwrap();
        assert_eq!(
            observed_triangle_matrix(&g),
            triangle_motif_observed(&g.simple_projection()).unwrap()
        );
    }
}
