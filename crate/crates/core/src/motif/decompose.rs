use serde::Serialize;

use crate::error::Result;
use crate::graph_model::{SuperimposedGraph, SymmetricMatrix};

use super::observed::for_each_common;

/// Generative indicators of one unordered triple `{i, j, k}`.
///
/// * `t2`:  the triple is a hyperedge.
/// * `e3`:  all three sides are dyadic edges.
/// * `t3`:  not a hyperedge, every side is covered by some other hyperedge,
///   and the triple is not already closed by three dyadic edges.
/// * `t2e`: not a hyperedge; two sides hyperedge-covered without a dyadic
///   edge, the third a dyadic edge not covered by any hyperedge.
/// * `te2`: not a hyperedge; one side hyperedge-covered without a dyadic
///   edge, the other two dyadic edges not covered by any hyperedge.
///
/// `t2e` and `te2` take the OR over which side plays which role, so each
/// unordered triple is classified once.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TripleIndicators {
    pub t2: u8,
    pub e3: u8,
    pub t3: u8,
    pub t2e: u8,
    pub te2: u8,
}

impl TripleIndicators {
    pub fn sum(&self) -> u8 {
        self.t2 + self.e3 + self.t3 + self.t2e + self.te2
    }
}

pub fn classify_triple(g: &SuperimposedGraph, i: usize, j: usize, k: usize) -> TripleIndicators {
    let t = g.has_hyperedge(i, j, k);
    let sides = [(i, j), (j, k), (i, k)];
    let dyadic = sides.map(|(a, b)| g.has_dyadic(a, b));
    let own = u32::from(t);
    let covered = sides.map(|(a, b)| g.triangle_cover_count(a, b) > own);
    let e3 = dyadic.iter().all(|&e| e);
    let mut out = TripleIndicators {
        t2: u8::from(t),
        e3: u8::from(e3),
        ..Default::default()
    };
    if t {
        return out;
    }
    out.t3 = u8::from(covered.iter().all(|&c| c) && !e3);
    let hyper_only = (0..3).filter(|&s| covered[s] && !dyadic[s]).count();
    let dyadic_only = (0..3).filter(|&s| !covered[s] && dyadic[s]).count();
    out.t2e = u8::from(hyper_only == 2 && dyadic_only == 1);
    out.te2 = u8::from(hyper_only == 1 && dyadic_only == 2);
    out
}

/// Per-pair motif counts of each triangle provenance class.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangleDecomposition {
    pub a_t2: SymmetricMatrix,
    pub a_e3: SymmetricMatrix,
    pub a_t3: SymmetricMatrix,
    pub a_t2e: SymmetricMatrix,
    pub a_te2: SymmetricMatrix,
}

impl TriangleDecomposition {
    fn zeros(n: usize) -> Self {
        let z = SymmetricMatrix::zeros(n).expect("n >= 1");
        Self {
            a_t2: z.clone(),
            a_e3: z.clone(),
            a_t3: z.clone(),
            a_t2e: z.clone(),
            a_te2: z,
        }
    }

    fn add_triple(&mut self, (i, j, k): (usize, usize, usize), ind: TripleIndicators) {
        let targets = [
            (ind.t2, &mut self.a_t2),
            (ind.e3, &mut self.a_e3),
            (ind.t3, &mut self.a_t3),
            (ind.t2e, &mut self.a_t2e),
            (ind.te2, &mut self.a_te2),
        ];
        for (v, m) in targets {
            if v > 0 {
                let v = f64::from(v);
                m.add_pair(i, j, v);
                m.add_pair(j, k, v);
                m.add_pair(i, k, v);
            }
        }
    }

    pub fn components(&self) -> [(&'static str, &SymmetricMatrix); 5] {
        [
            ("A_T2", &self.a_t2),
            ("A_E3", &self.a_e3),
            ("A_T3", &self.a_t3),
            ("A_T2E", &self.a_t2e),
            ("A_TE2", &self.a_te2),
        ]
    }
}

/// Calls `f` for every triple `i < j < k` that is a triangle of the simple projection.
pub(crate) fn for_each_projection_triangle(
    g: &SuperimposedGraph,
    mut f: impl FnMut(usize, usize, usize),
) {
    let nbrs = g.projection_neighbors();
    for (i, ni) in nbrs.iter().enumerate() {
        let upper_i: &[u32] = &ni[ni.partition_point(|&v| v as usize <= i)..];
        for &j in upper_i {
            let nj = &nbrs[j as usize];
            let upper_j: &[u32] = &nj[nj.partition_point(|&v| v <= j)..];
            for_each_common(upper_i, upper_j, |k| f(i, j as usize, k as usize));
        }
    }
}

/// Splits the triangle motif counts of a superimposed graph by how each
/// triangle was generated.
///
/// Any triple with a nonzero indicator is a triangle of the simple
/// projection, so only those triangles are enumerated.
pub fn decompose_triangles(g: &SuperimposedGraph) -> TriangleDecomposition {
    let mut d = TriangleDecomposition::zeros(g.n());
    for_each_projection_triangle(g, |i, j, k| {
        let ind = classify_triple(g, i, j, k);
        if ind.sum() > 0 {
            d.add_triple((i, j, k), ind);
        }
    });
    d
}

/// Generative `A_T`: the elementwise sum of all five components.
pub fn triangle_motif_generative(d: &TriangleDecomposition) -> Result<SymmetricMatrix> {
    d.a_t2
        .try_add(&d.a_e3)?
        .try_add(&d.a_t3)?
        .try_add(&d.a_t2e)?
        .try_add(&d.a_te2)
}

/// Comparison of observed triangle counting against the generative classes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TriangleCensus {
    /// Triangles of the simple projection.
    pub observed: usize,
    /// Triples with a nonzero indicator sum.
    pub explained: usize,
    /// Sum of indicators over all triples.
    pub generative_total: usize,
    /// Observed triangles with indicator sum zero (mixed coverage).
    pub unexplained: usize,
    /// Triples with indicator sum two (hyperedge plus three dyadic edges).
    pub doubled: usize,
}

pub fn triangle_census(g: &SuperimposedGraph) -> TriangleCensus {
    let mut c = TriangleCensus::default();
    for_each_projection_triangle(g, |i, j, k| {
        let s = classify_triple(g, i, j, k).sum() as usize;
        c.observed += 1;
        c.generative_total += s;
        match s {
            0 => c.unexplained += 1,
            1 => c.explained += 1,
            _ => {
                c.explained += 1;
                c.doubled += 1;
            }
        }
    });
    c
}
