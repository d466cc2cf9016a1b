use nalgebra::DMatrix;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::{derive_seed, stream_rng, Stream};
use crate::graph_model::CommunityAssignment;

pub const DEFAULT_RESTARTS: usize = 20;
const MAX_ITERS: usize = 300;
const REL_TOL: f64 = 1e-9;

/// Best labeling found and its within-cluster sum of squares.
#[derive(Clone, Debug)]
pub struct KMeansResult {
    pub assignment: CommunityAssignment,
    pub objective: f64,
    /// Objective after each Lloyd iteration of the winning restart.
    pub trace: Vec<f64>,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn rows(points: &DMatrix<f64>) -> Vec<Vec<f64>> {
    points.row_iter().map(|r| r.iter().copied().collect()).collect()
}

/// Within-cluster sum of squares of a labeling.
pub fn kmeans_objective(points: &DMatrix<f64>, labels: &[usize], k: usize) -> f64 {
    let pts = rows(points);
    let centers = centroids(&pts, labels, k);
    pts.iter()
        .zip(labels)
        .map(|(p, &l)| centers[l].as_ref().map_or(0.0, |c| sq_dist(p, c)))
        .sum()
}

fn centroids(pts: &[Vec<f64>], labels: &[usize], k: usize) -> Vec<Option<Vec<f64>>> {
    let d = pts.first().map_or(0, Vec::len);
    let mut sums = vec![vec![0.0; d]; k];
    let mut counts = vec![0usize; k];
    for (p, &l) in pts.iter().zip(labels) {
        counts[l] += 1;
        sums[l].iter_mut().zip(p).for_each(|(s, x)| *s += x);
    }
    sums.into_iter()
        .zip(counts)
        .map(|(s, c)| (c > 0).then(|| s.into_iter().map(|x| x / c as f64).collect()))
        .collect()
}

fn plus_plus_init(pts: &[Vec<f64>], k: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    let n = pts.len();
    let mut centers = vec![pts[rng.gen_range(0..n)].clone()];
    let mut dist: Vec<f64> = pts.iter().map(|p| sq_dist(p, &centers[0])).collect();
    while centers.len() < k {
        let total: f64 = dist.iter().sum();
        let pick = if total > 0.0 {
            let mut r = rng.gen::<f64>() * total;
            let mut pick = n - 1;
            for (i, &d) in dist.iter().enumerate() {
                if r < d {
                    pick = i;
                    break;
                }
                r -= d;
            }
            pick
        } else {
            rng.gen_range(0..n)
        };
        centers.push(pts[pick].clone());
        for (d, p) in dist.iter_mut().zip(pts) {
            *d = d.min(sq_dist(p, &centers[centers.len() - 1]));
        }
    }
    centers
}

fn assign(pts: &[Vec<f64>], centers: &[Vec<f64>], labels: &mut [usize]) -> f64 {
    let mut obj = 0.0;
    for (p, l) in pts.iter().zip(labels.iter_mut()) {
        let (best, d) = centers
            .iter()
            .enumerate()
            .map(|(c, ctr)| (c, sq_dist(p, ctr)))
            .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
        *l = best;
        obj += d;
    }
    obj
}

/// Moves the point farthest from its center into each empty cluster.
fn repair_empty(pts: &[Vec<f64>], labels: &mut [usize], centers: &mut [Vec<f64>], k: usize) {
    loop {
        let mut counts = vec![0usize; k];
        labels.iter().for_each(|&l| counts[l] += 1);
        let Some(empty) = counts.iter().position(|&c| c == 0) else { return };
        let far = (0..pts.len())
            .filter(|&i| counts[labels[i]] > 1)
            .map(|i| (i, sq_dist(&pts[i], &centers[labels[i]])))
            .fold((usize::MAX, -1.0), |a, b| if b.1 > a.1 { b } else { a })
            .0;
        if far == usize::MAX {
            return;
        }
        labels[far] = empty;
        centers[empty] = pts[far].clone();
    }
}

fn lloyd(pts: &[Vec<f64>], k: usize, seed: u64) -> (Vec<usize>, f64, Vec<f64>) {
    let mut rng = stream_rng(seed, Stream::KMeans);
    let mut centers = plus_plus_init(pts, k, &mut rng);
    let mut labels = vec![0usize; pts.len()];
    let mut obj = assign(pts, &centers, &mut labels);
    let mut trace = Vec::new();
    for _ in 0..MAX_ITERS {
        repair_empty(pts, &mut labels, &mut centers, k);
        for (c, ctr) in centroids(pts, &labels, k).into_iter().enumerate() {
            if let Some(ctr) = ctr {
                centers[c] = ctr;
            }
        }
        let next = assign(pts, &centers, &mut labels);
        trace.push(next);
        let done = (obj - next).abs() <= REL_TOL * obj.abs().max(f64::MIN_POSITIVE);
        obj = next;
        if done {
            break;
        }
    }
    repair_empty(pts, &mut labels, &mut centers, k);
    let centers = centroids(pts, &labels, k);
    let obj = pts
        .iter()
        .zip(&labels)
        .map(|(p, &l)| centers[l].as_ref().map_or(0.0, |c| sq_dist(p, c)))
        .sum::<f64>();
    (labels, obj, trace)
}

/// k-means++ seeding followed by Lloyd iterations, best of `restarts`.
/// Restarts run in parallel with per-restart seeds; ties on the objective go
/// to the lowest restart index.
pub fn kmeans(points: &DMatrix<f64>, k: usize, restarts: usize, seed: u64) -> Result<KMeansResult> {
    let n = points.nrows();
    if k == 0 || k > n {
        return Err(Error::InvalidParams(format!("k-means needs 1 <= k <= n, got k={k}, n={n}")));
    }
    if restarts == 0 {
        return Err(Error::InvalidParams("k-means needs at least one restart".into()));
    }
    let pts = rows(points);
    let runs: Vec<(Vec<usize>, f64, Vec<f64>)> = (0..restarts)
        .into_par_iter()
        .map(|r| lloyd(&pts, k, derive_seed(&[seed, r as u64])))
        .collect();
    let (labels, objective, trace) = runs
        .into_iter()
        .reduce(|best, next| if next.1 < best.1 { next } else { best })
        .expect("restarts >= 1");
    Ok(KMeansResult {
        assignment: CommunityAssignment::new(labels, k)?,
        objective,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn clouds() -> DMatrix<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut data = Vec::new();
        for c in [0.0, 10.0] {
            for _ in 0..15 {
                data.push(c + rng.gen_range(-0.01..0.01));
                data.push(c + rng.gen_range(-0.01..0.01));
            }
        }
        DMatrix::from_row_slice(30, 2, &data)
    }

    #[test]
    fn separates_two_clouds() {
        let r = kmeans(&clouds(), 2, 5, 0).unwrap();
        let l = r.assignment.labels();
        assert!(l[..15].iter().all(|&x| x == l[0]));
        assert!(l[15..].iter().all(|&x| x == l[15]));
        assert_ne!(l[0], l[15]);
    }

    #[test]
    fn one_point_per_cluster_has_zero_objective() {
        let pts = DMatrix::from_row_slice(4, 1, &[0.0, 1.0, 5.0, 9.0]);
        let r = kmeans(&pts, 4, 3, 2).unwrap();
        assert_eq!(r.objective, 0.0);
        assert_eq!(r.assignment.sizes(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn duplicate_points_still_fill_every_cluster() {
        let pts = DMatrix::from_row_slice(5, 1, &[1.0, 1.0, 1.0, 1.0, 2.0]);
        let r = kmeans(&pts, 3, 2, 0).unwrap();
        assert!(r.assignment.sizes().iter().all(|&s| s > 0));
    }

    #[test]
    fn beats_random_labelings() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts = DMatrix::from_fn(50, 3, |_, _| rng.gen::<f64>());
        let r = kmeans(&pts, 3, DEFAULT_RESTARTS, 11).unwrap();
        for _ in 0..1000 {
            let labels: Vec<usize> = (0..50).map(|_| rng.gen_range(0..3)).collect();
            assert!(r.objective <= kmeans_objective(&pts, &labels, 3) + 1e-12);
        }
    }

    #[test]
    fn objective_trace_is_non_increasing() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts = DMatrix::from_fn(200, 2, |_, _| rng.gen::<f64>());
        let r = kmeans(&pts, 5, 4, 5).unwrap();
        for w in r.trace.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
    }

    #[test]
    fn deterministic_and_validated() {
        let a = kmeans(&clouds(), 2, 4, 9).unwrap();
        let b = kmeans(&clouds(), 2, 4, 9).unwrap();
        assert_eq!(a.assignment, b.assignment);
        assert!(kmeans(&clouds(), 31, 1, 0).is_err());
        assert!(kmeans(&clouds(), 2, 0, 0).is_err());
    }
}
