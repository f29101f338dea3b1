//! Comparison method: k-means++ on vertex coordinates, then one GRASP run
//! per group.

use rand::Rng;

use crate::error::{KMeansError, Result};
use crate::grasp::{grasp_solve, SolverConfig, SubProblem};
use crate::instance::{Instance, Point};
use crate::objective::{Route, Solution};
use crate::rng::{derive_seed, stream, SolverRng};

const MAX_LLOYD_ITERATIONS: usize = 100;
const KMEANS_STREAM: u64 = 0x4b4d_4e53;
const ROUTING_STREAM: u64 = 0x4b52_5445;

/// Vertex groups with their centroids. Groups are ordered by ascending
/// centroid x (then y), which is also the vehicle they are assigned to.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    pub groups: Vec<Vec<usize>>,
    pub centroids: Vec<Point>,
}

impl Partition {
    /// Within-cluster sum of squared distances.
    pub fn sse(&self, coords: &[Point]) -> f64 {
        self.groups
            .iter()
            .zip(&self.centroids)
            .map(|(g, &c)| g.iter().map(|&v| sq_dist(coords[v], c)).sum::<f64>())
            .sum()
    }
}

/// Result of Lloyd's iteration over a point set.
#[derive(Debug, Clone, PartialEq)]
pub struct Lloyd {
    /// Cluster of each point.
    pub assignment: Vec<usize>,
    pub centroids: Vec<Point>,
    /// SSE after each assignment step.
    pub sse_trace: Vec<f64>,
    pub iterations: usize,
}

#[inline]
pub fn sq_dist(a: Point, b: Point) -> f64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    dx * dx + dy * dy
}

fn nearest(p: Point, centroids: &[Point]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (c, &q) in centroids.iter().enumerate() {
        let d = sq_dist(p, q);
        if d < best_d {
            best_d = d;
            best = c;
        }
    }
    best
}

/// k-means++ seeding: first centre uniform, every further centre drawn with
/// probability proportional to the squared distance to the nearest chosen
/// centre.
pub fn kmeanspp_seeds(points: &[Point], k: usize, rng: &mut SolverRng) -> Vec<Point> {
    let mut centres = Vec::with_capacity(k);
    centres.push(points[rng.gen_range(0..points.len())]);
    let mut d2: Vec<f64> = points.iter().map(|&p| sq_dist(p, centres[0])).collect();
    while centres.len() < k {
        let total: f64 = d2.iter().sum();
        let chosen = if total <= 0.0 {
            rng.gen_range(0..points.len())
        } else {
            let mut target = rng.gen::<f64>() * total;
            let mut idx = points.len() - 1;
            for (i, &d) in d2.iter().enumerate() {
                target -= d;
                if target < 0.0 && d > 0.0 {
                    idx = i;
                    break;
                }
            }
            idx
        };
        let c = points[chosen];
        centres.push(c);
        for (d, &p) in d2.iter_mut().zip(points) {
            *d = d.min(sq_dist(p, c));
        }
    }
    centres
}

/// Lloyd's iteration from the given centres until assignments stop
/// changing or `max_iterations` is reached. A cluster that empties is
/// reseeded at the point farthest from its own centroid.
pub fn lloyd(points: &[Point], mut centroids: Vec<Point>, max_iterations: usize) -> Lloyd {
    let k = centroids.len();
    let mut assignment: Vec<usize> = points.iter().map(|&p| nearest(p, &centroids)).collect();
    let mut sse_trace = Vec::new();
    let mut iterations = 0;
    loop {
        reseed_empty(points, &mut assignment, &centroids, k);
        centroids = means(points, &assignment, k);
        sse_trace.push(sse_of(points, &assignment, &centroids));
        iterations += 1;
        if iterations >= max_iterations {
            break;
        }
        let next: Vec<usize> = points.iter().map(|&p| nearest(p, &centroids)).collect();
        if next == assignment {
            break;
        }
        assignment = next;
    }
    Lloyd {
        assignment,
        centroids,
        sse_trace,
        iterations,
    }
}

fn sse_of(points: &[Point], assignment: &[usize], centroids: &[Point]) -> f64 {
    points
        .iter()
        .zip(assignment)
        .map(|(&p, &c)| sq_dist(p, centroids[c]))
        .sum()
}

fn means(points: &[Point], assignment: &[usize], k: usize) -> Vec<Point> {
    let mut sums = vec![(0.0, 0.0, 0usize); k];
    for (&p, &c) in points.iter().zip(assignment) {
        sums[c].0 += p.0;
        sums[c].1 += p.1;
        sums[c].2 += 1;
    }
    sums.into_iter()
        .map(|(x, y, m)| (x / m as f64, y / m as f64))
        .collect()
}

fn reseed_empty(points: &[Point], assignment: &mut [usize], centroids: &[Point], k: usize) {
    loop {
        let mut sizes = vec![0usize; k];
        for &c in assignment.iter() {
            sizes[c] += 1;
        }
        let Some(empty) = sizes.iter().position(|&s| s == 0) else {
            return;
        };
        // farthest point from its centroid, taken from a cluster that can spare it
        let far = (0..points.len())
            .filter(|&i| sizes[assignment[i]] > 1)
            .max_by(|&a, &b| {
                let da = sq_dist(points[a], centroids[assignment[a]]);
                let db = sq_dist(points[b], centroids[assignment[b]]);
                da.total_cmp(&db).then(b.cmp(&a))
            })
            .expect("k <= number of points");
        assignment[far] = empty;
    }
}

/// k-means++ over the coordinates of every non-start vertex.
pub fn kmeans_pp(inst: &Instance, k: usize, seed: u64) -> Result<Partition, KMeansError> {
    let vertices: Vec<usize> = (0..inst.n()).filter(|&v| !inst.is_start(v)).collect();
    if k == 0 {
        return Err(KMeansError::ZeroClusters);
    }
    if k > vertices.len() || inst.coords().is_empty() {
        return Err(KMeansError::TooFewPoints {
            k,
            points: if inst.coords().is_empty() {
                0
            } else {
                vertices.len()
            },
        });
    }
    let points: Vec<Point> = vertices.iter().map(|&v| inst.coords()[v]).collect();
    let mut rng = stream(seed, &[KMEANS_STREAM]);
    let seeds = kmeanspp_seeds(&points, k, &mut rng);
    let result = lloyd(&points, seeds, MAX_LLOYD_ITERATIONS);

    let mut groups = vec![Vec::new(); k];
    for (i, &c) in result.assignment.iter().enumerate() {
        groups[c].push(vertices[i]);
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        let (ca, cb) = (result.centroids[a], result.centroids[b]);
        ca.0.total_cmp(&cb.0)
            .then(ca.1.total_cmp(&cb.1))
            .then(a.cmp(&b))
    });
    Ok(Partition {
        groups: order
            .iter()
            .map(|&c| std::mem::take(&mut groups[c]))
            .collect(),
        centroids: order.iter().map(|&c| result.centroids[c]).collect(),
    })
}

/// k-means++ partition followed by GRASP on each group. Vehicle `i` gets
/// group `i` with its start vertex prepended; when there are fewer
/// clusterable vertices than vehicles the surplus vehicles stay at home.
pub fn solve_kmeans(inst: &Instance, config: &SolverConfig) -> Result<Solution> {
    config.validate()?;
    let clusterable = (0..inst.n()).filter(|&v| !inst.is_start(v)).count();
    let k = inst.vehicles().min(clusterable);
    let groups = if k == 0 {
        Vec::new()
    } else {
        kmeans_pp(inst, k, config.seed)?.groups
    };
    let routes = inst
        .starts()
        .iter()
        .enumerate()
        .map(|(i, &start)| match groups.get(i) {
            Some(group) => {
                let sub = SubProblem::new(inst, group, start);
                let seed = derive_seed(config.seed, &[ROUTING_STREAM, i as u64]);
                sub.to_global(&grasp_solve(&sub, config, seed, None).route)
            }
            None => Route::new(vec![start]),
        })
        .collect();
    Ok(Solution::new(routes, inst)?)
}
