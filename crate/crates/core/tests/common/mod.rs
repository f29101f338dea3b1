#![allow(dead_code, clippy::needless_range_loop)]

use std::path::PathBuf;

use mdsearch::instance::{build_costs, parse_tsplib, CostMatrix, Mode, Tsplib};
use mdsearch::Instance;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Directories searched for TSPLIB files: `MDSEARCH_TSPLIB_DIR` first, then
/// the files shipped with the crate.
pub fn data_dirs() -> Vec<PathBuf> {
    let mut dirs = Vec::new();
    if let Ok(dir) = std::env::var("MDSEARCH_TSPLIB_DIR") {
        dirs.push(PathBuf::from(dir));
    }
    dirs.push(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data"));
    dirs
}

pub fn find_file(file: &str) -> Option<PathBuf> {
    data_dirs()
        .into_iter()
        .map(|d| d.join(file))
        .find(|p| p.is_file())
}

pub fn tsplib(name: &str) -> Option<Tsplib> {
    let path = find_file(&format!("{name}.tsp"))?;
    Some(parse_tsplib(&std::fs::read_to_string(path).unwrap()).unwrap())
}

pub fn shipped(name: &str) -> Tsplib {
    tsplib(name).unwrap_or_else(|| panic!("{name}.tsp is shipped with the crate"))
}

/// Closed-tour length, for checking against published optimal tours.
pub fn tour_length(costs: &CostMatrix, tour: &[usize]) -> f64 {
    (0..tour.len())
        .map(|k| costs.get(tour[k], tour[(k + 1) % tour.len()]))
        .sum()
}

pub fn random_probabilities(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let sum: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / sum).collect()
}

/// Random integer points in a square, EUC_2D costs.
pub fn random_euclidean(rng: &mut ChaCha8Rng, n: usize, vehicles: usize, mode: Mode) -> Instance {
    let coords: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.gen_range(0..200) as f64, rng.gen_range(0..200) as f64))
        .collect();
    let prob = match mode {
        Mode::Mtdp => vec![1.0; n],
        Mode::Mgsp => random_probabilities(rng, n),
    };
    Instance::new(
        "random".into(),
        mode,
        coords.clone(),
        build_costs(&coords),
        prob,
        vec![0; vehicles],
    )
    .unwrap()
}

/// Random symmetric non-metric costs and random start vertices.
pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, vehicles: usize, mode: Mode) -> Instance {
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let c = rng.gen_range(0.0..100.0);
            rows[i][j] = c;
            rows[j][i] = c;
        }
    }
    let prob = match mode {
        Mode::Mtdp => vec![1.0; n],
        Mode::Mgsp => random_probabilities(rng, n),
    };
    let starts = (0..vehicles).map(|_| rng.gen_range(0..n)).collect();
    Instance::new(
        "matrix".into(),
        mode,
        Vec::new(),
        CostMatrix::from_rows(&rows),
        prob,
        starts,
    )
    .unwrap()
}

/// A random route over all vertices starting at 0.
pub fn random_route(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut rest: Vec<usize> = (1..n).collect();
    rest.shuffle(rng);
    std::iter::once(0).chain(rest).collect()
}

/// Expected time of one route, summed directly from its definition.
pub fn brute_route_cost(inst: &Instance, route: &[usize]) -> f64 {
    let mut total = 0.0;
    for k in 1..route.len() {
        let arrival: f64 = (1..=k)
            .map(|e| inst.costs().get(route[e - 1], route[e]))
            .sum();
        total += arrival * inst.prob()[route[k]];
    }
    total
}

fn permutations(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Cheapest order of `rest` after `start`, by full enumeration.
pub fn best_order(inst: &Instance, start: usize, rest: &[usize]) -> f64 {
    let mut best = f64::INFINITY;
    let mut items = rest.to_vec();
    let mut route = vec![start; rest.len() + 1];
    permutations(&mut items, 0, &mut |perm| {
        route[1..].copy_from_slice(perm);
        best = best.min(brute_route_cost(inst, &route));
    });
    best
}

/// Optimum over every assignment of the non-start vertices to vehicles and
/// every visiting order. All vehicles share the start vertex `starts[0]`.
pub fn brute_optimum(inst: &Instance) -> f64 {
    let start = inst.starts()[0];
    assert!(inst.starts().iter().all(|&s| s == start));
    let rest: Vec<usize> = (0..inst.n()).filter(|&v| v != start).collect();
    let m = inst.vehicles();
    let mut memo = std::collections::HashMap::new();
    let mut best = f64::INFINITY;
    let total = m.pow(rest.len() as u32);
    for code in 0..total {
        let mut masks = vec![0u32; m];
        let mut c = code;
        for bit in 0..rest.len() {
            masks[c % m] |= 1 << bit;
            c /= m;
        }
        // vehicles are interchangeable: only count canonical labelings
        if masks.windows(2).any(|w| w[0] < w[1]) {
            continue;
        }
        let cost: f64 = masks
            .iter()
            .map(|&mask| {
                *memo.entry(mask).or_insert_with(|| {
                    let group: Vec<usize> = (0..rest.len())
                        .filter(|b| mask & (1 << b) != 0)
                        .map(|b| rest[b])
                        .collect();
                    best_order(inst, start, &group)
                })
            })
            .sum();
        best = best.min(cost);
    }
    best
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}
