//! Single-vehicle GRASP and the cluster-first route-second solver built on
//! top of it.
//!
//! For each greedy heuristic, `n_it` randomized routes are built, driven to
//! a VND local optimum, and, when within `lk_trigger` of the incumbent,
//! polished further by LK-op. The best route over all iterations wins.

mod config;
mod construct;
mod lk;
mod local_search;
mod subproblem;

pub use config::SolverConfig;
pub use construct::{construct, Heuristic};
pub use lk::{lk_op, lk_op_with};
pub use local_search::{apply_reverse, apply_swap, best_reverse, best_swap, vnd, vnd_in_place};
pub use subproblem::{CandidateLists, SubProblem};

use crate::clustering;
use crate::error::Result;
use crate::instance::{Instance, LatencyModel};
use crate::objective::{route_cost, Route, Solution};
use crate::rng::{derive_seed, stream};

/// Seed-path tag separating the proposed solver's streams from others.
const PROPOSED_STREAM: u64 = 0x5052_4f50;

/// Best route found by [`grasp_solve`].
#[derive(Debug, Clone, PartialEq)]
pub struct GraspOutcome {
    /// Local indices, starting with 0.
    pub route: Vec<usize>,
    pub cost: f64,
    /// Incumbent cost after each processed initial solution.
    pub trace: Vec<f64>,
}

/// Runs GRASP on a cluster. `seed` selects the random streams; `injected`
/// is an extra initial route (local indices) processed before the
/// randomized ones.
pub fn grasp_solve(
    sub: &SubProblem,
    config: &SolverConfig,
    seed: u64,
    injected: Option<&[usize]>,
) -> GraspOutcome {
    let k = sub.size();
    if k <= 2 {
        let route: Vec<usize> = (0..k).collect();
        let cost = route_cost(&route, sub);
        return GraspOutcome {
            route,
            cost,
            trace: vec![cost],
        };
    }
    let cands = CandidateLists::new(sub, config.max_beta());
    let mut best: Option<(Vec<usize>, f64)> = None;
    let mut trace = Vec::with_capacity(2 * config.n_it + 1);

    let mut improve = |mut route: Vec<usize>, best: &mut Option<(Vec<usize>, f64)>| {
        let mut cost = vnd_in_place(&mut route, sub);
        let incumbent = best.as_ref().map_or(f64::INFINITY, |b| b.1);
        if cost < config.lk_trigger * incumbent {
            route = lk_op_with(route, sub, &cands, config);
            cost = route_cost(&route, sub);
        }
        if cost < incumbent {
            *best = Some((route, cost));
        }
        trace.push(best.as_ref().map_or(f64::INFINITY, |b| b.1));
    };

    if let Some(initial) = injected {
        improve(initial.to_vec(), &mut best);
    }
    for (h, heuristic) in Heuristic::ALL.into_iter().enumerate() {
        for it in 0..config.n_it {
            let mut rng = stream(seed, &[h as u64, it as u64]);
            let route = construct(sub, heuristic, config.rcl_size, &mut rng);
            improve(route, &mut best);
        }
    }
    let (route, cost) = best.expect("at least one iteration ran");
    GraspOutcome { route, cost, trace }
}

/// GRASP over the global vertex set `cluster` anchored at `start`.
pub fn solve_cluster(
    inst: &Instance,
    cluster: &[usize],
    start: usize,
    config: &SolverConfig,
    seed: u64,
    injected: Option<&Route>,
) -> Route {
    let sub = SubProblem::new(inst, cluster, start);
    let local = injected.map(|r| {
        let mut index = std::collections::HashMap::with_capacity(r.len());
        for (l, &g) in sub.global_ids().iter().enumerate() {
            index.insert(g, l);
        }
        r.vertices().iter().map(|g| index[g]).collect::<Vec<_>>()
    });
    let out = grasp_solve(&sub, config, seed, local.as_deref());
    sub.to_global(&out.route)
}

/// Clusters with the greedy latency-aware clustering, then re-optimizes each
/// cluster's order with GRASP. The clustering's own order is one of the
/// initial solutions, so the result is never worse than the clustering.
pub fn solve_proposed(inst: &Instance, config: &SolverConfig) -> Result<Solution> {
    config.validate()?;
    let clusters = clustering::cluster(inst);
    let routes = clusters
        .routes()
        .iter()
        .enumerate()
        .map(|(i, route)| {
            let sub = SubProblem::new(inst, route.vertices(), route.start());
            let seed = derive_seed(config.seed, &[PROPOSED_STREAM, i as u64]);
            let out = grasp_solve(&sub, config, seed, Some(&sub.identity_order()));
            sub.to_global(&out.route)
        })
        .collect();
    Ok(Solution::new(routes, inst)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{build_costs, Mode};

    fn scattered(n: usize, vehicles: usize) -> Instance {
        let coords: Vec<(f64, f64)> = (0..n)
            .map(|i| (((i * 37) % 101) as f64, ((i * 59) % 97) as f64))
            .collect();
        Instance::new(
            "g".into(),
            Mode::Mtdp,
            coords.clone(),
            build_costs(&coords),
            vec![1.0; n],
            vec![0; vehicles],
        )
        .unwrap()
    }

    #[test]
    fn two_vertex_cluster() {
        let inst = scattered(5, 1);
        let sub = SubProblem::new(&inst, &[0, 3], 0);
        let out = grasp_solve(&sub, &SolverConfig::default(), 1, None);
        assert_eq!(out.route, vec![0, 1]);
        assert_eq!(out.cost, inst.costs().get(0, 3));
    }

    #[test]
    fn incumbent_never_worsens() {
        let inst = scattered(25, 1);
        let sub = SubProblem::whole(&inst, 0);
        let cfg = SolverConfig {
            n_it: 10,
            ..SolverConfig::default()
        };
        let out = grasp_solve(&sub, &cfg, 5, None);
        assert_eq!(out.trace.len(), 20);
        assert!(out.trace.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(*out.trace.last().unwrap(), out.cost);
        assert_eq!(out, grasp_solve(&sub, &cfg, 5, None));
    }

    #[test]
    fn proposed_not_worse_than_clustering() {
        let inst = scattered(30, 3);
        let cfg = SolverConfig {
            n_it: 5,
            ..SolverConfig::default()
        };
        let sol = solve_proposed(&inst, &cfg).unwrap();
        assert!(sol.cost() <= clustering::cluster(&inst).cost());
        assert!(sol.validate(&inst).is_ok());
    }

    #[test]
    fn one_vertex_per_vehicle_keeps_clustering_cost() {
        let inst = scattered(4, 3);
        let sol = solve_proposed(&inst, &SolverConfig::default()).unwrap();
        assert_eq!(sol.cost(), clustering::cluster(&inst).cost());
    }

    #[test]
    fn solve_cluster_maps_back_to_global_ids() {
        let inst = scattered(12, 1);
        let cluster = [0, 4, 7, 9, 11];
        let r = solve_cluster(&inst, &cluster, 0, &SolverConfig::default(), 3, None);
        let mut v = r.vertices().to_vec();
        assert_eq!(v[0], 0);
        v.sort_unstable();
        assert_eq!(v, cluster);
    }
}
