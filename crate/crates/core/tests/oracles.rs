//! Solver components checked against independent brute-force oracles.

#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use mdsearch::baseline::{kmeanspp_seeds, lloyd, sq_dist};
use mdsearch::grasp::{grasp_solve, lk_op, solve_proposed, SubProblem};
use mdsearch::instance::{LatencyModel, Mode, Point};
use mdsearch::objective::{arrival_times, evaluate, evaluate_delta_2opt, route_cost, RouteEval};
use mdsearch::rng::stream;
use mdsearch::{Instance, Route, SolverConfig};
use proptest::prelude::*;
use rand::Rng;

fn instance_strategy(
    max_n: usize,
    max_m: usize,
) -> impl Strategy<Value = (u64, usize, usize, bool)> {
    (any::<u64>(), 2..=max_n, 1..=max_m, any::<bool>())
}

fn mode(gsp: bool) -> Mode {
    if gsp {
        Mode::Mgsp
    } else {
        Mode::Mtdp
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reversal_delta_matches_full_evaluation((seed, n, _, gsp) in instance_strategy(12, 1), a in any::<usize>(), b in any::<usize>()) {
        let mut r = rng(seed);
        let inst = random_matrix(&mut r, n, 1, mode(gsp));
        let route = random_route(&mut r, n);
        let (i, j) = (1 + a % (n - 1), 1 + b % (n - 1));
        let (i, j) = (i.min(j), i.max(j));
        let mut after = route.clone();
        after[i..=j].reverse();
        let expected = brute_route_cost(&inst, &after) - brute_route_cost(&inst, &route);
        prop_assert!(close(evaluate_delta_2opt(&route, i, j, &inst), expected, 1e-9));
    }

    #[test]
    fn swap_delta_matches_full_evaluation((seed, n, _, gsp) in instance_strategy(12, 1), a in any::<usize>(), b in any::<usize>()) {
        prop_assume!(n >= 3);
        let mut r = rng(seed);
        let inst = random_matrix(&mut r, n, 1, mode(gsp));
        let route = random_route(&mut r, n);
        let (i, j) = (1 + a % (n - 1), 1 + b % (n - 1));
        prop_assume!(i != j);
        let (i, j) = (i.min(j), i.max(j));
        let mut after = route.clone();
        after.swap(i, j);
        let expected = brute_route_cost(&inst, &after) - brute_route_cost(&inst, &route);
        let delta = RouteEval::new(&route, &inst).delta_swap(&route, &inst, i, j);
        prop_assert!(close(delta, expected, 1e-9));
    }

    #[test]
    fn evaluate_is_additive_and_scales_with_probability((seed, n, m, _) in instance_strategy(12, 3)) {
        let mut r = rng(seed);
        let inst = random_euclidean(&mut r, n, m, Mode::Mgsp);
        let mut routes: Vec<Vec<usize>> = vec![vec![0]; m];
        for v in 1..n {
            routes[r.gen_range(0..m)].push(v);
        }
        let routes: Vec<Route> = routes.into_iter().map(Route::new).collect();
        let total = evaluate(&routes, &inst).unwrap();
        let parts: f64 = routes.iter().map(|x| brute_route_cost(&inst, x.vertices())).sum();
        prop_assert!(close(total, parts, 1e-9));

        // uniform weights give the plain sum of arrival times, scaled by 1/n
        let uniform = Instance::new(
            "u".into(), Mode::Mgsp, inst.coords().to_vec(), inst.costs().clone(),
            vec![1.0 / n as f64; n], vec![0; m],
        ).unwrap();
        let latency: f64 = routes.iter().map(|x| arrival_times(x.vertices(), &inst).iter().sum::<f64>()).sum();
        prop_assert!(close(evaluate(&routes, &uniform).unwrap() * n as f64, latency, 1e-9));
    }
}

#[test]
fn arrival_times_match_prefix_sums() {
    let mut r = rng(7);
    for _ in 0..200 {
        let inst = random_matrix(&mut r, 10, 1, Mode::Mtdp);
        let route = random_route(&mut r, 10);
        let tau = arrival_times(&route, &inst);
        assert_eq!(tau[0], 0.0);
        for k in 1..10 {
            let direct: f64 = (1..=k).map(|e| inst.cost(route[e - 1], route[e])).sum();
            assert!(close(tau[k], direct, 1e-12));
        }
    }
}

#[test]
fn grasp_finds_small_optima() {
    let mut r = rng(11);
    let cfg = SolverConfig {
        n_it: 10,
        ..SolverConfig::default()
    };
    for case in 0..30 {
        let n = r.gen_range(3..=8);
        let inst = random_euclidean(&mut r, n, 1, Mode::Mgsp);
        let sub = SubProblem::whole(&inst, 0);
        let out = grasp_solve(&sub, &cfg, case, None);
        let optimum = best_order(&inst, 0, &(1..n).collect::<Vec<_>>());
        assert!(out.cost >= optimum - 1e-9);
        assert!(close(route_cost(&out.route, &sub), out.cost, 1e-12));
    }
}

#[test]
fn proposed_never_beats_the_exhaustive_optimum() {
    let mut r = rng(12);
    for _ in 0..20 {
        let n = r.gen_range(3..=7);
        let inst = random_euclidean(&mut r, n, 2, Mode::Mtdp);
        let sol = solve_proposed(
            &inst,
            &SolverConfig {
                n_it: 5,
                ..SolverConfig::default()
            },
        )
        .unwrap();
        assert!(sol.cost() >= brute_optimum(&inst) - 1e-9);
    }
}

/// LK-op limited to one step: repeatedly take the first improving 2-opt
/// move that breaks a route edge `(t1, t2)` and links `t2` to one of its
/// `beta` nearest vertices `t3`, subject to `c(t1, t2) > c(t2, t3)`.
fn one_step_lk(inst: &Instance, mut route: Vec<usize>, beta: usize) -> Vec<usize> {
    let n = route.len();
    let has_edge = |r: &[usize], x: usize, y: usize| {
        r.windows(2)
            .any(|w| (w[0] == x && w[1] == y) || (w[0] == y && w[1] == x))
    };
    'restart: loop {
        let cost = brute_route_cost(inst, &route);
        for k in 1..n {
            let (u, v) = (route[k - 1], route[k]);
            for (t1, t2) in [(u, v), (v, u)] {
                let mut near: Vec<usize> = (0..n).filter(|&x| x != t2).collect();
                near.sort_by(|&a, &b| {
                    inst.cost(t2, a)
                        .total_cmp(&inst.cost(t2, b))
                        .then(a.cmp(&b))
                });
                for &t3 in near.iter().take(beta) {
                    if inst.cost(t1, t2) - inst.cost(t2, t3) <= 0.0 {
                        break;
                    }
                    if t3 == t1 {
                        continue;
                    }
                    let mut found = None;
                    for i in 1..n {
                        for j in i + 1..n {
                            let mut cand = route.clone();
                            cand[i..=j].reverse();
                            if !has_edge(&cand, t1, t2)
                                && has_edge(&cand, t2, t3)
                                && !has_edge(&route, t2, t3)
                            {
                                assert!(found.is_none(), "move is unique");
                                found = Some(cand);
                            }
                        }
                    }
                    if let Some(cand) = found {
                        if brute_route_cost(inst, &cand) - cost < -1e-9 * (1.0 + cost.abs()) {
                            route = cand;
                            continue 'restart;
                        }
                    }
                }
            }
        }
        return route;
    }
}

#[test]
fn single_step_lk_matches_oracle() {
    let mut r = rng(21);
    for case in 0..300 {
        let n = r.gen_range(3..=11);
        let gsp = case % 2 == 0;
        let inst = if case % 3 == 0 {
            random_matrix(&mut r, n, 1, mode(gsp))
        } else {
            random_euclidean(&mut r, n, 1, mode(gsp))
        };
        let beta = r.gen_range(1..=4);
        let cfg = SolverConfig {
            alpha: 1,
            beta: vec![beta],
            ..SolverConfig::default()
        };
        let start = random_route(&mut r, n);
        let got = lk_op(start.clone(), &inst, &cfg);
        let want = one_step_lk(&inst, start, beta);
        assert_eq!(got, want, "case {case}");
    }
}

fn oracle_lloyd(points: &[Point], mut centres: Vec<Point>) -> f64 {
    let k = centres.len();
    let mut prev: Option<Vec<usize>> = None;
    for _ in 0..100 {
        let assign: Vec<usize> = points
            .iter()
            .map(|&p| {
                (0..k)
                    .min_by(|&a, &b| sq_dist(p, centres[a]).total_cmp(&sq_dist(p, centres[b])))
                    .unwrap()
            })
            .collect();
        for c in 0..k {
            let members: Vec<Point> = points
                .iter()
                .zip(&assign)
                .filter(|(_, &a)| a == c)
                .map(|(&p, _)| p)
                .collect();
            assert!(!members.is_empty(), "oracle expects no empty clusters");
            let len = members.len() as f64;
            centres[c] = (
                members.iter().map(|p| p.0).sum::<f64>() / len,
                members.iter().map(|p| p.1).sum::<f64>() / len,
            );
        }
        if prev.as_ref() == Some(&assign) {
            break;
        }
        prev = Some(assign);
    }
    let assign = prev.unwrap();
    points
        .iter()
        .zip(&assign)
        .map(|(&p, &a)| sq_dist(p, centres[a]))
        .sum()
}

#[test]
fn lloyd_matches_oracle_on_berlin52() {
    let data = shipped("berlin52");
    let points: Vec<Point> = data.coords[1..].to_vec();
    for seed in 0..20 {
        let seeds = kmeanspp_seeds(&points, 4, &mut stream(seed, &[1]));
        let ours = lloyd(&points, seeds.clone(), 100);
        let oracle = oracle_lloyd(&points, seeds);
        assert!(
            close(*ours.sse_trace.last().unwrap(), oracle, 1e-9),
            "seed {seed}"
        );
        assert!(ours.sse_trace.windows(2).all(|w| w[1] <= w[0] + 1e-9));
    }
}
