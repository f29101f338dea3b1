//! Greedy latency-aware clustering. Routes grow one vertex at a time: every
//! step appends the unassigned vertex whose arrival time, discounted by
//! `1 + p(v)`, is smallest over all routes. The result is both a partition
//! and a visiting order, so it doubles as a fast standalone solver.

use crate::instance::Instance;
use crate::objective::{Route, Solution};

/// Partial fleet plan while clustering runs.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterState {
    pub routes: Vec<Vec<usize>>,
    /// Arrival time at the current tail of each route.
    pub route_time: Vec<f64>,
    /// Unassigned vertices in ascending order.
    pub remaining: Vec<usize>,
}

impl ClusterState {
    pub fn new(inst: &Instance) -> Self {
        let routes = inst.starts().iter().map(|&s| vec![s]).collect();
        let remaining = (0..inst.n()).filter(|&v| !inst.is_start(v)).collect();
        Self {
            routes,
            route_time: vec![0.0; inst.vehicles()],
            remaining,
        }
    }

    pub fn is_done(&self) -> bool {
        self.remaining.is_empty()
    }

    /// Appends the best (vertex, route) pair. Ties go to the lower vertex
    /// index, then the lower route index. Returns `(vertex, route)`.
    pub fn step(&mut self, inst: &Instance) -> Option<(usize, usize)> {
        let mut best: Option<(f64, f64, usize, usize)> = None;
        for (slot, &v) in self.remaining.iter().enumerate() {
            let discount = 1.0 + inst.prob()[v];
            for (r, route) in self.routes.iter().enumerate() {
                let last = *route.last().expect("routes are never empty");
                let arrival = self.route_time[r] + inst.costs().get(last, v);
                let penalty = arrival / discount;
                if best.is_none_or(|(b, ..)| penalty < b) {
                    best = Some((penalty, arrival, slot, r));
                }
            }
        }
        let (_, arrival, slot, r) = best?;
        let v = self.remaining.remove(slot);
        self.routes[r].push(v);
        self.route_time[r] = arrival;
        Some((v, r))
    }
}

/// Runs the clustering to completion.
pub fn cluster(inst: &Instance) -> Solution {
    let mut state = ClusterState::new(inst);
    while state.step(inst).is_some() {}
    let routes = state.routes.into_iter().map(Route::new).collect();
    Solution::new(routes, inst).expect("clustering covers every vertex once")
}
