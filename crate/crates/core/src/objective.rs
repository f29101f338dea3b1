//! Expected time to find the object: each vertex contributes its arrival
//! time weighted by its probability, summed over all vehicles.

use crate::error::ValidationError;
use crate::instance::{Instance, LatencyModel};

/// Visiting order of one vehicle. The first vertex is its start.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Route(Vec<usize>);

impl Route {
    pub fn new(vertices: Vec<usize>) -> Self {
        Self(vertices)
    }

    pub fn start(&self) -> usize {
        self.0[0]
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl From<Vec<usize>> for Route {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

impl AsRef<[usize]> for Route {
    fn as_ref(&self) -> &[usize] {
        &self.0
    }
}

/// Arrival time at each position of the route; the start is reached at 0.
pub fn arrival_times<M: LatencyModel + ?Sized>(route: &[usize], model: &M) -> Vec<f64> {
    let mut out = Vec::with_capacity(route.len());
    let mut t = 0.0;
    for (k, &v) in route.iter().enumerate() {
        if k > 0 {
            t += model.cost(route[k - 1], v);
        }
        out.push(t);
    }
    out
}

/// Probability-weighted latency of a single route.
pub fn route_cost<M: LatencyModel + ?Sized>(route: &[usize], model: &M) -> f64 {
    let mut t = 0.0;
    let mut total = 0.0;
    for w in route.windows(2) {
        t += model.cost(w[0], w[1]);
        total += t * model.weight(w[1]);
    }
    total
}

/// Checks that `routes` is a feasible fleet plan for `inst`: one route per
/// vehicle, each anchored at its start, covering every vertex exactly once
/// (start vertices shared by several vehicles excepted).
pub fn validate_routes(routes: &[Route], inst: &Instance) -> Result<(), ValidationError> {
    let n = inst.n();
    if routes.len() != inst.vehicles() {
        return Err(ValidationError::RouteCount {
            expected: inst.vehicles(),
            found: routes.len(),
        });
    }
    let mut seen = vec![false; n];
    for (i, (route, &start)) in routes.iter().zip(inst.starts()).enumerate() {
        if route.is_empty() {
            return Err(ValidationError::EmptyRoute(i));
        }
        if route.start() != start {
            return Err(ValidationError::WrongStart {
                route: i,
                expected: start,
                found: route.start(),
            });
        }
        for (k, &v) in route.vertices().iter().enumerate() {
            if v >= n {
                return Err(ValidationError::VertexOutOfRange { vertex: v, n });
            }
            let shared_start = k == 0 && inst.is_start(v);
            if seen[v] && !shared_start {
                return Err(ValidationError::Repeated(v));
            }
            if k > 0 && inst.is_start(v) {
                // a start vertex is only ever visited as a route head
                return Err(ValidationError::Repeated(v));
            }
            seen[v] = true;
        }
    }
    match seen.iter().position(|&s| !s) {
        Some(v) => Err(ValidationError::Uncovered(v)),
        None => Ok(()),
    }
}

/// Expected time to find the object for a complete fleet plan.
pub fn evaluate(routes: &[Route], inst: &Instance) -> Result<f64, ValidationError> {
    validate_routes(routes, inst)?;
    Ok(routes.iter().map(|r| route_cost(r.vertices(), inst)).sum())
}

/// Change in route cost caused by reversing positions `i..=j`
/// (`0 < i <= j < route.len()`).
pub fn evaluate_delta_2opt<M: LatencyModel + ?Sized>(
    route: &[usize],
    i: usize,
    j: usize,
    model: &M,
) -> f64 {
    RouteEval::new(route, model).delta_reverse(route, model, i, j)
}

/// Prefix sums over a route that make reversal and swap deltas O(1).
#[derive(Debug, Clone, Default)]
pub struct RouteEval {
    /// arrival time per position
    tau: Vec<f64>,
    /// `weight[k]` = sum of weights at positions `< k`
    weight: Vec<f64>,
    /// `weighted_tau[k]` = sum of weight * tau at positions `< k`
    weighted_tau: Vec<f64>,
}

impl RouteEval {
    pub fn new<M: LatencyModel + ?Sized>(route: &[usize], model: &M) -> Self {
        let mut e = Self::default();
        e.reset(route, model);
        e
    }

    pub fn reset<M: LatencyModel + ?Sized>(&mut self, route: &[usize], model: &M) {
        let n = route.len();
        self.tau.clear();
        self.weight.clear();
        self.weighted_tau.clear();
        self.weight.push(0.0);
        self.weighted_tau.push(0.0);
        let mut t = 0.0;
        for k in 0..n {
            if k > 0 {
                t += model.cost(route[k - 1], route[k]);
            }
            let w = model.weight(route[k]);
            self.tau.push(t);
            self.weight.push(self.weight[k] + w);
            self.weighted_tau.push(self.weighted_tau[k] + w * t);
        }
    }

    pub fn cost(&self) -> f64 {
        *self.weighted_tau.last().unwrap_or(&0.0)
    }

    pub fn arrival(&self, pos: usize) -> f64 {
        self.tau[pos]
    }

    #[inline]
    fn weight_range(&self, from: usize, to_incl: usize) -> f64 {
        self.weight[to_incl + 1] - self.weight[from]
    }

    #[inline]
    fn weighted_tau_range(&self, from: usize, to_incl: usize) -> f64 {
        self.weighted_tau[to_incl + 1] - self.weighted_tau[from]
    }

    /// Weight of positions `from..`.
    #[inline]
    fn weight_suffix(&self, from: usize) -> f64 {
        self.weight[self.weight.len() - 1] - self.weight[from]
    }

    /// Delta of reversing the segment at positions `i..=j`. Needs symmetric
    /// costs so the reversed segment keeps its internal length.
    pub fn delta_reverse<M: LatencyModel + ?Sized>(
        &self,
        route: &[usize],
        model: &M,
        i: usize,
        j: usize,
    ) -> f64 {
        debug_assert!(0 < i && i <= j && j < route.len());
        if i == j {
            return 0.0;
        }
        let n = route.len();
        let entry = self.tau[i - 1] + model.cost(route[i - 1], route[j]);
        // position k in the segment is now reached at entry + (tau_j - tau_k)
        let seg_weight = self.weight_range(i, j);
        let seg_wtau = self.weighted_tau_range(i, j);
        let mut delta = seg_weight * (entry + self.tau[j]) - 2.0 * seg_wtau;
        if j + 1 < n {
            let seg_end = entry + self.tau[j] - self.tau[i];
            let shift = seg_end + model.cost(route[i], route[j + 1]) - self.tau[j + 1];
            delta += shift * self.weight_suffix(j + 1);
        }
        delta
    }

    /// Delta of exchanging the vertices at positions `i < j` (both > 0).
    pub fn delta_swap<M: LatencyModel + ?Sized>(
        &self,
        route: &[usize],
        model: &M,
        i: usize,
        j: usize,
    ) -> f64 {
        debug_assert!(0 < i && i < j && j < route.len());
        let n = route.len();
        let (a, b) = (route[i], route[j]);
        let (wa, wb) = (model.weight(a), model.weight(b));
        let at_i = self.tau[i - 1] + model.cost(route[i - 1], b);
        let (at_j, mut delta) = if j == i + 1 {
            let at_j = at_i + model.cost(b, a);
            (at_j, 0.0)
        } else {
            let shift = at_i + model.cost(b, route[i + 1]) - self.tau[i + 1];
            let at_j = self.tau[j - 1] + shift + model.cost(route[j - 1], a);
            (at_j, shift * self.weight_range(i + 1, j - 1))
        };
        delta += wb * at_i - wa * self.tau[i] + wa * at_j - wb * self.tau[j];
        if j + 1 < n {
            let shift = at_j + model.cost(a, route[j + 1]) - self.tau[j + 1];
            delta += shift * self.weight_suffix(j + 1);
        }
        delta
    }
}

/// A validated fleet plan with its cached expected time.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    routes: Vec<Route>,
    cost: f64,
}

impl Solution {
    pub fn new(routes: Vec<Route>, inst: &Instance) -> Result<Self, ValidationError> {
        let cost = evaluate(&routes, inst)?;
        Ok(Self { routes, cost })
    }

    pub fn routes(&self) -> &[Route] {
        &self.routes
    }

    pub fn cost(&self) -> f64 {
        self.cost
    }

    pub fn into_routes(self) -> Vec<Route> {
        self.routes
    }

    /// Re-checks every invariant, including the cached cost.
    pub fn validate(&self, inst: &Instance) -> Result<(), ValidationError> {
        let cost = evaluate(&self.routes, inst)?;
        if (cost - self.cost).abs() > 1e-6 * cost.abs().max(1.0) {
            return Err(ValidationError::CostMismatch {
                cached: self.cost,
                actual: cost,
            });
        }
        Ok(())
    }
}
