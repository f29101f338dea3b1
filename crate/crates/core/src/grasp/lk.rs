//! LK-op: Lin-Kernighan style chains of 2-opt moves on an open route.
//!
//! Each route edge `(t1, t2)` seeds a chain (both orientations are tried).
//! A step adds an edge from the active endpoint `t2` to a candidate `t3`
//! taken from the `beta` shortest edges of `t2`, removes the edge
//! `(t3, t4)` that makes the result a single path again, and closes with
//! `(t1, t4)`; `t4` becomes the next active endpoint. Every step is one
//! segment reversal. Steps are bounded by `alpha`, follow the classical
//! positive-gain rule on edge lengths, and never re-add a removed edge or
//! remove an added one. Intermediate routes may be worse than the starting
//! one; the first route in the search tree that beats it is accepted and
//! the scan restarts from the first edge.

use crate::instance::LatencyModel;
use crate::objective::RouteEval;

use super::config::SolverConfig;
use super::local_search::{apply_reverse, improves};
use super::subproblem::CandidateLists;

pub fn lk_op<M: LatencyModel + ?Sized>(
    route: Vec<usize>,
    model: &M,
    config: &SolverConfig,
) -> Vec<usize> {
    let cands = CandidateLists::new(model, config.max_beta());
    lk_op_with(route, model, &cands, config)
}

/// [`lk_op`] with precomputed candidate lists.
pub fn lk_op_with<M: LatencyModel + ?Sized>(
    route: Vec<usize>,
    model: &M,
    cands: &CandidateLists,
    config: &SolverConfig,
) -> Vec<usize> {
    if route.len() < 3 {
        return route;
    }
    let mut search = Search::new(route, model, cands, config);
    search.run();
    search.route
}

/// The reversal realising one step plus the vertex that becomes active.
#[derive(Debug, Clone, Copy)]
struct Step {
    i: usize,
    j: usize,
    t4: Option<usize>,
}

fn same_edge(a: (usize, usize), b: (usize, usize)) -> bool {
    a == b || (a.1, a.0) == b
}

struct Search<'a, M: ?Sized> {
    route: Vec<usize>,
    pos: Vec<usize>,
    eval: RouteEval,
    model: &'a M,
    cands: &'a CandidateLists,
    config: &'a SolverConfig,
    added: Vec<(usize, usize)>,
    removed: Vec<(usize, usize)>,
}

impl<'a, M: LatencyModel + ?Sized> Search<'a, M> {
    fn new(
        route: Vec<usize>,
        model: &'a M,
        cands: &'a CandidateLists,
        config: &'a SolverConfig,
    ) -> Self {
        let mut pos = vec![0; model.size()];
        for (k, &v) in route.iter().enumerate() {
            pos[v] = k;
        }
        let eval = RouteEval::new(&route, model);
        Self {
            route,
            pos,
            eval,
            model,
            cands,
            config,
            added: Vec::new(),
            removed: Vec::new(),
        }
    }

    fn run(&mut self) {
        'scan: loop {
            let base = self.eval.cost();
            for k in 1..self.route.len() {
                let (u, v) = (self.route[k - 1], self.route[k]);
                for (t1, t2) in [(u, v), (v, u)] {
                    self.added.clear();
                    self.removed.clear();
                    self.removed.push((t1, t2));
                    if self.descend(0, t1, t2, self.model.cost(t1, t2), base) {
                        continue 'scan;
                    }
                }
            }
            return;
        }
    }

    /// Reversal that links `t2` to `t3` while keeping `t1` in place.
    fn plan(&self, t1: usize, t2: usize, t3: usize) -> Option<Step> {
        let (a, b, q) = (self.pos[t1], self.pos[t2], self.pos[t3]);
        let at = |p: usize| self.route.get(p).copied();
        if b == a + 1 {
            if q >= b + 2 {
                Some(Step {
                    i: b,
                    j: q - 1,
                    t4: at(q - 1),
                })
            } else if q >= 1 && q < a {
                Some(Step {
                    i: q,
                    j: a,
                    t4: at(q - 1),
                })
            } else {
                None
            }
        } else if q + 2 <= b {
            Some(Step {
                i: q + 1,
                j: b,
                t4: at(q + 1),
            })
        } else if q > a {
            Some(Step {
                i: a,
                j: q,
                t4: at(q + 1),
            })
        } else {
            None
        }
    }

    fn reverse(&mut self, i: usize, j: usize) {
        apply_reverse(&mut self.route, i, j);
        for p in i..=j {
            self.pos[self.route[p]] = p;
        }
        self.eval.reset(&self.route, self.model);
    }

    fn descend(&mut self, depth: usize, t1: usize, t2: usize, gain: f64, base: f64) -> bool {
        let beta = self.config.beta_at(depth + 1);
        let cands = self.cands;
        for &t3 in cands.of(t2).iter().take(beta) {
            let open_gain = gain - self.model.cost(t2, t3);
            if open_gain <= 0.0 {
                break;
            }
            if t3 == t1 {
                continue;
            }
            let Some(step) = self.plan(t1, t2, t3) else {
                continue;
            };
            if self.removed.iter().any(|&e| same_edge(e, (t2, t3))) {
                continue;
            }
            if let Some(t4) = step.t4 {
                if self.added.iter().any(|&e| same_edge(e, (t3, t4))) {
                    continue;
                }
            }
            self.reverse(step.i, step.j);
            if improves(self.eval.cost() - base, base) {
                return true;
            }
            if let Some(t4) = step.t4 {
                if depth + 1 < self.config.alpha {
                    self.added.push((t2, t3));
                    self.removed.push((t3, t4));
                    let next_gain = open_gain + self.model.cost(t3, t4);
                    if self.descend(depth + 1, t1, t4, next_gain, base) {
                        return true;
                    }
                    self.added.pop();
                    self.removed.pop();
                }
            }
            self.reverse(step.i, step.j);
        }
        false
    }
}
