use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::instance::LatencyModel;

/// Greedy penalty used to pick the next vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Heuristic {
    /// Travel time from the route tail.
    Dist,
    /// Travel time discounted by `1 + p(v)`.
    Ratio,
}

impl Heuristic {
    pub const ALL: [Heuristic; 2] = [Heuristic::Dist, Heuristic::Ratio];

    #[inline]
    pub fn penalty<M: LatencyModel + ?Sized>(self, model: &M, from: usize, to: usize) -> f64 {
        match self {
            Heuristic::Dist => model.cost(from, to),
            Heuristic::Ratio => model.cost(from, to) / (1.0 + model.weight(to)),
        }
    }
}

/// Randomized greedy route over all local vertices, starting at vertex 0.
///
/// The `rcl_size` lowest-penalty candidates form the restricted candidate
/// list and one of them is drawn with probability proportional to
/// `1 / penalty`; a zero-penalty candidate is taken outright. With
/// `rcl_size == 1` this is the plain greedy construction.
pub fn construct<M: LatencyModel + ?Sized, R: Rng + ?Sized>(
    model: &M,
    heuristic: Heuristic,
    rcl_size: usize,
    rng: &mut R,
) -> Vec<usize> {
    let k = model.size();
    let mut route = Vec::with_capacity(k);
    route.push(0);
    let mut rest: Vec<usize> = (1..k).collect();
    let mut scored: Vec<(f64, usize)> = Vec::with_capacity(k);
    let rcl_size = rcl_size.max(1);
    while !rest.is_empty() {
        let last = *route.last().unwrap();
        scored.clear();
        scored.extend(
            rest.iter()
                .enumerate()
                .map(|(slot, &v)| (heuristic.penalty(model, last, v), slot)),
        );
        let by_rank = |a: &(f64, usize), b: &(f64, usize)| {
            a.0.total_cmp(&b.0).then(rest[a.1].cmp(&rest[b.1]))
        };
        let take = rcl_size.min(scored.len());
        if take < scored.len() {
            scored.select_nth_unstable_by(take - 1, by_rank);
            scored.truncate(take);
        }
        scored.sort_by(by_rank);
        let slot = pick(&scored, rng);
        route.push(rest.swap_remove(slot));
    }
    route
}

fn pick<R: Rng + ?Sized>(rcl: &[(f64, usize)], rng: &mut R) -> usize {
    if rcl.len() == 1 || rcl[0].0 <= 0.0 {
        return rcl[0].1;
    }
    let total: f64 = rcl.iter().map(|(f, _)| 1.0 / f).sum();
    let mut target = rng.gen::<f64>() * total;
    for &(f, slot) in rcl {
        target -= 1.0 / f;
        if target < 0.0 {
            return slot;
        }
    }
    rcl[rcl.len() - 1].1
}
