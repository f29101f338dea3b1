//! Swap and 2-opt neighbourhoods on open routes and the VND that combines
//! them. Position 0 (the start) never moves.

use crate::instance::LatencyModel;
use crate::objective::RouteEval;

/// Exchanges positions `i` and `j`.
pub fn apply_swap(route: &mut [usize], i: usize, j: usize) {
    route.swap(i, j);
}

/// Reverses positions `i..=j`.
pub fn apply_reverse(route: &mut [usize], i: usize, j: usize) {
    route[i..=j].reverse();
}

/// Smallest delta that counts as an improvement over `cost`.
#[inline]
pub(crate) fn improves(delta: f64, cost: f64) -> bool {
    delta < -1e-9 * (1.0 + cost.abs())
}

/// Best improving swap `(i, j, delta)`, if any.
pub fn best_swap<M: LatencyModel + ?Sized>(
    route: &[usize],
    eval: &RouteEval,
    model: &M,
) -> Option<(usize, usize, f64)> {
    let n = route.len();
    let cost = eval.cost();
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 1..n {
        for j in i + 1..n {
            let d = eval.delta_swap(route, model, i, j);
            if improves(d, cost) && best.is_none_or(|(.., b)| d < b) {
                best = Some((i, j, d));
            }
        }
    }
    best
}

/// Best improving segment reversal `(i, j, delta)`, if any.
pub fn best_reverse<M: LatencyModel + ?Sized>(
    route: &[usize],
    eval: &RouteEval,
    model: &M,
) -> Option<(usize, usize, f64)> {
    let n = route.len();
    let cost = eval.cost();
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 1..n {
        for j in i + 1..n {
            let d = eval.delta_reverse(route, model, i, j);
            if improves(d, cost) && best.is_none_or(|(.., b)| d < b) {
                best = Some((i, j, d));
            }
        }
    }
    best
}

/// Variable neighbourhood descent: best-improvement Swap, then 2-opt,
/// returning to Swap after every improvement, until neither improves.
pub fn vnd<M: LatencyModel + ?Sized>(mut route: Vec<usize>, model: &M) -> Vec<usize> {
    vnd_in_place(&mut route, model);
    route
}

/// In-place variant of [`vnd`]; returns the final cost.
pub fn vnd_in_place<M: LatencyModel + ?Sized>(route: &mut [usize], model: &M) -> f64 {
    let mut eval = RouteEval::new(route, model);
    loop {
        if let Some((i, j, _)) = best_swap(route, &eval, model) {
            apply_swap(route, i, j);
            eval.reset(route, model);
            continue;
        }
        if let Some((i, j, _)) = best_reverse(route, &eval, model) {
            apply_reverse(route, i, j);
            eval.reset(route, model);
            continue;
        }
        return eval.cost();
    }
}
