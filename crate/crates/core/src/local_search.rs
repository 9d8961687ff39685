//! Heuristical-swap local search.
//!
//! One step takes the first uncolored vertex in the permutation and
//! swaps it with the predecessor of maximal saturation degree (ties
//! resolved uniformly at random), exchanging the two weight values as
//! well so the real vector and the permutation stay consistent. The
//! result is re-decoded; a step counts as one objective evaluation.

use rand::Rng;

use crate::coloring::{dsatur_decode, DecodedSolution, UNCOLORED};
use crate::graph::Graph;
use crate::Real;

/// Result of one step or of a full improvement loop.
#[derive(Clone, Debug)]
pub struct SwapOutcome<F> {
    /// True iff the returned solution's penalty is strictly below the
    /// input's.
    pub improved: bool,
    pub solution: DecodedSolution,
    /// Weight vector kept in sync with the returned permutation.
    pub weights: Vec<F>,
    /// Number of decode evaluations consumed.
    pub evaluations_used: u32,
}

/// Performs a single heuristical swap.
///
/// Panics if `sol.penalty == 0` (there must be an uncolored vertex).
/// If the uncolored vertex sits at the front of the permutation there
/// is nothing to swap with and the input is returned unchanged at zero
/// evaluation cost.
pub fn heuristical_swap_step<F: Real, R: Rng>(
    g: &Graph,
    sol: &DecodedSolution,
    weights: &[F],
    rng: &mut R,
) -> SwapOutcome<F> {
    assert!(sol.penalty > 0, "heuristical swap requires an uncolored vertex");

    let upos = sol
        .permutation
        .iter()
        .position(|&v| sol.coloring.get(v) == UNCOLORED)
        .expect("penalty > 0 implies an uncolored vertex");

    if upos == 0 {
        return SwapOutcome {
            improved: false,
            solution: sol.clone(),
            weights: weights.to_vec(),
            evaluations_used: 0,
        };
    }

    let preds = &sol.permutation[..upos];
    let max_sat = preds.iter().map(|&v| sol.saturation[v]).max().unwrap();
    let candidates: Vec<usize> = (0..upos)
        .filter(|&i| sol.saturation[preds[i]] == max_sat)
        .collect();
    let pick = candidates[rng.random_range(0..candidates.len())];

    let mut perm = sol.permutation.clone();
    let mut w = weights.to_vec();
    w.swap(perm[pick], perm[upos]);
    perm.swap(pick, upos);

    let next = dsatur_decode(g, &perm);
    SwapOutcome {
        improved: next.penalty < sol.penalty,
        solution: next,
        weights: w,
        evaluations_used: 1,
    }
}

/// Repeats [`heuristical_swap_step`] while steps keep improving,
/// stopping at the first non-improving step (whose mutation is
/// discarded), at penalty 0, or when `budget` evaluations are spent.
pub fn improve<F: Real, R: Rng>(
    g: &Graph,
    sol: DecodedSolution,
    weights: Vec<F>,
    rng: &mut R,
    budget: u32,
) -> SwapOutcome<F> {
    let initial_penalty = sol.penalty;
    let mut current = sol;
    let mut w = weights;
    let mut used = 0u32;

    while current.penalty > 0 && used < budget {
        let step = heuristical_swap_step(g, &current, &w, rng);
        used += step.evaluations_used;
        if step.improved {
            current = step.solution;
            w = step.weights;
        } else {
            break;
        }
    }

    SwapOutcome {
        improved: current.penalty < initial_penalty,
        solution: current,
        weights: w,
        evaluations_used: used,
    }
}
