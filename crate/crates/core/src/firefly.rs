//! The firefly optimization loop: random initialization, evaluation
//! (decode plus local search), ordering, elitism, attraction-based
//! movement, and termination on budget or on a proper coloring.
//!
//! Brightness is read under minimization: a firefly is more attractive
//! when its penalty is strictly lower.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::coloring::{weights_to_permutation, dsatur_decode, Coloring, DecodedSolution};
use crate::graph::Graph;
use crate::local_search;
use crate::Real;

/// Where `MoveFFA` reads attractor positions from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AttractionSource {
    /// The live population, including moves already applied this
    /// generation. Adds randomness to the search and is the default.
    CurrentPopulation,
    /// The sorted snapshot taken at the start of the generation.
    SortedCopy,
}

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("population size must be at least 2, got {0}")]
    PopulationTooSmall(usize),
    #[error("lower bound {lb} must be strictly below upper bound {ub}")]
    BadBounds { lb: f64, ub: f64 },
    #[error("{name} must be non-negative")]
    NegativeCoefficient { name: &'static str },
    #[error("max_fes ({max_fes}) must be at least the population size ({np})")]
    BudgetTooSmall { max_fes: u32, np: usize },
}

/// Solver parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct FfaParams<F> {
    /// Population size NP.
    pub population: usize,
    /// Lower weight bound.
    pub lower: F,
    /// Upper weight bound.
    pub upper: F,
    /// Randomization weight of the movement rule.
    pub alpha: F,
    /// Attractiveness at distance zero.
    pub beta0: F,
    /// Light absorption coefficient.
    pub gamma: F,
    /// Evaluation budget.
    pub max_fes: u32,
    pub attraction_source: AttractionSource,
    /// Divide squared distances by the dimension before applying the
    /// attractiveness exponential. Off by default; with unit bounds and
    /// large n the plain exponential underflows to ~0, which matches
    /// the literal movement rule.
    pub normalized_distance: bool,
    pub seed: u64,
}

impl<F: Real> Default for FfaParams<F> {
    fn default() -> Self {
        let f = |x: f64| F::from_f64(x).unwrap();
        Self {
            population: 500,
            lower: F::zero(),
            upper: F::one(),
            alpha: f(0.1),
            beta0: f(0.1),
            gamma: f(0.8),
            max_fes: 300_000,
            attraction_source: AttractionSource::CurrentPopulation,
            normalized_distance: false,
            seed: 1,
        }
    }
}

impl<F: Real> FfaParams<F> {
    pub fn validate(&self) -> Result<(), ParamError> {
        if self.population < 2 {
            return Err(ParamError::PopulationTooSmall(self.population));
        }
        if !(self.lower < self.upper) {
            return Err(ParamError::BadBounds {
                lb: self.lower.to_f64().unwrap_or(f64::NAN),
                ub: self.upper.to_f64().unwrap_or(f64::NAN),
            });
        }
        for (name, v) in [("alpha", self.alpha), ("beta0", self.beta0), ("gamma", self.gamma)] {
            if !(v >= F::zero()) {
                return Err(ParamError::NegativeCoefficient { name });
            }
        }
        if (self.max_fes as usize) < self.population {
            return Err(ParamError::BudgetTooSmall { max_fes: self.max_fes, np: self.population });
        }
        Ok(())
    }
}

/// Intensity of a firefly that has not been evaluated yet (worse than
/// any real penalty).
pub const UNEVALUATED: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Firefly<F> {
    pub weights: Vec<F>,
    pub decoded: Option<DecodedSolution>,
    /// Penalty of the decoded solution; lower is brighter.
    pub intensity: u32,
}

/// Outcome of one solver run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub success: bool,
    /// Objective evaluations spent when the proper coloring was found,
    /// or in total when the budget ran out.
    pub evaluations: u32,
    pub best_penalty: u32,
    pub best_coloring: Option<Coloring>,
    /// Best-so-far penalty after each generation; non-increasing.
    pub best_penalty_trace: Vec<u32>,
}

/// Random population: every component drawn as
/// `(ub - lb) * rand(0,1) + lb`.
pub fn initialize<F: Real, R: Rng>(params: &FfaParams<F>, n: usize, rng: &mut R) -> Vec<Firefly<F>> {
    let span = params.upper - params.lower;
    (0..params.population)
        .map(|_| Firefly {
            weights: (0..n).map(|_| span * rand01(rng) + params.lower).collect(),
            decoded: None,
            intensity: UNEVALUATED,
        })
        .collect()
}

fn rand01<F: Real, R: Rng>(rng: &mut R) -> F {
    F::from_f64(rng.random::<f64>()).unwrap()
}

/// Evaluates the population in index order: clamp weights into bounds,
/// decode (one evaluation), then run the local search with whatever
/// budget remains. Stops mid-population once `fe` hits `max_fes`.
pub fn evaluate<F: Real, R: Rng>(
    population: &mut [Firefly<F>],
    g: &Graph,
    params: &FfaParams<F>,
    rng: &mut R,
    fe: &mut u32,
) {
    for firefly in population.iter_mut() {
        if *fe >= params.max_fes {
            break;
        }
        for w in &mut firefly.weights {
            *w = w.max(params.lower).min(params.upper);
        }
        let perm = weights_to_permutation(&firefly.weights);
        let decoded = dsatur_decode(g, &perm);
        *fe += 1;
        let decoded = if decoded.penalty > 0 && *fe < params.max_fes {
            let budget = params.max_fes - *fe;
            let out = local_search::improve(
                g,
                decoded,
                std::mem::take(&mut firefly.weights),
                rng,
                budget,
            );
            *fe += out.evaluations_used;
            firefly.weights = out.weights;
            out.solution
        } else {
            decoded
        };
        firefly.intensity = decoded.penalty;
        firefly.decoded = Some(decoded);
    }
}

/// Sorts the population by intensity ascending (stable, so ties keep
/// their original order) and returns the sorted snapshot `P'`.
pub fn order<F: Real>(population: &mut [Firefly<F>]) -> Vec<Firefly<F>> {
    population.sort_by_key(|f| f.intensity);
    population.to_vec()
}

/// Elitism: if the population's best is worse than the best-so-far,
/// the best-so-far overwrites that slot; otherwise it becomes the new
/// best-so-far. Returns true when a proper coloring is at hand.
pub fn track_best<F: Real>(population: &mut [Firefly<F>], best: &mut Option<Firefly<F>>) -> bool {
    let idx = population
        .iter()
        .enumerate()
        .min_by_key(|(_, f)| f.intensity)
        .map(|(i, _)| i)
        .expect("population is non-empty");

    match best {
        None => *best = Some(population[idx].clone()),
        Some(b) if population[idx].intensity > b.intensity => {
            population[idx] = b.clone();
        }
        Some(b) => *b = population[idx].clone(),
    }
    best.as_ref().map(|b| b.intensity == 0).unwrap_or(false)
}

/// Movement rule. Each firefly is pulled, dimension by dimension,
/// toward every strictly brighter firefly in the attraction source:
///
/// `w_i <- w_i + beta0 * exp(-gamma * r^2) * (w_j - w_i) + alpha * (rand - 1/2)`
///
/// with `r` the Euclidean distance between the two full weight
/// vectors, recomputed before each interaction, and an independent
/// uniform draw per dimension. Updates are applied in place and
/// cumulatively; clamping happens at the next evaluation.
pub fn move_population<F: Real, R: Rng>(
    population: &mut [Firefly<F>],
    sorted_copy: &[Firefly<F>],
    params: &FfaParams<F>,
    rng: &mut R,
) {
    let np = population.len();
    let dims = population.first().map(|f| f.weights.len()).unwrap_or(0);
    let mut attractor = vec![F::zero(); dims];
    let half = F::from_f64(0.5).unwrap();
    let dim_scale = F::from_usize(dims.max(1)).unwrap();

    for i in 0..np {
        for j in 0..np {
            let attractor_intensity = match params.attraction_source {
                AttractionSource::CurrentPopulation => {
                    if i == j {
                        continue;
                    }
                    attractor.copy_from_slice(&population[j].weights);
                    population[j].intensity
                }
                AttractionSource::SortedCopy => {
                    attractor.copy_from_slice(&sorted_copy[j].weights);
                    sorted_copy[j].intensity
                }
            };
            if attractor_intensity >= population[i].intensity {
                continue;
            }

            let wi = &mut population[i].weights;
            let mut r2 = F::zero();
            for d in 0..dims {
                let diff = wi[d] - attractor[d];
                r2 = r2 + diff * diff;
            }
            if params.normalized_distance {
                r2 = r2 / dim_scale;
            }
            let beta = params.beta0 * (-params.gamma * r2).exp();
            for d in 0..dims {
                let noise = params.alpha * (rand01::<F, _>(rng) - half);
                wi[d] = wi[d] + beta * (attractor[d] - wi[d]) + noise;
            }
        }
    }
}

/// Full solver run: initialize, then repeat evaluate / order /
/// track-best / move until the budget is exhausted or a proper
/// coloring is found. Deterministic for a given graph, parameter set
/// and seed.
pub fn run<F: Real>(g: &Graph, params: &FfaParams<F>) -> Result<RunResult, ParamError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut population = initialize(params, g.vertex_count(), &mut rng);
    let mut fe = 0u32;
    let mut best: Option<Firefly<F>> = None;
    let mut found = false;
    let mut trace = Vec::new();

    while !found && fe < params.max_fes {
        evaluate(&mut population, g, params, &mut rng, &mut fe);
        let snapshot = order(&mut population);
        found = track_best(&mut population, &mut best);
        trace.push(best.as_ref().expect("tracked").intensity);
        if found || fe >= params.max_fes {
            break;
        }
        move_population(&mut population, &snapshot, params, &mut rng);
    }

    let best = best.expect("at least one generation ran");
    Ok(RunResult {
        success: found,
        evaluations: fe,
        best_penalty: best.intensity,
        best_coloring: best.decoded.map(|d| d.coloring),
        best_penalty_trace: trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper;
    use crate::generator::{generate, GenSpec, Variant};
    use crate::graph::Graph;
    use rand_chacha::ChaCha8Rng;

    fn small_params(np: usize, max_fes: u32, seed: u64) -> FfaParams<f64> {
        FfaParams { population: np, max_fes, seed, ..FfaParams::default() }
    }

    fn triangle() -> Graph {
        Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn k4() -> Graph {
        Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn initialize_stays_in_bounds() {
        let params = FfaParams { lower: -2.0, upper: 3.0, ..small_params(10, 100, 1) };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for f in initialize(&params, 20, &mut rng) {
            assert!(f.weights.iter().all(|&w| (-2.0..=3.0).contains(&w)));
            assert_eq!(f.intensity, UNEVALUATED);
        }
    }

    #[test]
    fn initialize_mean_concentrates() {
        // 500 x 500 uniform [0,1] samples: mean within 0.5 +/- 0.01.
        let params = small_params(500, 100_000, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pop = initialize(&params, 500, &mut rng);
        let sum: f64 = pop.iter().flat_map(|f| f.weights.iter()).sum();
        let mean = sum / (500.0 * 500.0);
        assert!((mean - 0.5).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn triangle_succeeds_in_first_wave() {
        let result = run(&triangle(), &small_params(5, 100, 7)).unwrap();
        assert!(result.success);
        assert_eq!(result.best_penalty, 0);
        assert!(result.evaluations <= 5);
        assert!(is_proper(&triangle(), result.best_coloring.as_ref().unwrap()));
    }

    #[test]
    fn k4_never_succeeds() {
        let result = run(&k4(), &small_params(5, 5000, 11)).unwrap();
        assert!(!result.success);
        assert_eq!(result.best_penalty, 1);
        assert_eq!(result.evaluations, 5000);
    }

    #[test]
    fn move_full_attraction_limit() {
        // alpha=0, gamma=0, beta0=1, single brighter attractor: the
        // firefly lands exactly on it.
        let params = FfaParams {
            alpha: 0.0,
            beta0: 1.0,
            gamma: 0.0,
            ..small_params(2, 100, 1)
        };
        let mut pop = vec![
            Firefly { weights: vec![0.0, 0.0], decoded: None, intensity: 5 },
            Firefly { weights: vec![1.0, 1.0], decoded: None, intensity: 1 },
        ];
        let snapshot = pop.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        move_population(&mut pop, &snapshot, &params, &mut rng);
        assert_eq!(pop[0].weights, vec![1.0, 1.0]);
        assert_eq!(pop[1].weights, vec![1.0, 1.0]); // best firefly did not move
    }

    #[test]
    fn move_matches_hand_computed_update() {
        let params = FfaParams {
            alpha: 0.0,
            beta0: 0.1,
            gamma: 0.8,
            ..small_params(2, 100, 1)
        };
        let mut pop = vec![
            Firefly { weights: vec![0.0, 0.0], decoded: None, intensity: 4 },
            Firefly { weights: vec![1.0, 1.0], decoded: None, intensity: 0 },
        ];
        let snapshot = pop.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        move_population(&mut pop, &snapshot, &params, &mut rng);
        let beta = 0.1 * (-1.6f64).exp();
        for d in 0..2 {
            let rel = (pop[0].weights[d] - beta).abs() / beta;
            assert!(rel < 1e-12, "component {d}: {} vs {beta}", pop[0].weights[d]);
        }
    }

    #[test]
    fn best_firefly_does_not_move_without_noise() {
        let params = FfaParams { alpha: 0.0, ..small_params(3, 100, 1) };
        let mut pop = vec![
            Firefly { weights: vec![0.3, 0.4], decoded: None, intensity: 0 },
            Firefly { weights: vec![0.9, 0.1], decoded: None, intensity: 2 },
            Firefly { weights: vec![0.2, 0.8], decoded: None, intensity: 2 },
        ];
        let snapshot = pop.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        move_population(&mut pop, &snapshot, &params, &mut rng);
        assert_eq!(pop[0].weights, vec![0.3, 0.4]);
    }

    #[test]
    fn equal_intensity_fireflies_do_not_attract() {
        // alpha=0 and a population of identical vectors: a fixed point.
        let params = FfaParams { alpha: 0.0, ..small_params(4, 100, 1) };
        let make = || Firefly { weights: vec![0.5, 0.5, 0.5], decoded: None, intensity: 3 };
        let mut pop = vec![make(), make(), make(), make()];
        let snapshot = pop.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        move_population(&mut pop, &snapshot, &params, &mut rng);
        for f in &pop {
            assert_eq!(f.weights, vec![0.5, 0.5, 0.5]);
        }
    }

    #[test]
    fn order_sorts_stably() {
        let make = |i: u32, tag: f64| Firefly { weights: vec![tag], decoded: None, intensity: i };
        let mut pop = vec![make(3, 0.0), make(0, 1.0), make(2, 2.0)];
        let snapshot = order(&mut pop);
        let tags: Vec<f64> = pop.iter().map(|f| f.weights[0]).collect();
        assert_eq!(tags, vec![1.0, 2.0, 0.0]);
        assert_eq!(snapshot.iter().map(|f| f.intensity).collect::<Vec<_>>(), vec![0, 2, 3]);

        let mut tied = vec![make(1, 0.0), make(1, 1.0), make(1, 2.0)];
        order(&mut tied);
        assert_eq!(tied.iter().map(|f| f.weights[0]).collect::<Vec<_>>(), vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn track_best_injects_elite() {
        let make = |i: u32, tag: f64| Firefly { weights: vec![tag], decoded: None, intensity: i };
        let mut pop = vec![make(5, 0.0), make(7, 1.0)];
        let mut best = Some(make(2, 9.0));
        let found = track_best(&mut pop, &mut best);
        assert!(!found);
        // Population best slot overwritten by the elite.
        assert_eq!(pop[0].intensity, 2);
        assert_eq!(pop[0].weights, vec![9.0]);
        assert_eq!(best.as_ref().unwrap().intensity, 2);
    }

    #[test]
    fn track_best_adopts_population_best() {
        let make = |i: u32| Firefly { weights: vec![0.0], decoded: None, intensity: i };
        let mut pop = vec![make(4), make(1)];
        let mut best: Option<Firefly<f64>> = None;
        assert!(!track_best(&mut pop, &mut best));
        assert_eq!(best.as_ref().unwrap().intensity, 1);

        pop[0].intensity = 0;
        assert!(track_best(&mut pop, &mut best));
        assert_eq!(best.unwrap().intensity, 0);
    }

    #[test]
    fn run_is_deterministic() {
        let spec = GenSpec { variant: Variant::Equipartite, n: 60, p: 7.5 / 60.0, q: 4 };
        let g = generate(&spec).unwrap();
        let params = small_params(20, 5_000, 123);
        let a = run(&g, &params).unwrap();
        let b = run(&g, &params).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_is_respected_and_trace_monotone() {
        let spec = GenSpec { variant: Variant::Uniform, n: 60, p: 0.12, q: 8 };
        let g = generate(&spec).unwrap();
        let params = small_params(10, 2_000, 5);
        let result = run(&g, &params).unwrap();
        assert!(result.evaluations <= params.max_fes);
        for pair in result.best_penalty_trace.windows(2) {
            assert!(pair[1] <= pair[0]);
        }
        if result.success {
            assert!(is_proper(&g, result.best_coloring.as_ref().unwrap()));
        }
    }

    #[test]
    fn constant_weight_shift_leaves_permutations_unchanged() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let w: Vec<f64> = (0..40).map(|_| rng.random::<f64>()).collect();
        let shifted: Vec<f64> = w.iter().map(|x| x + 0.37).collect();
        assert_eq!(weights_to_permutation(&w), weights_to_permutation(&shifted));
    }

    #[test]
    fn intensity_matches_independent_penalty() {
        let spec = GenSpec { variant: Variant::Uniform, n: 40, p: 0.15, q: 6 };
        let g = generate(&spec).unwrap();
        let params = small_params(8, 200, 77);
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let mut pop = initialize(&params, g.vertex_count(), &mut rng);
        let mut fe = 0;
        evaluate(&mut pop, &g, &params, &mut rng, &mut fe);
        for f in &pop {
            let decoded = f.decoded.as_ref().unwrap();
            assert_eq!(f.intensity, crate::coloring::penalty(&g, &decoded.coloring));
        }
    }

    #[test]
    fn evaluate_without_local_search_costs_np() {
        // Every decode of K3 is already proper, so the local search
        // never fires and a wave costs exactly NP evaluations.
        let g = triangle();
        let params = small_params(6, 6, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let mut pop = initialize(&params, 3, &mut rng);
        let mut fe = 0;
        evaluate(&mut pop, &g, &params, &mut rng, &mut fe);
        assert_eq!(fe, 6);
    }

    #[test]
    fn validate_rejects_bad_params() {
        let ok: FfaParams<f64> = FfaParams::default();
        assert!(ok.validate().is_ok());
        assert!(FfaParams { population: 1, ..ok.clone() }.validate().is_err());
        assert!(FfaParams { lower: 1.0, upper: 0.0, ..ok.clone() }.validate().is_err());
        assert!(FfaParams { gamma: -0.1, ..ok.clone() }.validate().is_err());
        assert!(FfaParams { population: 10, max_fes: 5, ..ok }.validate().is_err());
    }
}
