//! Helpers shared by the integration suites: an independent
//! 3-colorability oracle and a small random-graph source.

use firefly_coloring::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Complete search over all 3^n assignments (with backtracking on the
/// first conflict, which prunes but never skips a viable assignment).
/// Independent of the solver and decoder code paths.
pub fn is_3_colorable(g: &Graph) -> bool {
    fn extend(g: &Graph, colors: &mut Vec<u8>, v: usize) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        for c in 1..=3u8 {
            if g.neighbors(v).iter().all(|&u| u >= v || colors[u] != c) {
                colors[v] = c;
                if extend(g, colors, v + 1) {
                    return true;
                }
            }
        }
        colors[v] = 0;
        false
    }
    extend(g, &mut vec![0; g.vertex_count()], 0)
}

/// Erdos-Renyi G(n, p), deterministic per seed.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}
