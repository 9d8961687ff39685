//! Problem-space half of the solver: weight vectors become vertex
//! permutations, permutations are decoded into partial 3-colorings by a
//! DSatur-style greedy, and colorings are scored by the penalty
//! function (number of vertices violating an incident constraint).

use std::fmt;

use crate::graph::Graph;
use crate::Real;

/// Sentinel for a vertex the decoder could not color.
pub const UNCOLORED: u8 = 0;

/// Partial assignment of colors `{1, 2, 3}` to vertices; `0` marks an
/// uncolored vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u8>,
}

impl Coloring {
    /// Panics if any value exceeds 3.
    pub fn new(colors: Vec<u8>) -> Self {
        assert!(colors.iter().all(|&c| c <= 3), "colors must be in 0..=3");
        Self { colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, v: usize) -> u8 {
        self.colors[v]
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.colors
    }

    pub fn uncolored_count(&self) -> usize {
        self.colors.iter().filter(|&&c| c == UNCOLORED).count()
    }

    pub fn is_complete(&self) -> bool {
        self.uncolored_count() == 0
    }
}

impl fmt::Display for Coloring {
    /// Whitespace-separated color ids, `0` for uncolored.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.colors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A decoded candidate: the permutation that drove the decoder, the
/// resulting coloring, its penalty, and the saturation degrees at the
/// end of the decode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodedSolution {
    pub permutation: Vec<usize>,
    pub coloring: Coloring,
    pub penalty: u32,
    pub saturation: Vec<u8>,
}

/// Sorts vertices by weight, higher weight first (colored sooner), ties
/// broken by ascending vertex id. Always a bijection, even for fully
/// tied inputs.
pub fn weights_to_permutation<F: Real>(weights: &[F]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..weights.len()).collect();
    perm.sort_by(|&a, &b| {
        weights[b]
            .partial_cmp(&weights[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    perm
}

/// Greedy DSatur decode: repeatedly pick the unprocessed vertex with
/// the highest saturation degree (distinct colors among its colored
/// neighbors), breaking ties by earliest position in `perm`, and give
/// it the smallest color in `{1, 2, 3}` absent from its neighborhood.
/// A vertex whose neighbors already show all three colors stays
/// uncolored; uncolored vertices never contribute to saturation.
///
/// The permutation is the only channel through which weights influence
/// the coloring.
pub fn dsatur_decode(g: &Graph, perm: &[usize]) -> DecodedSolution {
    let n = g.vertex_count();
    debug_assert_eq!(perm.len(), n);

    // Bitmask of neighbor colors per vertex; bit k set <=> color k+1 seen.
    let mut mask = vec![0u8; n];
    let mut processed = vec![false; n];
    let mut colors = vec![UNCOLORED; n];

    for _ in 0..n {
        // Scanning in permutation order makes "earliest position wins"
        // the natural tie-break: only a strictly higher saturation
        // displaces the current pick.
        let mut chosen = usize::MAX;
        let mut best_sat = -1i32;
        for &v in perm {
            if !processed[v] {
                let sat = mask[v].count_ones() as i32;
                if sat > best_sat {
                    best_sat = sat;
                    chosen = v;
                    if sat == 3 {
                        break;
                    }
                }
            }
        }
        processed[chosen] = true;
        let free = !mask[chosen] & 0b111;
        if free != 0 {
            let color = free.trailing_zeros() as u8 + 1;
            colors[chosen] = color;
            let bit = 1u8 << (color - 1);
            for &u in g.neighbors(chosen) {
                mask[u] |= bit;
            }
        }
    }

    let saturation: Vec<u8> = mask.iter().map(|m| m.count_ones() as u8).collect();
    let coloring = Coloring::new(colors);
    let penalty = coloring.uncolored_count() as u32;
    DecodedSolution { permutation: perm.to_vec(), coloring, penalty, saturation }
}

/// Penalty of an arbitrary coloring: number of vertices that are
/// uncolored or share a color with a colored neighbor. Zero exactly
/// when the coloring is proper.
pub fn penalty(g: &Graph, s: &Coloring) -> u32 {
    debug_assert_eq!(s.len(), g.vertex_count());
    let mut total = 0u32;
    for v in 0..g.vertex_count() {
        let c = s.get(v);
        let violates = c == UNCOLORED
            || g.neighbors(v).iter().any(|&u| s.get(u) == c);
        if violates {
            total += 1;
        }
    }
    total
}

/// True iff the coloring is complete and every edge is bichromatic.
pub fn is_proper(g: &Graph, s: &Coloring) -> bool {
    s.is_complete() && g.edges().iter().all(|&(u, v)| s.get(u) != s.get(v))
}
