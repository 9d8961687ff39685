//! Culberson-style random 3-colorable graph generator.
//!
//! Vertices are split into three hidden color classes and edges are
//! placed only across classes, so every generated graph is 3-colorable
//! by construction. Three variants:
//!
//! - `uniform`: each vertex picks its class independently and
//!   uniformly, so class sizes vary.
//! - `equipartite`: class sizes differ by at most one.
//! - `flat`: equi-partite classes, with edges allocated so that every
//!   vertex receives an almost identical number of edges toward each
//!   foreign class (degrees within one of the class mean).
//!
//! `(variant, n, p, q)` fully determines the output. The seed feeds a
//! version-pinned ChaCha stream; bit-compatibility with Culberson's C
//! program is a non-goal.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;
use crate::seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Uniform,
    Equipartite,
    Flat,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Uniform, Variant::Equipartite, Variant::Flat];

    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Uniform => "uniform",
            Variant::Equipartite => "equipartite",
            Variant::Flat => "flat",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        match s {
            "uniform" => Ok(Variant::Uniform),
            "equipartite" | "equi-partite" => Ok(Variant::Equipartite),
            "flat" => Ok(Variant::Flat),
            other => Err(GenError::UnknownVariant(other.to_string())),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("unknown graph variant `{0}`")]
    UnknownVariant(String),
    #[error("vertex count must be at least 3, got {0}")]
    TooFewVertices(usize),
    #[error("edge probability must lie in [0, 1], got {0}")]
    BadProbability(f64),
}

/// Generator input: variant, vertex count, edge probability, seed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenSpec {
    pub variant: Variant,
    pub n: usize,
    pub p: f64,
    pub q: u64,
}

impl GenSpec {
    pub fn validate(&self) -> Result<(), GenError> {
        if self.n < 3 {
            return Err(GenError::TooFewVertices(self.n));
        }
        if !(0.0..=1.0).contains(&self.p) || self.p.is_nan() {
            return Err(GenError::BadProbability(self.p));
        }
        Ok(())
    }

    fn rng(&self) -> ChaCha8Rng {
        let s = seed::derive(&[self.variant as u64, self.n as u64, self.p.to_bits(), self.q]);
        ChaCha8Rng::seed_from_u64(s)
    }
}

/// Assigns a hidden class label in `{0, 1, 2}` to each vertex.
/// Uniform draws labels independently; equi-partite and flat shuffle a
/// balanced label multiset (sizes differ by at most one).
pub fn assign_classes<R: Rng>(spec: &GenSpec, rng: &mut R) -> Vec<u8> {
    match spec.variant {
        Variant::Uniform => (0..spec.n).map(|_| rng.random_range(0..3u8)).collect(),
        Variant::Equipartite | Variant::Flat => {
            let mut labels: Vec<u8> = (0..spec.n).map(|i| (i % 3) as u8).collect();
            labels.shuffle(rng);
            labels
        }
    }
}

/// Generates the graph for `spec`. Deterministic: calling twice yields
/// identical graphs.
pub fn generate(spec: &GenSpec) -> Result<Graph, GenError> {
    generate_with_classes(spec).map(|(g, _)| g)
}

/// Like [`generate`] but also returns the hidden class assignment,
/// which is always a proper 3-coloring of the output.
pub fn generate_with_classes(spec: &GenSpec) -> Result<(Graph, Vec<u8>), GenError> {
    spec.validate()?;
    let mut rng = spec.rng();
    let classes = assign_classes(spec, &mut rng);
    let edges = match spec.variant {
        Variant::Uniform | Variant::Equipartite => iid_cross_edges(spec, &classes, &mut rng),
        Variant::Flat => flat_cross_edges(spec, &classes, &mut rng),
    };
    let graph = Graph::new(spec.n, edges).expect("generator produces valid edges");
    Ok((graph, classes))
}

/// Each cross-class pair becomes an edge independently with probability p.
fn iid_cross_edges<R: Rng>(spec: &GenSpec, classes: &[u8], rng: &mut R) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..spec.n {
        for v in (u + 1)..spec.n {
            if classes[u] != classes[v] && rng.random::<f64>() < spec.p {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Flat allocation: for each class pair, pick a per-vertex degree
/// sequence in which every degree equals the floor or ceiling of the
/// class mean, then realize it as a bipartite graph by the classical
/// largest-remaining-demand column fill. Near-regular bipartite degree
/// sequences are always realizable, so the fill cannot get stuck.
fn flat_cross_edges<R: Rng>(spec: &GenSpec, classes: &[u8], rng: &mut R) -> Vec<(usize, usize)> {
    let mut by_class: [Vec<usize>; 3] = Default::default();
    for (v, &c) in classes.iter().enumerate() {
        by_class[c as usize].push(v);
    }

    let mut edges = Vec::new();
    for a in 0..3usize {
        for b in (a + 1)..3 {
            let rows = &by_class[a];
            let cols = &by_class[b];
            let target = (spec.p * (rows.len() * cols.len()) as f64).round() as usize;
            if target == 0 {
                continue;
            }
            let row_deg = balanced_degrees(rows.len(), target, rng);
            let col_deg = balanced_degrees(cols.len(), target, rng);

            // Column order: non-increasing demand, random among ties.
            let mut col_order: Vec<usize> = (0..cols.len()).collect();
            col_order.shuffle(rng);
            col_order.sort_by(|&x, &y| col_deg[y].cmp(&col_deg[x]));

            let mut need = row_deg;
            let mut row_order: Vec<usize> = (0..rows.len()).collect();
            for &j in &col_order {
                row_order.shuffle(rng);
                row_order.sort_by(|&x, &y| need[y].cmp(&need[x]));
                for &i in row_order.iter().take(col_deg[j]) {
                    debug_assert!(need[i] > 0, "degree sequence must stay realizable");
                    need[i] -= 1;
                    edges.push((rows[i].min(cols[j]), rows[i].max(cols[j])));
                }
            }
            debug_assert!(need.iter().all(|&x| x == 0));
        }
    }
    edges
}

/// Degree sequence of length `len` summing to `total`, every entry the
/// floor or ceiling of `total / len`; the remainder goes to randomly
/// chosen entries.
fn balanced_degrees<R: Rng>(len: usize, total: usize, rng: &mut R) -> Vec<usize> {
    let base = total / len;
    let extra = total % len;
    let mut deg = vec![base; len];
    let mut idx: Vec<usize> = (0..len).collect();
    idx.shuffle(rng);
    for &i in idx.iter().take(extra) {
        deg[i] += 1;
    }
    deg
}
