//! Graph 3-coloring with a memetic firefly swarm.
//!
//! Candidate solutions are real-valued weight vectors. Sorting the
//! weights yields a vertex permutation, which a DSatur-style greedy
//! decoder turns into a (partial) 3-coloring; the number of vertices
//! left uncolored is the penalty being minimized. A heuristical-swap
//! local search repairs decoded solutions, and the firefly movement
//! rule drives the population through the continuous space.
//!
//! The crate also ships a Culberson-style random 3-colorable graph
//! generator (uniform, equi-partite and flat variants) and a benchmark
//! harness that sweeps graph type x edge probability x seed and reports
//! success rate (SR) and average evaluations to solution (AES).

pub mod coloring;
pub mod config;
pub mod firefly;
pub mod generator;
pub mod graph;
pub mod harness;
pub mod local_search;
mod seed;

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Scalar type for weight vectors and firefly arithmetic.
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

impl Real for f32 {}
impl Real for f64 {}

pub use coloring::{Coloring, DecodedSolution, UNCOLORED};
pub use firefly::{AttractionSource, FfaParams, Firefly, RunResult};
pub use generator::{GenSpec, Variant};
pub use graph::Graph;
pub use harness::{ExperimentSpec, ResultTable};

/// Solver parameters over `f64`, the default precision.
pub type Params64 = FfaParams<f64>;
/// Solver parameters over `f32`.
pub type Params32 = FfaParams<f32>;
/// A firefly carrying `f64` weights.
pub type Firefly64 = Firefly<f64>;
/// A firefly carrying `f32` weights.
pub type Firefly32 = Firefly<f32>;
