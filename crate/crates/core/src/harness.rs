//! Experiment harness: sweep graph variant x edge probability x
//! generator seed, run the solver repeatedly, and aggregate success
//! rate (SR) and average evaluations to solution (AES) per
//! (variant, p). Runs are embarrassingly parallel; aggregation sorts
//! before emitting so the CSV is byte-identical for any job count.

use std::path::Path;

use rayon::prelude::*;
use thiserror::Error;

use crate::firefly::{self, FfaParams, ParamError, RunResult};
use crate::generator::{self, GenError, GenSpec, Variant};
use crate::seed;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("p_values must be non-empty and each value in [0, 1]")]
    BadProbabilities,
    #[error("q_seeds must be non-empty")]
    NoSeeds,
    #[error("variants must be non-empty")]
    NoVariants,
    #[error("runs_per_graph must be at least 1")]
    NoRuns,
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// One full sweep: which graphs to generate and how to attack each.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub variants: Vec<Variant>,
    pub n: usize,
    pub p_values: Vec<f64>,
    pub q_seeds: Vec<u64>,
    pub runs_per_graph: u32,
    /// Parameter template; the run seed is replaced per repetition.
    pub params: FfaParams<f64>,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.variants.is_empty() {
            return Err(HarnessError::NoVariants);
        }
        if self.p_values.is_empty() || self.p_values.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(HarnessError::BadProbabilities);
        }
        if self.q_seeds.is_empty() {
            return Err(HarnessError::NoSeeds);
        }
        if self.runs_per_graph == 0 {
            return Err(HarnessError::NoRuns);
        }
        self.params.validate()?;
        GenSpec { variant: self.variants[0], n: self.n, p: self.p_values[0], q: 1 }.validate()?;
        Ok(())
    }

    /// Number of distinct graphs the sweep generates.
    pub fn graph_count(&self) -> usize {
        self.variants.len() * self.p_values.len() * self.q_seeds.len()
    }

    /// Total solver runs in the sweep.
    pub fn run_count(&self) -> usize {
        self.graph_count() * self.runs_per_graph as usize
    }
}

/// Raw record of a single solver run.
#[derive(Clone, Debug)]
pub struct RunRecord {
    pub variant: Variant,
    pub p: f64,
    pub q: u64,
    pub rep: u32,
    pub result: RunResult,
}

/// Aggregate row per (variant, p), pooled across generator seeds and
/// repetitions.
#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub variant: Variant,
    pub p: f64,
    pub runs: u32,
    pub successes: u32,
    pub sr: f64,
    /// Mean evaluations over successful runs; `None` when none
    /// succeeded.
    pub aes: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct ResultTable {
    /// Sorted by (variant, p).
    pub rows: Vec<TableRow>,
    /// Every run, sorted by (variant, p, q, rep).
    pub records: Vec<RunRecord>,
}

/// Fraction of runs that found a proper coloring.
///
/// Panics on an empty slice.
pub fn success_rate(runs: &[RunResult]) -> f64 {
    assert!(!runs.is_empty(), "success rate of zero runs is undefined");
    runs.iter().filter(|r| r.success).count() as f64 / runs.len() as f64
}

/// Mean evaluations over successful runs only; `None` without any
/// success.
pub fn aes(runs: &[RunResult]) -> Option<f64> {
    let successes: Vec<u32> = runs.iter().filter(|r| r.success).map(|r| r.evaluations).collect();
    if successes.is_empty() {
        None
    } else {
        Some(successes.iter().map(|&e| e as f64).sum::<f64>() / successes.len() as f64)
    }
}

/// Per-repetition solver seed. Depends only on (variant, p, q, rep),
/// so extending the p grid never perturbs existing runs.
pub fn run_seed(variant: Variant, p: f64, q: u64, rep: u32) -> u64 {
    seed::derive(&[variant_tag(variant), p.to_bits(), q, rep as u64])
}

fn variant_tag(variant: Variant) -> u64 {
    variant as u64
}

/// Executes the sweep with up to `jobs` worker threads (`0` = rayon's
/// default). The output is independent of `jobs`.
pub fn run_experiment(spec: &ExperimentSpec, jobs: usize) -> Result<ResultTable, HarnessError> {
    spec.validate()?;

    // One task per solver run; the graph is generated up front per
    // (variant, p, q) and shared.
    let mut tasks = Vec::with_capacity(spec.run_count());
    for &variant in &spec.variants {
        for &p in &spec.p_values {
            for &q in &spec.q_seeds {
                let graph = generator::generate(&GenSpec { variant, n: spec.n, p, q })?;
                let graph = std::sync::Arc::new(graph);
                for rep in 0..spec.runs_per_graph {
                    tasks.push((variant, p, q, rep, graph.clone()));
                }
            }
        }
    }

    let execute = |(variant, p, q, rep, graph): &(Variant, f64, u64, u32, std::sync::Arc<crate::Graph>)| {
        let params = FfaParams { seed: run_seed(*variant, *p, *q, *rep), ..spec.params.clone() };
        let result = firefly::run(graph.as_ref(), &params).expect("validated params");
        RunRecord { variant: *variant, p: *p, q: *q, rep: *rep, result }
    };

    let mut records: Vec<RunRecord> = if jobs == 1 {
        tasks.iter().map(execute).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| tasks.par_iter().map(execute).collect())
    };

    records.sort_by(|a, b| {
        variant_tag(a.variant)
            .cmp(&variant_tag(b.variant))
            .then(a.p.total_cmp(&b.p))
            .then(a.q.cmp(&b.q))
            .then(a.rep.cmp(&b.rep))
    });

    let mut rows = Vec::new();
    for &variant in &spec.variants {
        for &p in &spec.p_values {
            let pooled: Vec<RunResult> = records
                .iter()
                .filter(|r| r.variant == variant && r.p == p)
                .map(|r| r.result.clone())
                .collect();
            let successes = pooled.iter().filter(|r| r.success).count() as u32;
            rows.push(TableRow {
                variant,
                p,
                runs: pooled.len() as u32,
                successes,
                sr: success_rate(&pooled),
                aes: aes(&pooled),
            });
        }
    }
    rows.sort_by(|a, b| {
        variant_tag(a.variant).cmp(&variant_tag(b.variant)).then(a.p.total_cmp(&b.p))
    });

    Ok(ResultTable { rows, records })
}

/// CSV serialization: header `variant,p,runs,successes,sr,aes`, rows
/// sorted by (variant, p), empty AES cell when undefined. Float
/// formatting uses Rust's shortest round-trip representation.
pub fn emit_csv(table: &ResultTable) -> String {
    let mut out = String::from("variant,p,runs,successes,sr,aes\n");
    for row in &table.rows {
        let aes = row.aes.map(|a| a.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.variant, row.p, row.runs, row.successes, row.sr, aes
        ));
    }
    out
}

pub fn write_csv(table: &ResultTable, path: &Path) -> Result<(), HarnessError> {
    std::fs::write(path, emit_csv(table))?;
    Ok(())
}

/// Parses CSV produced by [`emit_csv`] back into rows; used to check
/// the round-trip contract.
pub fn parse_csv(text: &str) -> Result<Vec<TableRow>, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty csv")?;
    if header != "variant,p,runs,successes,sr,aes" {
        return Err(format!("unexpected header `{header}`"));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(format!("row {}: expected 6 fields", i + 2));
        }
        let err = |what: &str| format!("row {}: bad {what}", i + 2);
        rows.push(TableRow {
            variant: fields[0].parse().map_err(|_| err("variant"))?,
            p: fields[1].parse().map_err(|_| err("p"))?,
            runs: fields[2].parse().map_err(|_| err("runs"))?,
            successes: fields[3].parse().map_err(|_| err("successes"))?,
            sr: fields[4].parse().map_err(|_| err("sr"))?,
            aes: if fields[5].is_empty() {
                None
            } else {
                Some(fields[5].parse().map_err(|_| err("aes"))?)
            },
        });
    }
    Ok(rows)
}
