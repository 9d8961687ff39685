//! Plain-text `key=value` configuration for solver parameters and
//! experiment sweeps. `#` starts a comment; lists are comma-separated
//! and integer lists additionally accept inclusive `a..b` ranges.

use thiserror::Error;

use crate::firefly::{AttractionSource, FfaParams};
use crate::generator::Variant;
use crate::harness::ExperimentSpec;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {0}: expected `key = value`")]
    MissingEquals(usize),
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: bad value for `{key}`: {reason}")]
    BadValue { line: usize, key: String, reason: String },
    #[error("missing required key `{0}`")]
    MissingKey(&'static str),
}

fn parse_lines(text: &str) -> Result<Vec<(usize, String, String)>, ConfigError> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(ConfigError::MissingEquals(idx + 1))?;
        entries.push((idx + 1, key.trim().to_string(), value.trim().to_string()));
    }
    Ok(entries)
}

fn bad(line: usize, key: &str, reason: impl ToString) -> ConfigError {
    ConfigError::BadValue { line, key: key.to_string(), reason: reason.to_string() }
}

fn parse_u64_list(line: usize, key: &str, value: &str) -> Result<Vec<u64>, ConfigError> {
    let mut out = Vec::new();
    for item in value.split(',') {
        let item = item.trim();
        if let Some((a, b)) = item.split_once("..") {
            let a: u64 = a.trim().parse().map_err(|e| bad(line, key, e))?;
            let b: u64 = b.trim().parse().map_err(|e| bad(line, key, e))?;
            if a > b {
                return Err(bad(line, key, format!("empty range {a}..{b}")));
            }
            out.extend(a..=b);
        } else {
            out.push(item.parse().map_err(|e| bad(line, key, e))?);
        }
    }
    Ok(out)
}

fn parse_f64_list(line: usize, key: &str, value: &str) -> Result<Vec<f64>, ConfigError> {
    value
        .split(',')
        .map(|item| item.trim().parse().map_err(|e| bad(line, key, e)))
        .collect()
}

/// Applies one `key = value` pair to a parameter set. Returns false if
/// the key is not a solver-parameter key.
fn apply_param_key(
    params: &mut FfaParams<f64>,
    line: usize,
    key: &str,
    value: &str,
) -> Result<bool, ConfigError> {
    match key {
        "np" => params.population = value.parse().map_err(|e| bad(line, key, e))?,
        "lb" => params.lower = value.parse().map_err(|e| bad(line, key, e))?,
        "ub" => params.upper = value.parse().map_err(|e| bad(line, key, e))?,
        "alpha" => params.alpha = value.parse().map_err(|e| bad(line, key, e))?,
        "beta0" => params.beta0 = value.parse().map_err(|e| bad(line, key, e))?,
        "gamma" => params.gamma = value.parse().map_err(|e| bad(line, key, e))?,
        "max_fes" => params.max_fes = value.parse().map_err(|e| bad(line, key, e))?,
        "seed" => params.seed = value.parse().map_err(|e| bad(line, key, e))?,
        "attraction_source" => {
            params.attraction_source = match value {
                "current" => AttractionSource::CurrentPopulation,
                "sorted" => AttractionSource::SortedCopy,
                other => return Err(bad(line, key, format!("expected current|sorted, got {other}"))),
            }
        }
        "normalized_distance" => {
            params.normalized_distance = match value {
                "true" => true,
                "false" => false,
                other => return Err(bad(line, key, format!("expected true|false, got {other}"))),
            }
        }
        _ => return Ok(false),
    }
    Ok(true)
}

/// Parses a solver parameter file. Unknown keys are errors.
pub fn parse_params(text: &str) -> Result<FfaParams<f64>, ConfigError> {
    let mut params = FfaParams::default();
    for (line, key, value) in parse_lines(text)? {
        if !apply_param_key(&mut params, line, &key, &value)? {
            return Err(ConfigError::UnknownKey { line, key });
        }
    }
    Ok(params)
}

/// Parses an experiment spec file: sweep keys (`variants`, `n`,
/// `p_values`, `q_seeds`, `runs_per_graph`) plus any solver parameter
/// keys for the template.
pub fn parse_experiment(text: &str) -> Result<ExperimentSpec, ConfigError> {
    let mut params = FfaParams::default();
    let mut variants: Option<Vec<Variant>> = None;
    let mut n: Option<usize> = None;
    let mut p_values: Option<Vec<f64>> = None;
    let mut q_seeds: Option<Vec<u64>> = None;
    let mut runs_per_graph: Option<u32> = None;

    for (line, key, value) in parse_lines(text)? {
        match key.as_str() {
            "variants" => {
                let parsed: Result<Vec<Variant>, _> =
                    value.split(',').map(|v| v.trim().parse()).collect();
                variants = Some(parsed.map_err(|e| bad(line, &key, e))?);
            }
            "n" => n = Some(value.parse().map_err(|e| bad(line, &key, e))?),
            "p_values" => p_values = Some(parse_f64_list(line, &key, &value)?),
            "q_seeds" => q_seeds = Some(parse_u64_list(line, &key, &value)?),
            "runs_per_graph" => {
                runs_per_graph = Some(value.parse().map_err(|e| bad(line, &key, e))?)
            }
            _ => {
                if !apply_param_key(&mut params, line, &key, &value)? {
                    return Err(ConfigError::UnknownKey { line, key });
                }
            }
        }
    }

    Ok(ExperimentSpec {
        variants: variants.ok_or(ConfigError::MissingKey("variants"))?,
        n: n.ok_or(ConfigError::MissingKey("n"))?,
        p_values: p_values.ok_or(ConfigError::MissingKey("p_values"))?,
        q_seeds: q_seeds.ok_or(ConfigError::MissingKey("q_seeds"))?,
        runs_per_graph: runs_per_graph.ok_or(ConfigError::MissingKey("runs_per_graph"))?,
        params,
    })
}

/// Renders a parameter set in the same `key = value` syntax the parser
/// accepts; used by `--show-config`.
pub fn show_params(params: &FfaParams<f64>) -> String {
    let source = match params.attraction_source {
        AttractionSource::CurrentPopulation => "current",
        AttractionSource::SortedCopy => "sorted",
    };
    format!(
        "np = {}\nlb = {}\nub = {}\nalpha = {}\nbeta0 = {}\ngamma = {}\n\
         max_fes = {}\nattraction_source = {}\nnormalized_distance = {}\nseed = {}\n",
        params.population,
        params.lower,
        params.upper,
        params.alpha,
        params.beta0,
        params.gamma,
        params.max_fes,
        source,
        params.normalized_distance,
        params.seed,
    )
}
