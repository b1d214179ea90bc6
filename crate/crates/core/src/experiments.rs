//! Batch simulations with CSV output.
//!
//! A run is described by one flat JSON object ([`ExperimentConfig`]); any
//! field can be overridden with `key=value` pairs, where the value is parsed
//! as JSON and falls back to a plain string.

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::exec::{par_map, Exec};
use crate::game::{play_sym, Outcome, Player, Variant};
use crate::graph::{Family, Graph};
use crate::strategies::{build_strategy, strategy_sides};

/// Fixed CSV header of [`ResultRow`] files.
pub const CSV_HEADER: &str = "n,family,variant,a_strategy,b_strategy,seed,rounds,lower_bound,upper_bound,pass,elapsed_ms";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub family: Family,
    pub n_min: usize,
    pub n_max: usize,
    pub n_step: usize,
    /// Keep only odd `n` from the range.
    pub odd_only: bool,
    pub variant: Variant,
    pub a_strategy: String,
    pub b_strategy: String,
    pub seeds: Vec<u64>,
    /// Optional cap on rounds per game.
    pub round_limit: Option<usize>,
    /// CSV destination; standard output when absent.
    pub output: Option<String>,
    /// Write 0 for every `elapsed_ms` so reruns are byte-identical.
    pub zero_elapsed: bool,
    pub exec: Exec,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            family: Family::Path,
            n_min: 9,
            n_max: 201,
            n_step: 2,
            odd_only: true,
            variant: Variant::Sym,
            a_strategy: "breaker-path".into(),
            b_strategy: "translated".into(),
            seeds: vec![0],
            round_limit: None,
            output: None,
            zero_elapsed: false,
            exec: Exec::default(),
        }
    }
}

impl ExperimentConfig {
    /// Reads a config file; missing fields take their defaults.
    pub fn from_file(path: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let value: Value = serde_json::from_str(&text)?;
        Self::from_value(value, &[])
    }

    /// Builds a config from a JSON object plus `key=value` overrides.
    pub fn from_value(mut value: Value, overrides: &[(String, String)]) -> Result<Self> {
        let obj = value
            .as_object_mut()
            .ok_or_else(|| Error::Usage("experiment config must be a JSON object".into()))?;
        for (key, raw) in overrides {
            obj.insert(key.clone(), serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.clone())));
        }
        let config: ExperimentConfig =
            serde_json::from_value(value).map_err(|e| Error::Usage(format!("bad experiment config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    /// Applies overrides to an existing config.
    pub fn with_overrides(&self, overrides: &[(String, String)]) -> Result<Self> {
        Self::from_value(serde_json::to_value(self)?, overrides)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, side) in [(&self.a_strategy, Player::A), (&self.b_strategy, Player::B)] {
            let sides = strategy_sides(name).ok_or_else(|| Error::Usage(format!("unknown strategy {name:?}")))?;
            if !sides.contains(&side) {
                return Err(Error::Usage(format!("strategy {name} cannot play {side:?}")));
            }
        }
        if self.n_step == 0 || self.n_min > self.n_max {
            return Err(Error::Usage(format!("empty range {}..{} step {}", self.n_min, self.n_max, self.n_step)));
        }
        if self.seeds.is_empty() {
            return Err(Error::Usage("at least one seed is required".into()));
        }
        Ok(())
    }

    pub fn sizes(&self) -> Vec<usize> {
        (self.n_min..=self.n_max)
            .step_by(self.n_step)
            .filter(|n| !self.odd_only || n % 2 == 1)
            .collect()
    }
}

/// Parses `a..b` (inclusive) or a single number.
pub fn parse_range(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::Usage(format!("cannot parse range {text:?}; expected N or A..B"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    match text.split_once("..") {
        Some((a, b)) => Ok((num(a)?, num(b.trim_start_matches('='))?)),
        None => num(text).map(|n| (n, n)),
    }
}

/// Bound columns for a family at size `n`, logarithms base 2.
///
/// Paths and cycles: `B`'s lower bound from the line-graph translation and
/// `A`'s upper bound `3.5 log² n`. Complete graphs: `1` and `6`.
pub fn bounds(family: Family, n: usize) -> (f64, f64) {
    let log = |x: usize| (x as f64).log2();
    match family {
        Family::Path => (0.5 * log(n.saturating_sub(1).max(1)) - 1.0, 3.5 * log(n).powi(2)),
        Family::Cycle => (0.5 * log(n) - 0.5, 3.5 * log(n).powi(2)),
        Family::Complete => (1.0, 6.0),
        _ => (0.0, f64::INFINITY),
    }
}

/// Whether the named `B` guarantees the lower bound and the named `A` the upper one.
fn bound_sides(a: &str, b: &str) -> (bool, bool) {
    let lower = matches!(b, "translated" | "mirror" | "optimal");
    let upper = a.starts_with("breaker-") || a == "optimal";
    (lower, upper)
}

fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub n: usize,
    pub family: Family,
    pub variant: Variant,
    pub a_strategy: String,
    pub b_strategy: String,
    pub seed: u64,
    pub rounds: usize,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub pass: bool,
    pub elapsed_ms: u64,
}

impl ResultRow {
    /// The pass flag from the other columns: `rounds > lower_bound` when `B`
    /// is a guaranteed strategy and `rounds <= upper_bound` when `A` is.
    pub fn recompute_pass(&self) -> bool {
        let (lower, upper) = bound_sides(&self.a_strategy, &self.b_strategy);
        (!lower || self.rounds as f64 > self.lower_bound) && (!upper || self.rounds as f64 <= self.upper_bound)
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.4},{:.4},{},{}",
            self.n,
            self.family.as_str(),
            self.variant.as_str(),
            self.a_strategy,
            self.b_strategy,
            self.seed,
            self.rounds,
            self.lower_bound,
            self.upper_bound,
            self.pass,
            self.elapsed_ms
        )
    }
}

pub fn graph_for(family: Family, n: usize) -> Result<Graph> {
    match family {
        Family::CompleteBipartite => Graph::complete_bipartite(n, n),
        _ => Graph::make(family, &[n]),
    }
}

/// Plays one game between two named strategies.
pub fn play_named(
    g: &Graph,
    a: &str,
    b: &str,
    variant: Variant,
    seed: u64,
    round_limit: Option<usize>,
) -> Result<Outcome> {
    let mut sa = build_strategy(a, g, Player::A, variant, seed)?;
    let mut sb = build_strategy(b, g, Player::B, variant, seed)?;
    Ok(play_sym(g, sa.as_mut(), sb.as_mut(), variant, round_limit, seed)?.0)
}

fn run_row(config: &ExperimentConfig, n: usize, seed: u64) -> Result<ResultRow> {
    let start = Instant::now();
    let g = graph_for(config.family, n)?;
    let outcome = play_named(&g, &config.a_strategy, &config.b_strategy, config.variant, seed, config.round_limit)?;
    let (lower, upper) = bounds(config.family, n);
    let mut row = ResultRow {
        n,
        family: config.family,
        variant: config.variant,
        a_strategy: config.a_strategy.clone(),
        b_strategy: config.b_strategy.clone(),
        seed,
        rounds: outcome.survived_rounds,
        lower_bound: round4(lower),
        upper_bound: round4(upper),
        pass: false,
        elapsed_ms: if config.zero_elapsed { 0 } else { start.elapsed().as_millis() as u64 },
    };
    row.pass = row.recompute_pass();
    Ok(row)
}

/// Runs every `(n, seed)` of the config. Rows come back in config order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    config.validate()?;
    let jobs: Vec<(usize, u64)> =
        config.sizes().into_iter().flat_map(|n| config.seeds.iter().map(move |&s| (n, s))).collect();
    par_map(config.exec, &jobs, |&(n, seed)| run_row(config, n, seed)).into_iter().collect()
}

pub fn write_csv(rows: &[ResultRow], out: &mut dyn Write) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.csv_line())?;
    }
    Ok(())
}

/// Config fields as a flat JSON object, for `--print-config` style output.
pub fn config_object(config: &ExperimentConfig) -> Result<Map<String, Value>> {
    match serde_json::to_value(config)? {
        Value::Object(map) => Ok(map),
        _ => unreachable!("configs serialise to objects"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn overrides(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
        pairs.iter().map(|&(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn overrides_parse_json_then_strings() {
        let base = ExperimentConfig::default();
        let c = base
            .with_overrides(&overrides(&[("n_max", "31"), ("b_strategy", "greedy-copy"), ("seeds", "[1,2]")]))
            .unwrap();
        assert_eq!((c.n_max, c.b_strategy.as_str(), c.seeds.clone()), (31, "greedy-copy", vec![1, 2]));
        assert!(base.with_overrides(&overrides(&[("a_strategy", "mirror")])).is_err());
        assert!(base.with_overrides(&overrides(&[("colour", "red")])).is_err());
    }

    #[test]
    fn ranges_and_sizes() {
        assert_eq!(parse_range("9..201").unwrap(), (9, 201));
        assert_eq!(parse_range("7").unwrap(), (7, 7));
        assert!(parse_range("x..3").is_err());
        let c = ExperimentConfig { n_min: 8, n_max: 14, n_step: 1, ..Default::default() };
        assert_eq!(c.sizes(), vec![9, 11, 13]);
    }

    #[test]
    fn bound_values() {
        let (lo, hi) = bounds(Family::Path, 9);
        assert!((lo - 0.5).abs() < 1e-12);
        assert!((hi - 3.5 * 9f64.log2().powi(2)).abs() < 1e-9);
        assert_eq!(bounds(Family::Cycle, 4).0, 0.5);
    }

    #[test]
    fn identical_config_gives_identical_csv() {
        let c = ExperimentConfig { n_min: 9, n_max: 21, zero_elapsed: true, seeds: vec![3], ..Default::default() };
        let render = || {
            let rows = run_experiment(&c).unwrap();
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf).unwrap();
            String::from_utf8(buf).unwrap()
        };
        let first = render();
        assert_eq!(first, render());
        assert!(first.starts_with(CSV_HEADER));
        assert_eq!(first.lines().count(), 1 + 7);
    }

    #[test]
    fn rows_recompute_their_flag() {
        let c = ExperimentConfig { n_min: 9, n_max: 15, zero_elapsed: true, ..Default::default() };
        for row in run_experiment(&c).unwrap() {
            assert!(row.pass, "{}", row.csv_line());
            assert_eq!(row.pass, row.recompute_pass());
        }
    }
}
