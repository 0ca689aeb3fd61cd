//! Flat `key = value` configuration for the `bench` subcommand.
//!
//! ```text
//! # comments and blank lines are ignored
//! terrain_count = 15
//! rows = 250
//! cols = 250
//! max_obstacles = 30
//! seed = 42                       # master seed, or:
//! seeds = 1, 2, 3                 # one per terrain
//! weight_specs = pythagoras, penalty
//! roughness_schedule = 0.05, 0.1  # or roughness_min / roughness_max
//! spacing = 1.0
//! ```

use std::str::FromStr;

use slopecover::WeightSpec;

/// Bench settings before defaults are applied. Every field is optional so
/// the config file and command-line flags can be layered.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchSettings {
    pub terrain_count: Option<usize>,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub max_obstacles: Option<usize>,
    pub seed: Option<u64>,
    pub seeds: Option<Vec<u64>>,
    pub weight_specs: Option<Vec<WeightSpec>>,
    pub roughness_schedule: Option<Vec<f64>>,
    pub roughness_min: Option<f64>,
    pub roughness_max: Option<f64>,
    pub spacing: Option<f64>,
}

impl BenchSettings {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut out = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected `key = value`", i + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let at = |e: String| format!("line {}: {key}: {e}", i + 1);
            match key {
                "terrain_count" => out.terrain_count = Some(scalar(value).map_err(at)?),
                "rows" => out.rows = Some(scalar(value).map_err(at)?),
                "cols" => out.cols = Some(scalar(value).map_err(at)?),
                "max_obstacles" => out.max_obstacles = Some(scalar(value).map_err(at)?),
                "seed" => out.seed = Some(scalar(value).map_err(at)?),
                "seeds" => out.seeds = Some(list(value).map_err(at)?),
                "weight_specs" => out.weight_specs = Some(list(value).map_err(at)?),
                "roughness_schedule" => out.roughness_schedule = Some(list(value).map_err(at)?),
                "roughness_min" => out.roughness_min = Some(scalar(value).map_err(at)?),
                "roughness_max" => out.roughness_max = Some(scalar(value).map_err(at)?),
                "spacing" => out.spacing = Some(scalar(value).map_err(at)?),
                other => return Err(format!("line {}: unknown key {other:?}", i + 1)),
            }
        }
        Ok(out)
    }

    /// Fields set in `other` win.
    pub fn overlay(self, other: BenchSettings) -> BenchSettings {
        BenchSettings {
            terrain_count: other.terrain_count.or(self.terrain_count),
            rows: other.rows.or(self.rows),
            cols: other.cols.or(self.cols),
            max_obstacles: other.max_obstacles.or(self.max_obstacles),
            seed: other.seed.or(self.seed),
            seeds: other.seeds.or(self.seeds),
            weight_specs: other.weight_specs.or(self.weight_specs),
            roughness_schedule: other.roughness_schedule.or(self.roughness_schedule),
            roughness_min: other.roughness_min.or(self.roughness_min),
            roughness_max: other.roughness_max.or(self.roughness_max),
            spacing: other.spacing.or(self.spacing),
        }
    }
}

fn scalar<T: FromStr>(value: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e: T::Err| format!("{value:?}: {e}"))
}

fn list<T: FromStr>(value: &str) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(scalar)
        .collect()
}
