//! MST versus classical spanning tree over seeded random terrains.
//!
//! For every terrain and weight function the harness builds the slope-weighted
//! graph, takes both trees, and evaluates both under the same weights. The
//! classical tree is the depth-first tree of [`classical_spanning_tree`],
//! which ignores weights entirely.

use std::fmt::Write as _;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{average_slope, build_graph, GraphError};
use crate::spanning::{classical_spanning_tree, minimum_spanning_tree, tree_weight};
use crate::terrain::{aggregate, generate_terrain, HeightGrid, TerrainError, TerrainGenSpec};
use crate::weights::WeightSpec;

pub const CSV_HEADER: &str =
    "terrain,seed,avg_slope,spec,classical_weight,mst_weight,gap,gap_ratio";

/// Description of the classical tree, written into CSV metadata.
pub const CLASSICAL_TREE_RULE: &str = "dfs-up-right-down-left";

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid benchmark config: {0}")]
    InvalidConfig(String),
    #[error("terrain {index}: {source}")]
    Terrain {
        index: usize,
        #[source]
        source: TerrainError,
    },
    #[error("terrain {index}: {source}")]
    Graph {
        index: usize,
        #[source]
        source: GraphError,
    },
    #[error("trend statistics for {spec} need at least 3 records, got {count}")]
    InsufficientData { spec: WeightSpec, count: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub terrain_count: usize,
    pub rows: usize,
    pub cols: usize,
    pub max_obstacles: usize,
    /// One seed per terrain.
    pub seeds: Vec<u64>,
    pub weight_specs: Vec<WeightSpec>,
    /// Target roughness (average slope) per terrain.
    pub roughness_schedule: Vec<f64>,
    pub spacing: f64,
}

impl BenchConfig {
    /// Per-terrain seeds derived from `master_seed`, roughness spread evenly
    /// over `[0.05, 0.5]`, both slope-aware weight functions.
    pub fn from_master_seed(
        terrain_count: usize,
        rows: usize,
        cols: usize,
        max_obstacles: usize,
        master_seed: u64,
    ) -> Self {
        Self {
            terrain_count,
            rows,
            cols,
            max_obstacles,
            seeds: derive_seeds(master_seed, terrain_count),
            weight_specs: vec![WeightSpec::Pythagoras, WeightSpec::SlopePenalty],
            roughness_schedule: linear_schedule(terrain_count, 0.05, 0.5),
            spacing: 1.0,
        }
    }

    /// Fifteen 250×250 terrains with at most 30 obstacles each.
    pub fn full_scale(master_seed: u64) -> Self {
        Self::from_master_seed(15, 250, 250, 30, master_seed)
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let fail = |msg: String| Err(BenchError::InvalidConfig(msg));
        if self.terrain_count == 0 {
            return fail("terrain_count must be positive".into());
        }
        if self.seeds.len() != self.terrain_count {
            return fail(format!(
                "{} seeds for {} terrains",
                self.seeds.len(),
                self.terrain_count
            ));
        }
        if self.roughness_schedule.len() != self.terrain_count {
            return fail(format!(
                "{} roughness values for {} terrains",
                self.roughness_schedule.len(),
                self.terrain_count
            ));
        }
        if self.weight_specs.is_empty() {
            return fail("at least one weight function is required".into());
        }
        for (i, spec) in self.weight_specs.iter().enumerate() {
            if self.weight_specs[..i].contains(spec) {
                return fail(format!("weight function {spec} listed twice"));
            }
        }
        for index in 0..self.terrain_count {
            self.terrain_spec(index)
                .validate()
                .map_err(|source| BenchError::Terrain { index, source })?;
        }
        Ok(())
    }

    pub fn terrain_spec(&self, index: usize) -> TerrainGenSpec {
        TerrainGenSpec {
            rows: self.rows,
            cols: self.cols,
            seed: self.seeds[index],
            max_obstacles: self.max_obstacles,
            roughness: self.roughness_schedule[index],
            spacing: self.spacing,
        }
    }
}

/// `count` seeds drawn from a ChaCha stream keyed by `master`.
pub fn derive_seeds(master: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    (0..count).map(|_| rng.next_u64()).collect()
}

/// `count` evenly spaced values from `lo` to `hi` inclusive.
pub fn linear_schedule(count: usize, lo: f64, hi: f64) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        n => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub terrain_index: usize,
    pub seed: u64,
    pub avg_slope: f64,
    pub spec: WeightSpec,
    pub classical_weight: f64,
    pub mst_weight: f64,
    /// `classical_weight − mst_weight`.
    pub gap: f64,
    /// `classical_weight / mst_weight`, 1 when both are zero.
    pub gap_ratio: f64,
}

/// Runs every (terrain, weight function) pair. Terrains are evaluated in
/// parallel; records come back sorted by weight function (config order),
/// then average slope, then terrain index.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    cfg.validate()?;
    let per_terrain: Vec<Vec<BenchRecord>> = (0..cfg.terrain_count)
        .into_par_iter()
        .map(|index| {
            let grid: HeightGrid<f64> = generate_terrain(&cfg.terrain_spec(index))
                .map_err(|source| BenchError::Terrain { index, source })?;
            evaluate_terrain(index, cfg.seeds[index], &grid, &cfg.weight_specs)
        })
        .collect::<Result<_, _>>()?;

    let mut records: Vec<BenchRecord> = per_terrain.into_iter().flatten().collect();
    let spec_rank = |s: WeightSpec| cfg.weight_specs.iter().position(|&x| x == s);
    records.sort_by(|a, b| {
        spec_rank(a.spec)
            .cmp(&spec_rank(b.spec))
            .then(a.avg_slope.total_cmp(&b.avg_slope))
            .then(a.terrain_index.cmp(&b.terrain_index))
    });
    Ok(records)
}

/// Both trees on one terrain under each weight function.
pub fn evaluate_terrain(
    index: usize,
    seed: u64,
    grid: &HeightGrid<f64>,
    specs: &[WeightSpec],
) -> Result<Vec<BenchRecord>, BenchError> {
    let mega = aggregate(grid);
    let graph_err = |source| BenchError::Graph { index, source };
    let avg_slope = average_slope(&mega).map_err(graph_err)?;
    specs
        .iter()
        .map(|&spec| {
            let graph = build_graph(&mega, spec).map_err(graph_err)?;
            let mst_weight = tree_weight(&minimum_spanning_tree(&graph), spec);
            let classical_weight = tree_weight(&classical_spanning_tree(&graph), spec);
            let gap_ratio = if mst_weight == 0.0 {
                1.0
            } else {
                classical_weight / mst_weight
            };
            Ok(BenchRecord {
                terrain_index: index,
                seed,
                avg_slope,
                spec,
                classical_weight,
                mst_weight,
                gap: classical_weight - mst_weight,
                gap_ratio,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecTrend {
    pub spec: WeightSpec,
    pub records: usize,
    /// Spearman rank correlation between average slope and gap.
    pub slope_gap_correlation: f64,
    pub mean_avg_slope: f64,
    pub mean_gap: f64,
    pub mean_gap_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrendSummary {
    pub per_spec: Vec<SpecTrend>,
}

impl TrendSummary {
    pub fn get(&self, spec: WeightSpec) -> Option<&SpecTrend> {
        self.per_spec.iter().find(|t| t.spec == spec)
    }
}

/// Per weight function (in order of first appearance): rank correlation of
/// gap against average slope, plus means.
pub fn trend_statistics(records: &[BenchRecord]) -> Result<TrendSummary, BenchError> {
    let mut specs: Vec<WeightSpec> = Vec::new();
    for r in records {
        if !specs.contains(&r.spec) {
            specs.push(r.spec);
        }
    }
    let per_spec = specs
        .into_iter()
        .map(|spec| {
            let group: Vec<&BenchRecord> = records.iter().filter(|r| r.spec == spec).collect();
            if group.len() < 3 {
                return Err(BenchError::InsufficientData {
                    spec,
                    count: group.len(),
                });
            }
            let n = group.len() as f64;
            let slopes: Vec<f64> = group.iter().map(|r| r.avg_slope).collect();
            let gaps: Vec<f64> = group.iter().map(|r| r.gap).collect();
            Ok(SpecTrend {
                spec,
                records: group.len(),
                slope_gap_correlation: spearman(&slopes, &gaps),
                mean_avg_slope: slopes.iter().sum::<f64>() / n,
                mean_gap: gaps.iter().sum::<f64>() / n,
                mean_gap_ratio: group.iter().map(|r| r.gap_ratio).sum::<f64>() / n,
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(TrendSummary { per_spec })
}

/// Spearman's rho with average ranks for ties. Zero when either side has no
/// variation.
pub fn spearman(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let (rx, ry) = (ranks(xs), ranks(ys));
    let n = rx.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        cov += (a - mx) * (b - my);
        vx += (a - mx) * (a - mx);
        vy += (b - my) * (b - my);
    }
    if vx == 0.0 || vy == 0.0 {
        0.0
    } else {
        cov / (vx * vy).sqrt()
    }
}

fn ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// CSV with six-decimal floats. The summary, when given, is appended as
/// `# correlation,<spec>,<value>` comment lines.
pub fn to_csv(records: &[BenchRecord], summary: Option<&TrendSummary>) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 4));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{:.6},{},{:.6},{:.6},{:.6},{:.6}",
            r.terrain_index,
            r.seed,
            r.avg_slope,
            r.spec,
            r.classical_weight,
            r.mst_weight,
            r.gap,
            r.gap_ratio
        );
    }
    let _ = writeln!(out, "# classical_tree,{CLASSICAL_TREE_RULE}");
    if let Some(summary) = summary {
        for t in &summary.per_spec {
            let _ = writeln!(
                out,
                "# correlation,{},{:.6}",
                t.spec, t.slope_gap_correlation
            );
        }
    }
    out
}
