//! Independent oracles for the pipeline. Nothing here calls the library's
//! algorithms; inputs are read through public accessors only.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slopecover::coverage::FineCell;
use slopecover::graph::CoverageGraph;
use slopecover::terrain::{HeightGrid, MegaGrid};
use slopecover::WeightSpec;

/// Weight recomputed from first principles.
pub fn oracle_weight(spec: WeightSpec, h1: f64, h2: f64, d: f64) -> f64 {
    let rise = (h1 - h2).abs();
    let dist = (d * d + rise * rise).sqrt();
    match spec {
        WeightSpec::Unit => 1.0,
        WeightSpec::Pythagoras => dist,
        WeightSpec::SlopePenalty => dist * (1.0 + rise / d),
    }
}

/// Minimum total weight over every spanning tree, by enumerating all
/// (n−1)-edge subsets and keeping the acyclic ones.
pub fn brute_force_mst_weight(graph: &CoverageGraph<'_, f64>, spec: WeightSpec) -> f64 {
    let mega = graph.mega();
    let n = graph.node_count();
    let edges: Vec<(usize, usize, f64)> = graph
        .edges()
        .iter()
        .map(|e| {
            let w = oracle_weight(
                spec,
                mega.height(e.a.row, e.a.col),
                mega.height(e.b.row, e.b.col),
                mega.spacing(),
            );
            (e.a.index, e.b.index, w)
        })
        .collect();
    if n <= 1 {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    let mut chosen = Vec::with_capacity(n - 1);
    enumerate(&edges, 0, n, &mut chosen, &mut best);
    assert!(best.is_finite(), "graph has no spanning tree");
    best
}

fn enumerate(
    edges: &[(usize, usize, f64)],
    start: usize,
    n: usize,
    chosen: &mut Vec<usize>,
    best: &mut f64,
) {
    if chosen.len() == n - 1 {
        if is_forest(n, chosen.iter().map(|&i| (edges[i].0, edges[i].1))) {
            let w: f64 = chosen.iter().map(|&i| edges[i].2).sum();
            if w < *best {
                *best = w;
            }
        }
        return;
    }
    let needed = n - 1 - chosen.len();
    for i in start..edges.len() {
        if edges.len() - i < needed {
            break;
        }
        chosen.push(i);
        enumerate(edges, i + 1, n, chosen, best);
        chosen.pop();
    }
}

/// True when the edges contain no cycle (n−1 acyclic edges span n nodes).
pub fn is_forest(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> bool {
    let mut label: Vec<usize> = (0..n).collect();
    for (a, b) in edges {
        let (la, lb) = (label[a], label[b]);
        if la == lb {
            return false;
        }
        for l in label.iter_mut() {
            if *l == lb {
                *l = la;
            }
        }
    }
    true
}

/// Fine cells the route must cover: those whose 2×2 block has no obstacle.
pub fn coverable_cells(grid: &HeightGrid<f64>) -> HashSet<(usize, usize)> {
    let mut out = HashSet::new();
    for r in (0..grid.rows()).step_by(2) {
        for c in (0..grid.cols()).step_by(2) {
            let block = [(r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)];
            if block.iter().all(|&(y, x)| !grid.is_obstacle(y, x)) {
                out.extend(block);
            }
        }
    }
    out
}

/// Two mega cells joined by a tree edge, smaller first.
pub type MegaPair = ((usize, usize), (usize, usize));

/// Checks every coverage-cycle invariant against `grid`. `tree_pairs` lists
/// mega-cell pairs joined by tree edges.
pub fn check_cycle(
    cells: &[FineCell],
    grid: &HeightGrid<f64>,
    tree_pairs: &HashSet<MegaPair>,
) -> Result<(), String> {
    let coverable = coverable_cells(grid);
    if cells.len() != coverable.len() {
        return Err(format!(
            "length {} but {} coverable cells (4 x {} free mega cells)",
            cells.len(),
            coverable.len(),
            coverable.len() / 4
        ));
    }
    let mut visits: HashMap<(usize, usize), usize> = HashMap::new();
    for c in cells {
        if c.row >= grid.rows() || c.col >= grid.cols() {
            return Err(format!("({}, {}) out of bounds", c.row, c.col));
        }
        if grid.is_obstacle(c.row, c.col) {
            return Err(format!("({}, {}) is an obstacle", c.row, c.col));
        }
        if !coverable.contains(&(c.row, c.col)) {
            return Err(format!(
                "({}, {}) lies in a blocked mega cell",
                c.row, c.col
            ));
        }
        *visits.entry((c.row, c.col)).or_default() += 1;
    }
    if let Some((cell, n)) = visits.iter().find(|(_, &n)| n != 1) {
        return Err(format!("{cell:?} visited {n} times"));
    }
    if visits.len() != coverable.len() {
        return Err("some coverable cells never visited".into());
    }
    for i in 0..cells.len() {
        let (a, b) = (cells[i], cells[(i + 1) % cells.len()]);
        if cells.len() > 1 && a.row.abs_diff(b.row) + a.col.abs_diff(b.col) != 1 {
            return Err(format!("step {i}: {a:?} -> {b:?} not 4-adjacent"));
        }
        let (ma, mb) = ((a.row / 2, a.col / 2), (b.row / 2, b.col / 2));
        if ma != mb && !tree_pairs.contains(&(ma.min(mb), ma.max(mb))) {
            return Err(format!(
                "step {i} crosses {ma:?}-{mb:?} without a tree edge"
            ));
        }
    }
    Ok(())
}

/// Number of 4-connected obstacle regions on the fine grid.
pub fn obstacle_regions(grid: &HeightGrid<f64>) -> usize {
    let (rows, cols) = (grid.rows(), grid.cols());
    let mut seen = vec![false; rows * cols];
    let mut regions = 0;
    for start in 0..rows * cols {
        if !grid.obstacles()[start] || seen[start] {
            continue;
        }
        regions += 1;
        flood(rows, cols, start, &mut seen, |i| grid.obstacles()[i]);
    }
    regions
}

/// Components of free mega cells, recomputed from the fine mask.
pub fn free_mega_components(grid: &HeightGrid<f64>) -> usize {
    let (rows, cols) = (grid.rows() / 2, grid.cols() / 2);
    let free: Vec<bool> = (0..rows * cols)
        .map(|i| {
            let (r, c) = (2 * (i / cols), 2 * (i % cols));
            !(grid.is_obstacle(r, c)
                || grid.is_obstacle(r + 1, c)
                || grid.is_obstacle(r, c + 1)
                || grid.is_obstacle(r + 1, c + 1))
        })
        .collect();
    let mut seen = vec![false; rows * cols];
    let mut comps = 0;
    for start in 0..rows * cols {
        if free[start] && !seen[start] {
            comps += 1;
            flood(rows, cols, start, &mut seen, |i| free[i]);
        }
    }
    comps
}

fn flood(
    rows: usize,
    cols: usize,
    start: usize,
    seen: &mut [bool],
    member: impl Fn(usize) -> bool,
) {
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(i) = queue.pop_front() {
        let (r, c) = (i / cols, i % cols);
        let mut next = Vec::with_capacity(4);
        if r > 0 {
            next.push(i - cols);
        }
        if r + 1 < rows {
            next.push(i + cols);
        }
        if c > 0 {
            next.push(i - 1);
        }
        if c + 1 < cols {
            next.push(i + 1);
        }
        for j in next {
            if member(j) && !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
}

/// Random connected mega grid with between 1 and `max_nodes` free cells.
pub fn random_small_mega(rng: &mut ChaCha8Rng, max_nodes: usize) -> MegaGrid<f64> {
    loop {
        let rows = rng.gen_range(1..=3);
        let cols = rng.gen_range(1..=4);
        let heights: Vec<f64> = (0..rows * cols).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let blocked: Vec<bool> = (0..rows * cols).map(|_| rng.gen_bool(0.2)).collect();
        let d = rng.gen_range(0.5..3.0);
        let mega = MegaGrid::new(rows, cols, heights, blocked, d).unwrap();
        let free = mega.free_count();
        if free == 0 || free > max_nodes {
            continue;
        }
        if slopecover::graph::build_graph(&mega, WeightSpec::Unit).is_ok() {
            return mega;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
