//! Spanning-tree circumnavigation on the fine grid.
//!
//! Each mega cell holds four fine sub-cells. Walking clockwise around every
//! mega cell, and detouring into a neighbor whenever a tree edge would be
//! crossed, yields one closed cycle through every sub-cell of every tree
//! node. The tree stays on the walker's right-hand side.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::graph::Direction;
use crate::spanning::SpanningTree;
use crate::terrain::HeightGrid;
use crate::weights::{edge_weight, WeightSpec};
use crate::Scalar;

/// One cell of the original height grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FineCell {
    pub row: usize,
    pub col: usize,
}

impl FineCell {
    pub fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    /// Mega cell containing this fine cell.
    pub fn mega(self) -> (usize, usize) {
        (self.row / 2, self.col / 2)
    }

    pub fn is_adjacent(self, other: FineCell) -> bool {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col) == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveragePath {
    pub cells: Vec<FineCell>,
    pub closed: bool,
    /// Free fine cells left uncovered because their mega cell is blocked.
    pub sacrificed: usize,
}

#[derive(Debug, Error)]
pub enum PathError {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("path parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("path does not match terrain: {0}")]
    Mismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Quadrant {
    TopLeft,
    TopRight,
    BottomRight,
    BottomLeft,
}

impl Quadrant {
    fn offset(self) -> (usize, usize) {
        match self {
            Quadrant::TopLeft => (0, 0),
            Quadrant::TopRight => (0, 1),
            Quadrant::BottomRight => (1, 1),
            Quadrant::BottomLeft => (1, 0),
        }
    }
}

/// Builds the closed coverage cycle around `tree`, starting at the top-left
/// sub-cell of the root mega cell.
pub fn circumnavigate<T: Scalar>(tree: &SpanningTree<'_, '_, T>) -> CoveragePath {
    let graph = tree.graph();
    let dirs = tree.directions();
    let neighbor = |node: usize, dir: Direction| -> usize {
        let e = graph
            .edge_towards(node, dir)
            .expect("tree edge must be a graph edge");
        graph.other_end(e, node)
    };

    let total = 4 * graph.node_count();
    let start = (tree.root().index, Quadrant::TopLeft);
    let mut cells = Vec::with_capacity(total);
    let mut current = start;
    loop {
        let (node, quadrant) = current;
        let id = graph.nodes()[node];
        let (dr, dc) = quadrant.offset();
        cells.push(FineCell::new(2 * id.row + dr, 2 * id.col + dc));

        let has = |dir: Direction| dirs[node][dir.index()];
        current = match quadrant {
            Quadrant::TopLeft if has(Direction::Up) => {
                (neighbor(node, Direction::Up), Quadrant::BottomLeft)
            }
            Quadrant::TopLeft => (node, Quadrant::TopRight),
            Quadrant::TopRight if has(Direction::Right) => {
                (neighbor(node, Direction::Right), Quadrant::TopLeft)
            }
            Quadrant::TopRight => (node, Quadrant::BottomRight),
            Quadrant::BottomRight if has(Direction::Down) => {
                (neighbor(node, Direction::Down), Quadrant::TopRight)
            }
            Quadrant::BottomRight => (node, Quadrant::BottomLeft),
            Quadrant::BottomLeft if has(Direction::Left) => {
                (neighbor(node, Direction::Left), Quadrant::BottomRight)
            }
            Quadrant::BottomLeft => (node, Quadrant::TopLeft),
        };
        if current == start {
            break;
        }
        assert!(
            cells.len() < total,
            "circumnavigation did not close; input is not a spanning tree"
        );
    }

    CoveragePath {
        cells,
        closed: true,
        sacrificed: graph.mega().sacrificed_cells(),
    }
}

/// Sum of step costs between consecutive cells (wrapping around when the
/// path is closed), using fine heights and fine spacing.
pub fn path_cost<T: Scalar>(path: &CoveragePath, grid: &HeightGrid<T>, spec: WeightSpec) -> T {
    let s = grid.spacing();
    let h = |c: &FineCell| grid.height(c.row, c.col);
    let steps = path.cells.windows(2).map(|w| (&w[0], &w[1]));
    let closing = match (path.closed, path.cells.first(), path.cells.last()) {
        (true, Some(first), Some(last)) if path.cells.len() > 1 => Some((last, first)),
        _ => None,
    };
    steps.chain(closing).fold(T::zero(), |acc, (a, b)| {
        acc + edge_weight(spec, h(a), h(b), s)
    })
}

impl CoveragePath {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Export format: `PATH L closed|open`, then one `row col` per line.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.cells.len() * 8 + 16);
        let _ = writeln!(
            out,
            "PATH {} {}",
            self.cells.len(),
            if self.closed { "closed" } else { "open" }
        );
        for c in &self.cells {
            let _ = writeln!(out, "{} {}", c.row, c.col);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, PathError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines.next().ok_or(PathError::Parse {
            line: 1,
            message: "missing `PATH L closed` header".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (len, closed) = match fields.as_slice() {
            ["PATH", len, flag] => {
                let len: usize = len.parse().map_err(|_| PathError::Parse {
                    line: 1,
                    message: format!("invalid path length {len:?}"),
                })?;
                let closed = match *flag {
                    "closed" => true,
                    "open" => false,
                    other => {
                        return Err(PathError::Parse {
                            line: 1,
                            message: format!("expected `closed` or `open`, got {other:?}"),
                        })
                    }
                };
                (len, closed)
            }
            _ => {
                return Err(PathError::Parse {
                    line: 1,
                    message: format!("malformed header {header:?}"),
                })
            }
        };

        let mut cells = Vec::with_capacity(len);
        for (line_no, line) in lines {
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(row)), Some(Ok(col)), None) => cells.push(FineCell::new(row, col)),
                _ => {
                    return Err(PathError::Parse {
                        line: line_no,
                        message: format!("expected `row col`, got {line:?}"),
                    })
                }
            }
        }
        if cells.len() != len {
            return Err(PathError::Parse {
                line: 1,
                message: format!("header declares {len} cells, found {}", cells.len()),
            });
        }
        Ok(Self {
            cells,
            closed,
            sacrificed: 0,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), PathError> {
        let path = path.as_ref();
        fs::write(path, self.to_text()).map_err(|source| PathError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, PathError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| PathError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Checks that every cell lies inside `grid` on a free cell and that
    /// consecutive cells are 4-adjacent.
    pub fn check_against<T: Scalar>(&self, grid: &HeightGrid<T>) -> Result<(), PathError> {
        for (i, c) in self.cells.iter().enumerate() {
            if c.row >= grid.rows() || c.col >= grid.cols() {
                return Err(PathError::Mismatch(format!(
                    "cell {i} ({}, {}) outside {}x{} terrain",
                    c.row,
                    c.col,
                    grid.rows(),
                    grid.cols()
                )));
            }
            if grid.is_obstacle(c.row, c.col) {
                return Err(PathError::Mismatch(format!(
                    "cell {i} ({}, {}) is an obstacle",
                    c.row, c.col
                )));
            }
        }
        let closing = if self.closed && self.cells.len() > 1 {
            Some((self.cells[self.cells.len() - 1], self.cells[0]))
        } else {
            None
        };
        let steps = self.cells.windows(2).map(|w| (w[0], w[1])).chain(closing);
        for (a, b) in steps {
            if !a.is_adjacent(b) {
                return Err(PathError::Mismatch(format!(
                    "step ({}, {}) -> ({}, {}) is not 4-adjacent",
                    a.row, a.col, b.row, b.col
                )));
            }
        }
        Ok(())
    }

    /// Mega-cell pairs the path crosses between; for a circumnavigation
    /// these are exactly the tree edges.
    pub fn crossed_mega_edges(&self) -> Vec<((usize, usize), (usize, usize))> {
        let closing = if self.closed && self.cells.len() > 1 {
            Some((self.cells[self.cells.len() - 1], self.cells[0]))
        } else {
            None
        };
        let set: BTreeSet<_> = self
            .cells
            .windows(2)
            .map(|w| (w[0], w[1]))
            .chain(closing)
            .filter_map(|(a, b)| {
                let (ma, mb) = (a.mega(), b.mega());
                (ma != mb).then(|| (ma.min(mb), ma.max(mb)))
            })
            .collect();
        set.into_iter().collect()
    }
}
