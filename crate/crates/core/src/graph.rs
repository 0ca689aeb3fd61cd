//! The 4-connected weighted graph over free mega cells.

use std::fmt::Write as _;

use thiserror::Error;

use crate::terrain::MegaGrid;
use crate::union_find::UnionFind;
use crate::weights::{edge_weight, WeightSpec};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("terrain has no free mega cells")]
    NoFreeCells,
    #[error("free mega cells form {components} disconnected components; a single closed tour cannot cover them")]
    Disconnected { components: usize },
    #[error("average slope needs at least one pair of adjacent free mega cells")]
    NoEdges,
}

/// Neighbor directions in the canonical order used for traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Right,
    Down,
    Left,
}

impl Direction {
    /// Up, right, down, left.
    pub const ORDER: [Direction; 4] = [
        Direction::Up,
        Direction::Right,
        Direction::Down,
        Direction::Left,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn opposite(self) -> Direction {
        Direction::ORDER[(self.index() + 2) % 4]
    }
}

/// A free mega cell: its position among free cells in row-major order, and
/// its mega-grid coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId {
    pub index: usize,
    pub row: usize,
    pub col: usize,
}

/// Undirected edge, stored once with `a.index < b.index`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge<T> {
    pub a: NodeId,
    pub b: NodeId,
    pub weight: T,
}

#[derive(Debug, Clone)]
pub struct CoverageGraph<'m, T> {
    mega: &'m MegaGrid<T>,
    spec: WeightSpec,
    nodes: Vec<NodeId>,
    edges: Vec<Edge<T>>,
    node_of_cell: Vec<Option<usize>>,
    // per node, edge index towards each Direction
    adjacency: Vec<[Option<usize>; 4]>,
}

impl<'m, T: Scalar> CoverageGraph<'m, T> {
    pub fn mega(&self) -> &'m MegaGrid<T> {
        self.mega
    }

    pub fn spec(&self) -> WeightSpec {
        self.spec
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    /// Edges in canonical order: row-major over the lower-index endpoint,
    /// right neighbor before down neighbor.
    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Node covering mega cell `(row, col)`, if that cell is free.
    pub fn node_at(&self, row: usize, col: usize) -> Option<NodeId> {
        if row >= self.mega.rows() || col >= self.mega.cols() {
            return None;
        }
        self.node_of_cell[row * self.mega.cols() + col].map(|i| self.nodes[i])
    }

    /// Index of the edge leaving `node` towards `dir`, if any.
    pub fn edge_towards(&self, node: usize, dir: Direction) -> Option<usize> {
        self.adjacency[node][dir.index()]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].iter().flatten().count()
    }

    /// Node at the other end of edge `edge` from `node`.
    pub fn other_end(&self, edge: usize, node: usize) -> usize {
        let e = &self.edges[edge];
        if e.a.index == node {
            e.b.index
        } else {
            e.a.index
        }
    }

    /// Weight of edge `edge` re-evaluated under `spec`.
    pub fn weight_under(&self, edge: usize, spec: WeightSpec) -> T {
        let e = &self.edges[edge];
        edge_weight(
            spec,
            self.mega.height(e.a.row, e.a.col),
            self.mega.height(e.b.row, e.b.col),
            self.mega.spacing(),
        )
    }

    /// Debug dump, one `a_row a_col b_row b_col weight` line per edge.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let _ = writeln!(
                out,
                "{} {} {} {} {}",
                e.a.row, e.a.col, e.b.row, e.b.col, e.weight
            );
        }
        out
    }
}

/// Builds the graph: one node per free mega cell, one edge per 4-adjacent
/// free pair, weighted by `spec` with `d` = mega spacing.
pub fn build_graph<T: Scalar>(
    mega: &MegaGrid<T>,
    spec: WeightSpec,
) -> Result<CoverageGraph<'_, T>, GraphError> {
    let (rows, cols) = (mega.rows(), mega.cols());
    let mut nodes = Vec::new();
    let mut node_of_cell = vec![None; rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            if !mega.is_blocked(r, c) {
                node_of_cell[r * cols + c] = Some(nodes.len());
                nodes.push(NodeId {
                    index: nodes.len(),
                    row: r,
                    col: c,
                });
            }
        }
    }
    if nodes.is_empty() {
        return Err(GraphError::NoFreeCells);
    }

    let d = mega.spacing();
    let mut edges = Vec::new();
    let mut adjacency = vec![[None; 4]; nodes.len()];
    let mut components = UnionFind::new(nodes.len());
    for a in &nodes {
        let neighbors = [
            (Direction::Right, a.row, a.col + 1),
            (Direction::Down, a.row + 1, a.col),
        ];
        for (dir, r, c) in neighbors {
            if r >= rows || c >= cols {
                continue;
            }
            let Some(bi) = node_of_cell[r * cols + c] else {
                continue;
            };
            let b = nodes[bi];
            let weight = edge_weight(spec, mega.height(a.row, a.col), mega.height(r, c), d);
            adjacency[a.index][dir.index()] = Some(edges.len());
            adjacency[b.index][dir.opposite().index()] = Some(edges.len());
            components.union(a.index, b.index);
            edges.push(Edge { a: *a, b, weight });
        }
    }
    if components.sets() > 1 {
        return Err(GraphError::Disconnected {
            components: components.sets(),
        });
    }

    Ok(CoverageGraph {
        mega,
        spec,
        nodes,
        edges,
        node_of_cell,
        adjacency,
    })
}

/// Mean of `|h_a − h_b| / d` over all 4-adjacent pairs of free mega cells.
pub fn average_slope<T: Scalar>(mega: &MegaGrid<T>) -> Result<T, GraphError> {
    let (rows, cols) = (mega.rows(), mega.cols());
    let d = mega.spacing();
    let mut total = T::zero();
    let mut edges = 0usize;
    for r in 0..rows {
        for c in 0..cols {
            if mega.is_blocked(r, c) {
                continue;
            }
            let h = mega.height(r, c);
            if c + 1 < cols && !mega.is_blocked(r, c + 1) {
                total = total + (h - mega.height(r, c + 1)).abs() / d;
                edges += 1;
            }
            if r + 1 < rows && !mega.is_blocked(r + 1, c) {
                total = total + (h - mega.height(r + 1, c)).abs() / d;
                edges += 1;
            }
        }
    }
    if edges == 0 {
        return Err(GraphError::NoEdges);
    }
    Ok(total / T::of(edges as f64))
}
