//! Spanning trees over a [`CoverageGraph`]: the minimum spanning tree under
//! the graph's weights, and the weight-blind depth-first tree that classical
//! flat-terrain coverage would use.

use std::cmp::Ordering;

use crate::graph::{CoverageGraph, Direction, Edge, NodeId};
use crate::union_find::UnionFind;
use crate::weights::WeightSpec;
use crate::Scalar;

/// Edge subset of a graph connecting every node, rooted at the first node in
/// row-major order.
#[derive(Debug, Clone)]
pub struct SpanningTree<'g, 'm, T> {
    graph: &'g CoverageGraph<'m, T>,
    edges: Vec<usize>,
    root: NodeId,
}

impl<'g, 'm, T: Scalar> SpanningTree<'g, 'm, T> {
    pub fn graph(&self) -> &'g CoverageGraph<'m, T> {
        self.graph
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    /// Indices into [`CoverageGraph::edges`].
    pub fn edge_indices(&self) -> &[usize] {
        &self.edges
    }

    pub fn edges(&self) -> impl Iterator<Item = &'g Edge<T>> + '_ {
        let all = self.graph.edges();
        self.edges.iter().map(move |&i| &all[i])
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// For each node, whether a tree edge leaves it towards each
    /// [`Direction`] (indexed by [`Direction::index`]).
    pub fn directions(&self) -> Vec<[bool; 4]> {
        let mut dirs = vec![[false; 4]; self.graph.node_count()];
        for &e in &self.edges {
            let edge = &self.graph.edges()[e];
            let (a, b) = (edge.a, edge.b);
            let dir = if a.row == b.row {
                Direction::Right
            } else {
                Direction::Down
            };
            dirs[a.index][dir.index()] = true;
            dirs[b.index][dir.opposite().index()] = true;
        }
        dirs
    }
}

/// Kruskal over edges sorted by weight, ties broken by canonical edge index.
pub fn minimum_spanning_tree<'g, 'm, T: Scalar>(
    graph: &'g CoverageGraph<'m, T>,
) -> SpanningTree<'g, 'm, T> {
    let all = graph.edges();
    let mut order: Vec<usize> = (0..all.len()).collect();
    order.sort_by(|&x, &y| {
        all[x]
            .weight
            .partial_cmp(&all[y].weight)
            .unwrap_or(Ordering::Equal)
            .then(x.cmp(&y))
    });

    let target = graph.node_count().saturating_sub(1);
    let mut sets = UnionFind::new(graph.node_count());
    let mut edges = Vec::with_capacity(target);
    for i in order {
        if edges.len() == target {
            break;
        }
        if sets.union(all[i].a.index, all[i].b.index) {
            edges.push(i);
        }
    }
    edges.sort_unstable();

    SpanningTree {
        graph,
        edges,
        root: graph.nodes()[0],
    }
}

/// Depth-first tree from the root, trying neighbors up, right, down, left.
/// Weights are ignored.
pub fn classical_spanning_tree<'g, 'm, T: Scalar>(
    graph: &'g CoverageGraph<'m, T>,
) -> SpanningTree<'g, 'm, T> {
    let n = graph.node_count();
    let mut visited = vec![false; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    // (node, next direction to try)
    let mut stack = vec![(0usize, 0usize)];
    visited[0] = true;
    while let Some(top) = stack.last_mut() {
        let (node, next) = *top;
        if next == Direction::ORDER.len() {
            stack.pop();
            continue;
        }
        top.1 += 1;
        if let Some(e) = graph.edge_towards(node, Direction::ORDER[next]) {
            let child = graph.other_end(e, node);
            if !visited[child] {
                visited[child] = true;
                edges.push(e);
                stack.push((child, 0));
            }
        }
    }
    edges.sort_unstable();

    SpanningTree {
        graph,
        edges,
        root: graph.nodes()[0],
    }
}

/// Sum of edge weights under `spec`, which need not be the spec the tree was
/// built with.
pub fn tree_weight<T: Scalar>(tree: &SpanningTree<'_, '_, T>, spec: WeightSpec) -> T {
    tree.edges
        .iter()
        .fold(T::zero(), |acc, &e| acc + tree.graph.weight_under(e, spec))
}
