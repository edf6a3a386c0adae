//! Simple undirected graphs with dense node and edge ids.

use std::collections::VecDeque;

use thiserror::Error;

use crate::{DisjointSets, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("node {node} out of range for a graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("partition covers {partition} nodes but the graph has {graph}")]
    SizeMismatch { partition: usize, graph: usize },
}

/// A simple undirected graph.
///
/// Edges are stored as `(u, v)` with `u < v` and addressed by their index in
/// insertion order. Each adjacency list holds `(neighbor, edge id)` pairs
/// sorted by neighbor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<(usize, usize)>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(node_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); node_count];
        let mut normalized = Vec::with_capacity(edges.len());
        for (id, &(a, b)) in edges.iter().enumerate() {
            for node in [a, b] {
                if node >= node_count {
                    return Err(GraphError::NodeOutOfRange { node, node_count });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let (u, v) = (a.min(b), a.max(b));
            normalized.push((u, v));
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
                let v = w[0].0;
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(Graph {
            adjacency,
            edges: normalized,
        })
    }

    /// A graph with `node_count` nodes and no edges.
    pub fn empty(node_count: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); node_count],
            edges: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    /// `(neighbor, edge id)` pairs, sorted by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Edge id joining `u` and `v`, if any.
    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        let list = self.adjacency.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| list[i].1)
    }

    fn check_node(&self, node: usize) -> Result<(), GraphError> {
        if node >= self.node_count() {
            Err(GraphError::NodeOutOfRange {
                node,
                node_count: self.node_count(),
            })
        } else {
            Ok(())
        }
    }

    /// Breadth-first hop distances from `source`. Nodes farther than `cap`
    /// hops, or not reachable at all, are `None`.
    pub fn distances(&self, source: usize, cap: usize) -> Result<Vec<Option<usize>>, GraphError> {
        self.check_node(source)?;
        let mut dist = vec![None; self.node_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or_default();
            if d == cap {
                continue;
            }
            for &(w, _) in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Nodes within `cap` hops of `source` paired with their distance, in
    /// breadth-first order. Touches only the visited nodes in `scratch`,
    /// which must be all `None` on entry and is restored before returning.
    pub(crate) fn ball(&self, source: usize, cap: usize, scratch: &mut [Option<usize>]) -> Vec<(usize, usize)> {
        let mut order = vec![(source, 0)];
        scratch[source] = Some(0);
        let mut head = 0;
        while head < order.len() {
            let (u, d) = order[head];
            head += 1;
            if d == cap {
                continue;
            }
            for &(w, _) in &self.adjacency[u] {
                if scratch[w].is_none() {
                    scratch[w] = Some(d + 1);
                    order.push((w, d + 1));
                }
            }
        }
        for &(v, _) in &order {
            scratch[v] = None;
        }
        order
    }

    /// Connected components of the whole graph.
    pub fn connected_components(&self) -> Partition {
        let mut ds = DisjointSets::new(self.node_count());
        for &(u, v) in &self.edges {
            ds.union(u, v);
        }
        ds.to_partition()
    }

    /// Connected components of the subgraph induced by `nodes`.
    ///
    /// The result is a partition of positions: entry `i` is the block of
    /// `nodes[i]`. Duplicate entries in `nodes` are not allowed.
    pub fn induced_components(&self, nodes: &[usize]) -> Result<Partition, GraphError> {
        let mut position = vec![usize::MAX; self.node_count()];
        for (i, &v) in nodes.iter().enumerate() {
            self.check_node(v)?;
            position[v] = i;
        }
        let mut ds = DisjointSets::new(nodes.len());
        for (i, &v) in nodes.iter().enumerate() {
            for &(w, _) in &self.adjacency[v] {
                if position[w] != usize::MAX {
                    ds.union(i, position[w]);
                }
            }
        }
        Ok(ds.to_partition())
    }

    /// Whether every block of `p` induces a connected subgraph.
    pub fn is_decomposition(&self, p: &Partition) -> Result<bool, GraphError> {
        if p.len() != self.node_count() {
            return Err(GraphError::SizeMismatch {
                partition: p.len(),
                graph: self.node_count(),
            });
        }
        Ok(self.restricted_components(p.labels()).block_count() == p.block_count())
    }

    /// Splits each block of the labeling into its connected pieces, i.e. the
    /// components of the subgraph keeping only edges inside a block.
    pub fn restricted_components(&self, labels: &[usize]) -> Partition {
        let mut ds = DisjointSets::new(self.node_count());
        for &(u, v) in &self.edges {
            if labels[u] == labels[v] {
                ds.union(u, v);
            }
        }
        ds.to_partition()
    }
}
