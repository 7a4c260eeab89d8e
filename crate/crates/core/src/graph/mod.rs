//! Undirected simple graphs and the triangle primitives built on them.

mod parse;
mod triangles;

pub use parse::{parse_clusters, parse_edge_list, ParseReport};
pub use triangles::{
    cluster_triangle_density, count_wedges, enumerate_triangles, influence_score, triangle_cluster,
    triangle_density, triangles_per_node, ClusterId, Influence, Triangle, TriangleStats,
};

use std::borrow::Cow;

use crate::error::{Error, Result};

/// An undirected simple graph over dense node indices `0..n`.
///
/// Immutable after construction. Labels default to the decimal index and
/// the cluster map, when present, is total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
    clusters: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops, duplicates and
    /// out-of-range endpoints are rejected.
    pub fn new(node_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); node_count];
        let mut canonical = Vec::new();
        for (a, b) in edges {
            if a == b || a >= node_count || b >= node_count {
                return Err(Error::InvalidEdge(a, b));
            }
            canonical.push((a.min(b), a.max(b)));
        }
        canonical.sort_unstable();
        if let Some(w) = canonical.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidEdge(w[0].0, w[0].1));
        }
        for &(u, v) in &canonical {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            adjacency,
            edges: canonical,
            labels: None,
            clusters: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.node_count() {
            return Err(Error::SizeMismatch {
                what: "labels",
                expected: self.node_count(),
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn with_clusters(mut self, clusters: Vec<String>) -> Result<Self> {
        if clusters.len() != self.node_count() {
            return Err(Error::SizeMismatch {
                what: "clusters",
                expected: self.node_count(),
                found: clusters.len(),
            });
        }
        self.clusters = Some(clusters);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn check_node(&self, v: usize) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: v,
                n: self.node_count(),
            })
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Cow<'_, str> {
        match &self.labels {
            Some(labels) => Cow::Borrowed(&labels[v]),
            None => Cow::Owned(v.to_string()),
        }
    }

    /// Looks a node up by its display label.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(labels) => labels.iter().position(|l| l == label),
            None => label.parse().ok().filter(|&v| v < self.node_count()),
        }
    }

    pub fn clusters(&self) -> Option<&[String]> {
        self.clusters.as_deref()
    }

    pub fn cluster(&self, v: usize) -> Option<&str> {
        self.clusters.as_ref().map(|c| c[v].as_str())
    }

    /// Distinct cluster ids in sorted order.
    pub fn cluster_ids(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = self.clusters.iter().flatten().map(String::as_str).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Subgraph induced by `nodes`. Duplicates in `nodes` are ignored; local
    /// index `i` of the result corresponds to `Subgraph::nodes()[i]`.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<Subgraph> {
        let mut kept = nodes.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if let Some(&bad) = kept.iter().find(|&&v| v >= self.node_count()) {
            return Err(Error::NodeOutOfRange {
                node: bad,
                n: self.node_count(),
            });
        }
        let mut local = vec![usize::MAX; self.node_count()];
        for (i, &v) in kept.iter().enumerate() {
            local[v] = i;
        }
        let mut adjacency = vec![Vec::new(); kept.len()];
        let mut edges = Vec::new();
        for (i, &v) in kept.iter().enumerate() {
            for &w in &self.adjacency[v] {
                let j = local[w];
                if j != usize::MAX {
                    adjacency[i].push(j);
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        edges.sort_unstable();
        let pick = |values: &Option<Vec<String>>| {
            values
                .as_ref()
                .map(|vals| kept.iter().map(|&v| vals[v].clone()).collect())
        };
        let graph = Graph {
            adjacency,
            edges,
            labels: pick(&self.labels),
            clusters: pick(&self.clusters),
        };
        Ok(Subgraph { graph, nodes: kept })
    }

    /// The induced subgraph on `v` and its one-hop neighbors.
    pub fn ego_network(&self, v: usize) -> Result<Subgraph> {
        self.check_node(v)?;
        let mut nodes = self.adjacency[v].clone();
        nodes.push(v);
        self.induced_subgraph(&nodes)
    }
}

/// An induced subgraph together with the original index of each local node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    nodes: Vec<usize>,
}

impl Subgraph {
    /// Original node indices, ascending.
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn original(&self, local: usize) -> usize {
        self.nodes[local]
    }

    pub fn local(&self, original: usize) -> Option<usize> {
        self.nodes.binary_search(&original).ok()
    }

    /// Edges translated back to original indices.
    pub fn original_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.graph
            .edges()
            .iter()
            .map(|&(u, v)| (self.nodes[u], self.nodes[v]))
    }
}
