//! The scene document handed to the viewer, and the ordering document
//! written by `tricube reorder`.
//!
//! Both are UTF-8 JSON carrying `schema_version` "1". Cell coordinates are
//! positions in `order`; `order[p]` is the node id at position `p`. A cell
//! whose three corners sit in three different clusters has a `null` cluster
//! and is drawn in `palette.other`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    enumerate_triangles, triangle_cluster, ClusterId, Graph, Triangle, TriangleStats,
};
use crate::layout::Layout;
use crate::matrix::{inverse_permutation, TriMatrix};
use crate::reorder::{Block, BlockKind, Ordering};

pub const SCHEMA_VERSION: &str = "1";
/// Cluster id given to every node of a graph without a cluster map.
pub const DEFAULT_CLUSTER: &str = "default";
pub const OTHER_COLOR: &str = "#808080";

/// Categorical colors, assigned to cluster ids in sorted order and reused
/// cyclically.
pub const CATEGORICAL: [&str; 20] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
    "#bcbd22", "#393b79", "#aec7e8", "#ff9896", "#98df8a", "#ffbb78", "#c5b0d5", "#c49c94",
    "#f7b6d2", "#9edae5", "#dbdb8d", "#637939",
];

/// Provenance echoed into every document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    pub dataset: String,
    pub tau_min: f64,
    pub seed: u64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneNode {
    pub id: usize,
    pub label: String,
    pub cluster: String,
    pub position: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDoc {
    pub nodes: Vec<usize>,
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneCell {
    pub u: usize,
    pub v: usize,
    pub w: usize,
    /// `None` for triangles spanning three clusters.
    pub cluster: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Palette {
    pub clusters: BTreeMap<String, String>,
    pub other: String,
}

impl Palette {
    pub fn for_clusters<'a>(ids: impl IntoIterator<Item = &'a str>) -> Self {
        let mut ids: Vec<&str> = ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        let clusters = ids
            .into_iter()
            .enumerate()
            .map(|(k, id)| (id.to_owned(), CATEGORICAL[k % CATEGORICAL.len()].to_owned()))
            .collect();
        Palette {
            clusters,
            other: OTHER_COLOR.to_owned(),
        }
    }

    /// Palette for a graph's clusters, or the single default cluster.
    pub fn for_graph(g: &Graph) -> Self {
        if g.clusters().is_some() {
            Palette::for_clusters(g.cluster_ids())
        } else {
            Palette::for_clusters([DEFAULT_CLUSTER])
        }
    }

    pub fn color(&self, cluster: Option<&str>) -> Option<&str> {
        match cluster {
            Some(c) => self.clusters.get(c).map(String::as_str),
            None => Some(&self.other),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneDocument {
    pub schema_version: String,
    pub meta: Meta,
    pub nodes: Vec<SceneNode>,
    pub edges: Vec<[usize; 2]>,
    pub order: Vec<usize>,
    pub blocks: Vec<BlockDoc>,
    pub cells: Vec<SceneCell>,
    pub palette: Palette,
}

fn block_docs(blocks: &[Block]) -> Vec<BlockDoc> {
    blocks
        .iter()
        .map(|b| BlockDoc {
            nodes: b.nodes.clone(),
            density: b.density(),
        })
        .collect()
}

fn node_cluster(g: &Graph, v: usize) -> &str {
    g.cluster(v).unwrap_or(DEFAULT_CLUSTER)
}

/// Assembles the scene for `g` under `ordering`, with node positions from
/// `layout`. `meta.tau_min` is taken from the ordering.
pub fn build_scene(
    g: &Graph,
    ordering: &Ordering,
    layout: &Layout,
    palette: &Palette,
    dataset: &str,
) -> Result<SceneDocument> {
    let n = g.node_count();
    if layout.positions.len() != n {
        return Err(Error::SizeMismatch {
            what: "layout positions",
            expected: n,
            found: layout.positions.len(),
        });
    }
    if ordering.order.len() != n {
        return Err(Error::SizeMismatch {
            what: "order",
            expected: n,
            found: ordering.order.len(),
        });
    }
    let matrix = TriMatrix::build(g).reindex(&ordering.order)?;

    let nodes: Vec<SceneNode> = (0..n)
        .map(|v| SceneNode {
            id: v,
            label: g.label(v).into_owned(),
            cluster: node_cluster(g, v).to_owned(),
            position: layout.positions[v],
        })
        .collect();
    for node in &nodes {
        if !palette.clusters.contains_key(&node.cluster) {
            return Err(Error::validation(
                "palette.clusters",
                format!("no color for cluster `{}`", node.cluster),
            ));
        }
    }

    let cells = matrix
        .cells()
        .iter()
        .map(|cell| {
            let [a, b, c] = cell.nodes().map(|p| ordering.order[p]);
            let cluster = if g.clusters().is_some() {
                triangle_cluster(g, &Triangle::new(a, b, c))?
                    .as_cluster()
                    .map(str::to_owned)
            } else {
                Some(DEFAULT_CLUSTER.to_owned())
            };
            Ok(SceneCell {
                u: cell.u,
                v: cell.v,
                w: cell.w,
                cluster,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SceneDocument {
        schema_version: SCHEMA_VERSION.to_owned(),
        meta: Meta {
            dataset: dataset.to_owned(),
            tau_min: ordering.tau_min,
            seed: layout.seed,
            iterations: layout.iterations,
        },
        nodes,
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        order: ordering.order.clone(),
        blocks: block_docs(&ordering.blocks),
        cells,
        palette: palette.clone(),
    })
}

fn is_hex_color(s: &str) -> bool {
    s.len() == 7 && s.starts_with('#') && s[1..].chars().all(|c| c.is_ascii_hexdigit())
}

fn check_meta(meta: &Meta) -> Result<()> {
    if !(0.0..=1.0).contains(&meta.tau_min) {
        return Err(Error::validation("meta.tau_min", "must lie in [0, 1]"));
    }
    if meta.iterations == 0 {
        return Err(Error::validation("meta.iterations", "must be at least 1"));
    }
    Ok(())
}

/// Checks that blocks tile `order` front to back and are ranked by size.
fn check_blocks(blocks: &[BlockDoc], order: &[usize]) -> Result<()> {
    let mut at = 0;
    for (k, block) in blocks.iter().enumerate() {
        let path = format!("blocks[{k}]");
        if block.nodes.is_empty() {
            return Err(Error::validation(path, "empty block"));
        }
        if order.get(at..at + block.nodes.len()) != Some(&block.nodes[..]) {
            return Err(Error::validation(
                path,
                "block is not the next contiguous run of order",
            ));
        }
        if !(0.0..=1.0).contains(&block.density) {
            return Err(Error::validation(path + ".density", "must lie in [0, 1]"));
        }
        if k > 0 && blocks[k - 1].nodes.len() < block.nodes.len() {
            return Err(Error::validation(
                path,
                "blocks must be ranked by non-increasing size",
            ));
        }
        at += block.nodes.len();
    }
    if at != order.len() {
        return Err(Error::validation(
            "blocks",
            "blocks do not cover every node",
        ));
    }
    Ok(())
}

impl SceneDocument {
    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scene documents serialize");
        s.push('\n');
        s
    }

    /// Parses and validates.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SceneDocument = serde_json::from_str(text)?;
        doc.validate()?;
        Ok(doc)
    }

    /// Rebuilds the graph described by `nodes`, `edges` and node clusters.
    pub fn graph(&self) -> Result<Graph> {
        Graph::new(self.nodes.len(), self.edges.iter().map(|&[u, v]| (u, v)))?
            .with_labels(self.nodes.iter().map(|n| n.label.clone()).collect())?
            .with_clusters(self.nodes.iter().map(|n| n.cluster.clone()).collect())
    }

    /// Reports the first schema violation.
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::validation(
                "schema_version",
                format!(
                    "expected \"{SCHEMA_VERSION}\", found \"{}\"",
                    self.schema_version
                ),
            ));
        }
        check_meta(&self.meta)?;
        let n = self.nodes.len();
        for (i, node) in self.nodes.iter().enumerate() {
            if node.id != i {
                return Err(Error::validation(
                    format!("nodes[{i}].id"),
                    "ids must be 0..n in order",
                ));
            }
            if !node.position.iter().all(|x| (0.0..=1.0).contains(x)) {
                return Err(Error::validation(
                    format!("nodes[{i}].position"),
                    "coordinates must lie in [0, 1]",
                ));
            }
            if !self.palette.clusters.contains_key(&node.cluster) {
                return Err(Error::validation(
                    format!("nodes[{i}].cluster"),
                    format!("cluster `{}` has no palette entry", node.cluster),
                ));
            }
        }
        for (k, &[u, v]) in self.edges.iter().enumerate() {
            let ordered = k == 0 || self.edges[k - 1] < [u, v];
            if u >= v || v >= n || !ordered {
                return Err(Error::validation(
                    format!("edges[{k}]"),
                    "edges must be sorted, unique, in range, with u < v",
                ));
            }
        }
        if inverse_permutation(&self.order, n).is_err() {
            return Err(Error::validation(
                "order",
                format!("not a permutation of 0..{n}"),
            ));
        }
        check_blocks(&self.blocks, &self.order)?;
        for (key, color) in &self.palette.clusters {
            if !is_hex_color(color) {
                return Err(Error::validation(
                    format!("palette.clusters.{key}"),
                    "expected #rrggbb",
                ));
            }
        }
        if !is_hex_color(&self.palette.other) {
            return Err(Error::validation("palette.other", "expected #rrggbb"));
        }

        let g = self.graph()?;
        for (k, cell) in self.cells.iter().enumerate() {
            let path = format!("cells[{k}]");
            let in_order = k == 0 || {
                let p = &self.cells[k - 1];
                (p.u, p.v, p.w) < (cell.u, cell.v, cell.w)
            };
            if !(cell.u < cell.v && cell.v < cell.w && cell.w < n) || !in_order {
                return Err(Error::validation(
                    path,
                    "cells must be sorted, unique, in range, with u < v < w",
                ));
            }
            let [a, b, c] = [cell.u, cell.v, cell.w].map(|p| self.order[p]);
            if !(g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c)) {
                return Err(Error::validation(
                    path,
                    "cell is not a triangle of the graph",
                ));
            }
            let expected = triangle_cluster(&g, &Triangle::new(a, b, c))?;
            if expected.as_cluster() != cell.cluster.as_deref() {
                return Err(Error::validation(
                    path + ".cluster",
                    format!("expected {expected:?}"),
                ));
            }
        }
        let triangles = enumerate_triangles(&g).len();
        if self.cells.len() != triangles {
            return Err(Error::validation(
                "cells",
                format!("{} cells for {triangles} triangles", self.cells.len()),
            ));
        }
        Ok(())
    }

    /// Color of every cell, in cell order.
    pub fn cell_colors(&self) -> Vec<&str> {
        self.cells
            .iter()
            .map(|c| {
                self.palette
                    .color(c.cluster.as_deref())
                    .unwrap_or(&self.palette.other)
            })
            .collect()
    }
}

/// Serialized result of `reorder`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderingDocument {
    pub schema_version: String,
    pub meta: Meta,
    pub order: Vec<usize>,
    pub blocks: Vec<BlockDoc>,
}

impl OrderingDocument {
    pub fn new(ordering: &Ordering, meta: Meta) -> Self {
        OrderingDocument {
            schema_version: SCHEMA_VERSION.to_owned(),
            meta,
            order: ordering.order.clone(),
            blocks: block_docs(&ordering.blocks),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("ordering documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: OrderingDocument = serde_json::from_str(text)?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::validation(
                "schema_version",
                "unsupported schema version",
            ));
        }
        check_meta(&doc.meta)?;
        Ok(doc)
    }

    /// Checks the document against `g` and rebuilds the in-memory ordering;
    /// block statistics are recomputed from the graph.
    pub fn to_ordering(&self, g: &Graph) -> Result<Ordering> {
        let n = g.node_count();
        if inverse_permutation(&self.order, n).is_err() {
            return Err(Error::validation(
                "order",
                format!("not a permutation of 0..{n}"),
            ));
        }
        check_blocks(&self.blocks, &self.order)?;
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let stats = TriangleStats::of(&g.induced_subgraph(&b.nodes)?.graph);
                let kind = if b.nodes.len() == 1 {
                    BlockKind::Singleton
                } else if stats.density() >= self.meta.tau_min {
                    BlockKind::Dense
                } else {
                    BlockKind::Residue
                };
                Ok(Block {
                    nodes: b.nodes.clone(),
                    stats,
                    kind,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Ordering {
            order: self.order.clone(),
            blocks,
            tau_min: self.meta.tau_min,
        })
    }
}

/// Color of a triangle under the grey-for-`Other` rule.
pub fn triangle_color<'a>(palette: &'a Palette, cluster: &ClusterId) -> Option<&'a str> {
    palette.color(cluster.as_cluster())
}
