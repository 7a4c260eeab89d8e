//! Node reordering by recursive triangle-density splitting of the slice
//! similarity graph.

mod blocks;
mod similarity;

pub use blocks::matrix_blocks;
pub use similarity::{
    similarity_matrix, Cosine, SimilarityEdge, SimilarityGraph, SimilarityMatrix,
};

use crate::error::{Error, Result};
use crate::graph::{Graph, TriangleStats};
use crate::matrix::TriMatrix;

pub const DEFAULT_TAU_MIN: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    /// Induced triangle density reached the threshold.
    Dense,
    /// Similarity graph stayed connected through the whole schedule.
    Residue,
    Singleton,
}

/// A contiguous run of the final order.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    /// Original node indices in output order.
    pub nodes: Vec<usize>,
    pub stats: TriangleStats,
    pub kind: BlockKind,
}

impl Block {
    /// `members` ascending, `triangles[k]` the supporting triangles of
    /// `members[k]` inside the block.
    fn new(members: &[usize], triangles: &[usize], stats: TriangleStats, kind: BlockKind) -> Self {
        Block {
            nodes: blocks::within_block_order(members, triangles),
            stats,
            kind,
        }
    }

    pub fn density(&self) -> f64 {
        self.stats.density()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn min_node(&self) -> usize {
        self.nodes.iter().copied().min().unwrap_or(usize::MAX)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DenseSubgraphList {
    blocks: Vec<Block>,
}

impl DenseSubgraphList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, block: Block) {
        self.blocks.push(block);
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Largest blocks first; equal sizes by descending density, then by
    /// smallest member.
    pub fn rank(&mut self) {
        self.blocks.sort_by(|a, b| {
            b.len()
                .cmp(&a.len())
                .then_with(|| b.stats.cmp_density(&a.stats))
                .then_with(|| a.min_node().cmp(&b.min_node()))
        });
    }

    pub fn into_blocks(self) -> Vec<Block> {
        self.blocks
    }
}

/// A node permutation together with the blocks it was assembled from.
#[derive(Debug, Clone, PartialEq)]
pub struct Ordering {
    pub order: Vec<usize>,
    pub blocks: Vec<Block>,
    pub tau_min: f64,
}

impl Ordering {
    /// Position of every original node.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (p, &v) in self.order.iter().enumerate() {
            pos[v] = p;
        }
        pos
    }

    /// Block sizes in ranked order.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Block::len).collect()
    }
}

pub fn check_tau_min(tau_min: f64) -> Result<()> {
    if (0.0..=1.0).contains(&tau_min) {
        Ok(())
    } else {
        Err(Error::InvalidTauMin(tau_min))
    }
}

/// Orders the nodes of `g` so that dense triangle clusters occupy
/// contiguous coordinate ranges.
pub fn reorder(g: &Graph, tau_min: f64) -> Result<Ordering> {
    check_tau_min(tau_min)?;
    let sym = TriMatrix::build(g).symmetrize();
    let similarity = SimilarityGraph::from_matrix(&similarity_matrix(&sym));

    let mut list = DenseSubgraphList::new();
    let nodes: Vec<usize> = (0..g.node_count()).collect();
    matrix_blocks(g, &similarity, &nodes, tau_min, &mut list);
    list.rank();

    let blocks = list.into_blocks();
    let order = blocks
        .iter()
        .flat_map(|b| b.nodes.iter().copied())
        .collect();
    Ok(Ordering {
        order,
        blocks,
        tau_min,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn two_k4s_bridged() -> Graph {
        let mut edges = Vec::new();
        for base in [0, 4] {
            for u in 0..4 {
                for v in u + 1..4 {
                    edges.push((base + u, base + v));
                }
            }
        }
        edges.push((3, 4));
        Graph::new(8, edges).unwrap()
    }

    fn assert_permutation(order: &[usize], n: usize) {
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..n).collect::<Vec<_>>());
    }

    #[test]
    fn k4_is_one_block() {
        for tau in [0.0, 0.3, 0.5, 0.99, 1.0] {
            let o = reorder(&complete(4), tau).unwrap();
            assert_eq!(o.block_sizes(), vec![4]);
            assert_eq!(o.blocks[0].kind, BlockKind::Dense);
            assert_permutation(&o.order, 4);
        }
    }

    #[test]
    fn bridged_k4s_split_in_two() {
        let g = two_k4s_bridged();
        assert_eq!(g.edge_count(), 13);
        let o = reorder(&g, 0.8).unwrap();
        assert_eq!(o.block_sizes(), vec![4, 4]);
        let mut first: Vec<usize> = o.order[..4].to_vec();
        first.sort_unstable();
        assert_eq!(first, vec![0, 1, 2, 3]);
        assert_eq!(o.tau_min, 0.8);
    }

    #[test]
    fn triangle_free_path_becomes_singletons() {
        let o = reorder(&path(5), 0.5).unwrap();
        assert_eq!(o.block_sizes(), vec![1; 5]);
        assert_eq!(o.order, vec![0, 1, 2, 3, 4]);
        assert!(o.blocks.iter().all(|b| b.kind == BlockKind::Singleton));
    }

    #[test]
    fn matrix_blocks_contracts() {
        let g = complete(1);
        let gs =
            SimilarityGraph::from_matrix(&similarity_matrix(&TriMatrix::build(&g).symmetrize()));
        let mut list = DenseSubgraphList::new();
        matrix_blocks(&g, &gs, &[0], 0.5, &mut list);
        assert_eq!(list.len(), 1);
        assert_eq!(list.blocks()[0].nodes, vec![0]);

        let g = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let gs =
            SimilarityGraph::from_matrix(&similarity_matrix(&TriMatrix::build(&g).symmetrize()));
        let mut list = DenseSubgraphList::new();
        matrix_blocks(&g, &gs, &[0, 1, 2, 3, 4, 5], 0.5, &mut list);
        // within a triangle each slice holds only the opposite edge, so no two
        // slices overlap and the similarity graph has no edges at all
        assert!(gs.edges().is_empty());
        assert_eq!(list.len(), 6);
        assert!(list.blocks().iter().all(|b| b.kind == BlockKind::Singleton));

        let g = complete(4);
        let gs =
            SimilarityGraph::from_matrix(&similarity_matrix(&TriMatrix::build(&g).symmetrize()));
        let mut list = DenseSubgraphList::new();
        matrix_blocks(&g, &gs, &[0, 1, 2, 3], 1.0, &mut list);
        assert_eq!(list.len(), 1);
        assert_eq!(list.blocks()[0].len(), 4);
    }

    #[test]
    fn rejects_bad_threshold() {
        for tau in [-0.1, 1.5, f64::NAN] {
            assert!(matches!(
                reorder(&complete(3), tau),
                Err(Error::InvalidTauMin(_))
            ));
        }
    }

    #[test]
    fn empty_graph() {
        let o = reorder(&Graph::new(0, []).unwrap(), 0.5).unwrap();
        assert!(o.order.is_empty());
        assert!(o.blocks.is_empty());
    }

    #[test]
    fn hubs_lead_their_block() {
        // K4 on 0..4 plus node 4 closing one triangle with 2 and 3
        let g = Graph::new(
            5,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (2, 4),
                (3, 4),
            ],
        )
        .unwrap();
        let o = reorder(&g, 0.0).unwrap();
        assert_eq!(o.blocks.len(), 1);
        assert_eq!(&o.order[..2], &[2, 3]);
        assert_eq!(*o.order.last().unwrap(), 4);
    }
}
