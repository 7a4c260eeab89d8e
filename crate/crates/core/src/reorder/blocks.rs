use std::cmp::Reverse;

use super::similarity::SimilarityGraph;
use super::{Block, BlockKind, DenseSubgraphList};
use crate::graph::{triangles_per_node, Graph, TriangleStats};

struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            components: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
            self.components -= 1;
        }
    }
}

/// A pending piece of the decomposition: a node set, the similarity edges
/// still present among those nodes, and the filtered deletion schedule.
/// Edges are indices into `SimilarityGraph::edges`, ascending.
struct Task {
    nodes: Vec<usize>,
    alive: Vec<usize>,
    schedule: Vec<usize>,
}

struct Context<'a> {
    graph: &'a Graph,
    similarity: &'a SimilarityGraph,
    tau_min: f64,
    /// original node -> index within the current task, or usize::MAX
    local: Vec<usize>,
    /// marks alive similarity edges of the current task
    alive: Vec<bool>,
}

impl Context<'_> {
    fn endpoints(&self, e: usize) -> (usize, usize) {
        let edge = &self.similarity.edges()[e];
        (edge.i, edge.j)
    }

    fn bind(&mut self, nodes: &[usize]) {
        for (k, &v) in nodes.iter().enumerate() {
            self.local[v] = k;
        }
    }

    fn unbind(&mut self, nodes: &[usize]) {
        for &v in nodes {
            self.local[v] = usize::MAX;
        }
    }

    /// Connected components over `nodes` using the given edges, ordered by
    /// their smallest node. Requires `nodes` to be bound.
    fn components(&self, nodes: &[usize], edges: &[usize]) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(nodes.len());
        for &e in edges {
            let (i, j) = self.endpoints(e);
            uf.union(self.local[i], self.local[j]);
        }
        let mut slot = vec![usize::MAX; nodes.len()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (k, &v) in nodes.iter().enumerate() {
            let root = uf.find(k);
            if slot[root] == usize::MAX {
                slot[root] = out.len();
                out.push(Vec::new());
            }
            out[slot[root]].push(v);
        }
        out
    }

    /// Number of schedule entries to delete, in order, before the task's
    /// similarity graph falls apart; `None` if it survives the whole
    /// schedule. Replays the deletions backwards as unions.
    fn deletions_until_split(&mut self, task: &Task) -> Option<usize> {
        let mut uf = UnionFind::new(task.nodes.len());
        if uf.components == 1 {
            return None;
        }
        for &e in &task.alive {
            self.alive[e] = true;
        }
        let mut cut = Some(0);
        for (idx, &e) in task.schedule.iter().enumerate().rev() {
            if !self.alive[e] {
                continue;
            }
            let (i, j) = self.endpoints(e);
            uf.union(self.local[i], self.local[j]);
            if uf.components == 1 {
                cut = Some(idx + 1);
                break;
            }
        }
        for &e in &task.alive {
            self.alive[e] = false;
        }
        cut
    }

    fn restrict(&self, nodes: Vec<usize>, alive: &[usize], schedule: &[usize]) -> Task {
        let inside = |&&e: &&usize| {
            let (i, j) = self.endpoints(e);
            nodes.binary_search(&i).is_ok() && nodes.binary_search(&j).is_ok()
        };
        Task {
            alive: alive.iter().filter(inside).copied().collect(),
            schedule: schedule.iter().filter(inside).copied().collect(),
            nodes,
        }
    }

    fn block(&self, nodes: Vec<usize>, kind: BlockKind) -> Block {
        let sub = self
            .graph
            .induced_subgraph(&nodes)
            .expect("task nodes are in range");
        let stats = TriangleStats::of(&sub.graph);
        Block::new(sub.nodes(), &triangles_per_node(&sub.graph), stats, kind)
    }
}

/// Splits `nodes` of `graph` into blocks and appends them to `out`.
///
/// A node set is kept whole when its induced triangle density reaches
/// `tau_min`. Otherwise similarity edges are deleted in schedule order until
/// the similarity graph disconnects, and each side is handled the same way.
/// A similarity graph that is already disconnected is handled per component.
/// Single nodes always become blocks of their own.
pub fn matrix_blocks(
    graph: &Graph,
    similarity: &SimilarityGraph,
    nodes: &[usize],
    tau_min: f64,
    out: &mut DenseSubgraphList,
) {
    let mut nodes = nodes.to_vec();
    nodes.sort_unstable();
    nodes.dedup();
    if nodes.is_empty() {
        return;
    }
    let mut cx = Context {
        graph,
        similarity,
        tau_min,
        local: vec![usize::MAX; graph.node_count()],
        alive: vec![false; similarity.edges().len()],
    };
    let every: Vec<usize> = (0..similarity.edges().len()).collect();
    let root = cx.restrict(nodes, &every, &every);

    let mut stack = vec![root];
    while let Some(task) = stack.pop() {
        if task.nodes.len() == 1 {
            out.push(cx.block(task.nodes, BlockKind::Singleton));
            continue;
        }
        cx.bind(&task.nodes);
        let parts = cx.components(&task.nodes, &task.alive);
        if parts.len() > 1 {
            cx.unbind(&task.nodes);
            for part in parts.into_iter().rev() {
                stack.push(cx.restrict(part, &task.alive, &task.schedule));
            }
            continue;
        }

        let sub = graph
            .induced_subgraph(&task.nodes)
            .expect("task nodes are in range");
        if TriangleStats::of(&sub.graph).density() >= cx.tau_min {
            cx.unbind(&task.nodes);
            out.push(cx.block(task.nodes, BlockKind::Dense));
            continue;
        }

        match cx.deletions_until_split(&task) {
            None => {
                cx.unbind(&task.nodes);
                out.push(cx.block(task.nodes, BlockKind::Residue));
            }
            Some(cut) => {
                let deleted = &task.schedule[..cut];
                let remaining: Vec<usize> = task
                    .alive
                    .iter()
                    .copied()
                    .filter(|e| deleted.binary_search(e).is_err())
                    .collect();
                let parts = cx.components(&task.nodes, &remaining);
                cx.unbind(&task.nodes);
                if parts.len() < 2 {
                    out.push(cx.block(task.nodes, BlockKind::Residue));
                    continue;
                }
                for part in parts.into_iter().rev() {
                    stack.push(cx.restrict(part, &remaining, &task.schedule));
                }
            }
        }
    }
}

/// Node order inside a block: most supporting triangles first, then by
/// original index.
pub(super) fn within_block_order(nodes: &[usize], triangles: &[usize]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..nodes.len()).collect();
    idx.sort_by_key(|&k| (Reverse(triangles[k]), nodes[k]));
    idx.into_iter().map(|k| nodes[k]).collect()
}
