//! The 3D triangle adjacency matrix and its permutation-closed form.
//!
//! A [`TriMatrix`] stores each triangle once as a canonical cell `(u, v, w)`
//! with `u < v < w`, in the coordinates of its current node ordering. The
//! symmetric form adds the other five coordinate permutations of every cell;
//! it is never stored in full, only indexed per coordinate so that slices can
//! be materialized on demand.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{enumerate_triangles, Graph, Triangle};

/// Checks that `order` is a permutation of `0..n` and returns its inverse
/// (`inverse[order[p]] == p`).
pub fn inverse_permutation(order: &[usize], n: usize) -> Result<Vec<usize>> {
    if order.len() != n {
        return Err(Error::NotAPermutation(n));
    }
    let mut inverse = vec![usize::MAX; n];
    for (p, &v) in order.iter().enumerate() {
        if v >= n || inverse[v] != usize::MAX {
            return Err(Error::NotAPermutation(n));
        }
        inverse[v] = p;
    }
    Ok(inverse)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriMatrix {
    cells: Vec<Triangle>,
    /// position -> original node
    order: Vec<usize>,
    /// original node -> position
    position: Vec<usize>,
}

impl TriMatrix {
    /// One cell per triangle of `g`, under the identity ordering.
    pub fn build(g: &Graph) -> Self {
        let n = g.node_count();
        TriMatrix {
            cells: enumerate_triangles(g),
            order: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Canonical cells in current coordinates, sorted.
    pub fn cells(&self) -> &[Triangle] {
        &self.cells
    }

    /// Original node at each coordinate.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Coordinate of an original node.
    pub fn position_of(&self, node: usize) -> usize {
        self.position[node]
    }

    fn check_coordinate(&self, w: usize) -> Result<()> {
        if w < self.n() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: w,
                n: self.n(),
            })
        }
    }

    pub fn symmetrize(&self) -> SymTriMatrix {
        let mut incident = vec![Vec::new(); self.n()];
        for (i, t) in self.cells.iter().enumerate() {
            for x in t.nodes() {
                incident[x].push(i);
            }
        }
        SymTriMatrix {
            cells: self.cells.clone(),
            incident,
        }
    }

    /// The layer at coordinate `w` with symmetric cells restored, as shown
    /// when a cell on that layer is picked. Same content as
    /// `self.symmetrize().slice(w)`.
    pub fn extract_slice_view(&self, w: usize) -> Result<Slice> {
        self.check_coordinate(w)?;
        let mut cells: Vec<(usize, usize)> = self
            .cells
            .iter()
            .filter_map(|t| t.opposite(w))
            .flat_map(|(a, b)| [(a, b), (b, a)])
            .collect();
        cells.sort_unstable();
        Ok(Slice { node: w, cells })
    }

    /// Highlight state for selecting coordinate `v`. `g` must be the graph
    /// the matrix was built from; edges are reported in matrix coordinates.
    pub fn select_node(&self, g: &Graph, v: usize) -> Result<SelectionHighlight> {
        self.check_coordinate(v)?;
        if g.node_count() != self.n() {
            return Err(Error::SizeMismatch {
                what: "graph nodes",
                expected: self.n(),
                found: g.node_count(),
            });
        }
        let highlighted_cells: Vec<Triangle> = self
            .cells
            .iter()
            .copied()
            .filter(|t| t.contains(v))
            .collect();

        let original = self.order[v];
        let mut adjacent_edges: Vec<(usize, usize)> = g
            .neighbors(original)
            .iter()
            .map(|&u| {
                let p = self.position[u];
                (v.min(p), v.max(p))
            })
            .collect();
        adjacent_edges.sort_unstable();

        let mut projections = Projections::default();
        for t in &highlighted_cells {
            projections.xy.insert((t.u, t.v));
            projections.yz.insert((t.v, t.w));
            projections.xz.insert((t.u, t.w));
        }
        Ok(SelectionHighlight {
            node: v,
            highlighted_cells,
            adjacent_edges,
            projections,
        })
    }

    /// Re-expresses the cells under a new ordering of the original nodes.
    pub fn reindex(&self, order: &[usize]) -> Result<TriMatrix> {
        let position = inverse_permutation(order, self.n())?;
        let mut cells: Vec<Triangle> = self
            .cells
            .iter()
            .map(|t| {
                let [a, b, c] = t.nodes().map(|x| position[self.order[x]]);
                Triangle::new(a, b, c)
            })
            .collect();
        cells.sort_unstable();
        Ok(TriMatrix {
            cells,
            order: order.to_vec(),
            position,
        })
    }
}

/// The permutation closure of a [`TriMatrix`]: every canonical cell stands
/// for all six of its coordinate permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymTriMatrix {
    cells: Vec<Triangle>,
    incident: Vec<Vec<usize>>,
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

impl SymTriMatrix {
    pub fn n(&self) -> usize {
        self.incident.len()
    }

    /// Number of nonzero cells, six per triangle.
    pub fn len(&self) -> usize {
        6 * self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize, k: usize) -> bool {
        if i == j || j == k || i == k {
            return false;
        }
        self.cells.binary_search(&Triangle::new(i, j, k)).is_ok()
    }

    /// All nonzero cells, in canonical-cell order.
    pub fn cells(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        self.cells.iter().flat_map(|t| {
            let n = t.nodes();
            PERMUTATIONS
                .iter()
                .map(move |p| [n[p[0]], n[p[1]], n[p[2]]])
        })
    }

    /// Canonical triangles that contain coordinate `w`.
    pub fn incident(&self, w: usize) -> impl Iterator<Item = &Triangle> + '_ {
        self.incident[w].iter().map(|&i| &self.cells[i])
    }

    /// Number of nonzero cells in layer `w`.
    pub fn slice_len(&self, w: usize) -> usize {
        2 * self.incident[w].len()
    }

    /// Layer `w`: all `(i, j)` with `(i, j, w)` nonzero.
    pub fn slice(&self, w: usize) -> Result<Slice> {
        if w >= self.n() {
            return Err(Error::NodeOutOfRange {
                node: w,
                n: self.n(),
            });
        }
        let mut cells: Vec<(usize, usize)> = self
            .incident(w)
            .filter_map(|t| t.opposite(w))
            .flat_map(|(a, b)| [(a, b), (b, a)])
            .collect();
        cells.sort_unstable();
        Ok(Slice { node: w, cells })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slice {
    pub node: usize,
    /// Sorted `(row, column)` pairs.
    pub cells: Vec<(usize, usize)>,
}

impl Slice {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Images of the highlighted cells on the three coordinate planes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Projections {
    pub xy: BTreeSet<(usize, usize)>,
    pub yz: BTreeSet<(usize, usize)>,
    pub xz: BTreeSet<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionHighlight {
    pub node: usize,
    pub highlighted_cells: Vec<Triangle>,
    pub adjacent_edges: Vec<(usize, usize)>,
    pub projections: Projections,
}
