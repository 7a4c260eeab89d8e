use std::cmp::Ordering;
use std::collections::HashMap;

use crate::matrix::SymTriMatrix;

/// Cosine of two binary slice vectors kept as integers, `dot / sqrt(norms)`,
/// so that equal similarities compare equal exactly.
#[derive(Debug, Clone, Copy)]
pub struct Cosine {
    dot: u64,
    norm_product: u64,
}

impl Cosine {
    pub const ZERO: Cosine = Cosine {
        dot: 0,
        norm_product: 1,
    };
    pub const ONE: Cosine = Cosine {
        dot: 1,
        norm_product: 1,
    };

    /// `dot` shared cells over slices holding `a` and `b` cells, with the
    /// zero-slice conventions: both empty gives 1, exactly one empty gives 0.
    pub fn of_slices(dot: u64, a: u64, b: u64) -> Cosine {
        match (a, b) {
            (0, 0) => Cosine::ONE,
            (0, _) | (_, 0) => Cosine::ZERO,
            _ => Cosine {
                dot,
                norm_product: a * b,
            },
        }
    }

    pub fn value(&self) -> f64 {
        if self.dot == 0 {
            0.0
        } else {
            self.dot as f64 / (self.norm_product as f64).sqrt()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dot == 0
    }
}

impl PartialEq for Cosine {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Cosine {}

impl Ord for Cosine {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = (self.dot as u128).pow(2) * other.norm_product as u128;
        let rhs = (other.dot as u128).pow(2) * self.norm_product as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Cosine {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Pairwise cosine similarity between the slices of a [`SymTriMatrix`].
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    n: usize,
    slice_len: Vec<u64>,
    /// shared nonzero cells between slices, row-major
    overlap: Vec<u64>,
}

impl SimilarityMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cosine(&self, i: usize, j: usize) -> Cosine {
        Cosine::of_slices(
            self.overlap[i * self.n + j],
            self.slice_len[i],
            self.slice_len[j],
        )
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.cosine(i, j).value()
    }

    pub fn slice_len(&self, i: usize) -> u64 {
        self.slice_len[i]
    }
}

/// Slices `i` and `j` share the cells `(x, y)` and `(y, x)` for every edge
/// `{x, y}` that closes a triangle with both of them, so the overlap counts
/// come from grouping triangles by edge.
pub fn similarity_matrix(sm: &SymTriMatrix) -> SimilarityMatrix {
    let n = sm.n();
    let slice_len: Vec<u64> = (0..n).map(|w| sm.slice_len(w) as u64).collect();

    let mut apexes: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for w in 0..n {
        for t in sm.incident(w) {
            if let Some(edge) = t.opposite(w) {
                apexes.entry(edge).or_default().push(w);
            }
        }
    }

    let mut overlap = vec![0u64; n * n];
    for w in 0..n {
        overlap[w * n + w] = slice_len[w];
    }
    for apex in apexes.values() {
        for (k, &i) in apex.iter().enumerate() {
            for &j in &apex[k + 1..] {
                overlap[i * n + j] += 2;
                overlap[j * n + i] += 2;
            }
        }
    }
    SimilarityMatrix {
        n,
        slice_len,
        overlap,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityEdge {
    pub i: usize,
    pub j: usize,
    pub similarity: f64,
    pub cosine: Cosine,
}

/// Graph on the slices with an edge for every positive similarity. Its edge
/// list doubles as the deletion schedule: ascending similarity, ties broken
/// by `(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityGraph {
    n: usize,
    edges: Vec<SimilarityEdge>,
}

impl SimilarityGraph {
    pub fn from_matrix(s: &SimilarityMatrix) -> Self {
        let n = s.n();
        let mut edges: Vec<SimilarityEdge> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let cosine = s.cosine(i, j);
                (!cosine.is_zero()).then(|| SimilarityEdge {
                    i,
                    j,
                    similarity: cosine.value(),
                    cosine,
                })
            })
            .collect();
        edges.sort_by(|a, b| a.cosine.cmp(&b.cosine).then((a.i, a.j).cmp(&(b.i, b.j))));
        SimilarityGraph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges sorted ascending by similarity.
    pub fn edges(&self) -> &[SimilarityEdge] {
        &self.edges
    }
}
