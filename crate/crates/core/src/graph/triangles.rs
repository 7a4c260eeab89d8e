use std::cmp::Ordering;

use super::Graph;
use crate::error::{Error, Result};

/// Three mutually adjacent nodes, stored with `u < v < w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle {
    pub u: usize,
    pub v: usize,
    pub w: usize,
}

impl Triangle {
    /// Canonicalizes three distinct nodes. Panics if two coincide.
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        let mut n = [a, b, c];
        n.sort_unstable();
        assert!(
            n[0] < n[1] && n[1] < n[2],
            "triangle nodes must be distinct"
        );
        Triangle {
            u: n[0],
            v: n[1],
            w: n[2],
        }
    }

    pub fn nodes(&self) -> [usize; 3] {
        [self.u, self.v, self.w]
    }

    pub fn contains(&self, x: usize) -> bool {
        self.u == x || self.v == x || self.w == x
    }

    /// The two remaining nodes, ascending, when `x` is a corner.
    pub fn opposite(&self, x: usize) -> Option<(usize, usize)> {
        match x {
            _ if x == self.u => Some((self.v, self.w)),
            _ if x == self.v => Some((self.u, self.w)),
            _ if x == self.w => Some((self.u, self.v)),
            _ => None,
        }
    }
}

fn sorted_intersection_count(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Every triangle exactly once, sorted lexicographically.
pub fn enumerate_triangles(g: &Graph) -> Vec<Triangle> {
    let mut out = Vec::new();
    for u in 0..g.node_count() {
        let nu = g.neighbors(u);
        let higher_u = &nu[nu.partition_point(|&x| x <= u)..];
        for &v in higher_u {
            let nv = g.neighbors(v);
            let (mut i, mut j) = (
                higher_u.partition_point(|&x| x <= v),
                nv.partition_point(|&x| x <= v),
            );
            while i < higher_u.len() && j < nv.len() {
                match higher_u[i].cmp(&nv[j]) {
                    Ordering::Less => i += 1,
                    Ordering::Greater => j += 1,
                    Ordering::Equal => {
                        out.push(Triangle { u, v, w: nv[j] });
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
    out
}

/// Number of unordered two-hop paths, `Σ C(deg, 2)`.
pub fn count_wedges(g: &Graph) -> u64 {
    (0..g.node_count())
        .map(|v| {
            let d = g.degree(v) as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum()
}

/// Triangle and wedge counts of a graph. Orders by triangle density
/// using exact integer arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleStats {
    pub triangles: u64,
    pub wedges: u64,
}

impl TriangleStats {
    pub fn of(g: &Graph) -> Self {
        TriangleStats {
            triangles: enumerate_triangles(g).len() as u64,
            wedges: count_wedges(g),
        }
    }

    pub fn density(&self) -> f64 {
        if self.wedges == 0 {
            0.0
        } else {
            3.0 * self.triangles as f64 / self.wedges as f64
        }
    }

    pub fn cmp_density(&self, other: &Self) -> Ordering {
        let lhs = if self.wedges == 0 {
            0
        } else {
            self.triangles as u128 * other.wedges.max(1) as u128
        };
        let rhs = if other.wedges == 0 {
            0
        } else {
            other.triangles as u128 * self.wedges.max(1) as u128
        };
        lhs.cmp(&rhs)
    }
}

/// `3·t / w`, or 0 for a wedge-free graph.
pub fn triangle_density(g: &Graph) -> f64 {
    TriangleStats::of(g).density()
}

/// Number of triangles each node belongs to.
pub fn triangles_per_node(g: &Graph) -> Vec<usize> {
    (0..g.node_count())
        .map(|v| {
            let nv = g.neighbors(v);
            let twice: usize = nv
                .iter()
                .map(|&u| sorted_intersection_count(nv, g.neighbors(u)))
                .sum();
            twice / 2
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Influence {
    pub degree: usize,
    pub supporting_triangles: usize,
}

/// Degree of `v` paired with the number of triangles through it.
pub fn influence_score(g: &Graph, v: usize) -> Result<Influence> {
    g.check_node(v)?;
    let nv = g.neighbors(v);
    let twice: usize = nv
        .iter()
        .map(|&u| sorted_intersection_count(nv, g.neighbors(u)))
        .sum();
    Ok(Influence {
        degree: nv.len(),
        supporting_triangles: twice / 2,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClusterId {
    Cluster(String),
    /// All three corners sit in different clusters.
    Other,
}

impl ClusterId {
    pub fn as_cluster(&self) -> Option<&str> {
        match self {
            ClusterId::Cluster(c) => Some(c),
            ClusterId::Other => None,
        }
    }
}

/// Majority cluster of a triangle's corners, or `Other` if all differ.
pub fn triangle_cluster(g: &Graph, t: &Triangle) -> Result<ClusterId> {
    let clusters = g.clusters().ok_or(Error::NoClusters)?;
    for x in t.nodes() {
        g.check_node(x)?;
    }
    let [a, b, c] = t.nodes().map(|x| clusters[x].as_str());
    let shared = if a == b || a == c {
        Some(a)
    } else if b == c {
        Some(b)
    } else {
        None
    };
    Ok(shared.map_or(ClusterId::Other, |s| ClusterId::Cluster(s.to_owned())))
}

/// Triangle density of the subgraph induced by one cluster.
pub fn cluster_triangle_density(g: &Graph, cluster: &str) -> Result<f64> {
    let clusters = g.clusters().ok_or(Error::NoClusters)?;
    let members: Vec<usize> = (0..g.node_count())
        .filter(|&v| clusters[v] == cluster)
        .collect();
    if members.is_empty() {
        return Err(Error::UnknownCluster(cluster.to_owned()));
    }
    Ok(triangle_density(&g.induced_subgraph(&members)?.graph))
}
