//! Independent reference implementations used by the integration tests.
//! Everything here works on dense adjacency matrices and avoids the
//! library's own algorithms.

#![allow(dead_code, clippy::needless_range_loop)]

use std::cmp::Ordering as CmpOrdering;
use std::collections::VecDeque;
use std::path::PathBuf;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tricube::graph::{parse_clusters, parse_edge_list};
use tricube::Graph;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn load(name: &str, clustered: bool) -> Graph {
    let dir = data_dir();
    let text = std::fs::read_to_string(dir.join(format!("{name}.edges"))).unwrap();
    let (g, _) = parse_edge_list(&text).unwrap();
    if clustered {
        let text = std::fs::read_to_string(dir.join(format!("{name}.clusters"))).unwrap();
        parse_clusters(&text, g).unwrap()
    } else {
        g
    }
}

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}

/// All `u < v < w` with the three edges present.
pub fn brute_triangles(adj: &[Vec<bool>]) -> Vec<[usize; 3]> {
    let n = adj.len();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            for w in v + 1..n {
                if adj[u][v] && adj[u][w] && adj[v][w] {
                    out.push([u, v, w]);
                }
            }
        }
    }
    out
}

/// Sum of C(deg, 2) over the degree sequence.
pub fn degree_wedges(adj: &[Vec<bool>]) -> u64 {
    adj.iter()
        .map(|row| {
            let d = row.iter().filter(|&&x| x).count() as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum()
}

/// Triangles containing each node.
pub fn incident_counts(adj: &[Vec<bool>]) -> Vec<usize> {
    let mut counts = vec![0; adj.len()];
    for t in brute_triangles(adj) {
        for x in t {
            counts[x] += 1;
        }
    }
    counts
}

/// Slice `w` of the symmetric matrix as a flattened n×n 0/1 vector.
pub fn dense_slice(adj: &[Vec<bool>], w: usize) -> Vec<u8> {
    let n = adj.len();
    let mut s = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j && i != w && j != w && adj[i][j] && adj[i][w] && adj[j][w] {
                s[i * n + j] = 1;
            }
        }
    }
    s
}

/// Cosine of two 0/1 vectors with the zero-vector conventions.
pub fn dense_cosine(a: &[u8], b: &[u8]) -> f64 {
    let na: f64 = a.iter().map(|&x| f64::from(x)).sum();
    let nb: f64 = b.iter().map(|&x| f64::from(x)).sum();
    match (na == 0.0, nb == 0.0) {
        (true, true) => 1.0,
        (true, false) | (false, true) => 0.0,
        _ => {
            let dot: f64 = a.iter().zip(b).map(|(&x, &y)| f64::from(x * y)).sum();
            dot / (na.sqrt() * nb.sqrt())
        }
    }
}

pub fn brute_similarity(adj: &[Vec<bool>]) -> Vec<Vec<f64>> {
    let n = adj.len();
    let slices: Vec<Vec<u8>> = (0..n).map(|w| dense_slice(adj, w)).collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| dense_cosine(&slices[i], &slices[j]))
                .collect()
        })
        .collect()
}

/// Exact similarity `dot² / (|a|·|b|)` as a fraction, for ordering.
#[derive(Clone, Copy)]
struct Frac {
    num: u128,
    den: u128,
}

fn frac_cmp(a: Frac, b: Frac) -> CmpOrdering {
    (a.num * b.den).cmp(&(b.num * a.den))
}

fn exact_similarity(slices: &[Vec<u8>], i: usize, j: usize) -> Frac {
    let na: u128 = slices[i].iter().map(|&x| x as u128).sum();
    let nb: u128 = slices[j].iter().map(|&x| x as u128).sum();
    match (na, nb) {
        (0, 0) => Frac { num: 1, den: 1 },
        (0, _) | (_, 0) => Frac { num: 0, den: 1 },
        _ => {
            let dot: u128 = slices[i]
                .iter()
                .zip(&slices[j])
                .map(|(&x, &y)| (x * y) as u128)
                .sum();
            Frac {
                num: dot * dot,
                den: na * nb,
            }
        }
    }
}

/// (triangles, wedges) of the subgraph induced by `nodes`.
fn induced_counts(adj: &[Vec<bool>], nodes: &[usize]) -> (u64, u64) {
    let mut t = 0;
    let mut w = 0;
    for (a, &x) in nodes.iter().enumerate() {
        let d = nodes.iter().filter(|&&y| adj[x][y]).count() as u64;
        w += d * d.saturating_sub(1) / 2;
        for (b, &y) in nodes.iter().enumerate().skip(a + 1) {
            for &z in &nodes[b + 1..] {
                if adj[x][y] && adj[x][z] && adj[y][z] {
                    t += 1;
                }
            }
        }
    }
    (t, w)
}

fn density(counts: (u64, u64)) -> f64 {
    if counts.1 == 0 {
        0.0
    } else {
        3.0 * counts.0 as f64 / counts.1 as f64
    }
}

/// Components of `nodes` under the alive similarity edges, found by BFS,
/// ordered by smallest member.
fn bfs_components(alive: &[Vec<bool>], nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; alive.len()];
    let mut out = Vec::new();
    for &start in nodes {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in nodes {
                if !seen[y] && alive[x][y] {
                    seen[y] = true;
                    comp.push(y);
                    queue.push_back(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub struct OracleBlock {
    pub nodes: Vec<usize>,
    counts: (u64, u64),
}

struct Oracle<'a> {
    adj: &'a [Vec<bool>],
    schedule: Vec<(usize, usize)>,
    tau_min: f64,
    blocks: Vec<OracleBlock>,
}

impl Oracle<'_> {
    fn emit(&mut self, nodes: Vec<usize>) {
        let counts = induced_counts(self.adj, &nodes);
        self.blocks.push(OracleBlock { nodes, counts });
    }

    fn split(&mut self, nodes: Vec<usize>, mut alive: Vec<Vec<bool>>) {
        if nodes.len() == 1 {
            self.emit(nodes);
            return;
        }
        let parts = bfs_components(&alive, &nodes);
        if parts.len() > 1 {
            for part in parts {
                self.split(part, alive.clone());
            }
            return;
        }
        if density(induced_counts(self.adj, &nodes)) >= self.tau_min {
            self.emit(nodes);
            return;
        }
        for k in 0..self.schedule.len() {
            let (i, j) = self.schedule[k];
            if !nodes.contains(&i) || !nodes.contains(&j) || !alive[i][j] {
                continue;
            }
            alive[i][j] = false;
            alive[j][i] = false;
            let parts = bfs_components(&alive, &nodes);
            if parts.len() > 1 {
                for part in parts {
                    self.split(part, alive.clone());
                }
                return;
            }
        }
        self.emit(nodes);
    }
}

/// Straightforward transcription of the block reordering: dense slices,
/// global similarity, ascending deletion schedule with `(i, j)` tie-break,
/// a fresh BFS after every deletion. Returns the order and the ranked
/// blocks.
pub fn oracle_reorder(adj: &[Vec<bool>], tau_min: f64) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = adj.len();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let slices: Vec<Vec<u8>> = (0..n).map(|w| dense_slice(adj, w)).collect();
    let mut schedule: Vec<(usize, usize, Frac)> = Vec::new();
    let mut alive = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let s = exact_similarity(&slices, i, j);
            if s.num > 0 {
                schedule.push((i, j, s));
                alive[i][j] = true;
                alive[j][i] = true;
            }
        }
    }
    schedule.sort_by(|a, b| frac_cmp(a.2, b.2).then((a.0, a.1).cmp(&(b.0, b.1))));

    let mut oracle = Oracle {
        adj,
        schedule: schedule.into_iter().map(|(i, j, _)| (i, j)).collect(),
        tau_min,
        blocks: Vec::new(),
    };
    oracle.split((0..n).collect(), alive);

    let mut blocks = oracle.blocks;
    blocks.sort_by(|a, b| {
        // descending exact density, 3t/w with w = 0 read as 0/1
        let frac = |c: (u64, u64)| {
            if c.1 == 0 {
                (0u128, 1u128)
            } else {
                (c.0 as u128, c.1 as u128)
            }
        };
        let (fa, fb) = (frac(a.counts), frac(b.counts));
        b.nodes
            .len()
            .cmp(&a.nodes.len())
            .then_with(|| (fb.0 * fa.1).cmp(&(fa.0 * fb.1)))
            .then_with(|| a.nodes.iter().min().cmp(&b.nodes.iter().min()))
    });
    let ranked: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| {
            let mut nodes = b.nodes.clone();
            let support = |x: usize| {
                brute_triangles(adj)
                    .iter()
                    .filter(|t| t.contains(&x) && t.iter().all(|y| b.nodes.contains(y)))
                    .count()
            };
            nodes.sort_by_key(|&x| (std::cmp::Reverse(support(x)), x));
            nodes
        })
        .collect();
    let order = ranked.iter().flatten().copied().collect();
    (order, ranked)
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

pub fn bridged_k4s() -> Graph {
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

/// Erdős–Rényi style graph with edge probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Graphs with up to `max_n` nodes and an arbitrary edge subset.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, all.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

/// Like [`arb_graph`] but biased toward triangle-rich graphs.
pub fn arb_dense_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.2f64..0.9).prop_flat_map(|(n, p)| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(proptest::bool::weighted(p), pairs).prop_map(move |bits| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, all.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

/// Assigns each node a cluster drawn from `k` labels.
pub fn with_random_clusters(g: Graph, rng: &mut ChaCha8Rng, k: usize) -> Graph {
    let clusters = (0..g.node_count())
        .map(|_| format!("c{}", rng.random_range(0..k)))
        .collect();
    g.with_clusters(clusters).unwrap()
}

/// Minimal HTTP/1.1 GET; returns the status code and body.
pub fn http_get(addr: std::net::SocketAddr, path: &str) -> (u16, Vec<u8>) {
    http_request(addr, "GET", path)
}

pub fn http_request(addr: std::net::SocketAddr, method: &str, path: &str) -> (u16, Vec<u8>) {
    use std::io::{Read, Write};
    let mut stream = std::net::TcpStream::connect(addr).unwrap();
    stream
        .set_read_timeout(Some(std::time::Duration::from_secs(10)))
        .unwrap();
    write!(
        stream,
        "{method} {path} HTTP/1.1\r\nHost: {addr}\r\nContent-Length: 0\r\nConnection: close\r\n\r\n"
    )
    .unwrap();
    let mut raw = Vec::new();
    stream.read_to_end(&mut raw).unwrap();
    let split = raw
        .windows(4)
        .position(|w| w == b"\r\n\r\n")
        .expect("response has a header block");
    let head = String::from_utf8_lossy(&raw[..split]).into_owned();
    let status = head
        .split_whitespace()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .expect("status line");
    (status, raw[split + 4..].to_vec())
}

/// Nodes split into `groups` consecutive runs; edges inside a run appear
/// with probability `p_in`, across runs with `p_out`.
pub fn planted_graph(
    rng: &mut ChaCha8Rng,
    n: usize,
    groups: usize,
    p_in: f64,
    p_out: f64,
) -> Graph {
    let group = |v: usize| v * groups / n.max(1);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if group(u) == group(v) { p_in } else { p_out };
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}
