//! Deterministic spring-embedder layout for the node-link panel.
//!
//! Fruchterman–Reingold forces on the unit square: all pairs repel with
//! `k²/d`, edges attract with `d²/k`, where `k = sqrt(1/n)`. Each step moves
//! a node at most the current temperature, which cools linearly from
//! `INITIAL_TEMPERATURE` to zero over the requested iterations. Initial
//! positions come from a ChaCha8 stream seeded with the caller's seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_ITERATIONS: usize = 500;
const INITIAL_TEMPERATURE: f64 = 0.1;
const MIN_DISTANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    /// One `[x, y]` per node, inside `[0, 1]²`.
    pub positions: Vec<[f64; 2]>,
    pub seed: u64,
    pub iterations: usize,
}

pub fn force_layout(g: &Graph, seed: u64, iterations: usize) -> Result<Layout> {
    if iterations == 0 {
        return Err(Error::validation("iterations", "must be at least 1"));
    }
    let n = g.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pos: Vec<[f64; 2]> = (0..n)
        .map(|_| [rng.random::<f64>(), rng.random::<f64>()])
        .collect();

    if n > 1 {
        let k = (1.0 / n as f64).sqrt();
        let mut disp = vec![[0.0f64; 2]; n];
        for step in 0..iterations {
            let temperature = INITIAL_TEMPERATURE * (1.0 - step as f64 / iterations as f64);
            disp.iter_mut().for_each(|d| *d = [0.0, 0.0]);

            for i in 0..n {
                for j in i + 1..n {
                    let dx = pos[i][0] - pos[j][0];
                    let dy = pos[i][1] - pos[j][1];
                    let d = (dx * dx + dy * dy).sqrt().max(MIN_DISTANCE);
                    let f = k * k / d;
                    let (fx, fy) = (dx / d * f, dy / d * f);
                    disp[i][0] += fx;
                    disp[i][1] += fy;
                    disp[j][0] -= fx;
                    disp[j][1] -= fy;
                }
            }
            for &(u, v) in g.edges() {
                let dx = pos[u][0] - pos[v][0];
                let dy = pos[u][1] - pos[v][1];
                let d = (dx * dx + dy * dy).sqrt().max(MIN_DISTANCE);
                let f = d * d / k;
                let (fx, fy) = (dx / d * f, dy / d * f);
                disp[u][0] -= fx;
                disp[u][1] -= fy;
                disp[v][0] += fx;
                disp[v][1] += fy;
            }
            for (p, d) in pos.iter_mut().zip(&disp) {
                let len = (d[0] * d[0] + d[1] * d[1]).sqrt();
                if len > 0.0 {
                    let step = len.min(temperature);
                    p[0] += d[0] / len * step;
                    p[1] += d[1] / len * step;
                }
            }
        }
    }

    normalize(&mut pos);
    Ok(Layout {
        positions: pos,
        seed,
        iterations,
    })
}

/// Uniform scaling into the unit square, centered along the shorter axis.
/// A degenerate extent collapses to the center.
fn normalize(pos: &mut [[f64; 2]]) {
    if pos.is_empty() {
        return;
    }
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in pos.iter() {
        for a in 0..2 {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    }
    let extent = [hi[0] - lo[0], hi[1] - lo[1]];
    let span = extent[0].max(extent[1]);
    for p in pos.iter_mut() {
        for a in 0..2 {
            p[a] = if span > 0.0 {
                ((p[a] - lo[a]) / span + (1.0 - extent[a] / span) / 2.0).clamp(0.0, 1.0)
            } else {
                0.5
            };
        }
    }
}
