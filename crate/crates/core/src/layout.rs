//! Deterministic force-directed placement of the Ball Mapper graph.
//!
//! Fruchterman-Reingold style: every pair of nodes repels with magnitude
//! `repulsion * k^2 / d`, every edge attracts with `attraction * d^2 / k`,
//! where `k = sqrt(pi / n)` is the ideal spacing inside a unit disc. Node
//! displacement per iteration is capped by a step that cools linearly.
//! Nodes start evenly spaced on the unit circle in ball-id order, so no
//! random numbers are involved.

use crate::graph::MapperGraph;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayoutParams {
    pub repulsion: f64,
    pub attraction: f64,
    pub iterations: usize,
    /// Step cap at the first iteration.
    pub initial_step: f64,
    /// Step cap at the last iteration.
    pub final_step: f64,
}

impl Default for LayoutParams {
    fn default() -> Self {
        LayoutParams {
            repulsion: 0.05,
            attraction: 0.01,
            iterations: 500,
            initial_step: 0.1,
            final_step: 0.001,
        }
    }
}

impl LayoutParams {
    pub fn new(repulsion: f64, attraction: f64, iterations: usize) -> Self {
        LayoutParams {
            repulsion,
            attraction,
            iterations,
            ..Default::default()
        }
    }
}

/// Node coordinates indexed by ball id - 1.
#[derive(Debug, Clone, PartialEq)]
pub struct LayoutPositions {
    pub positions: Vec<[f64; 2]>,
}

impl LayoutPositions {
    pub fn get(&self, ball: usize) -> [f64; 2] {
        self.positions[ball - 1]
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// `([min_x, min_y], [max_x, max_y])`.
    pub fn bounding_box(&self) -> ([f64; 2], [f64; 2]) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in &self.positions {
            for a in 0..2 {
                lo[a] = lo[a].min(p[a]);
                hi[a] = hi[a].max(p[a]);
            }
        }
        (lo, hi)
    }
}

/// Evenly spaced points on the unit circle; a single node sits at the origin.
pub fn initial_positions(n: usize) -> Vec<[f64; 2]> {
    if n == 1 {
        return vec![[0.0, 0.0]];
    }
    let snap = |v: f64| if v.abs() < 1e-12 { 0.0 } else { v };
    (0..n)
        .map(|i| {
            let angle = std::f64::consts::TAU * i as f64 / n as f64;
            let (s, c) = angle.sin_cos();
            [snap(c), snap(s)]
        })
        .collect()
}

/// Runs the force simulation without the final rescaling.
pub fn simulate<T: Scalar>(graph: &MapperGraph<T>, params: &LayoutParams) -> Vec<[f64; 2]> {
    let n = graph.n_nodes();
    let mut pos = initial_positions(n);
    if n < 2 {
        return pos;
    }
    let k = (std::f64::consts::PI / n as f64).sqrt();
    let iterations = params.iterations.max(1);
    let mut disp = vec![[0.0_f64; 2]; n];
    for it in 0..iterations {
        let t = if iterations > 1 {
            it as f64 / (iterations - 1) as f64
        } else {
            0.0
        };
        let step = params.initial_step + (params.final_step - params.initial_step) * t;
        disp.iter_mut().for_each(|d| *d = [0.0, 0.0]);

        for v in 0..n {
            for u in 0..n {
                if u == v {
                    continue;
                }
                let (dir, d) = direction(pos[v], pos[u], v, u);
                let f = params.repulsion * k * k / d;
                disp[v][0] += dir[0] * f;
                disp[v][1] += dir[1] * f;
            }
        }
        for e in graph.edges() {
            let (a, b) = (e.source - 1, e.target - 1);
            let (dir, d) = direction(pos[a], pos[b], a, b);
            let f = params.attraction * d * d / k;
            disp[a][0] -= dir[0] * f;
            disp[a][1] -= dir[1] * f;
            disp[b][0] += dir[0] * f;
            disp[b][1] += dir[1] * f;
        }
        for (p, d) in pos.iter_mut().zip(&disp) {
            let len = d[0].hypot(d[1]);
            if len > 0.0 {
                let scale = len.min(step) / len;
                p[0] += d[0] * scale;
                p[1] += d[1] * scale;
            }
        }
    }
    pos
}

/// Unit vector from `b` towards `a` and the distance between them. Coincident
/// nodes are separated along a direction fixed by their indices.
fn direction(a: [f64; 2], b: [f64; 2], ia: usize, ib: usize) -> ([f64; 2], f64) {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let d = dx.hypot(dy);
    if d > 1e-9 {
        return ([dx / d, dy / d], d);
    }
    let angle = (ia.min(ib) * 31 + ia.max(ib) * 17) as f64;
    let (s, c) = angle.sin_cos();
    let sign = if ia < ib { 1.0 } else { -1.0 };
    ([sign * c, sign * s], 1e-9)
}

/// Full layout: simulation followed by rescaling each axis onto `[0, 1]`.
/// An axis with no spread maps to 0.5.
pub fn compute_layout<T: Scalar>(graph: &MapperGraph<T>, params: &LayoutParams) -> LayoutPositions {
    let raw = simulate(graph, params);
    if raw.len() < 2 {
        return LayoutPositions { positions: raw };
    }
    let bounds = LayoutPositions {
        positions: raw.clone(),
    }
    .bounding_box();
    let span = [bounds.1[0] - bounds.0[0], bounds.1[1] - bounds.0[1]];
    let widest = span[0].max(span[1]);
    let positions = raw
        .iter()
        .map(|p| {
            let mut out = [0.5; 2];
            for a in 0..2 {
                if span[a] > widest * 1e-9 {
                    out[a] = (p[a] - bounds.0[a]) / span[a];
                }
            }
            out
        })
        .collect();
    LayoutPositions { positions }
}
