//! The Ball Mapper graph: one node per ball, an edge wherever two balls share
//! a point, and optional coloring by the per-ball mean of a variable.

use std::collections::BTreeMap;

use crate::cover::{ball_sizes, membership_matrix, BallCover};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::stats;

pub const DEFAULT_BIN_COUNT: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct Node<T> {
    pub id: usize,
    pub size: usize,
    pub color_mean: Option<T>,
    /// 1-based bin, set by [`assign_bins`].
    pub color_bin: Option<usize>,
}

/// Undirected edge with `source < target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    /// Number of points the two balls have in common.
    pub shared: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapperGraph<T> {
    nodes: Vec<Node<T>>,
    edges: Vec<Edge>,
}

impl<T: Scalar> MapperGraph<T> {
    /// Assembles a graph from parts, e.g. rows read back from a results file.
    /// Node ids must be `1..=n` in order; edges are normalised to
    /// `source < target` and sorted.
    pub fn from_parts(nodes: Vec<Node<T>>, mut edges: Vec<Edge>) -> Result<Self> {
        if let Some((i, n)) = nodes.iter().enumerate().find(|(i, n)| n.id != i + 1) {
            return Err(Error::InvalidParameter(format!(
                "node at position {i} has id {}, expected {}",
                n.id,
                i + 1
            )));
        }
        for e in &mut edges {
            if e.source > e.target {
                std::mem::swap(&mut e.source, &mut e.target);
            }
            if e.source == e.target || e.source == 0 || e.target > nodes.len() {
                return Err(Error::InvalidParameter(format!(
                    "edge {}-{} does not join two distinct nodes",
                    e.source, e.target
                )));
            }
        }
        edges.sort();
        Ok(MapperGraph { nodes, edges })
    }

    pub fn nodes(&self) -> &[Node<T>] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &Node<T> {
        &self.nodes[id - 1]
    }

    /// Edges sorted by `(source, target)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn color_means(&self) -> Option<Vec<T>> {
        self.nodes.iter().map(|n| n.color_mean).collect()
    }
}

/// Builds nodes and overlap edges. `color_values`, when given, must hold one
/// value per point of the cover, in cloud order.
pub fn build_graph<T: Scalar>(
    cover: &BallCover<T>,
    color_values: Option<&[T]>,
) -> Result<MapperGraph<T>> {
    if let Some(values) = color_values {
        if values.len() != cover.n_points() {
            return Err(Error::ColorLengthMismatch {
                expected: cover.n_points(),
                found: values.len(),
            });
        }
    }
    let sizes = ball_sizes(cover);
    let nodes = cover
        .balls()
        .map(|(id, members)| {
            let color_mean = color_values.and_then(|values| {
                let ys: Vec<T> = members.iter().map(|&m| values[m]).collect();
                stats::mean(&ys)
            });
            Node {
                id,
                size: sizes.get(id),
                color_mean,
                color_bin: None,
            }
        })
        .collect();

    // every point contributes one shared count to each pair of balls holding it
    let mut shared: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for balls in membership_matrix(cover) {
        for (i, &q) in balls.iter().enumerate() {
            for &s in &balls[i + 1..] {
                *shared.entry((q, s)).or_default() += 1;
            }
        }
    }
    let edges = shared
        .into_iter()
        .map(|((source, target), shared)| Edge {
            source,
            target,
            shared,
        })
        .collect();
    Ok(MapperGraph { nodes, edges })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl Rgb {
    pub fn hex(&self) -> String {
        format!("#{:02x}{:02x}{:02x}", self.0, self.1, self.2)
    }
}

pub const LOW_COLOR: Rgb = Rgb(0x2C, 0x4F, 0xD8);
pub const HIGH_COLOR: Rgb = Rgb(0xD8, 0x2C, 0x2C);

/// Linear RGB ramp from [`LOW_COLOR`] to [`HIGH_COLOR`] with `bins` stops.
pub fn default_palette(bins: usize) -> Vec<Rgb> {
    let lerp = |a: u8, b: u8, t: f64| (a as f64 + (b as f64 - a as f64) * t).round() as u8;
    (0..bins)
        .map(|i| {
            let t = if bins > 1 {
                i as f64 / (bins - 1) as f64
            } else {
                0.0
            };
            Rgb(
                lerp(LOW_COLOR.0, HIGH_COLOR.0, t),
                lerp(LOW_COLOR.1, HIGH_COLOR.1, t),
                lerp(LOW_COLOR.2, HIGH_COLOR.2, t),
            )
        })
        .collect()
}

/// Equal-width bins over the range of ball means.
#[derive(Debug, Clone, PartialEq)]
pub struct ColorScale<T> {
    /// `bin_count + 1` ascending edges from min to max mean.
    pub boundaries: Vec<T>,
    pub palette: Vec<Rgb>,
}

impl<T: Scalar> ColorScale<T> {
    pub fn bin_count(&self) -> usize {
        self.palette.len()
    }

    pub fn min(&self) -> T {
        self.boundaries[0]
    }

    pub fn max(&self) -> T {
        *self.boundaries.last().unwrap()
    }

    /// 1-based bin of `value`. Intervals are `[lo, hi)` except the last, which
    /// is closed. A zero-width range puts everything in bin 1.
    pub fn bin_of(&self, value: T) -> usize {
        let (lo, hi) = (self.min(), self.max());
        if !(hi > lo) {
            return 1;
        }
        let k = self.bin_count();
        let width = (hi - lo) / T::from_count(k);
        let raw = ((value - lo) / width).floor().to_usize().unwrap_or(0);
        raw.min(k - 1) + 1
    }

    pub fn color(&self, bin: usize) -> Rgb {
        self.palette[bin - 1]
    }
}

/// Fills `color_bin` on every node. Nodes without a color mean stay unbinned;
/// a graph with no means at all gets a single-bin scale over `[0, 0]`.
pub fn assign_bins<T: Scalar>(
    graph: &MapperGraph<T>,
    bin_count: usize,
    palette: Option<Vec<Rgb>>,
) -> Result<(ColorScale<T>, MapperGraph<T>)> {
    if bin_count == 0 {
        return Err(Error::InvalidParameter("bin count must be positive".into()));
    }
    let palette = palette.unwrap_or_else(|| default_palette(bin_count));
    if palette.len() != bin_count {
        return Err(Error::InvalidParameter(format!(
            "palette has {} colors for {} bins",
            palette.len(),
            bin_count
        )));
    }
    let means: Vec<T> = graph.nodes.iter().filter_map(|n| n.color_mean).collect();
    let lo = stats::min(&means).unwrap_or_else(T::zero);
    let hi = stats::max(&means).unwrap_or_else(T::zero);
    let width = (hi - lo) / T::from_count(bin_count);
    let mut boundaries: Vec<T> = (0..bin_count)
        .map(|i| lo + width * T::from_count(i))
        .collect();
    boundaries.push(hi);
    let scale = ColorScale {
        boundaries,
        palette,
    };
    let mut binned = graph.clone();
    for node in &mut binned.nodes {
        node.color_bin = node.color_mean.map(|m| scale.bin_of(m));
    }
    Ok((scale, binned))
}

/// Connected components as sorted ball-id lists, ordered by smallest id.
pub fn connected_components<T: Scalar>(graph: &MapperGraph<T>) -> Vec<Vec<usize>> {
    let mut dsu = DisjointSet::new(graph.n_nodes());
    for e in &graph.edges {
        dsu.union(e.source - 1, e.target - 1);
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..graph.n_nodes() {
        groups.entry(dsu.find(i)).or_default().push(i + 1);
    }
    let mut comps: Vec<Vec<usize>> = groups.into_values().collect();
    comps.sort_by_key(|c| c[0]);
    comps
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
            rank: vec![0; n],
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
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
    }
}
