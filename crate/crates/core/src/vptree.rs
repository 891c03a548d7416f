//! Vantage-point tree for fixed-radius queries over a [`PointCloud`].
//!
//! The tree only prunes candidates; every reported point has passed the same
//! `distance <= radius` test the naive scan uses, so results are identical.

use crate::point_cloud::{distance_unchecked, PointCloud};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
struct Node<T> {
    point: usize,
    /// Median distance from `point` to the points of its subtree.
    radius: T,
    inside: Option<usize>,
    outside: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct VpTree<'a, T> {
    cloud: &'a PointCloud<T>,
    nodes: Vec<Node<T>>,
    root: Option<usize>,
}

impl<'a, T: Scalar> VpTree<'a, T> {
    /// Builds the tree. Vantage points are taken as the first index of each
    /// subset, so construction is deterministic.
    pub fn build(cloud: &'a PointCloud<T>) -> Self {
        let mut tree = VpTree {
            cloud,
            nodes: Vec::with_capacity(cloud.len()),
            root: None,
        };
        let mut items: Vec<(usize, T)> = (0..cloud.len()).map(|i| (i, T::zero())).collect();
        tree.root = tree.build_rec(&mut items);
        tree
    }

    fn build_rec(&mut self, items: &mut [(usize, T)]) -> Option<usize> {
        let (&mut (vp, _), rest) = items.split_first_mut()?;
        let vp_point = self.cloud.point(vp);
        for item in rest.iter_mut() {
            item.1 = distance_unchecked(vp_point, self.cloud.point(item.0));
        }
        let id = self.nodes.len();
        self.nodes.push(Node {
            point: vp,
            radius: T::zero(),
            inside: None,
            outside: None,
        });
        if rest.is_empty() {
            return Some(id);
        }
        // total order on finite distances, ties broken by index for determinism
        rest.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(a.0.cmp(&b.0)));
        let mid = (rest.len() - 1) / 2;
        let radius = rest[mid].1;
        let (inner, outer) = rest.split_at_mut(mid + 1);
        let inside = self.build_rec(inner);
        let outside = self.build_rec(outer);
        let node = &mut self.nodes[id];
        node.radius = radius;
        node.inside = inside;
        node.outside = outside;
        Some(id)
    }

    /// All point indices within `radius` (inclusive) of `query`, ascending.
    pub fn within(&self, query: &[T], radius: T) -> Vec<usize> {
        let mut out = Vec::new();
        // loosened bound for pruning only; absorbs rounding in the triangle inequality
        let slack = radius * T::from_f64(1e-9).unwrap() + T::epsilon();
        let mut stack: Vec<usize> = self.root.into_iter().collect();
        while let Some(id) = stack.pop() {
            let node = &self.nodes[id];
            let d = distance_unchecked(query, self.cloud.point(node.point));
            if d <= radius {
                out.push(node.point);
            }
            if let Some(inside) = node.inside {
                if d - radius - slack <= node.radius {
                    stack.push(inside);
                }
            }
            if let Some(outside) = node.outside {
                if d + radius + slack >= node.radius {
                    stack.push(outside);
                }
            }
        }
        out.sort_unstable();
        out
    }
}
