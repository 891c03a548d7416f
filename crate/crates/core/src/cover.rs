//! Greedy ε-ball cover of a point cloud.
//!
//! Landmarks are visited in a fixed order. A point that is still uncovered
//! when its turn comes becomes the next landmark, and its ball collects every
//! point within distance ≤ ε, whether or not that point was covered already.
//! Those repeated memberships are what produce overlap edges later on.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::point_cloud::{distance_unchecked, PointCloud};
use crate::scalar::Scalar;
use crate::vptree::VpTree;

/// Order in which points are offered as landmarks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum LandmarkOrder {
    /// Row order of the cloud.
    #[default]
    Data,
    /// A seeded permutation (ChaCha8, Fisher-Yates) of the rows.
    Shuffle { seed: u64 },
}

impl LandmarkOrder {
    pub fn sequence(&self, n: usize) -> Vec<usize> {
        let mut order: Vec<usize> = (0..n).collect();
        if let LandmarkOrder::Shuffle { seed } = *self {
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        }
        order
    }
}

/// How ball membership is computed. Both produce identical covers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum SearchStrategy {
    /// Scan every point for every landmark.
    #[default]
    Naive,
    /// Radius queries against a vantage-point tree.
    VpTree,
}

/// The cover: one ball per landmark. Ball ids are 1-based in landmark order;
/// member lists hold point indices of the cloud, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct BallCover<T> {
    epsilon: T,
    n_points: usize,
    landmarks: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl<T: Scalar> BallCover<T> {
    pub fn epsilon(&self) -> T {
        self.epsilon
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn n_balls(&self) -> usize {
        self.landmarks.len()
    }

    pub fn landmarks(&self) -> &[usize] {
        &self.landmarks
    }

    /// Members of ball `ball` (1-based id).
    pub fn members(&self, ball: usize) -> &[usize] {
        &self.members[ball - 1]
    }

    /// Ball ids with their member lists, ascending by id.
    pub fn balls(&self) -> impl Iterator<Item = (usize, &[usize])> + '_ {
        self.members
            .iter()
            .enumerate()
            .map(|(i, m)| (i + 1, m.as_slice()))
    }

    pub fn ball_ids(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n_balls()
    }
}

pub fn build_cover<T: Scalar>(
    cloud: &PointCloud<T>,
    epsilon: T,
    order: LandmarkOrder,
) -> Result<BallCover<T>> {
    build_cover_with(cloud, epsilon, order, SearchStrategy::Naive)
}

pub fn build_cover_with<T: Scalar>(
    cloud: &PointCloud<T>,
    epsilon: T,
    order: LandmarkOrder,
    strategy: SearchStrategy,
) -> Result<BallCover<T>> {
    if !(epsilon > T::zero()) || !epsilon.is_finite() {
        return Err(Error::NonPositiveEpsilon);
    }
    let n = cloud.len();
    let tree = match strategy {
        SearchStrategy::Naive => None,
        SearchStrategy::VpTree => Some(VpTree::build(cloud)),
    };
    let mut covered = vec![false; n];
    let mut landmarks = Vec::new();
    let mut members = Vec::new();
    for candidate in order.sequence(n) {
        if covered[candidate] {
            continue;
        }
        let centre = cloud.point(candidate);
        let ball: Vec<usize> = match &tree {
            Some(tree) => tree.within(centre, epsilon),
            None => (0..n)
                .filter(|&i| distance_unchecked(centre, cloud.point(i)) <= epsilon)
                .collect(),
        };
        for &m in &ball {
            covered[m] = true;
        }
        landmarks.push(candidate);
        members.push(ball);
    }
    Ok(BallCover {
        epsilon,
        n_points: n,
        landmarks,
        members,
    })
}

/// For every point, the ascending list of ball ids that contain it.
pub fn membership_matrix<T: Scalar>(cover: &BallCover<T>) -> Vec<Vec<usize>> {
    let mut index = vec![Vec::new(); cover.n_points()];
    for (ball, members) in cover.balls() {
        for &m in members {
            index[m].push(ball);
        }
    }
    index
}

/// Number of points per ball, ordered by ball id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallSizes(pub Vec<usize>);

impl BallSizes {
    pub fn get(&self, ball: usize) -> usize {
        self.0[ball - 1]
    }

    /// Sum over balls; at least N, larger when balls overlap.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

pub fn ball_sizes<T: Scalar>(cover: &BallCover<T>) -> BallSizes {
    BallSizes(cover.members.iter().map(Vec::len).collect())
}
