//! Synthetic fixtures: an i.i.d. standard normal cloud and the nine-cluster
//! "X" dataset with outcomes y1..y5.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64(seed)` (rand_chacha 0.3)
//! with normals drawn by `rand_distr::StandardNormal` (ziggurat, rand_distr
//! 0.4). Values are consumed in row-major order, so a seed fixes the bytes.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::point_cloud::PointCloud;

/// `n` points with `k` standard normal coordinates, columns `x1..xk`.
pub fn gen_gaussian_cloud(n: usize, k: usize, seed: u64) -> Result<PointCloud<f64>> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter(format!(
            "gaussian cloud needs n >= 1 and k >= 1, got n={n}, k={k}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..k).map(|_| rng.sample(StandardNormal)).collect())
        .collect();
    PointCloud::from_rows((1..=k).map(|j| format!("x{j}")).collect(), &rows)
}

pub const X_CENTERS: [[f64; 2]; 9] = [
    [-6.0, 6.0],
    [-3.0, 3.0],
    [3.0, 3.0],
    [6.0, 6.0],
    [0.0, 0.0],
    [-3.0, -3.0],
    [3.0, -3.0],
    [-6.0, -6.0],
    [6.0, -6.0],
];

pub const X_COLUMNS: [&str; 8] = ["x1", "x2", "y1", "y2", "y3", "y4", "y5", "group"];

#[derive(Debug, Clone, PartialEq)]
pub struct XDatasetSpec {
    pub group_size: usize,
    pub centers: Vec<[f64; 2]>,
    /// Standard deviation of the noise term θ.
    pub theta_sd: f64,
    pub seed: u64,
}

impl Default for XDatasetSpec {
    fn default() -> Self {
        XDatasetSpec {
            group_size: 100,
            centers: X_CENTERS.to_vec(),
            theta_sd: 0.2,
            seed: 1,
        }
    }
}

impl XDatasetSpec {
    pub fn with_seed(seed: u64) -> Self {
        XDatasetSpec {
            seed,
            ..Default::default()
        }
    }
}

/// Rows are grouped by center in the order of `centers`. For each row four normals are
/// drawn: the two coordinate offsets, then θ, then φ.
///
/// - y1 = x1 + x2 + θ
/// - y2 = group (1-based center index)
/// - y3 = x1² + x2² + θ
/// - y4 = φ
/// - y5 = 1 if 0 < x1 < 3 and 0 < x2 < 3, else 0
pub fn gen_x_dataset(spec: &XDatasetSpec) -> Result<PointCloud<f64>> {
    if spec.group_size == 0 || spec.centers.is_empty() {
        return Err(Error::InvalidParameter("X dataset needs at least one point".into()));
    }
    if !(spec.theta_sd >= 0.0) || !spec.theta_sd.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "theta sd must be finite and non-negative, got {}",
            spec.theta_sd
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut rows = Vec::with_capacity(spec.group_size * spec.centers.len());
    for (g, center) in spec.centers.iter().enumerate() {
        for _ in 0..spec.group_size {
            let x1 = center[0] + rng.sample::<f64, _>(StandardNormal);
            let x2 = center[1] + rng.sample::<f64, _>(StandardNormal);
            let theta = spec.theta_sd * rng.sample::<f64, _>(StandardNormal);
            let phi: f64 = rng.sample(StandardNormal);
            let group = (g + 1) as f64;
            let inside = 0.0 < x1 && x1 < 3.0 && 0.0 < x2 && x2 < 3.0;
            rows.push(vec![
                x1,
                x2,
                x1 + x2 + theta,
                group,
                x1 * x1 + x2 * x2 + theta,
                phi,
                if inside { 1.0 } else { 0.0 },
                group,
            ]);
        }
    }
    PointCloud::from_rows(X_COLUMNS.iter().map(|c| c.to_string()).collect(), &rows)
}
