#![allow(dead_code)]

use std::path::PathBuf;

use ballmapper::*;

pub const AUTO_AXES: [&str; 7] = [
    "mpg",
    "trunk",
    "weight",
    "length",
    "turn",
    "displacement",
    "gear_ratio",
];

pub const AUTO_SIZES: [usize; 19] = [4, 2, 8, 17, 9, 6, 2, 2, 1, 5, 10, 10, 2, 2, 4, 3, 9, 3, 2];

pub const MEANS_VARIABLES: [&str; 9] = [
    "mpg",
    "trunk",
    "weight",
    "length",
    "turn",
    "displacement",
    "gear_ratio",
    "price",
    "foreign",
];

/// Published per-ball means at ε = 1.5, as printed: ball, the nine
/// variables above, size.
pub const AUTO_MEANS: &str = "\
1 22.50 9.250 2713 182.8 39.75 131.5 3.438 5725 0.25 4
2 18.00 12.00 3390 185.0 41.50 254.0 2.545 4352 0 2
3 22.38 11.88 2573 170.8 36.13 127.3 3.129 5465 0.625 8
4 18.82 15.29 3283 198.5 41.65 211.7 2.939 5619 0.118 17
5 15.67 18.78 3949 213.3 43.78 333.0 2.416 8551 0 9
6 17.17 19.83 3728 214.8 43.17 233.2 2.770 6483 0 6
7 27.50 9.500 2170 166.5 34.00 267.5 2.900 3876 0 2
8 18.50 15.00 4160 205.0 44.00 350.0 2.325 13139 0 2
9 22.00 17.00 3180 193.0 31.00 200.0 2.730 4504 0 1
10 23.00 8.600 2680 177.2 40.60 146.6 2.800 4010 0 5
11 29.30 8.700 2056 160.1 34.40 96.90 3.524 4446 0.700 10
12 16.20 16.70 3833 209.0 44.10 309.2 2.504 7839 0 10
13 12.00 20.00 4780 231.5 49.50 400.0 2.470 12546 0 2
14 32.50 10.00 2000 161.0 36.00 91.50 3.090 4087 0.5 2
15 24.00 16.00 2063 159.3 35.75 99.00 3.575 5081 0.75 4
16 18.67 11.00 3430 200.3 42.33 231.0 3.080 4480 0 3
17 23.89 10.67 2302 171.1 35.78 111.6 3.684 6738 0.889 9
18 16.00 14.33 3140 191.3 37.33 152.3 3.253 11558 1 3
19 38.00 13.00 2045 159.5 35.50 93.50 3.795 4598 1 2";

/// Published distribution of price per ball: ball, mean, sd (`-` when
/// empty), min, q25, q50, q75, max, size.
pub const AUTO_PRICE: &str = "\
1 5725 1946.6 4099 4143 5336.5 7307.5 8129 4
2 4352 561.4 3955 3955 4352 4749 4749 2
3 5465 1930.4 3799 4062.5 5183 5849 9735 8
4 5619 2506.9 3291 4181 4733 5189 11995 17
5 8551 3026.5 5705 6165 7827 10371 14500 9
6 6483 1961.6 4890 5705 5793 6342 10372 6
7 3876 816.0 3299 3299 3876 4453 4453 2
8 13139 3913.8 10371 10371 13139 15906 15906 2
9 4504 - 4504 4504 4504 4504 4504 1
10 4010 246.1 3667 3829 4172 4187 4195 5
11 4446 831.1 3748 3895 4192 4589 6486 10
12 7839 3799.4 3955 5379 6094.5 10371 14500 10
13 12546 1482.8 11497 11497 12546 13594 13594 2
14 4087 478.7 3748 3748 4086.5 4425 4425 2
15 5081 1190.5 4296 4389 4589.5 5773.5 6850 4
16 4480 428.8 4082 4082 4424 4934 4934 3
17 6738 1521.8 4697 6229 6486 7140 9735 9
18 11558 1692.8 9690 9690 11995 12990 12990 3
19 4598 1130.7 3798 3798 4597.5 5397 5397 2";

/// Same layout for the foreign dummy.
pub const AUTO_FOREIGN: &str = "\
1 0.25 0.5 0 0 0 0.5 1 4
2 0 0 0 0 0 0 0 2
3 0.625 0.518 0 0 1 1 1 8
4 0.118 0.333 0 0 0 0 1 17
5 0 0 0 0 0 0 0 9
6 0 0 0 0 0 0 0 6
7 0 0 0 0 0 0 0 2
8 0 0 0 0 0 0 0 2
9 0 - 0 0 0 0 0 1
10 0 0 0 0 0 0 0 5
11 0.700 0.484 0 0 1 1 1 10
12 0 0 0 0 0 0 0 10
13 0 0 0 0 0 0 0 2
14 0.500 0.708 0 0 0.5 1 1 2
15 0.750 0.500 0 0.5 1 1 1 4
16 0 0 0 0 0 0 0 3
17 0.889 0.333 0 1 1 1 1 9
18 1 0 1 1 1 1 1 3
19 1 0 1 1 1 1 1 2";

pub fn table_rows(text: &str) -> Vec<Vec<&str>> {
    text.lines().map(|l| l.split_whitespace().collect()).collect()
}

/// Half a unit in the last printed digit of `printed`, plus a relative
/// 1e-12 for the binary representation of the decimal itself.
pub fn print_tolerance(printed: &str) -> f64 {
    let decimals = printed.split_once('.').map_or(0, |(_, d)| d.len());
    let v: f64 = printed.parse().unwrap();
    0.5 * 10f64.powi(-(decimals as i32)) + 1e-12 * v.abs().max(1.0)
}

pub fn matches_print(value: f64, printed: &str) -> bool {
    let v: f64 = printed.parse().unwrap();
    (value - v).abs() <= print_tolerance(printed)
}

pub fn auto_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/auto.csv")
}

pub fn auto_table() -> point_cloud::RawTable {
    load_csv(auto_path(), b',').unwrap()
}

pub fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// The standardized seven-axis cloud and its ε = 1.5 cover in data order.
pub fn auto_cover() -> (point_cloud::RawTable, PointCloud64, BallCover64) {
    let raw = auto_table();
    let axes = strings(&AUTO_AXES);
    let cloud = validate_axes::<f64>(&raw, &ColumnSelection::new(axes.clone()), MissingPolicy::Reject)
        .unwrap()
        .cloud;
    let (z, _) = standardize(&cloud, &axes).unwrap();
    let cover = build_cover(&z, 1.5, LandmarkOrder::Data).unwrap();
    (raw, z, cover)
}

/// Two-column cloud of the X dataset's coordinates.
pub fn x_coordinates(x: &PointCloud64) -> PointCloud64 {
    let rows: Vec<Vec<f64>> = x.points().map(|p| p[..2].to_vec()).collect();
    PointCloud::from_rows(strings(&["x1", "x2"]), &rows).unwrap()
}
