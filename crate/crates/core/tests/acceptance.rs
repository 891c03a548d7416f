//! Acceptance run: one line per criterion.
//!
//! The process exits non-zero when any criterion fails, except for failures
//! listed in `KNOWN_FAILURES`. A listed criterion must fail in exactly the
//! recorded way; if it passes or fails differently the run exits non-zero
//! so the record gets revisited.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ballmapper::cover::{build_cover_with, SearchStrategy};
use ballmapper::point_cloud::RawTable;
use ballmapper::summary::BallIndex;
use ballmapper::*;
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

const C1_TIME_LIMIT: Duration = Duration::from_secs(1);
const C2_SD_TOLERANCE: f64 = 0.1;
const C3_TIME_LIMIT: Duration = Duration::from_secs(10);
const C3_INSTANCES: u64 = 100;
const C3_MAX_N: usize = 200;
const C3_MAX_K: usize = 5;
const C4_TIME_LIMIT: Duration = Duration::from_secs(5);
const C4_SEED: u64 = 1;
const C4_SD_BAND: (f64, f64) = (4.35, 4.85);
const C4_MAX_ABS_CORRELATION: f64 = 0.05;
const C5_TIME_LIMIT: Duration = Duration::from_secs(2);
const C5_SEED: u64 = 1;
const C5_BALL_RANGE: (usize, usize) = (15, 30);
const C5_MIN_LARGEST_SHARE: f64 = 0.80;
const C8_TARGET: f64 = -0.8072;
const C8_TOLERANCE: f64 = 1e-4;

/// Criterion 1 cannot pass at the stated tolerance: the 17 members of ball 4
/// have weights summing to 55800 (mean 3282.35) while the table prints 3283.
/// Every other cell of the table, and every ball size, matches.
const KNOWN_FAILURES: &[(u32, &str)] = &[(1, "ball 4 weight 3282.35 vs 3283")];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn auto_cover_and_index() -> (RawTable, PointCloud64, BallCover64, BallIndex) {
    let (raw, cloud, cover) = auto_cover();
    let index = BallIndex::from_cover(&cover, cloud.row_ids());
    (raw, cloud, cover, index)
}

fn criterion_1() -> Outcome {
    let ((sizes, means), elapsed) = timed(|| {
        let (raw, _, cover, index) = auto_cover_and_index();
        let means = ball_summary::<f64>(&index, &raw, &strings(&MEANS_VARIABLES)).unwrap();
        (ball_sizes(&cover), means)
    });
    let mut problems = Vec::new();
    if sizes.as_slice() != AUTO_SIZES {
        problems.push(format!("sizes {:?}", sizes.as_slice()));
    }
    for (row, printed) in means.rows.iter().zip(table_rows(AUTO_MEANS)) {
        for (j, var) in MEANS_VARIABLES.iter().enumerate() {
            if !matches_print(row.means[j], printed[j + 1]) {
                problems.push(format!(
                    "ball {} {var} {:.2} vs {}",
                    row.ball,
                    row.means[j],
                    printed[j + 1]
                ));
            }
        }
    }
    if elapsed >= C1_TIME_LIMIT {
        problems.push(format!("took {elapsed:?}"));
    }
    let detail = if problems.is_empty() {
        format!("19 balls, sizes and all 171 means match ({elapsed:?})")
    } else {
        problems.join("; ")
    };
    Outcome::new(problems.is_empty(), detail)
}

fn criterion_2() -> Outcome {
    let (raw, _, _, index) = auto_cover_and_index();
    let dist = variable_summary::<f64>(&index, &raw, "price").unwrap();
    let b1 = dist.row(1).unwrap();
    let sd = b1.sd.unwrap_or(f64::NAN);
    let checks = [
        ("mean", b1.mean == 5725.25 && format!("{:.0}", b1.mean) == "5725"),
        ("sd", (sd - 1946.6).abs() <= C2_SD_TOLERANCE),
        ("min", b1.min == 4099.0),
        ("q25", b1.q25 == 4143.0),
        ("q50", b1.q50 == 5336.5),
        ("q75", b1.q75 == 7307.5),
        ("max", b1.max == 8129.0),
        ("ball 9 sd empty", dist.row(9).unwrap().sd.is_none()),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    let mut csv = Vec::new();
    dist.write_csv(&mut csv).unwrap();
    let csv = String::from_utf8(csv).unwrap();
    let ball9_empty = csv.lines().any(|l| l == "9,4504,,4504,4504,4504,4504,4504,1");
    let pass = failed.is_empty() && ball9_empty;
    Outcome::new(
        pass,
        format!(
            "ball 1: mean {} sd {sd:.4} q {}/{}/{}; ball 9 row written with empty sd: {ball9_empty}{}",
            b1.mean,
            b1.q25,
            b1.q50,
            b1.q75,
            if failed.is_empty() {
                String::new()
            } else {
                format!("; failed {failed:?}")
            }
        ),
    )
}

fn oracle_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// One random instance. ε is a multiple of 1/8 and point 1 sits exactly ε
/// from point 0 along the first axis, with point 0 on a quarter lattice, so
/// the boundary distance is computed without rounding.
fn random_instance(seed: u64) -> (PointCloud64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=C3_MAX_N);
    let k = rng.gen_range(1..=C3_MAX_K);
    let eps = rng.gen_range(2..=16) as f64 / 8.0;
    let lattice = seed.is_multiple_of(2);
    let mut rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            (0..k)
                .map(|_| {
                    if lattice {
                        rng.gen_range(-12..=12) as f64 / 4.0
                    } else {
                        rng.gen_range(-3.0..3.0)
                    }
                })
                .collect()
        })
        .collect();
    rows[0] = (0..k).map(|_| rng.gen_range(-12..=12) as f64 / 4.0).collect();
    rows[1] = rows[0].clone();
    rows[1][0] += eps;
    let names = (1..=k).map(|j| format!("x{j}")).collect();
    (PointCloud::from_rows(names, &rows).unwrap(), eps)
}

fn criterion_3() -> Outcome {
    let (problems, elapsed) = timed(|| {
        let mut problems = Vec::new();
        let mut boundary_ties = 0usize;
        for seed in 0..C3_INSTANCES {
            let (cloud, eps) = random_instance(seed);
            let cover = build_cover(&cloud, eps, LandmarkOrder::Data).unwrap();
            let mut covered = vec![false; cloud.len()];
            for (ball, members) in cover.balls() {
                let centre = cloud.point(cover.landmarks()[ball - 1]);
                let oracle: Vec<usize> = (0..cloud.len())
                    .filter(|&i| oracle_distance(centre, cloud.point(i)) <= eps)
                    .collect();
                boundary_ties += oracle
                    .iter()
                    .filter(|&&i| oracle_distance(centre, cloud.point(i)) == eps)
                    .count();
                if members != oracle.as_slice() {
                    problems.push(format!("seed {seed}: ball {ball} differs from oracle"));
                }
                for &m in members {
                    covered[m] = true;
                }
            }
            if !covered.iter().all(|&c| c) {
                problems.push(format!("seed {seed}: uncovered point"));
            }
            let l = cover.landmarks();
            for i in 0..l.len() {
                for j in i + 1..l.len() {
                    if oracle_distance(cloud.point(l[i]), cloud.point(l[j])) <= eps {
                        problems.push(format!("seed {seed}: landmarks {} and {} within ε", l[i], l[j]));
                    }
                }
            }
            if !cover.members(1).contains(&1) {
                problems.push(format!("seed {seed}: point at exactly ε left out"));
            }
            let tree = build_cover_with(&cloud, eps, LandmarkOrder::Data, SearchStrategy::VpTree)
                .unwrap();
            if tree != cover {
                problems.push(format!("seed {seed}: vp-tree cover differs"));
            }
        }
        (problems, boundary_ties)
    });
    let (mut problems, ties) = problems;
    if elapsed >= C3_TIME_LIMIT {
        problems.push(format!("took {elapsed:?}"));
    }
    let pass = problems.is_empty();
    let detail = if pass {
        format!("{C3_INSTANCES} instances, {ties} members at exactly ε, all exact ({elapsed:?})")
    } else {
        problems.into_iter().take(5).collect::<Vec<_>>().join("; ")
    };
    Outcome::new(pass, detail)
}

fn criterion_4() -> Outcome {
    let (outcome, elapsed) = timed(|| {
        let x = gen_x_dataset(&XDatasetSpec::with_seed(C4_SEED)).unwrap();
        let xy = x_coordinates(&x);
        let names = strings(&["x1", "x2"]);
        let table = describe(&xy, &names).unwrap();
        let sds: Vec<f64> = table.rows.iter().map(|r| r.sd.unwrap()).collect();
        let rho = correlation_matrix(&xy, &names).unwrap().values[0][1];
        let counts: Vec<usize> = [0.8, 1.2, 2.0]
            .iter()
            .map(|&e| build_cover(&xy, e, LandmarkOrder::Data).unwrap().n_balls())
            .collect();

        let y5 = x.column(6);
        let cover = build_cover(&xy, 1.2, LandmarkOrder::Data).unwrap();
        let graph = build_graph(&cover, Some(&y5)).unwrap();
        let means = graph.color_means().unwrap();
        let in_range = means.iter().all(|m| (0.0..=1.0).contains(m));
        let pure: Vec<usize> = cover
            .balls()
            .filter(|(_, members)| members.iter().all(|&m| y5[m] == 1.0))
            .map(|(id, _)| id)
            .collect();
        let pure_exact = pure.iter().all(|&b| means[b - 1] == 1.0);

        let sd_ok = sds.iter().all(|&s| s >= C4_SD_BAND.0 && s <= C4_SD_BAND.1);
        let rho_ok = rho.abs() < C4_MAX_ABS_CORRELATION;
        let decreasing = counts.windows(2).all(|w| w[0] > w[1]);
        let pass = sd_ok && rho_ok && decreasing && in_range && pure_exact;
        (
            pass,
            format!(
                "sd {:.3}/{:.3}, rho {rho:.4}, balls {counts:?}, y5 means in [0,1]: {in_range}, {} all-ones balls at mean 1: {pure_exact}",
                sds[0],
                sds[1],
                pure.len()
            ),
        )
    });
    let (pass, detail) = outcome;
    let fast = elapsed < C4_TIME_LIMIT;
    Outcome::new(pass && fast, format!("{detail} ({elapsed:?})"))
}

fn criterion_5() -> Outcome {
    let ((balls, share, comps), elapsed) = timed(|| {
        let cloud = gen_gaussian_cloud(1000, 2, C5_SEED).unwrap();
        let cover = build_cover(&cloud, 1.0, LandmarkOrder::Data).unwrap();
        let graph = build_graph(&cover, None).unwrap();
        let comps = connected_components(&graph);
        let largest = comps
            .iter()
            .map(|c| {
                c.iter()
                    .flat_map(|&b| cover.members(b).iter().copied())
                    .collect::<BTreeSet<usize>>()
                    .len()
            })
            .max()
            .unwrap();
        (cover.n_balls(), largest as f64 / cloud.len() as f64, comps.len())
    });
    let pass = (C5_BALL_RANGE.0..=C5_BALL_RANGE.1).contains(&balls)
        && share >= C5_MIN_LARGEST_SHARE
        && elapsed < C5_TIME_LIMIT;
    Outcome::new(
        pass,
        format!("L = {balls}, {comps} components, largest holds {:.1}% of points ({elapsed:?})", share * 100.0),
    )
}

fn file_hashes(paths: &[&Path]) -> Vec<Vec<u8>> {
    paths
        .iter()
        .map(|p| Sha256::digest(std::fs::read(p).unwrap()).to_vec())
        .collect()
}

/// Writes the fixtures used by criteria 6 and 7 and returns run configs.
fn fixture_configs(dir: &Path) -> Vec<(&'static str, RunConfig)> {
    let x_path = dir.join("x.csv");
    let mut buf = Vec::new();
    gen_x_dataset(&XDatasetSpec::with_seed(C4_SEED))
        .unwrap()
        .write_csv(&mut buf)
        .unwrap();
    std::fs::write(&x_path, buf).unwrap();
    let g_path = dir.join("gauss.csv");
    let mut buf = Vec::new();
    gen_gaussian_cloud(1000, 2, C5_SEED).unwrap().write_csv(&mut buf).unwrap();
    std::fs::write(&g_path, buf).unwrap();
    let toy_path = dir.join("toy.csv");
    std::fs::write(&toy_path, "x,y\n0,2\n1,4\n2,6\n").unwrap();

    let mut auto = RunConfig::new(auto_path(), strings(&AUTO_AXES), 1.5);
    auto.standardize = true;
    auto.color = Some("price".into());
    auto.labels = true;
    let mut x = RunConfig::new(x_path, strings(&["x1", "x2"]), 1.2);
    x.color = Some("y1".into());
    let mut gauss = RunConfig::new(g_path, strings(&["x1", "x2"]), 1.0);
    gauss.color = Some("x1".into());
    let mut toy = RunConfig::new(toy_path, strings(&["x"]), 1.0);
    toy.color = Some("y".into());
    vec![("auto", auto), ("x", x), ("gauss", gauss), ("toy", toy)]
}

fn with_outputs(mut config: RunConfig, dir: &Path, tag: &str) -> RunConfig {
    config.svg = dir.join(format!("{tag}.svg"));
    config.results = dir.join(format!("{tag}_results.csv"));
    config.merged = dir.join(format!("{tag}_merged.csv"));
    config
}

fn criterion_6() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut differing = Vec::new();
    for (name, config) in fixture_configs(dir.path()) {
        let mut hashes = Vec::new();
        for round in 0..2 {
            let c = with_outputs(config.clone(), dir.path(), &format!("{name}{round}"));
            run::<f64>(&c).unwrap();
            hashes.push(file_hashes(&[&c.svg, &c.results, &c.merged]));
        }
        if hashes[0] != hashes[1] {
            differing.push(name);
        }
    }
    Outcome::new(
        differing.is_empty(),
        if differing.is_empty() {
            "SVG, results and merged hashes identical across two runs on auto, x, gauss, toy".into()
        } else {
            format!("outputs differ for {differing:?}")
        },
    )
}

fn criterion_7() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, config) in fixture_configs(dir.path()) {
        let c = with_outputs(config, dir.path(), name);
        let out = run::<f64>(&c).unwrap();
        let results = load_csv(&c.results, b',').unwrap();
        let merged = load_csv(&c.merged, b',').unwrap();
        let size_sum: usize = (0..results.n_rows())
            .filter(|&r| results.cell(r, 0) == "node")
            .map(|r| results.cell(r, 4).parse::<usize>().unwrap())
            .sum();
        pass &= size_sum == merged.n_rows();
        if name == "auto" {
            pass &= size_sum == 101 && out.cloud.len() == 74;
        }
        parts.push(format!("{name} {size_sum}={} (N={})", merged.n_rows(), out.cloud.len()));
    }
    Outcome::new(pass, parts.join(", "))
}

fn criterion_8() -> Outcome {
    let (_, corr) = cmd_describe::<f64>(&auto_path(), &strings(&["mpg", "weight"]), b',').unwrap();
    let r = corr.get("mpg", "weight").unwrap();
    Outcome::new((r - C8_TARGET).abs() <= C8_TOLERANCE, format!("r(mpg, weight) = {r:.6}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "auto cover and ball means", criterion_1),
        (2, "quantile convention", criterion_2),
        (3, "cover correctness", criterion_3),
        (4, "X dataset structure", criterion_4),
        (5, "gaussian intuition", criterion_5),
        (6, "determinism", criterion_6),
        (7, "size and merged consistency", criterion_7),
        (8, "correlation matrix", criterion_8),
    ];
    let mut ok = true;
    for (id, name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome::new(false, format!("panicked: {msg}"))
        });
        let known = KNOWN_FAILURES.iter().find(|k| k.0 == id);
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        let note = match known {
            Some(k) if !outcome.pass && outcome.detail == k.1 => " [known, recorded]",
            _ => "",
        };
        println!("criterion {id} {status}{note}: {name}: {}", outcome.detail);
        ok &= match known {
            Some(k) => !outcome.pass && outcome.detail == k.1,
            None => outcome.pass,
        };
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
