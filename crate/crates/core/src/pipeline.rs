//! End-to-end commands: load, validate, optionally standardize, cover, build
//! the graph, lay it out, render, and write the results and merged tables.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::cover::{build_cover_with, BallCover, LandmarkOrder, SearchStrategy};
use crate::datagen::{gen_gaussian_cloud, gen_x_dataset, XDatasetSpec};
use crate::error::{Error, Result};
use crate::graph::{assign_bins, build_graph, ColorScale, MapperGraph, DEFAULT_BIN_COUNT};
use crate::layout::{compute_layout, LayoutParams, LayoutPositions};
use crate::point_cloud::{
    correlation_matrix, csv_write_error, csv_writer, describe, load_csv, standardize,
    validate_axes, ColumnSelection, CorrelationMatrix, MissingPolicy, PointCloud, RawTable,
    StandardizationSpec, SummaryTable,
};
use crate::render::{render_boxplot_svg, render_graph_svg, BoxStats, RenderOptions};
use crate::scalar::Scalar;
use crate::summary::{
    ball_summary, variable_summary, BallDistributionTable, BallIndex, BallMeansTable, BALL_COLUMN,
};

pub const RESULTS_HEADER: [&str; 12] = [
    "type", "ball", "x", "y", "size", "color_mean", "color_bin", "source", "target", "x2", "y2",
    "shared",
];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub delimiter: u8,
    pub axes: Vec<String>,
    pub color: Option<String>,
    pub epsilon: f64,
    pub layout: LayoutParams,
    pub labels: bool,
    pub standardize: bool,
    pub id_column: Option<String>,
    pub order: LandmarkOrder,
    pub search: SearchStrategy,
    pub bins: usize,
    pub missing: MissingPolicy,
    pub svg: PathBuf,
    pub results: PathBuf,
    pub merged: PathBuf,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, axes: Vec<String>, epsilon: f64) -> Self {
        RunConfig {
            input: input.into(),
            delimiter: b',',
            axes,
            color: None,
            epsilon,
            layout: LayoutParams::default(),
            labels: false,
            standardize: false,
            id_column: None,
            order: LandmarkOrder::Data,
            search: SearchStrategy::Naive,
            bins: DEFAULT_BIN_COUNT,
            missing: MissingPolicy::Reject,
            svg: "bm_graph.svg".into(),
            results: "bm_results.csv".into(),
            merged: "bm_merged.csv".into(),
        }
    }
}

/// In-memory outcome of a run, before anything touches the filesystem.
#[derive(Debug, Clone)]
pub struct RunOutput<T> {
    pub cloud: PointCloud<T>,
    pub standardization: Option<StandardizationSpec<T>>,
    pub dropped: Vec<usize>,
    pub cover: BallCover<T>,
    pub graph: MapperGraph<T>,
    pub scale: Option<ColorScale<T>>,
    pub positions: LayoutPositions,
    pub svg: String,
    pub results_csv: Vec<u8>,
    pub merged_csv: Vec<u8>,
}

impl<T: Scalar> RunOutput<T> {
    pub fn n_balls(&self) -> usize {
        self.cover.n_balls()
    }
}

/// Runs the pipeline on an already loaded table.
pub fn run_table<T: Scalar>(raw: &RawTable, config: &RunConfig) -> Result<RunOutput<T>> {
    if let Some(h) = raw.headers().iter().find(|h| h.as_str() == BALL_COLUMN) {
        return Err(Error::ReservedColumn(h.clone()));
    }
    let epsilon = T::from_f64(config.epsilon).ok_or(Error::NonPositiveEpsilon)?;
    if !(epsilon > T::zero()) || !epsilon.is_finite() {
        return Err(Error::NonPositiveEpsilon);
    }
    if let Some(id) = &config.id_column {
        check_id_column(raw, id, &config.axes)?;
    }
    let mut selection = ColumnSelection::new(config.axes.iter().cloned());
    if let Some(c) = &config.color {
        selection = selection.with_color(c.clone());
    }
    let validated = validate_axes::<T>(raw, &selection, config.missing)?;
    let (cloud, standardization) = if config.standardize {
        let (cloud, spec) = standardize(&validated.cloud, &config.axes)?;
        (cloud, Some(spec))
    } else {
        (validated.cloud, None)
    };

    let cover = build_cover_with(&cloud, epsilon, config.order, config.search)?;
    // color uses the raw values, never the standardized ones
    let color_values = config
        .color
        .as_deref()
        .map(|c| raw.numeric_column::<T>(c, cloud.row_ids()))
        .transpose()?;
    let graph = build_graph(&cover, color_values.as_deref())?;
    let (scale, graph) = if color_values.is_some() {
        let (scale, graph) = assign_bins(&graph, config.bins, None)?;
        (Some(scale), graph)
    } else {
        (None, graph)
    };
    let positions = compute_layout(&graph, &config.layout);
    let options = RenderOptions {
        show_labels: config.labels,
        title: config.color.clone(),
        ..Default::default()
    };
    let svg = render_graph_svg(&graph, &positions, scale.as_ref(), &options)?;

    let mut results_csv = Vec::new();
    write_results(&mut results_csv, &graph, &positions)?;
    let mut merged_csv = Vec::new();
    write_merged(&mut merged_csv, raw, &BallIndex::from_cover(&cover, cloud.row_ids()))?;

    Ok(RunOutput {
        cloud,
        standardization,
        dropped: validated.dropped,
        cover,
        graph,
        scale,
        positions,
        svg,
        results_csv,
        merged_csv,
    })
}

/// Loads `config.input`, runs the pipeline and writes the three outputs.
pub fn run<T: Scalar>(config: &RunConfig) -> Result<RunOutput<T>> {
    let raw = load_csv(&config.input, config.delimiter)?;
    let out = run_table(&raw, config)?;
    write_file(&config.svg, out.svg.as_bytes())?;
    write_file(&config.results, &out.results_csv)?;
    write_file(&config.merged, &out.merged_csv)?;
    Ok(out)
}

fn check_id_column(raw: &RawTable, id: &str, axes: &[String]) -> Result<()> {
    let col = raw.column_index(id)?;
    if axes.iter().any(|a| a == id) {
        return Err(Error::InvalidParameter(format!(
            "id column `{id}` cannot also be an axis"
        )));
    }
    let mut seen = std::collections::HashSet::new();
    for row in 0..raw.n_rows() {
        let v = raw.cell(row, col).trim();
        if v.is_empty() {
            return Err(Error::MissingValue {
                row,
                column: id.to_owned(),
            });
        }
        if !seen.insert(v) {
            return Err(Error::InvalidParameter(format!(
                "id column `{id}` repeats value `{v}` at row {row}"
            )));
        }
    }
    Ok(())
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Node rows in ball order, then edge rows in `(source, target)` order.
pub fn write_results<T: Scalar, W: Write>(
    writer: W,
    graph: &MapperGraph<T>,
    positions: &LayoutPositions,
) -> Result<()> {
    let mut w = csv_writer(writer);
    w.write_record(RESULTS_HEADER).map_err(csv_write_error)?;
    let opt = |v: Option<String>| v.unwrap_or_default();
    for node in graph.nodes() {
        let p = positions.get(node.id);
        w.write_record([
            "node".to_owned(),
            node.id.to_string(),
            p[0].to_string(),
            p[1].to_string(),
            node.size.to_string(),
            opt(node.color_mean.map(|m| m.to_string())),
            opt(node.color_bin.map(|b| b.to_string())),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
        ])
        .map_err(csv_write_error)?;
    }
    for e in graph.edges() {
        let a = positions.get(e.source);
        let b = positions.get(e.target);
        w.write_record([
            "edge".to_owned(),
            String::new(),
            a[0].to_string(),
            a[1].to_string(),
            String::new(),
            String::new(),
            String::new(),
            e.source.to_string(),
            e.target.to_string(),
            b[0].to_string(),
            b[1].to_string(),
            e.shared.to_string(),
        ])
        .map_err(csv_write_error)?;
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))
}

/// One row per (point, ball) pair: the original cells followed by the ball
/// id, ordered by ball then by input row.
pub fn write_merged<W: Write>(writer: W, raw: &RawTable, index: &BallIndex) -> Result<()> {
    let mut w = csv_writer(writer);
    let mut header: Vec<&str> = raw.headers().iter().map(String::as_str).collect();
    header.push(BALL_COLUMN);
    w.write_record(&header).map_err(csv_write_error)?;
    for (ball, rows) in &index.balls {
        let id = ball.to_string();
        for &r in rows {
            w.write_record(raw.rows()[r].iter().map(String::as_str).chain([id.as_str()]))
                .map_err(csv_write_error)?;
        }
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))
}

/// Per-ball means of `variables` from a merged CSV.
pub fn cmd_ball_summary<T: Scalar>(
    merged: &Path,
    variables: &[String],
    out: Option<&Path>,
    delimiter: u8,
) -> Result<BallMeansTable<T>> {
    let table = load_csv(merged, delimiter)?;
    let index = BallIndex::from_merged(&table)?;
    let means = ball_summary::<T>(&index, &table, variables)?;
    if let Some(path) = out {
        let mut buf = Vec::new();
        means.write_csv(&mut buf)?;
        write_file(path, &buf)?;
    }
    Ok(means)
}

/// Distribution of `variable` per ball from a merged CSV, with an optional
/// boxplot.
pub fn cmd_variable_summary<T: Scalar>(
    merged: &Path,
    variable: &str,
    out: Option<&Path>,
    boxplot: Option<&Path>,
    delimiter: u8,
) -> Result<BallDistributionTable<T>> {
    let table = load_csv(merged, delimiter)?;
    let index = BallIndex::from_merged(&table)?;
    let dist = variable_summary::<T>(&index, &table, variable)?;
    if let Some(path) = out {
        let mut buf = Vec::new();
        dist.write_csv(&mut buf)?;
        write_file(path, &buf)?;
    }
    if let Some(path) = boxplot {
        let stats: Vec<BoxStats> = dist.rows.iter().map(BoxStats::from).collect();
        let options = RenderOptions {
            title: Some(variable.to_owned()),
            ..Default::default()
        };
        write_file(path, render_boxplot_svg(&stats, &options)?.as_bytes())?;
    }
    Ok(dist)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dataset {
    Gauss,
    X,
}

impl FromStr for Dataset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gauss" => Ok(Dataset::Gauss),
            "x" => Ok(Dataset::X),
            other => Err(Error::UnknownDataset(other.to_owned())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub dataset: Dataset,
    pub seed: u64,
    /// Point count for `gauss`.
    pub n: usize,
    /// Dimension for `gauss`.
    pub k: usize,
    pub out: PathBuf,
}

pub fn cmd_gen(config: &GenConfig) -> Result<PointCloud<f64>> {
    let cloud = match config.dataset {
        Dataset::Gauss => gen_gaussian_cloud(config.n, config.k, config.seed)?,
        Dataset::X => gen_x_dataset(&XDatasetSpec::with_seed(config.seed))?,
    };
    let mut buf = Vec::new();
    cloud.write_csv(&mut buf)?;
    write_file(&config.out, &buf)?;
    Ok(cloud)
}

/// Describe table and correlation matrix of the named numeric columns.
pub fn cmd_describe<T: Scalar>(
    input: &Path,
    columns: &[String],
    delimiter: u8,
) -> Result<(SummaryTable<T>, CorrelationMatrix<T>)> {
    let raw = load_csv(input, delimiter)?;
    let cloud = validate_axes::<T>(
        &raw,
        &ColumnSelection::new(columns.iter().cloned()),
        MissingPolicy::Reject,
    )?
    .cloud;
    Ok((describe(&cloud, columns)?, correlation_matrix(&cloud, columns)?))
}
