//! Ball Mapper: cover a point cloud with ε-balls, connect overlapping balls,
//! color them by the mean of an outcome, and summarise what each ball holds.
//!
//! The numeric core is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! at the crate root fix the common choices.

// `!(x > 0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cover;
pub mod datagen;
pub mod error;
pub mod graph;
pub mod layout;
pub mod pipeline;
pub mod point_cloud;
pub mod render;
pub mod scalar;
pub mod stats;
pub mod summary;
pub mod vptree;

pub use cover::{
    ball_sizes, build_cover, build_cover_with, membership_matrix, BallCover, BallSizes,
    LandmarkOrder, SearchStrategy,
};
pub use datagen::{gen_gaussian_cloud, gen_x_dataset, XDatasetSpec};
pub use error::{Error, Result};
pub use graph::{
    assign_bins, build_graph, connected_components, default_palette, ColorScale, Edge,
    MapperGraph, Node, Rgb, DEFAULT_BIN_COUNT,
};
pub use layout::{compute_layout, LayoutParams, LayoutPositions};
pub use pipeline::{
    cmd_ball_summary, cmd_describe, cmd_gen, cmd_variable_summary, run, run_table, Dataset,
    GenConfig, RunConfig, RunOutput,
};
pub use point_cloud::{
    correlation_matrix, describe, euclidean_distance, load_csv, standardize, validate_axes,
    ColumnSelection, CorrelationMatrix, MissingPolicy, PointCloud, RawTable,
    StandardizationSpec, SummaryTable,
};
pub use render::{render_boxplot_svg, render_graph_svg, BoxStats, RenderOptions};
pub use scalar::Scalar;
pub use summary::{
    ball_summary, quantile, variable_summary, BallDistributionTable, BallIndex, BallMeansTable,
};

pub type PointCloud64 = PointCloud<f64>;
pub type PointCloud32 = PointCloud<f32>;
pub type BallCover64 = BallCover<f64>;
pub type BallCover32 = BallCover<f32>;
pub type MapperGraph64 = MapperGraph<f64>;
pub type MapperGraph32 = MapperGraph<f32>;
pub type ColorScale64 = ColorScale<f64>;
pub type ColorScale32 = ColorScale<f32>;
pub type BallMeansTable64 = BallMeansTable<f64>;
pub type BallDistributionTable64 = BallDistributionTable<f64>;
