//! Per-ball summaries: means of many variables, or the full distribution of one.
//!
//! Summaries work on a [`BallIndex`], which maps ball ids to rows of a raw
//! table. It can come from a fresh cover or from a merged CSV written by an
//! earlier run. A point that sits in several balls counts in each of them.

use std::collections::BTreeMap;
use std::io::Write;

use crate::cover::BallCover;
use crate::error::{Error, Result};
use crate::point_cloud::{csv_write_error, csv_writer, RawTable};
use crate::scalar::Scalar;
use crate::stats;

/// Name of the ball id column in merged tables.
pub const BALL_COLUMN: &str = "ball";

/// Percentile of an ascending slice, `p` in (0, 100).
///
/// With `h = n * p / 100`: when `h` is a whole number the result is the mean
/// of the `h`-th and `(h+1)`-th order statistics, otherwise the `ceil(h)`-th.
pub fn quantile<T: Scalar>(sorted: &[T], p: f64) -> Result<T> {
    if sorted.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !(p > 0.0 && p < 100.0) {
        return Err(Error::InvalidPercentile(p));
    }
    let n = sorted.len();
    let h = n as f64 * p / 100.0;
    if h.fract() == 0.0 {
        let h = h as usize;
        let two = T::one() + T::one();
        Ok((sorted[h - 1] + sorted[h]) / two)
    } else {
        Ok(sorted[(h.ceil() as usize).min(n) - 1])
    }
}

/// Ball ids with the raw-table rows each ball holds, ascending by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallIndex {
    pub balls: Vec<(usize, Vec<usize>)>,
}

impl BallIndex {
    /// `row_ids` maps cloud indices back to raw-table rows.
    pub fn from_cover<T: Scalar>(cover: &BallCover<T>, row_ids: &[usize]) -> Self {
        let balls = cover
            .balls()
            .map(|(id, members)| (id, members.iter().map(|&m| row_ids[m]).collect()))
            .collect();
        BallIndex { balls }
    }

    /// Groups the rows of a merged table by its `ball` column.
    pub fn from_merged(merged: &RawTable) -> Result<Self> {
        let col = merged
            .column_index(BALL_COLUMN)
            .map_err(|_| Error::MissingBallColumn)?;
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for row in 0..merged.n_rows() {
            let cell = merged.cell(row, col).trim();
            let id = cell
                .parse::<usize>()
                .ok()
                .filter(|&id| id > 0)
                .ok_or_else(|| Error::InvalidBallId {
                    row,
                    value: cell.to_owned(),
                })?;
            groups.entry(id).or_default().push(row);
        }
        Ok(BallIndex {
            balls: groups.into_iter().collect(),
        })
    }

    pub fn n_balls(&self) -> usize {
        self.balls.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.balls.iter().map(|(_, rows)| rows.len()).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BallMeansRow<T> {
    pub ball: usize,
    pub means: Vec<T>,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BallMeansTable<T> {
    pub variables: Vec<String>,
    pub rows: Vec<BallMeansRow<T>>,
}

impl<T: Scalar> BallMeansTable<T> {
    pub fn mean(&self, ball: usize, variable: &str) -> Option<T> {
        let j = self.variables.iter().position(|v| v == variable)?;
        let row = self.rows.iter().find(|r| r.ball == ball)?;
        Some(row.means[j])
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv_writer(writer);
        let header = std::iter::once(BALL_COLUMN.to_owned())
            .chain(self.variables.iter().cloned())
            .chain(std::iter::once("size".to_owned()));
        w.write_record(header).map_err(csv_write_error)?;
        for r in &self.rows {
            let record = std::iter::once(r.ball.to_string())
                .chain(r.means.iter().map(|m| m.to_string()))
                .chain(std::iter::once(r.size.to_string()));
            w.write_record(record).map_err(csv_write_error)?;
        }
        w.flush().map_err(|e| Error::Csv(e.to_string()))
    }
}

/// Mean of each variable within each ball.
pub fn ball_summary<T: Scalar>(
    index: &BallIndex,
    table: &RawTable,
    variables: &[String],
) -> Result<BallMeansTable<T>> {
    for v in variables {
        table.column_index(v)?;
    }
    let columns = variables
        .iter()
        .map(|v| parse_sparse::<T>(table, v, index))
        .collect::<Result<Vec<_>>>()?;
    let rows = index
        .balls
        .iter()
        .map(|(ball, rows)| {
            let means = columns
                .iter()
                .map(|col| stats::mean(&ball_values(col, rows)).ok_or(Error::EmptyInput))
                .collect::<Result<Vec<_>>>()?;
            Ok(BallMeansRow {
                ball: *ball,
                means,
                size: rows.len(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BallMeansTable {
        variables: variables.to_vec(),
        rows,
    })
}

/// Values of one column for the rows some ball uses, looked up by row id.
/// Rows outside every ball are never parsed.
struct SparseColumn<T> {
    rows: Vec<usize>,
    values: Vec<T>,
}

impl<T: Scalar> SparseColumn<T> {
    fn get(&self, row: usize) -> T {
        self.values[self.rows.binary_search(&row).expect("row parsed")]
    }
}

fn parse_sparse<T: Scalar>(table: &RawTable, variable: &str, index: &BallIndex) -> Result<SparseColumn<T>> {
    let mut rows: Vec<usize> = index
        .balls
        .iter()
        .flat_map(|(_, r)| r.iter().copied())
        .collect();
    rows.sort_unstable();
    rows.dedup();
    let values = table.numeric_column(variable, &rows)?;
    Ok(SparseColumn { rows, values })
}

fn ball_values<T: Scalar>(column: &SparseColumn<T>, rows: &[usize]) -> Vec<T> {
    rows.iter().map(|&r| column.get(r)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionRow<T> {
    pub ball: usize,
    pub mean: T,
    /// `None` when the ball holds a single point.
    pub sd: Option<T>,
    pub min: T,
    pub q25: T,
    pub q50: T,
    pub q75: T,
    pub max: T,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BallDistributionTable<T> {
    pub variable: String,
    pub rows: Vec<DistributionRow<T>>,
}

impl<T: Scalar> BallDistributionTable<T> {
    pub fn row(&self, ball: usize) -> Option<&DistributionRow<T>> {
        self.rows.iter().find(|r| r.ball == ball)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv_writer(writer);
        w.write_record([
            BALL_COLUMN, "mean", "sd", "min", "q25", "q50", "q75", "max", "size",
        ])
        .map_err(csv_write_error)?;
        for r in &self.rows {
            w.write_record([
                r.ball.to_string(),
                r.mean.to_string(),
                r.sd.map(|v| v.to_string()).unwrap_or_default(),
                r.min.to_string(),
                r.q25.to_string(),
                r.q50.to_string(),
                r.q75.to_string(),
                r.max.to_string(),
                r.size.to_string(),
            ])
            .map_err(csv_write_error)?;
        }
        w.flush().map_err(|e| Error::Csv(e.to_string()))
    }
}

/// Mean, sample sd, min, quartiles and max of one variable within each ball.
pub fn variable_summary<T: Scalar>(
    index: &BallIndex,
    table: &RawTable,
    variable: &str,
) -> Result<BallDistributionTable<T>> {
    let column = parse_sparse::<T>(table, variable, index)?;
    let rows = index
        .balls
        .iter()
        .map(|(ball, rows)| {
            let values = ball_values(&column, rows);
            let mut sorted = values.clone();
            sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
            Ok(DistributionRow {
                ball: *ball,
                mean: stats::mean(&values).ok_or(Error::EmptyInput)?,
                sd: stats::sample_sd(&values),
                min: sorted[0],
                q25: quantile(&sorted, 25.0)?,
                q50: quantile(&sorted, 50.0)?,
                q75: quantile(&sorted, 75.0)?,
                max: sorted[sorted.len() - 1],
                size: rows.len(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BallDistributionTable {
        variable: variable.to_owned(),
        rows,
    })
}
