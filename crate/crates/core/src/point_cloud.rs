//! Tabular input, validation into a numeric point cloud, and the column-level
//! transforms applied before covering (standardization, description, correlation).

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::stats;

/// A CSV file as read: header plus text cells, in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTable {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl RawTable {
    pub fn new(headers: Vec<String>, rows: Vec<Vec<String>>) -> Result<Self> {
        check_headers(&headers)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != headers.len() {
                return Err(Error::RaggedRow {
                    line: i as u64 + 2,
                    expected: headers.len(),
                    found: row.len(),
                });
            }
        }
        Ok(RawTable { headers, rows })
    }

    pub fn from_reader<R: Read>(reader: R, delimiter: u8) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .delimiter(delimiter)
            .has_headers(true)
            .flexible(false)
            .from_reader(reader);
        let mut headers: Vec<String> = rdr
            .headers()
            .map_err(csv_error)?
            .iter()
            .map(str::to_owned)
            .collect();
        if headers.is_empty() {
            return Err(Error::MissingHeader);
        }
        if let Some(first) = headers.first_mut() {
            if let Some(stripped) = first.strip_prefix('\u{feff}') {
                *first = stripped.to_owned();
            }
        }
        check_headers(&headers)?;
        let mut rows = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(csv_error)?;
            rows.push(record.iter().map(str::to_owned).collect());
        }
        Ok(RawTable { headers, rows })
    }

    pub fn headers(&self) -> &[String] {
        &self.headers
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::UnknownColumn(name.to_owned()))
    }

    pub fn cell(&self, row: usize, col: usize) -> &str {
        &self.rows[row][col]
    }

    /// Parses one column for the given rows. Every cell must be a finite number.
    pub fn numeric_column<T: Scalar>(&self, name: &str, rows: &[usize]) -> Result<Vec<T>> {
        let col = self.column_index(name)?;
        rows.iter()
            .map(|&r| parse_cell(self.cell(r, col), r, name))
            .collect()
    }

    /// Parses a whole column.
    pub fn numeric_column_all<T: Scalar>(&self, name: &str) -> Result<Vec<T>> {
        let rows: Vec<usize> = (0..self.n_rows()).collect();
        self.numeric_column(name, &rows)
    }
}

/// Reads a delimited file with a mandatory header row.
pub fn load_csv(path: impl AsRef<Path>, delimiter: u8) -> Result<RawTable> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    RawTable::from_reader(file, delimiter)
}

fn check_headers(headers: &[String]) -> Result<()> {
    for (i, h) in headers.iter().enumerate() {
        if h.is_empty() {
            return Err(Error::EmptyColumnName(i));
        }
        if headers[..i].contains(h) {
            return Err(Error::DuplicateColumn(h.clone()));
        }
    }
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    match e.kind() {
        csv::ErrorKind::UnequalLengths {
            pos,
            expected_len,
            len,
        } => Error::RaggedRow {
            line: pos.as_ref().map_or(0, |p| p.line()),
            expected: *expected_len as usize,
            found: *len as usize,
        },
        _ => Error::Csv(e.to_string()),
    }
}

/// A missing cell is empty or all whitespace.
fn is_missing(cell: &str) -> bool {
    cell.trim().is_empty()
}

fn parse_cell<T: Scalar>(cell: &str, row: usize, column: &str) -> Result<T> {
    if is_missing(cell) {
        return Err(Error::MissingValue {
            row,
            column: column.to_owned(),
        });
    }
    match cell.trim().parse::<T>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::NonNumeric {
            row,
            column: column.to_owned(),
            value: cell.to_owned(),
        }),
    }
}

/// Which columns span the space and which (optional) column colors it.
/// The color column may also be one of the axes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ColumnSelection {
    pub axis_columns: Vec<String>,
    pub color_column: Option<String>,
}

impl ColumnSelection {
    pub fn new<S: Into<String>>(axes: impl IntoIterator<Item = S>) -> Self {
        ColumnSelection {
            axis_columns: axes.into_iter().map(Into::into).collect(),
            color_column: None,
        }
    }

    pub fn with_color(mut self, color: impl Into<String>) -> Self {
        self.color_column = Some(color.into());
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum MissingPolicy {
    /// Any missing or non-numeric selected cell is an error.
    #[default]
    Reject,
    /// Rows with a missing or non-numeric selected cell are removed.
    Drop,
}

/// Result of [`validate_axes`]: the cloud plus the raw row ids that were dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct Validated<T> {
    pub cloud: PointCloud<T>,
    pub dropped: Vec<usize>,
}

/// Builds the numeric point cloud over the selected axis columns.
///
/// The color column, when present, is checked with the same policy so that
/// every surviving row has a usable color value.
pub fn validate_axes<T: Scalar>(
    raw: &RawTable,
    selection: &ColumnSelection,
    policy: MissingPolicy,
) -> Result<Validated<T>> {
    if selection.axis_columns.is_empty() {
        return Err(Error::NoAxes);
    }
    let axis_idx = selection
        .axis_columns
        .iter()
        .map(|c| raw.column_index(c))
        .collect::<Result<Vec<_>>>()?;
    let color_idx = selection
        .color_column
        .as_deref()
        .map(|c| raw.column_index(c))
        .transpose()?;

    let mut values = Vec::with_capacity(raw.n_rows() * axis_idx.len());
    let mut row_ids = Vec::with_capacity(raw.n_rows());
    let mut dropped = Vec::new();
    'rows: for r in 0..raw.n_rows() {
        let mut point = Vec::with_capacity(axis_idx.len());
        for (&c, name) in axis_idx.iter().zip(&selection.axis_columns) {
            match parse_cell::<T>(raw.cell(r, c), r, name) {
                Ok(v) => point.push(v),
                Err(e) => match policy {
                    MissingPolicy::Reject => return Err(e),
                    MissingPolicy::Drop => {
                        dropped.push(r);
                        continue 'rows;
                    }
                },
            }
        }
        if let (Some(c), Some(name)) = (color_idx, selection.color_column.as_deref()) {
            if let Err(e) = parse_cell::<T>(raw.cell(r, c), r, name) {
                match policy {
                    MissingPolicy::Reject => return Err(e),
                    MissingPolicy::Drop => {
                        dropped.push(r);
                        continue 'rows;
                    }
                }
            }
        }
        values.extend(point);
        row_ids.push(r);
    }
    if row_ids.is_empty() {
        return Err(if raw.n_rows() == 0 {
            Error::EmptyTable
        } else {
            Error::EmptyAfterDrop
        });
    }
    let cloud = PointCloud::from_parts(selection.axis_columns.clone(), values, row_ids)?;
    Ok(Validated { cloud, dropped })
}

/// N points in K dimensions, stored row-major. All cells finite.
///
/// `row_ids[i]` is the row of the source table that point `i` came from;
/// it equals `i` unless rows were dropped during validation.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud<T> {
    column_names: Vec<String>,
    values: Vec<T>,
    row_ids: Vec<usize>,
}

impl<T: Scalar> PointCloud<T> {
    /// Builds a cloud from row vectors; row ids are `0..rows.len()`.
    pub fn from_rows(column_names: Vec<String>, rows: &[Vec<T>]) -> Result<Self> {
        let k = column_names.len();
        let mut values = Vec::with_capacity(rows.len() * k);
        for row in rows {
            if row.len() != k {
                return Err(Error::DimensionMismatch {
                    left: k,
                    right: row.len(),
                });
            }
            values.extend_from_slice(row);
        }
        Self::from_parts(column_names, values, (0..rows.len()).collect())
    }

    /// Builds a one-dimensional cloud, handy for small examples.
    pub fn from_column(name: &str, values: &[T]) -> Result<Self> {
        Self::from_parts(
            vec![name.to_owned()],
            values.to_vec(),
            (0..values.len()).collect(),
        )
    }

    fn from_parts(column_names: Vec<String>, values: Vec<T>, row_ids: Vec<usize>) -> Result<Self> {
        if column_names.is_empty() {
            return Err(Error::NoAxes);
        }
        check_headers(&column_names)?;
        if row_ids.is_empty() {
            return Err(Error::EmptyTable);
        }
        let k = column_names.len();
        if values.len() != row_ids.len() * k {
            return Err(Error::DimensionMismatch {
                left: row_ids.len() * k,
                right: values.len(),
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonNumeric {
                row: row_ids[pos / k],
                column: column_names[pos % k].clone(),
                value: values[pos].to_string(),
            });
        }
        Ok(PointCloud {
            column_names,
            values,
            row_ids,
        })
    }

    pub fn len(&self) -> usize {
        self.row_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.row_ids.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.column_names.len()
    }

    pub fn column_names(&self) -> &[String] {
        &self.column_names
    }

    pub fn row_ids(&self) -> &[usize] {
        &self.row_ids
    }

    pub fn point(&self, i: usize) -> &[T] {
        let k = self.dim();
        &self.values[i * k..(i + 1) * k]
    }

    pub fn points(&self) -> impl Iterator<Item = &[T]> + '_ {
        self.values.chunks_exact(self.dim())
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.column_names
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::UnknownColumn(name.to_owned()))
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        self.points().map(|p| p[j]).collect()
    }

    /// Writes the cloud as CSV with shortest round-trip float formatting.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv_writer(writer);
        w.write_record(&self.column_names).map_err(csv_error)?;
        for p in self.points() {
            w.write_record(p.iter().map(|v| v.to_string()))
                .map_err(csv_error)?;
        }
        w.flush().map_err(|e| Error::Csv(e.to_string()))
    }
}

pub(crate) fn csv_writer<W: Write>(writer: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer)
}

pub(crate) fn csv_write_error(e: csv::Error) -> Error {
    csv_error(e)
}

/// Mean and sample standard deviation used to standardize one column.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnScale<T> {
    pub column: String,
    pub mean: T,
    pub sd: T,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct StandardizationSpec<T> {
    pub columns: Vec<ColumnScale<T>>,
}

/// Replaces each named column by `(x - mean) / sd`, sd with divisor `n - 1`.
pub fn standardize<T: Scalar>(
    cloud: &PointCloud<T>,
    columns: &[String],
) -> Result<(PointCloud<T>, StandardizationSpec<T>)> {
    let mut out = cloud.clone();
    let mut spec = StandardizationSpec::default();
    let k = cloud.dim();
    for name in columns {
        let j = cloud.column_index(name)?;
        let col = cloud.column(j);
        let mean = stats::mean(&col).ok_or(Error::EmptyTable)?;
        let sd = match stats::sample_sd(&col) {
            Some(sd) if sd > T::zero() => sd,
            _ => return Err(Error::ZeroVariance(name.clone())),
        };
        for (i, v) in col.iter().enumerate() {
            out.values[i * k + j] = (*v - mean) / sd;
        }
        spec.columns.push(ColumnScale {
            column: name.clone(),
            mean,
            sd,
        });
    }
    Ok((out, spec))
}

/// L2 distance between two points of equal dimension.
pub fn euclidean_distance<T: Scalar>(a: &[T], b: &[T]) -> Result<T> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(distance_unchecked(a, b))
}

#[inline]
pub(crate) fn distance_unchecked<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (&x, &y)| {
            let d = x - y;
            acc + d * d
        })
        .sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescribeRow<T> {
    pub column: String,
    pub mean: T,
    /// `None` for a single observation.
    pub sd: Option<T>,
    pub min: T,
    pub max: T,
}

/// Mean, sample sd, min and max per column.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryTable<T> {
    pub rows: Vec<DescribeRow<T>>,
}

impl<T: Scalar> SummaryTable<T> {
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv_writer(writer);
        w.write_record(["variable", "mean", "sd", "min", "max"])
            .map_err(csv_error)?;
        for r in &self.rows {
            w.write_record([
                r.column.clone(),
                r.mean.to_string(),
                r.sd.map(|v| v.to_string()).unwrap_or_default(),
                r.min.to_string(),
                r.max.to_string(),
            ])
            .map_err(csv_error)?;
        }
        w.flush().map_err(|e| Error::Csv(e.to_string()))
    }
}

pub fn describe<T: Scalar>(cloud: &PointCloud<T>, columns: &[String]) -> Result<SummaryTable<T>> {
    let rows = columns
        .iter()
        .map(|name| {
            let col = cloud.column(cloud.column_index(name)?);
            Ok(DescribeRow {
                column: name.clone(),
                mean: stats::mean(&col).ok_or(Error::EmptyTable)?,
                sd: stats::sample_sd(&col),
                min: stats::min(&col).ok_or(Error::EmptyTable)?,
                max: stats::max(&col).ok_or(Error::EmptyTable)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SummaryTable { rows })
}

/// Symmetric Pearson correlation matrix; `values[i][j]` pairs `columns[i]` with `columns[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix<T> {
    pub columns: Vec<String>,
    pub values: Vec<Vec<T>>,
}

impl<T: Scalar> CorrelationMatrix<T> {
    pub fn get(&self, a: &str, b: &str) -> Option<T> {
        let i = self.columns.iter().position(|c| c == a)?;
        let j = self.columns.iter().position(|c| c == b)?;
        Some(self.values[i][j])
    }
}

pub fn correlation_matrix<T: Scalar>(
    cloud: &PointCloud<T>,
    columns: &[String],
) -> Result<CorrelationMatrix<T>> {
    let centered = columns
        .iter()
        .map(|name| {
            let col = cloud.column(cloud.column_index(name)?);
            let m = stats::mean(&col).ok_or(Error::EmptyTable)?;
            let dev: Vec<T> = col.iter().map(|&v| v - m).collect();
            let ss = dev.iter().fold(T::zero(), |acc, &d| acc + d * d);
            if !(ss > T::zero()) {
                return Err(Error::ZeroVariance(name.clone()));
            }
            Ok((dev, ss.sqrt()))
        })
        .collect::<Result<Vec<_>>>()?;

    let n = columns.len();
    let mut values = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        values[i][i] = T::one();
        for j in (i + 1)..n {
            let (di, si) = &centered[i];
            let (dj, sj) = &centered[j];
            let cross = di
                .iter()
                .zip(dj)
                .fold(T::zero(), |acc, (&a, &b)| acc + a * b);
            let r = (cross / (*si * *sj)).max(-T::one()).min(T::one());
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    Ok(CorrelationMatrix {
        columns: columns.to_vec(),
        values,
    })
}
