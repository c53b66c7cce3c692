//! Column-wise standardization.
//!
//! Every entry becomes its distance from the column mean in units of the
//! column standard deviation. Constant columns collapse to zero.

use crate::error::{Error, Result};
use crate::matrix::DataMatrix;

/// How the per-column mean and standard deviation are estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StatsMode {
    /// Population formula (divisor `k`) over all selected rows.
    #[default]
    Full,
    /// Sample variance with divisor `k - 1`, square root taken afterwards.
    Train,
    /// Divisor `k - 1.5`, the low-bias estimator for normal data.
    TrainNormal,
}

impl StatsMode {
    fn divisor(self, k: usize) -> f64 {
        let k = k as f64;
        match self {
            StatsMode::Full => k,
            StatsMode::Train => k - 1.0,
            StatsMode::TrainNormal => k - 1.5,
        }
    }

    pub fn is_training_only(self) -> bool {
        !matches!(self, StatsMode::Full)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnStats {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
    pub mode: StatsMode,
    /// Number of rows the estimates were taken over.
    pub sample_size: usize,
}

/// Per-column mean and standard deviation over `rows` (all rows when `None`).
///
/// A sample too small for the chosen divisor (one row in the training modes)
/// yields `std = 0`, which the scaler treats as a constant column.
pub fn compute_column_stats(x: &DataMatrix, rows: Option<&[usize]>, mode: StatsMode) -> Result<ColumnStats> {
    if let Some(r) = rows {
        if r.is_empty() {
            return Err(Error::EmptyStatsSample);
        }
        if let Some(&bad) = r.iter().find(|&&i| i >= x.rows()) {
            return Err(Error::RowOutOfRange { index: bad, rows: x.rows() });
        }
    }
    let k = rows.map_or(x.rows(), <[usize]>::len);
    let divisor = mode.divisor(k);
    let mut mean = Vec::with_capacity(x.cols());
    let mut std = Vec::with_capacity(x.cols());
    for col in x.columns() {
        let (mu, ss) = match rows {
            None => two_pass(col.iter().copied(), k),
            Some(r) => two_pass(r.iter().map(|&i| col[i]), k),
        };
        mean.push(mu);
        std.push(if divisor > 0.0 { (ss / divisor).sqrt() } else { 0.0 });
    }
    Ok(ColumnStats { mean, std, mode, sample_size: k })
}

// Returns (mean, sum of squared deviations).
fn two_pass<I>(values: I, k: usize) -> (f64, f64)
where
    I: Iterator<Item = f64> + Clone,
{
    // A constant sample must give exactly zero spread; the summed mean can be
    // off by an ulp.
    let mut it = values.clone();
    if let Some(first) = it.next() {
        if it.all(|v| v == first) {
            return (first, 0.0);
        }
    }
    let mu = values.clone().sum::<f64>() / k as f64;
    let ss = values.map(|v| (v - mu) * (v - mu)).sum::<f64>();
    (mu, ss)
}

/// A matrix after [`scale`], together with the statistics that produced it.
#[derive(Debug, Clone)]
pub struct ScaledMatrix {
    matrix: DataMatrix,
    pub stats: ColumnStats,
    pub quantize_digits: Option<u32>,
}

impl ScaledMatrix {
    pub fn matrix(&self) -> &DataMatrix {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix.get(i, j)
    }

    pub fn column(&self, j: usize) -> &[f64] {
        self.matrix.column(j)
    }

    /// Wraps a matrix that is already in scaled units (e.g. re-imported data).
    pub fn assume_scaled(matrix: DataMatrix) -> Self {
        let n = matrix.cols();
        let stats = ColumnStats { mean: vec![0.0; n], std: vec![1.0; n], mode: StatsMode::Full, sample_size: matrix.rows() };
        Self { matrix, stats, quantize_digits: None }
    }
}

/// Standardizes every column of `x` with `stats`, optionally rounding each
/// result to `quantize_digits` significant decimal digits.
pub fn scale(x: &DataMatrix, stats: &ColumnStats, quantize_digits: Option<u32>) -> ScaledMatrix {
    assert_eq!(stats.mean.len(), x.cols(), "stats must have one entry per column");
    let m = x.rows();
    let mut data = Vec::with_capacity(x.raw().len());
    for (j, col) in x.columns().enumerate() {
        let (mu, sigma) = (stats.mean[j], stats.std[j]);
        if sigma == 0.0 {
            data.extend(std::iter::repeat_n(0.0, m));
            continue;
        }
        match quantize_digits {
            None => data.extend(col.iter().map(|&v| (v - mu) / sigma)),
            Some(d) => data.extend(col.iter().map(|&v| round_significant((v - mu) / sigma, d))),
        }
    }
    let matrix = DataMatrix::from_raw(m, x.cols(), data, x.names().map(<[String]>::to_vec));
    ScaledMatrix { matrix, stats: stats.clone(), quantize_digits }
}

/// Full-matrix population statistics followed by [`scale`].
pub fn scale_full(x: &DataMatrix, quantize_digits: Option<u32>) -> ScaledMatrix {
    let stats = compute_column_stats(x, None, StatsMode::Full).expect("matrix has at least one row");
    scale(x, &stats, quantize_digits)
}

/// Rounds to `digits` significant decimal digits, halves away from zero.
pub fn round_significant(v: f64, digits: u32) -> f64 {
    if v == 0.0 || !v.is_finite() || digits == 0 {
        return v;
    }
    let exp = v.abs().log10().floor() as i32;
    let shift = digits as i32 - 1 - exp;
    let factor = 10f64.powi(shift.abs());
    if !factor.is_finite() {
        return v;
    }
    if shift >= 0 {
        (v * factor).round() / factor
    } else {
        (v / factor).round() * factor
    }
}
