//! Candidate indicator columns (Cics).
//!
//! For each column the positive training values define equal-width bins; the
//! leftmost most-populated bin is the column's peak. A column qualifies when
//! the positive peak frequency beats `b_pos` while the negative frequency in
//! that same bin stays under `b_neg` ([`find_cics`]), when it ranks among the
//! top `t` by `n_pos - n_neg` ([`auto_cics`]), or when the caller names it
//! ([`manual_cics`]).

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::histogram::{BinBoundaries, Histogram};
use crate::matrix::Labels;
use crate::scaling::ScaledMatrix;

/// Training index sets. `u_pos` is only used by the union classifier and is
/// empty otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainingSplit {
    pub t_pos: Vec<usize>,
    pub t_neg: Vec<usize>,
    pub u_pos: Vec<usize>,
    rows: usize,
}

impl TrainingSplit {
    /// Validates class membership and pairwise disjointness against `labels`.
    pub fn new(labels: &Labels, t_pos: Vec<usize>, t_neg: Vec<usize>, u_pos: Vec<usize>) -> Result<Self> {
        let rows = labels.len();
        let mut seen = HashSet::new();
        for (set, want) in [(&t_pos, true), (&t_neg, false), (&u_pos, true)] {
            for &i in set {
                if i >= rows {
                    return Err(Error::RowOutOfRange { index: i, rows });
                }
                if labels.get(i) != want {
                    return Err(Error::InvalidTrainSize(format!(
                        "object {i} has the wrong label for its training set"
                    )));
                }
                if !seen.insert(i) {
                    return Err(Error::InvalidTrainSize(format!("object {i} is in more than one training set")));
                }
            }
        }
        Ok(Self { t_pos, t_neg, u_pos, rows })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    /// `T+ ∪ T-` in ascending order.
    pub fn training(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.t_pos.iter().chain(&self.t_neg).copied().collect();
        t.sort_unstable();
        t
    }

    /// Objects outside `T+ ∪ T-`, ascending.
    pub fn outside_training(&self) -> Vec<usize> {
        self.complement(false)
    }

    /// Objects outside `T+ ∪ T- ∪ U+`, ascending.
    pub fn outside_all(&self) -> Vec<usize> {
        self.complement(true)
    }

    fn complement(&self, with_u: bool) -> Vec<usize> {
        let mut taken = vec![false; self.rows];
        for &i in self.t_pos.iter().chain(&self.t_neg) {
            taken[i] = true;
        }
        if with_u {
            for &i in &self.u_pos {
                taken[i] = true;
            }
        }
        (0..self.rows).filter(|&i| !taken[i]).collect()
    }

    fn require_training(&self) -> Result<()> {
        if self.t_pos.is_empty() || self.t_neg.is_empty() {
            return Err(Error::EmptyTrainingSplit);
        }
        Ok(())
    }
}

/// One indicator column: object `i` activates it when `lo <= x[i][col] < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cic {
    pub col: usize,
    pub lo: f64,
    pub hi: f64,
}

impl Cic {
    #[inline]
    pub fn is_active(&self, v: f64) -> bool {
        self.lo <= v && v < self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CicList(pub Vec<Cic>);

impl CicList {
    pub fn new(entries: Vec<Cic>) -> Result<Self> {
        let mut seen = HashSet::new();
        for c in &entries {
            if !seen.insert(c.col) {
                return Err(Error::DuplicateColumn(c.col));
            }
            if c.lo.partial_cmp(&c.hi) != Some(std::cmp::Ordering::Less) {
                return Err(Error::UnsortedBoundaries);
            }
        }
        Ok(Self(entries))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Cic> {
        self.0.iter()
    }

    pub fn columns(&self) -> Vec<usize> {
        self.0.iter().map(|c| c.col).collect()
    }

    /// Checks every column against a matrix width.
    pub fn check_columns(&self, cols: usize) -> Result<()> {
        match self.0.iter().find(|c| c.col >= cols) {
            Some(c) => Err(Error::ColumnOutOfRange { col: c.col, cols }),
            None => Ok(()),
        }
    }
}

/// Histogram summary of one column under the positive-peak rule.
#[derive(Debug, Clone)]
pub struct ColumnPeak {
    pub col: usize,
    pub boundaries: BinBoundaries,
    pub pos: Histogram,
    pub neg: Histogram,
    /// Leftmost bin of maximal positive frequency.
    pub peak: usize,
}

impl ColumnPeak {
    pub fn h_pos_max(&self) -> f64 {
        self.pos.freqs[self.peak]
    }

    pub fn h_neg_at_peak(&self) -> f64 {
        self.neg.freqs[self.peak]
    }

    pub fn n_pos(&self) -> usize {
        self.pos.counts[self.peak]
    }

    pub fn n_neg(&self) -> usize {
        self.neg.counts[self.peak]
    }

    pub fn cic(&self) -> Cic {
        let (lo, hi) = self.boundaries.bin_range(self.peak);
        Cic { col: self.col, lo, hi }
    }
}

/// Builds the positive-sample bins of column `j` and histograms both training
/// classes on them.
pub fn column_peak(s: &ScaledMatrix, split: &TrainingSplit, nb: usize, j: usize) -> Result<ColumnPeak> {
    split.require_training()?;
    if j >= s.cols() {
        return Err(Error::ColumnOutOfRange { col: j, cols: s.cols() });
    }
    let col = s.column(j);
    let x_pos: Vec<f64> = split.t_pos.iter().map(|&i| col[i]).collect();
    let boundaries = BinBoundaries::equal_width(&x_pos, nb)?;
    let pos = Histogram::new(&x_pos, &boundaries)?;
    let neg = Histogram::from_values(split.t_neg.iter().map(|&i| col[i]), &boundaries)?;
    let (peak, _) = pos.peak();
    Ok(ColumnPeak { col: j, boundaries, pos, neg, peak })
}

/// All columns whose positive peak frequency exceeds `b_pos` while the
/// negative frequency in the same bin is below `b_neg`, in column order.
pub fn find_cics(s: &ScaledMatrix, split: &TrainingSplit, b_pos: f64, b_neg: f64, nb: usize) -> Result<CicList> {
    split.require_training()?;
    let mut out = Vec::new();
    for j in 0..s.cols() {
        let p = column_peak(s, split, nb, j)?;
        if p.h_pos_max() > b_pos && p.h_neg_at_peak() < b_neg {
            out.push(p.cic());
        }
    }
    Ok(CicList(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelevanceRow {
    pub col: usize,
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_diff: i64,
}

/// Columns ordered by decreasing `n_diff`, ties by ascending column.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RelevanceTable {
    pub rows: Vec<RelevanceRow>,
    cics: Vec<Cic>,
}

impl RelevanceTable {
    /// The Cic triple of the row at `rank` (0-based).
    pub fn cic_at(&self, rank: usize) -> Cic {
        self.cics[rank]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Counts of positive/negative training objects inside each column's positive
/// peak bin, ranked by their difference.
pub fn relevance_table(s: &ScaledMatrix, split: &TrainingSplit, nb: usize) -> Result<RelevanceTable> {
    split.require_training()?;
    let mut ranked = Vec::with_capacity(s.cols());
    for j in 0..s.cols() {
        let p = column_peak(s, split, nb, j)?;
        let (n_pos, n_neg) = (p.n_pos(), p.n_neg());
        let row = RelevanceRow { col: j, n_pos, n_neg, n_diff: n_pos as i64 - n_neg as i64 };
        ranked.push((row, p.cic()));
    }
    ranked.sort_by(|(a, _), (b, _)| b.n_diff.cmp(&a.n_diff).then(a.col.cmp(&b.col)));
    let (rows, cics) = ranked.into_iter().unzip();
    Ok(RelevanceTable { rows, cics })
}

/// `ceil(0.1 * n)`, the default number of top-ranked columns.
pub fn default_top_count(n: usize) -> usize {
    n.div_ceil(10)
}

/// The `t` best-ranked columns of [`relevance_table`] as Cics.
pub fn auto_cics(s: &ScaledMatrix, split: &TrainingSplit, nb: usize, t: Option<usize>) -> Result<CicList> {
    let n = s.cols();
    let t = t.unwrap_or_else(|| default_top_count(n));
    if t == 0 || t > n {
        return Err(Error::TopCountOutOfRange { t, n });
    }
    let table = relevance_table(s, split, nb)?;
    Ok(CicList((0..t).map(|r| table.cic_at(r)).collect()))
}

/// Peak-bin Cics for caller-chosen columns, with no frequency test.
pub fn manual_cics(s: &ScaledMatrix, split: &TrainingSplit, nb: usize, cols: &[usize]) -> Result<CicList> {
    if cols.is_empty() {
        return Err(Error::NoColumnsRequested);
    }
    let mut seen = HashSet::new();
    for &j in cols {
        if j >= s.cols() {
            return Err(Error::ColumnOutOfRange { col: j, cols: s.cols() });
        }
        if !seen.insert(j) {
            return Err(Error::DuplicateColumn(j));
        }
    }
    cols.iter()
        .map(|&j| column_peak(s, split, nb, j).map(|p| p.cic()))
        .collect::<Result<Vec<_>>>()
        .map(CicList)
}
