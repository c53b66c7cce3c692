use crate::error::{Error, Result};

/// Dense `m x n` matrix of finite values, stored column by column.
///
/// Rows are objects, columns are features.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    names: Option<Vec<String>>,
}

impl DataMatrix {
    pub fn from_columns(columns: Vec<Vec<f64>>) -> Result<Self> {
        let cols = columns.len();
        if cols == 0 {
            return Err(Error::InvalidMatrix("matrix needs at least one column".into()));
        }
        let rows = columns[0].len();
        if rows == 0 {
            return Err(Error::InvalidMatrix("matrix needs at least one row".into()));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for (j, c) in columns.into_iter().enumerate() {
            if c.len() != rows {
                return Err(Error::InvalidMatrix(format!(
                    "column {j} has {} rows, expected {rows}",
                    c.len()
                )));
            }
            if let Some(i) = c.iter().position(|v| !v.is_finite()) {
                return Err(Error::InvalidMatrix(format!("non-finite value at ({i}, {j})")));
            }
            data.extend(c);
        }
        Ok(Self { rows, cols, data, names: None })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::InvalidMatrix("matrix needs at least one row".into()));
        };
        let n = first.len();
        let mut columns = vec![Vec::with_capacity(rows.len()); n];
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::InvalidMatrix(format!("row {i} has {} values, expected {n}", r.len())));
            }
            for (c, &v) in columns.iter_mut().zip(r) {
                c.push(v);
            }
        }
        Self::from_columns(columns)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.cols {
            return Err(Error::LengthMismatch { left: names.len(), right: self.cols });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.rows + i]
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.rows)
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn column_name(&self, j: usize) -> String {
        match &self.names {
            Some(n) => n[j].clone(),
            None => format!("f{}", j + 1),
        }
    }

    /// Sub-matrix holding the given columns in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Self> {
        if cols.is_empty() {
            return Err(Error::EmptySelection);
        }
        let mut data = Vec::with_capacity(cols.len() * self.rows);
        for &j in cols {
            if j >= self.cols {
                return Err(Error::ColumnOutOfRange { col: j, cols: self.cols });
            }
            data.extend_from_slice(self.column(j));
        }
        let names = self.names.as_ref().map(|n| cols.iter().map(|&j| n[j].clone()).collect());
        Ok(Self { rows: self.rows, cols: cols.len(), data, names })
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<f64>, names: Option<Vec<String>>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data, names }
    }

    pub(crate) fn raw(&self) -> &[f64] {
        &self.data
    }
}

/// True positive/negative state per object (`true` = positive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels(Vec<bool>);

impl Labels {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        Self(bits.iter().map(|&b| b != 0).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn positives(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
    }

    pub fn negatives(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &b)| !b).map(|(i, _)| i).collect()
    }

    pub fn count_positive(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Truth bits restricted to `domain`, in domain order.
    pub fn restrict(&self, domain: &[usize]) -> Vec<bool> {
        domain.iter().map(|&i| self.0[i]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_and_columns_agree() {
        let m = DataMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]]).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 2));
        assert_eq!(m.column(1), &[2.0, 4.0, 6.0]);
        assert_eq!(m.get(2, 0), 5.0);
        assert_eq!(m.row(1), vec![3.0, 4.0]);
    }

    #[test]
    fn rejects_non_finite_and_ragged() {
        assert!(DataMatrix::from_columns(vec![vec![1.0, f64::NAN]]).is_err());
        assert!(DataMatrix::from_rows(&[vec![1.0], vec![1.0, 2.0]]).is_err());
        assert!(DataMatrix::from_columns(vec![]).is_err());
    }

    #[test]
    fn select_columns_keeps_names() {
        let m = DataMatrix::from_columns(vec![vec![1.0], vec![2.0], vec![3.0]])
            .unwrap()
            .with_names(vec!["a".into(), "b".into(), "c".into()])
            .unwrap();
        let s = m.select_columns(&[2, 0]).unwrap();
        assert_eq!(s.names().unwrap(), &["c".to_string(), "a".to_string()]);
        assert_eq!(s.column(0), &[3.0]);
        assert!(m.select_columns(&[3]).is_err());
    }
}
