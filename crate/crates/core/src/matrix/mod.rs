//! Bit-packed Boolean measurement matrices and the row combinators used by
//! the constructions (direct product, row repetition, stacking, column
//! restriction).

mod measure;
mod text;

pub use measure::{
    apply_noise, measure, measure_counts, resolve, GapPolicy, Outcome, OutcomePattern,
    SparseVector, ThresholdParams,
};

use crate::bits;
use crate::error::{ensure, Error, Result};

/// An `m × n` 0/1 matrix stored row-major, each row padded to whole words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BooleanMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        ensure(rows >= 1 && cols >= 1, || {
            format!("matrix must be at least 1x1, got {rows}x{cols}")
        })?;
        let stride = bits::words_for(cols);
        Ok(BooleanMatrix {
            rows,
            cols,
            stride,
            bits: vec![0; rows * stride],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, true);
        }
        Ok(m)
    }

    pub fn ones(rows: usize, cols: usize) -> Result<Self> {
        Self::from_fn(rows, cols, |_, _| true)
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        let mut m = Self::zeros(rows, cols)?;
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix from explicit 0/1 rows; all rows must have equal length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        ensure(!rows.is_empty(), || "no rows given".into())?;
        let cols = rows[0].as_ref().len();
        let mut m = Self::zeros(rows.len(), cols)?;
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    actual: r.len(),
                });
            }
            for (j, &v) in r.iter().enumerate() {
                ensure(v <= 1, || format!("entry ({i},{j}) is {v}, not 0/1"))?;
                if v == 1 {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
    }

    pub(crate) fn from_packed_rows(cols: usize, packed: Vec<Vec<u64>>) -> Result<Self> {
        let mut m = Self::zeros(packed.len(), cols)?;
        for (i, r) in packed.iter().enumerate() {
            debug_assert_eq!(r.len(), m.stride);
            m.row_words_mut(i).copy_from_slice(r);
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)`. Panics when out of range.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of range"
        );
        bits::get(self.row_words(i), j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of range"
        );
        let row = self.row_words_mut(i);
        if value {
            bits::set(row, j);
        } else {
            bits::clear(row, j);
        }
    }

    /// Packed words of row `i`; bits past `cols` are always zero.
    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.bits[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_support(&self, i: usize) -> Vec<usize> {
        bits::iter_ones(self.row_words(i)).collect()
    }

    pub fn row_weight(&self, i: usize) -> usize {
        bits::count(self.row_words(i))
    }

    pub fn column_weight(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self.get(i, j)).count()
    }

    /// Column `j` as a packed bitset over rows.
    pub fn column_words(&self, j: usize) -> Vec<u64> {
        let mut col = vec![0u64; bits::words_for(self.rows)];
        for i in 0..self.rows {
            if self.get(i, j) {
                bits::set(&mut col, i);
            }
        }
        col
    }

    /// All columns as packed bitsets over rows.
    pub fn columns(&self) -> Vec<Vec<u64>> {
        let words = bits::words_for(self.rows);
        let mut cols = vec![vec![0u64; words]; self.cols];
        for i in 0..self.rows {
            for j in bits::iter_ones(self.row_words(i)) {
                bits::set(&mut cols[j], i);
            }
        }
        cols
    }

    /// Number of ones of row `i` inside the column set given as a packed mask.
    #[inline]
    pub fn row_intersection(&self, i: usize, mask: &[u64]) -> usize {
        bits::count_and(self.row_words(i), mask)
    }

    /// Packed column mask for a set of column indices.
    pub fn column_mask(&self, columns: &[usize]) -> Result<Vec<u64>> {
        let mut mask = vec![0u64; self.stride];
        for &c in columns {
            ensure(c < self.cols, || {
                format!("column index {c} out of range for {} columns", self.cols)
            })?;
            bits::set(&mut mask, c);
        }
        Ok(mask)
    }

    /// `M|_S`: the submatrix on the given columns, in ascending index order.
    pub fn restrict_columns(&self, columns: &[usize]) -> Result<Self> {
        let mut keep: Vec<usize> = columns.to_vec();
        keep.sort_unstable();
        keep.dedup();
        ensure(!keep.is_empty(), || "column set is empty".into())?;
        if let Some(&bad) = keep.iter().find(|&&c| c >= self.cols) {
            return Err(Error::invalid(format!(
                "column index {bad} out of range for {} columns",
                self.cols
            )));
        }
        Self::from_fn(self.rows, keep.len(), |i, j| self.get(i, keep[j]))
    }

    /// Direct product `self ⊙ other`: row `(i, j)` (lexicographic) is the
    /// bitwise OR of row `i` of `self` and row `j` of `other`.
    pub fn direct_product(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.cols,
            });
        }
        let mut out = Self::zeros(self.rows * other.rows, self.cols)?;
        for i in 0..self.rows {
            let a = self.row_words(i);
            for j in 0..other.rows {
                let b = other.row_words(j);
                let dst = out.row_words_mut(i * other.rows + j);
                for ((d, x), y) in dst.iter_mut().zip(a).zip(b) {
                    *d = x | y;
                }
            }
        }
        Ok(out)
    }

    /// Each row repeated `times` times consecutively.
    pub fn repeat_rows(&self, times: usize) -> Result<Self> {
        ensure(times >= 1, || "repeat count must be at least 1".into())?;
        let mut out = Self::zeros(self.rows * times, self.cols)?;
        for i in 0..self.rows {
            for k in 0..times {
                out.row_words_mut(i * times + k)
                    .copy_from_slice(self.row_words(i));
            }
        }
        Ok(out)
    }

    /// Vertical concatenation in the given order.
    pub fn stack(parts: &[Self]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::invalid("cannot stack an empty sequence"))?;
        if let Some(bad) = parts.iter().find(|p| p.cols != first.cols) {
            return Err(Error::DimensionMismatch {
                expected: first.cols,
                actual: bad.cols,
            });
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut bits_out = Vec::with_capacity(rows * first.stride);
        for p in parts {
            bits_out.extend_from_slice(&p.bits);
        }
        Ok(BooleanMatrix {
            rows,
            cols: first.cols,
            stride: first.stride,
            bits: bits_out,
        })
    }
}

impl std::fmt::Debug for BooleanMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BooleanMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows.min(32) {
            let line: String = (0..self.cols.min(96))
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_dimensions() {
        assert!(BooleanMatrix::zeros(0, 3).is_err());
        assert!(BooleanMatrix::zeros(3, 0).is_err());
    }

    #[test]
    fn direct_product_small_cases() {
        let a = BooleanMatrix::from_rows(&[[1u8, 0]]).unwrap();
        let b = BooleanMatrix::from_rows(&[[0u8, 1]]).unwrap();
        assert_eq!(
            a.direct_product(&b).unwrap(),
            BooleanMatrix::from_rows(&[[1u8, 1]]).unwrap()
        );

        let zero = BooleanMatrix::zeros(1, 4).unwrap();
        let m = BooleanMatrix::from_rows(&[[1u8, 0, 1, 0], [0, 0, 1, 1]]).unwrap();
        assert_eq!(zero.direct_product(&m).unwrap(), m);

        let c = BooleanMatrix::zeros(1, 3).unwrap();
        assert!(matches!(
            a.direct_product(&c),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn repeat_rows_cases() {
        let m = BooleanMatrix::from_rows(&[[1u8, 0]]).unwrap();
        assert_eq!(m.repeat_rows(1).unwrap(), m);
        let r = m.repeat_rows(3).unwrap();
        assert_eq!(r.rows(), 3);
        assert!((0..3).all(|i| r.row_support(i) == vec![0]));
        assert!(m.repeat_rows(0).is_err());
    }

    #[test]
    fn stack_cases() {
        let a = BooleanMatrix::from_rows(&[[1u8, 0]]).unwrap();
        let b = BooleanMatrix::from_rows(&[[0u8, 1]]).unwrap();
        assert_eq!(BooleanMatrix::stack(std::slice::from_ref(&a)).unwrap(), a);
        let s = BooleanMatrix::stack(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(s, BooleanMatrix::from_rows(&[[1u8, 0], [0, 1]]).unwrap());
        assert!(BooleanMatrix::stack(&[]).is_err());
        let wide = BooleanMatrix::zeros(1, 3).unwrap();
        assert!(BooleanMatrix::stack(&[a, wide]).is_err());
    }

    #[test]
    fn restrict_columns_cases() {
        let id = BooleanMatrix::identity(3).unwrap();
        assert_eq!(id.restrict_columns(&[0, 1, 2]).unwrap(), id);
        let col = id.restrict_columns(&[1]).unwrap();
        assert_eq!(col, BooleanMatrix::from_rows(&[[0u8], [1], [0]]).unwrap());
        assert!(id.restrict_columns(&[3]).is_err());
    }

    #[test]
    fn columns_match_get() {
        let m = BooleanMatrix::from_fn(70, 5, |i, j| (i * 7 + j * 3) % 5 == 0).unwrap();
        let cols = m.columns();
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col, &m.column_words(j));
            for i in 0..70 {
                assert_eq!(bits::get(col, i), m.get(i, j));
            }
        }
    }
}
