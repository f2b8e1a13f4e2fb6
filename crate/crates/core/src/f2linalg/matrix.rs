use std::fmt;
use std::str::FromStr;

use super::bitvec::{full_mask, BitVec, MAX_DIM};
use super::LinalgError;

/// A dense matrix over GF(2) with at most 64 rows and 64 columns.
///
/// Stored column-major: column `j` is a packed [`BitVec`] whose most
/// significant bit is row 0. Row and column indices on this type are 0-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows <= MAX_DIM && cols <= MAX_DIM, "matrix too large");
        BitMatrix {
            rows,
            cols: vec![0; cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for j in 0..n {
            m.set(j, j, true);
        }
        m
    }

    /// Builds a matrix from packed column values (column `j` = integer whose
    /// binary expansion, MSB first, is that column).
    pub fn from_columns(rows: usize, cols: &[u64]) -> Self {
        assert!(rows <= MAX_DIM && cols.len() <= MAX_DIM, "matrix too large");
        for &c in cols {
            assert!(c & !full_mask(rows) == 0, "column {c} exceeds {rows} rows");
        }
        BitMatrix {
            rows,
            cols: cols.to_vec(),
        }
    }

    pub fn from_bitvecs(cols: &[BitVec]) -> Self {
        let rows = cols.first().map_or(0, |c| c.len());
        assert!(cols.iter().all(|c| c.len() == rows), "ragged columns");
        Self::from_columns(rows, &cols.iter().map(|c| c.to_int()).collect::<Vec<_>>())
    }

    /// Builds a matrix from packed rows (row `i` = integer whose binary
    /// expansion, MSB first, is that row).
    pub fn from_rows(ncols: usize, rows: &[u64]) -> Self {
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, &r) in rows.iter().enumerate() {
            assert!(
                r & !full_mask(ncols) == 0,
                "row {r} exceeds {ncols} columns"
            );
            for j in 0..ncols {
                if r >> (ncols - 1 - j) & 1 == 1 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols.len()
    }

    #[inline]
    fn row_mask(&self, r: usize) -> u64 {
        1u64 << (self.rows - 1 - r)
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows, "row {r} out of range");
        self.cols[c] & self.row_mask(r) != 0
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows, "row {r} out of range");
        let m = self.row_mask(r);
        if value {
            self.cols[c] |= m;
        } else {
            self.cols[c] &= !m;
        }
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_int(self.cols[c], self.rows)
    }

    /// Packed column values.
    pub fn column_bits(&self) -> &[u64] {
        &self.cols
    }

    pub fn push_column(&mut self, col: u64) {
        assert!(self.cols.len() < MAX_DIM, "matrix too large");
        assert!(col & !full_mask(self.rows) == 0, "column exceeds rows");
        self.cols.push(col);
    }

    /// Packed row `r`: bit `ncols-1-j` holds entry `(r, j)`.
    pub fn row_bits(&self, r: usize) -> u64 {
        let n = self.ncols();
        let m = self.row_mask(r);
        self.cols.iter().enumerate().fold(0, |acc, (j, &c)| {
            if c & m != 0 {
                acc | 1 << (n - 1 - j)
            } else {
                acc
            }
        })
    }

    pub fn rows_packed(&self) -> Vec<u64> {
        (0..self.rows).map(|r| self.row_bits(r)).collect()
    }

    pub fn transpose(&self) -> BitMatrix {
        Self::from_columns(self.ncols(), &self.rows_packed())
    }

    /// Matrix-vector product; `x` is a packed vector of length `ncols`.
    pub fn apply(&self, x: u64) -> u64 {
        let n = self.ncols();
        self.cols
            .iter()
            .enumerate()
            .filter(|(j, _)| x >> (n - 1 - j) & 1 == 1)
            .fold(0, |acc, (_, &c)| acc ^ c)
    }

    pub fn apply_vec(&self, x: BitVec) -> BitVec {
        assert_eq!(x.len(), self.ncols(), "dimension mismatch");
        BitVec::from_int(self.apply(x.to_int()), self.rows)
    }

    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix, LinalgError> {
        if self.ncols() != rhs.nrows() {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows, self.ncols()),
                right: (rhs.rows, rhs.ncols()),
            });
        }
        Ok(BitMatrix {
            rows: self.rows,
            cols: rhs.cols.iter().map(|&c| self.apply(c)).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        let mut basis = [0u64; MAX_DIM];
        let mut rank = 0;
        for &c in &self.cols {
            let mut v = c;
            while v != 0 {
                let lead = 63 - v.leading_zeros() as usize;
                if basis[lead] == 0 {
                    basis[lead] = v;
                    rank += 1;
                    break;
                }
                v ^= basis[lead];
            }
        }
        rank
    }

    /// Inverse over GF(2) by Gauss-Jordan elimination on rows.
    pub fn invert(&self) -> Result<BitMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.ncols(),
            });
        }
        let n = self.rows;
        let mut a = self.rows_packed();
        let mut inv: Vec<u64> = (0..n).map(|i| 1u64 << (n - 1 - i)).collect();
        for col in 0..n {
            let bit = 1u64 << (n - 1 - col);
            let pivot = (col..n)
                .find(|&r| a[r] & bit != 0)
                .ok_or(LinalgError::SingularMatrix)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && a[r] & bit != 0 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Ok(Self::from_rows(n, &inv))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.ncols())?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.ncols() {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Rows of `0`/`1` characters, row 1 first, newline-separated.
impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                writeln!(f)?;
            }
            for c in 0..self.ncols() {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl FromStr for BitMatrix {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut rows = Vec::new();
        let mut width = None;
        for (idx, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut r = 0u64;
            for ch in line.chars() {
                r = (r << 1)
                    | match ch {
                        '0' => 0,
                        '1' => 1,
                        _ => {
                            return Err(LinalgError::Parse {
                                line: idx + 1,
                                message: format!("unexpected character {ch:?}"),
                            })
                        }
                    };
            }
            let w = line.len();
            if w > MAX_DIM || *width.get_or_insert(w) != w {
                return Err(LinalgError::Parse {
                    line: idx + 1,
                    message: format!("row has {w} entries"),
                });
            }
            rows.push(r);
        }
        if rows.len() > MAX_DIM {
            return Err(LinalgError::Parse {
                line: rows.len(),
                message: "too many rows".into(),
            });
        }
        Ok(Self::from_rows(width.unwrap_or(0), &rows))
    }
}
