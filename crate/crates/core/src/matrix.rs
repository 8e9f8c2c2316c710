use std::fmt;

use crate::error::{usage, Result};
use crate::field::BinaryField;

/// Small dense matrix over a binary field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: BinaryField,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zero(field: BinaryField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: BinaryField, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: BinaryField, rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(usage("ragged matrix rows"));
            }
            if let Some(&bad) = row.iter().find(|&&x| !field.contains(x)) {
                return Err(usage(format!("entry {bad:#b} not in {field}")));
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// The standard alternating form `F = E + Eᵀ`, `E` having `I_m` in its
    /// upper-right block.
    pub fn standard_symplectic(field: BinaryField, m: usize) -> Self {
        let mut f = Self::zero(field, 2 * m, 2 * m);
        for i in 0..m {
            f.set(i, i + m, 1);
            f.set(i + m, i, 1);
        }
        f
    }

    pub fn field(&self) -> BinaryField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u8) {
        debug_assert!(self.field.contains(x));
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.field != other.field {
            return Err(usage(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Self::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, cur ^ f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Symmetric with zero diagonal; in characteristic two this is exactly
    /// "alternating".
    pub fn is_alternating(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| self.get(i, i) == 0 && (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j) == 0))
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(pivot, rank);
            let inv = f.inv(m.get(rank, col)).expect("pivot is nonzero");
            for j in 0..m.cols {
                let x = m.get(rank, j);
                m.set(rank, j, f.mul(x, inv));
            }
            for r in 0..m.rows {
                let factor = m.get(r, col);
                if r != rank && factor != 0 {
                    for j in 0..m.cols {
                        let x = m.get(r, j) ^ f.mul(factor, m.get(rank, j));
                        m.set(r, j, x);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Self::identity(f, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| m.get(r, col) != 0)?;
            m.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let p = f.inv(m.get(col, col)).expect("pivot is nonzero");
            for j in 0..n {
                let (x, y) = (m.get(col, j), inv.get(col, j));
                m.set(col, j, f.mul(x, p));
                inv.set(col, j, f.mul(y, p));
            }
            for r in 0..n {
                let factor = m.get(r, col);
                if r != col && factor != 0 {
                    for j in 0..n {
                        let x = m.get(r, j) ^ f.mul(factor, m.get(col, j));
                        let y = inv.get(r, j) ^ f.mul(factor, inv.get(col, j));
                        m.set(r, j, x);
                        inv.set(r, j, y);
                    }
                }
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix over {} ({}x{})",
            self.field, self.rows, self.cols
        )?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|&x| self.field.render(x)).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}
