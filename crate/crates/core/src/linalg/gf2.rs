use std::fmt;

use crate::error::{Error, Result};
use crate::par;

/// A dense matrix over GF(2) with rows packed into 64-bit words.
#[derive(Clone, PartialEq, Eq)]
pub struct MatF2 {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl MatF2 {
    pub fn zeros(rows: usize, cols: usize) -> MatF2 {
        let stride = cols.div_ceil(64);
        MatF2 {
            rows,
            cols,
            stride,
            bits: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> MatF2 {
        let mut m = MatF2::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds from rows of 0/1 entries.
    pub fn from_rows(rows: &[Vec<u8>]) -> MatF2 {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = MatF2::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v & 1 == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        (self.bits[i * self.stride + j / 64] >> (j % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        assert!(i < self.rows && j < self.cols);
        let w = &mut self.bits[i * self.stride + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_bits(&self, i: usize) -> Vec<bool> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    /// Copies `src` into this matrix with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, src: &MatF2) {
        for i in 0..src.rows {
            for j in 0..src.cols {
                if src.get(i, j) {
                    self.set(r0 + i, c0 + j, true);
                }
            }
        }
    }

    pub fn mul(&self, other: &MatF2) -> MatF2 {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = MatF2::zeros(self.rows, other.cols);
        let stride = out.stride;
        if stride == 0 {
            return out;
        }
        let mut rows: Vec<(usize, &mut [u64])> = out.bits.chunks_mut(stride).enumerate().collect();
        par::for_each_mut(&mut rows[..], |(i, dst)| {
            for k in 0..self.cols {
                if self.get(*i, k) {
                    for (d, s) in dst.iter_mut().zip(other.row(k)) {
                        *d ^= *s;
                    }
                }
            }
        });
        out
    }

    pub fn transpose(&self) -> MatF2 {
        let mut t = MatF2::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Stacks `self` over `below`.
    pub fn vstack(&self, below: &MatF2) -> MatF2 {
        assert_eq!(self.cols, below.cols);
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&below.bits);
        MatF2 {
            rows: self.rows + below.rows,
            cols: self.cols,
            stride: self.stride,
            bits,
        }
    }

    /// Places `right` beside `self`.
    pub fn hstack(&self, right: &MatF2) -> MatF2 {
        assert_eq!(self.rows, right.rows);
        let mut m = MatF2::zeros(self.rows, self.cols + right.cols);
        m.paste(0, 0, self);
        m.paste(0, self.cols, right);
        m
    }

    /// Columns `c0..c1` as a new matrix.
    pub fn columns(&self, c0: usize, c1: usize) -> MatF2 {
        let mut m = MatF2::zeros(self.rows, c1 - c0);
        for i in 0..self.rows {
            for j in c0..c1 {
                if self.get(i, j) {
                    m.set(i, j - c0, true);
                }
            }
        }
        m
    }

    /// Row-reduces a copy and returns the rank.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate()
    }

    fn eliminate(&mut self) -> usize {
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&i| self.get(i, col)) else {
                continue;
            };
            if p != rank {
                for w in 0..self.stride {
                    self.bits.swap(p * self.stride + w, rank * self.stride + w);
                }
            }
            let pivot: Vec<u64> = self.row(rank).to_vec();
            let stride = self.stride;
            let mut rest: Vec<&mut [u64]> = self.bits[(rank + 1) * stride..]
                .chunks_mut(stride)
                .collect();
            par::for_each_mut(&mut rest[..], |row| {
                if (row[col / 64] >> (col % 64)) & 1 == 1 {
                    for (d, s) in row.iter_mut().zip(&pivot) {
                        *d ^= *s;
                    }
                }
            });
            rank += 1;
        }
        rank
    }

    /// Determinant over GF(2).
    pub fn det(&self) -> Result<bool> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rank() == self.rows)
    }

    pub fn is_identity(&self) -> bool {
        *self == MatF2::identity(self.rows)
    }

    /// Rows of `0`/`1` separated by commas.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let row: Vec<&str> = (0..self.cols)
                .map(|j| if self.get(i, j) { "1" } else { "0" })
                .collect();
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for MatF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// GF(2) determinant.
pub fn det_f2(m: &MatF2) -> Result<bool> {
    m.det()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = MatF2::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let b = MatF2::from_rows(&[vec![1, 0], vec![1, 1], vec![0, 1]]);
        let ab = a.mul(&b);
        assert_eq!(ab, MatF2::from_rows(&[vec![0, 1], vec![1, 0]]));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().shape(), (3, 2));
    }

    #[test]
    fn determinants() {
        assert!(MatF2::identity(70).det().unwrap());
        let sing = MatF2::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(!sing.det().unwrap());
        assert_eq!(sing.rank(), 1);
        let swap = MatF2::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert!(swap.det().unwrap());
        assert!(matches!(
            MatF2::zeros(2, 3).det(),
            Err(Error::NonSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn stacking() {
        let a = MatF2::identity(2);
        let v = a.vstack(&a);
        assert_eq!(v.shape(), (4, 2));
        let h = a.hstack(&a);
        assert_eq!(h.shape(), (2, 4));
        assert_eq!(h.columns(2, 4), a);
        assert_eq!(h.to_csv(), "1,0,1,0\n0,1,0,1\n");
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let n = 130;
        let mut m = MatF2::identity(n);
        for i in 1..n {
            m.set(i - 1, i, true);
        }
        assert!(m.det().unwrap());
        assert_eq!(m.mul(&MatF2::identity(n)), m);
    }
}
