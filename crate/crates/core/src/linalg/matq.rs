use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hpoly::fmt_rational;
use crate::par;
use crate::Rational;

/// A dense matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatQ {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl MatQ {
    pub fn zeros(rows: usize, cols: usize) -> MatQ {
        MatQ {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> MatQ {
        let mut m = MatQ::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> MatQ {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        MatQ {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> MatQ {
        let cols = rows.first().map_or(0, |r| r.len());
        MatQ::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| Rational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> MatQ {
        let mut t = MatQ::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &MatQ) -> MatQ {
        assert_eq!(self.cols, other.rows);
        let mut out = MatQ::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Rows clearing denominators, as integers.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
                row.iter().map(|c| c.numer() * (&l / c.denom())).collect()
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(fmt_rational).collect();
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<MatQ> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = MatQ::identity(n);
        for col in 0..n {
            let p = (col..n)
                .find(|&i| !a.get(i, col).is_zero())
                .ok_or(Error::Inconsistent)?;
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let piv = a.get(col, col).clone();
            a.scale_row(col, &piv);
            inv.scale_row(col, &piv);
            for i in 0..n {
                if i == col || a.get(i, col).is_zero() {
                    continue;
                }
                let f = a.get(i, col).clone();
                a.sub_row(i, col, &f);
                inv.sub_row(i, col, &f);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Divides row `i` by `d`.
    fn scale_row(&mut self, i: usize, d: &Rational) {
        for v in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *v /= d;
        }
    }

    /// `row[i] -= f * row[src]`.
    fn sub_row(&mut self, i: usize, src: usize, f: &Rational) {
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j].clone();
            if !s.is_zero() {
                self.data[i * self.cols + j] -= f * s;
            }
        }
    }
}

/// Exact rank over ℚ by fraction-free (Bareiss) elimination.
///
/// Rows are first scaled to integers. Every intermediate entry is a minor of
/// the integer matrix, so the division by the previous pivot is exact.
pub fn rank_q(m: &MatQ) -> usize {
    let rows = m.integer_rows();
    rank_integer_rows(rows, m.cols())
}

pub(crate) fn rank_integer_rows(mut rows: Vec<Vec<BigInt>>, cols: usize) -> usize {
    rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    let n = rows.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == n {
            break;
        }
        // Smallest nonzero pivot keeps the entries a little shorter.
        let Some(p) = (rank..n)
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| rows[i][col].bits())
        else {
            continue;
        };
        rows.swap(p, rank);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let piv = &pivot_row[col];
        let prev_ref = &prev;
        par::for_each_mut(tail, |row| {
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..cols {
                let v = &row[j] * piv - &lead * &pivot_row[j];
                debug_assert!((&v % prev_ref).is_zero());
                row[j] = v / prev_ref;
            }
        });
        prev = head[rank][col].abs();
        rank += 1;
    }
    rank
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut MatQ) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
            continue;
        };
        m.swap_rows(p, r);
        let piv = m.get(r, col).clone();
        m.scale_row(r, &piv);
        for i in 0..m.rows {
            if i != r && !m.get(i, col).is_zero() {
                let f = m.get(i, col).clone();
                m.sub_row(i, r, &f);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// A basis of the right kernel `{v : M v = 0}`.
pub fn kernel_q(m: &MatQ) -> Vec<Vec<Rational>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    kernel_from_rref(&a, &pivots)
}

fn kernel_from_rref(a: &MatQ, pivots: &[usize]) -> Vec<Vec<Rational>> {
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); a.cols];
            v[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a.get(r, f).clone();
            }
            v
        })
        .collect()
}

/// Solves `M x = b` exactly for invertible square `M`.
pub fn solve_q(m: &MatQ, b: &[Rational]) -> Result<Vec<Rational>> {
    Ok(m.inverse()?.mul_vec(b))
}

/// Incremental reduced row echelon form over ℚ for a fixed column count.
///
/// Useful when rows stream in and the column count is small.
#[derive(Clone, Debug)]
pub struct RowEchelonQ {
    cols: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RowEchelonQ {
    pub fn new(cols: usize) -> Self {
        RowEchelonQ {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn push(&mut self, mut row: Vec<Rational>) -> bool {
        assert_eq!(row.len(), self.cols);
        for (r, &pc) in self.rows.iter().zip(&self.pivots) {
            if !row[pc].is_zero() {
                let f = row[pc].clone();
                for (d, s) in row.iter_mut().zip(r) {
                    if !s.is_zero() {
                        *d -= &f * s;
                    }
                }
            }
        }
        let Some(pc) = row.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let piv = row[pc].clone();
        for v in row.iter_mut() {
            *v /= &piv;
        }
        for r in self.rows.iter_mut() {
            if !r[pc].is_zero() {
                let f = r[pc].clone();
                for (d, s) in r.iter_mut().zip(&row) {
                    if !s.is_zero() {
                        *d -= &f * s;
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, row);
        true
    }

    /// A basis of the vectors orthogonal to every pushed row.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let m = MatQ::from_rows(self.rows.clone(), self.cols);
        kernel_from_rref(&m, &self.pivots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn identity_rank() {
        assert_eq!(rank_q(&MatQ::identity(4)), 4);
        assert_eq!(rank_q(&MatQ::zeros(3, 5)), 0);
    }

    #[test]
    fn deficient_kernel() {
        let m = MatQ::from_i64(&[vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(rank_q(&m), 1);
        let k = kernel_q(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        let m = MatQ::from_i64(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let k = kernel_q(&m);
        assert_eq!(k, vec![vec![q(1), q(-1), q(1)]]);
    }

    #[test]
    fn bareiss_with_skipped_columns() {
        let m = MatQ::from_i64(&[
            vec![0, 2, 4, 1],
            vec![0, 1, 2, 7],
            vec![0, 3, 6, 8],
            vec![5, 0, 1, 0],
        ]);
        assert_eq!(rank_q(&m), 3);
        assert_eq!(rank_q(&m.transpose()), 3);
    }

    #[test]
    fn inverse_and_solve() {
        let m = MatQ::from_i64(&[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), MatQ::identity(2));
        let x = solve_q(&m, &[q(3), q(2)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        assert_eq!(
            MatQ::from_i64(&[vec![1, 1], vec![1, 1]]).inverse(),
            Err(Error::Inconsistent)
        );
    }

    #[test]
    fn incremental_echelon_matches_batch() {
        let rows = vec![
            vec![1, 2, 3, 4],
            vec![2, 4, 6, 8],
            vec![0, 1, 0, 1],
            vec![1, 3, 3, 5],
        ];
        let mut e = RowEchelonQ::new(4);
        for r in &rows {
            e.push(r.iter().map(|&v| q(v)).collect());
        }
        let m = MatQ::from_i64(&rows);
        assert_eq!(e.rank(), rank_q(&m));
        for v in e.kernel() {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(e.kernel().len(), 4 - e.rank());
    }
}
