//! Rank over prime fields `GF(p)` for Mersenne primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::par;
use crate::Rational;

/// Arithmetic modulo a Mersenne prime `2^BITS - 1`.
pub trait MersennePrime: Copy + Send + Sync + 'static {
    const BITS: u32;
    const P: u64 = (1u64 << Self::BITS) - 1;

    #[inline]
    fn reduce(x: u128) -> u64 {
        let p = Self::P as u128;
        let mut r = (x & p) + (x >> Self::BITS);
        r = (r & p) + (r >> Self::BITS);
        let r = r as u64;
        if r >= Self::P {
            r - Self::P
        } else {
            r
        }
    }

    #[inline]
    fn mul(a: u64, b: u64) -> u64 {
        Self::reduce(a as u128 * b as u128)
    }

    #[inline]
    fn sub(a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + Self::P - b
        }
    }

    fn pow(mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = Self::mul(r, a);
            }
            a = Self::mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        Self::pow(a, Self::P - 2)
    }

    /// Reduces an integer.
    fn from_bigint(n: &BigInt) -> u64 {
        if let Some(v) = n.to_i64() {
            let r = v.rem_euclid(Self::P as i64);
            return r as u64;
        }
        let p = BigInt::from(Self::P);
        n.mod_floor(&p).to_u64().unwrap()
    }

    /// Reduces a rational; `None` when `p` divides the denominator.
    fn from_rational(q: &Rational) -> Option<u64> {
        let d = Self::from_bigint(q.denom());
        if d == 0 {
            return None;
        }
        Some(Self::mul(Self::from_bigint(q.numer()), Self::inv(d)))
    }
}

/// `p = 2^61 - 1`.
#[derive(Clone, Copy, Debug)]
pub struct M61;
impl MersennePrime for M61 {
    const BITS: u32 = 61;
}

/// `p = 2^31 - 1`.
#[derive(Clone, Copy, Debug)]
pub struct M31;
impl MersennePrime for M31 {
    const BITS: u32 = 31;
}

/// Row echelon form over `GF(p)`, fed one batch of rows at a time.
///
/// Stored rows are normalized to a leading 1 and are zero left of their
/// pivot. Incoming rows are fully reduced against the stored ones (in
/// parallel, since the stored rows are read-only), then the survivors are
/// reduced against each other and stored.
#[derive(Clone)]
pub struct ModEchelon<F: MersennePrime> {
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivot_of_col: Vec<Option<usize>>,
    _field: std::marker::PhantomData<F>,
}

impl<F: MersennePrime> ModEchelon<F> {
    pub fn new(cols: usize) -> Self {
        ModEchelon {
            cols,
            rows: Vec::new(),
            pivot_of_col: vec![None; cols],
            _field: std::marker::PhantomData,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn reduce_against(&self, row: &mut [u64], only_from: usize) {
        for col in 0..self.cols {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let Some(idx) = self.pivot_of_col[col] else {
                continue;
            };
            if idx < only_from {
                continue;
            }
            let b = &self.rows[idx];
            row[col] = 0;
            for j in col + 1..self.cols {
                let bj = b[j];
                if bj != 0 {
                    row[j] = F::sub(row[j], F::mul(f, bj));
                }
            }
        }
    }

    fn insert(&mut self, mut row: Vec<u64>) -> bool {
        let Some(pc) = row.iter().position(|&v| v != 0) else {
            return false;
        };
        let inv = F::inv(row[pc]);
        for v in row[pc..].iter_mut() {
            *v = F::mul(*v, inv);
        }
        self.pivot_of_col[pc] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    /// Adds a batch of rows (entries already reduced mod `p`).
    pub fn push_batch(&mut self, mut batch: Vec<Vec<u64>>) {
        let me = &*self;
        par::for_each_mut(&mut batch[..], |r| {
            assert_eq!(r.len(), me.cols);
            me.reduce_against(r, 0);
        });
        let start = self.rows.len();
        for mut r in batch {
            if self.rows.len() == self.cols {
                break;
            }
            self.reduce_against(&mut r, start);
            self.insert(r);
        }
    }

    pub fn push(&mut self, row: Vec<u64>) {
        self.push_batch(vec![row]);
    }

    /// Whether `row` lies in the span of the stored rows.
    pub fn contains(&self, row: &[u64]) -> bool {
        let mut r = row.to_vec();
        self.reduce_against(&mut r, 0);
        r.iter().all(|&v| v == 0)
    }
}

/// Rank over `GF(p)` of rows given as sparse `(column, value)` lists over ℚ.
///
/// Panics if `p` divides a denominator.
pub fn rank_mod_sparse<F: MersennePrime>(rows: &[Vec<(usize, Rational)>], cols: usize) -> usize {
    let mut e = ModEchelon::<F>::new(cols);
    let batch = 64 * par::workers().max(1);
    for chunk in rows.chunks(batch) {
        let dense: Vec<Vec<u64>> = chunk.iter().map(|r| densify::<F>(r, cols)).collect();
        e.push_batch(dense);
        if e.rank() == cols {
            break;
        }
    }
    e.rank()
}

pub(crate) fn densify<F: MersennePrime>(row: &[(usize, Rational)], cols: usize) -> Vec<u64> {
    let mut d = vec![0u64; cols];
    for (j, v) in row {
        if v.is_zero() {
            continue;
        }
        d[*j] = F::from_rational(v).expect("prime divides a denominator");
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        let a = 123456789012345u64 % M61::P;
        assert_eq!(M61::mul(a, M61::inv(a)), 1);
        assert_eq!(M31::mul(M31::P - 1, M31::P - 1), 1);
        assert_eq!(M61::from_bigint(&BigInt::from(-1)), M61::P - 1);
        let big = BigInt::from(M61::P) * BigInt::from(7u32) + BigInt::from(5u32);
        assert_eq!(M61::from_bigint(&big), 5);
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(M31::mul(M31::from_rational(&half).unwrap(), 2), 1);
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = ModEchelon::<M61>::new(3);
        e.push(vec![1, 2, 3]);
        e.push(vec![2, 4, 6]);
        assert_eq!(e.rank(), 1);
        e.push_batch(vec![vec![0, 1, 1], vec![1, 3, 4], vec![5, 5, 5]]);
        assert_eq!(e.rank(), 3);
        let mut f = ModEchelon::<M31>::new(3);
        f.push_batch(vec![vec![1, 1, 0], vec![0, 1, 1]]);
        assert!(f.contains(&[1, 2, 1]));
        assert!(!f.contains(&[0, 0, 1]));
    }
}
