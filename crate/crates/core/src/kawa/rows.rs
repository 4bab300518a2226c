//! Relation vectors in the admissible-word coordinates of weight `k`.

use num_bigint::BigInt;

use super::{generating_forests, kawashima_pairs};
use crate::fbasis::admissible_index;
use crate::hpoly::{z_decode, Poly, Word};
use crate::par;
use crate::quasi::stuffle_monomials;
use crate::rtmap::rtm_images;
use crate::Rational;

/// `(column, coefficient)` pairs sorted by column; column `i` is `w_k[i]`.
pub type SparseRow = Vec<(usize, i128)>;

pub(crate) fn row_to_poly(row: &SparseRow, k: usize) -> Poly {
    Poly::from_terms(row.iter().map(|&(i, c)| {
        (
            Word::from_bits(((i as u64) << 1) | 1, k),
            Rational::from_integer(BigInt::from(c)),
        )
    }))
}

/// Rows `f(w)` for the degree-`d` generating forests and admissible `w` of
/// degree `k − d`.
pub fn rtm_rows_of_degree(k: usize, d: usize, all_forests: bool) -> Vec<SparseRow> {
    let forests = generating_forests(d, all_forests);
    let words: Vec<Word> = Word::admissible_of_len(k - d).collect();
    let images = rtm_images(&forests, &words).expect("letter images lie in xHy");
    let mut out = Vec::with_capacity(forests.len() * words.len());
    for j in 0..forests.len() {
        for per_word in &images {
            let v = &per_word[j];
            out.push(
                v.terms
                    .iter()
                    .map(|&(b, c)| (admissible_index(&Word::from_bits(b, k)), c))
                    .collect(),
            );
        }
    }
    out
}

/// All rooted-tree-map relation rows of weight `k`.
pub fn rtm_rows(k: usize, all_forests: bool) -> Vec<SparseRow> {
    (1..=k.saturating_sub(2))
        .flat_map(|d| rtm_rows_of_degree(k, d, all_forests))
        .collect()
}

/// `L_x φ(v ∗ w)` in integer arithmetic.
fn kawashima_row(v: &Word, w: &Word) -> SparseRow {
    let n = v.len() + w.len();
    let a = z_decode(v).expect("ends in y");
    let b = z_decode(w).expect("ends in y");
    let mut dense = vec![0i128; 1 << n];
    for (u, c) in stuffle_monomials(a.parts(), b.parts()) {
        dense[u.bits() as usize] += i128::try_from(c).expect("stuffle count fits i128");
    }
    // φ letter by letter: x ↦ x + y, y ↦ −y.
    for pos in 0..n {
        let m = 1usize << pos;
        for idx in 0..dense.len() {
            if idx & m == 0 {
                let (lo, hi) = (dense[idx], dense[idx | m]);
                dense[idx | m] = lo - hi;
            }
        }
    }
    // Prepending x leaves the bits unchanged; drop the final y for the index.
    dense
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c != 0)
        .map(|(u, &c)| {
            debug_assert!(u & 1 == 1);
            (u >> 1, c)
        })
        .collect()
}

/// All linear Kawashima relation rows of weight `k`.
pub fn kawashima_rows(k: usize) -> Vec<SparseRow> {
    let pairs = kawashima_pairs(k);
    par::map(&pairs, |(v, w)| kawashima_row(v, w))
}
