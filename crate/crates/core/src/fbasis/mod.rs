//! The GF(2) bookkeeping behind `Θ : f ↦ f(x)`.
//!
//! Vectors are listed top to bottom as index `0, 1, …`, and block matrices
//! stack their top block first. `w_d` lists the admissible words of degree
//! `d` in lex order; `f_d` lists `B₊(f_{d−1})` followed by `• f_{d−1}`.

mod matrices;
mod theta;

pub use matrices::{mat_a, mat_b, mat_e, mat_t};
pub use theta::{theta, theta_inv, theta_matrix};

pub use crate::linalg::{det_f2, kernel_q, rank_q, MatF2, MatQ};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::forest::{Forest, Tree};
use crate::hpoly::{right_div_y, right_mul, Letter, Poly, Word};
use crate::rtmap::{rtm_images, rtm_letter};

pub type WordVector = Vec<Word>;
pub type ForestVector = Vec<Forest>;

/// `w_d`: the `2^{d−2}` admissible words of degree `d`, lexicographically.
pub fn word_vector(d: usize) -> Result<WordVector> {
    if d < 2 {
        return Err(Error::DegreeTooSmall { got: d, min: 2 });
    }
    Ok(Word::admissible_of_len(d).collect())
}

/// `f_d`: `f_1 = (•)`, then `B₊(f_{d−1})` stacked over `• f_{d−1}`.
pub fn forest_vector(d: usize) -> Result<ForestVector> {
    if d < 1 {
        return Err(Error::DegreeTooSmall { got: d, min: 1 });
    }
    let mut f = vec![Forest::single()];
    let dot = Forest::single();
    for _ in 1..d {
        let top = f.iter().map(|g| Tree::b_plus(g).into_forest());
        let bottom: Vec<Forest> = f.iter().map(|g| dot.mul(g)).collect();
        f = top.chain(bottom).collect();
    }
    Ok(f)
}

/// Position of an admissible word in `w_d`.
pub(crate) fn admissible_index(w: &Word) -> usize {
    ((w.bits() >> 1) & ((1u64 << (w.len() - 2)) - 1)) as usize
}

/// Coefficients of homogeneous `p` against `w_d`, reduced mod 2.
fn parity_row(p: &Poly, d: usize) -> Vec<u8> {
    let mut row = vec![0u8; 1 << (d - 2)];
    for (w, c) in p.iter() {
        assert!(w.len() == d && w.is_admissible(), "{w} is not in w_{d}");
        assert!(c.is_integer());
        row[admissible_index(w)] = c.numer().is_odd() as u8;
    }
    row
}

fn check_min(d: usize, min: usize) -> Result<()> {
    if d < min {
        Err(Error::DegreeTooSmall { got: d, min })
    } else {
        Ok(())
    }
}

/// `•(w_d) ≡ A_{d−1} w_{d+1} (mod 2)`.
pub fn verify_lemma1(d: usize) -> Result<bool> {
    check_min(d, 2)?;
    let w = word_vector(d)?;
    let images = rtm_images(&[Forest::single()], &w)?;
    let rows: Vec<Vec<u8>> = images
        .iter()
        .map(|v| parity_row(&v[0].to_poly(), d + 1))
        .collect();
    Ok(MatF2::from_rows(&rows) == mat_a(d - 1))
}

/// `w_{d+1} = E⁽²⁾_{d−1} R_y w_d + E⁽¹⁾_{d−1} R_{xy} R_y^{−1} w_d`, exactly.
pub fn verify_lemma3(d: usize) -> Result<bool> {
    check_min(d, 2)?;
    let w = word_vector(d)?;
    let ry: Vec<Poly> = w
        .iter()
        .map(|&v| right_mul(Word::y(), &Poly::word(v)))
        .collect();
    let xy: Word = "xy".parse()?;
    let rxy: Vec<Poly> = w
        .iter()
        .map(|&v| right_div_y(&Poly::word(v)).map(|p| right_mul(xy, &p)))
        .collect::<Result<_>>()?;
    let (e1, e2) = (mat_e(d - 1, 1), mat_e(d - 1, 2));
    let lhs = word_vector(d + 1)?;
    Ok(lhs.iter().enumerate().all(|(i, &target)| {
        let mut acc = Poly::zero();
        for j in 0..w.len() {
            if e2.get(i, j) {
                acc = acc + ry[j].clone();
            }
            if e1.get(i, j) {
                acc = acc + rxy[j].clone();
            }
        }
        acc == Poly::word(target)
    }))
}

/// `det(A_{d−1} E⁽²⁾_{d−1}) ≡ 1 (mod 2)`.
pub fn verify_lemma4(d: usize) -> Result<bool> {
    check_min(d, 2)?;
    mat_a(d - 1).mul(&mat_e(d - 1, 2)).det()
}

/// `det(B_d) ≡ 1 (mod 2)`.
pub fn verify_lemma2(d: usize) -> Result<bool> {
    check_min(d, 1)?;
    mat_b(d).det()
}

/// `f_d(x) ≡ B_d w_{d+1} (mod 2)`.
pub fn verify_prop1(d: usize) -> Result<bool> {
    check_min(d, 1)?;
    let rows: Vec<Vec<u8>> = forest_vector(d)?
        .iter()
        .map(|f| rtm_letter(f, Letter::X).map(|p| parity_row(&p, d + 1)))
        .collect::<Result<_>>()?;
    Ok(MatF2::from_rows(&rows) == mat_b(d))
}
