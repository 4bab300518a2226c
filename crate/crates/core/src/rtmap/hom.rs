//! Homogeneous integer polynomials, the evaluator's working representation.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use crate::hpoly::{Poly, Word};
use crate::Rational;

/// `Σ c·w` with every `w` of length `len`, sorted by bits (= lex order).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomPoly {
    pub len: usize,
    pub terms: Vec<(u64, i128)>,
}

#[inline]
pub(crate) fn add_coeff(a: i128, b: i128) -> i128 {
    a.checked_add(b)
        .expect("rooted tree map coefficient overflowed i128")
}

#[inline]
pub(crate) fn mul_coeff(a: i128, b: i128) -> i128 {
    a.checked_mul(b)
        .expect("rooted tree map coefficient overflowed i128")
}

impl HomPoly {
    pub fn zero(len: usize) -> HomPoly {
        HomPoly {
            len,
            terms: Vec::new(),
        }
    }

    pub fn word(w: Word) -> HomPoly {
        HomPoly {
            len: w.len(),
            terms: vec![(w.bits(), 1)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn neg(&self) -> HomPoly {
        HomPoly {
            len: self.len,
            terms: self.terms.iter().map(|&(b, c)| (b, -c)).collect(),
        }
    }

    /// Builds from an accumulator, dropping zeros and sorting.
    pub fn from_map(len: usize, acc: FxHashMap<u64, i128>) -> HomPoly {
        let mut terms: Vec<(u64, i128)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by_key(|&(b, _)| b);
        HomPoly { len, terms }
    }

    /// Adds `scale · self · rhs` into `acc` (concatenation product).
    pub fn concat_into(&self, rhs: &HomPoly, scale: i128, acc: &mut FxHashMap<u64, i128>) {
        let shift = rhs.len as u32;
        for &(a, ca) in &self.terms {
            let ca = mul_coeff(ca, scale);
            let hi = a << shift;
            for &(b, cb) in &rhs.terms {
                let e = acc.entry(hi | b).or_insert(0);
                *e = add_coeff(*e, mul_coeff(ca, cb));
            }
        }
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_terms(self.terms.iter().map(|&(b, c)| {
            (
                Word::from_bits(b, self.len),
                Rational::from_integer(BigInt::from(c)),
            )
        }))
    }

    /// Converts a homogeneous polynomial with integer coefficients.
    pub fn from_poly(p: &Poly, len: usize) -> Option<HomPoly> {
        let mut terms = Vec::with_capacity(p.len());
        for (w, c) in p.iter() {
            if w.len() != len || !c.is_integer() {
                return None;
            }
            terms.push((w.bits(), c.to_integer().to_i128()?));
        }
        Some(HomPoly { len, terms })
    }

    /// Adds `scale · self` into a rational accumulator keyed by word.
    pub fn add_to(&self, scale: &Rational, acc: &mut crate::hpoly::PolyBuilder) {
        if scale.is_zero() {
            return;
        }
        for &(b, c) in &self.terms {
            acc.add_owned(
                Word::from_bits(b, self.len),
                scale * Rational::from_integer(BigInt::from(c)),
            );
        }
    }
}
