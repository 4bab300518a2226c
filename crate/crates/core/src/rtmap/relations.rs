//! Linear relations among the maps themselves, found by evaluation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use super::{rtm_images, MapExpr};
use crate::forest::{enumerate_forests, Forest};
use crate::hpoly::Word;
use crate::linalg::RowEchelonQ;
use crate::Rational;

/// Kernel of the evaluation map on degree-`degree` forests, probed on all
/// words of degree `1..=max_word_degree`.
#[derive(Clone, Debug, Serialize)]
pub struct RelationBasis {
    pub degree: usize,
    pub max_word_degree: usize,
    pub forest_count: usize,
    pub relations: Vec<MapExpr>,
}

impl RelationBasis {
    pub fn dim(&self) -> usize {
        self.relations.len()
    }
}

/// Scales to coprime integers with a positive leading entry.
fn primitive(v: &[Rational]) -> Vec<Rational> {
    let l = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v.to_vec();
    }
    if ints
        .iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_negative())
    {
        g = -g;
    }
    ints.into_iter()
        .map(|c| Rational::from_integer(c / &g))
        .collect()
}

fn primitive_i128(mut row: Vec<i128>) -> Vec<i128> {
    let g = row.iter().fold(0i128, |acc, &c| acc.gcd(&c));
    if g == 0 {
        return row;
    }
    let sign = if row.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
        -1
    } else {
        1
    };
    for c in row.iter_mut() {
        *c = *c / g * sign;
    }
    row
}

/// Candidate linear relations among the rooted tree maps of degree `d`.
///
/// The result is certified only on the probed words.
pub fn find_map_relations(d: usize, max_word_degree: usize) -> RelationBasis {
    let forests: Vec<Forest> = enumerate_forests(d);
    let words: Vec<Word> = (1..=max_word_degree).flat_map(Word::all_of_len).collect();
    let images = rtm_images(&forests, &words).expect("letter images lie in xHy");
    // One coordinate row per (probe word, output word); duplicates and
    // rescalings carry no new information.
    let mut seen: FxHashSet<Vec<i128>> = FxHashSet::default();
    let mut echelon = RowEchelonQ::new(forests.len());
    for per_word in &images {
        let mut coords: FxHashMap<u64, Vec<i128>> = FxHashMap::default();
        for (j, v) in per_word.iter().enumerate() {
            for &(b, c) in &v.terms {
                coords.entry(b).or_insert_with(|| vec![0; forests.len()])[j] = c;
            }
        }
        let mut keys: Vec<u64> = coords.keys().copied().collect();
        keys.sort_unstable();
        for k in keys {
            let row = primitive_i128(coords.remove(&k).unwrap());
            if echelon.is_full() || !seen.insert(row.clone()) {
                continue;
            }
            echelon.push(
                row.into_iter()
                    .map(|c| Rational::from_integer(c.into()))
                    .collect(),
            );
        }
    }
    let relations = echelon
        .kernel()
        .iter()
        .map(|v| MapExpr::from_terms(forests.iter().cloned().zip(primitive(v))))
        .collect();
    RelationBasis {
        degree: d,
        max_word_degree,
        forest_count: forests.len(),
        relations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpoly::Poly;
    use crate::rtmap::rtm_apply;

    #[test]
    fn low_degrees_are_independent() {
        assert_eq!(find_map_relations(1, 3).dim(), 0);
        assert_eq!(find_map_relations(2, 4).dim(), 0);
        assert_eq!(find_map_relations(3, 5).dim(), 0);
    }

    #[test]
    fn degree_four_relation_annihilates_probes() {
        let r = find_map_relations(4, 6);
        assert_eq!(r.forest_count, 9);
        assert_eq!(r.dim(), 1);
        for rel in &r.relations {
            for n in 1..=7 {
                for w in Word::all_of_len(n) {
                    assert!(rtm_apply(rel, &Poly::word(w)).is_zero(), "{rel} on {w}");
                }
            }
        }
    }
}
