use std::fmt;

use num_traits::One;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::poly::{Poly, PolyBuilder};
use super::word::{Letter, Word};
use crate::error::{Error, Result};
use crate::Rational;

/// Concatenation product, bilinear.
pub fn concat(p: &Poly, q: &Poly) -> Poly {
    if p.len() == 1 {
        let (v, c) = &p.iter().next().unwrap().clone();
        return left_mul(*v, q).scale(c);
    }
    let mut b = PolyBuilder::with_capacity(p.len() * q.len());
    for (v, a) in p.iter() {
        for (w, c) in q.iter() {
            b.add_owned(v.concat(*w), a * c);
        }
    }
    b.finish()
}

/// The concatenation automorphism with `x ↦ x + y`, `y ↦ -y`.
///
/// Applied one letter position at a time, so a homogeneous input of degree
/// `n` costs `O(n · 2^n)` at worst.
pub fn phi(p: &Poly) -> Poly {
    let maxlen = p.max_degree();
    let mut cur: FxHashMap<Word, Rational> = p.iter().cloned().collect();
    for i in 0..maxlen {
        let mut next: FxHashMap<Word, Rational> =
            FxHashMap::with_capacity_and_hasher(cur.len() * 2, Default::default());
        let mut put = |w: Word, c: Rational| {
            *next.entry(w).or_default() += c;
        };
        for (w, c) in cur {
            if w.len() <= i {
                put(w, c);
                continue;
            }
            match w.at(i) {
                Letter::X => {
                    put(w.with_letter(i, Letter::Y), c.clone());
                    put(w, c);
                }
                Letter::Y => put(w, -c),
            }
        }
        cur = next;
    }
    Poly::from_terms(cur)
}

/// The anti-automorphism exchanging `x` and `y`.
pub fn tau(p: &Poly) -> Poly {
    p.map_words(|w| w.dual())
}

/// `L_v(p) = v p`.
pub fn left_mul(v: Word, p: &Poly) -> Poly {
    p.map_words(|w| v.concat(w))
}

/// `R_v(p) = p v`.
pub fn right_mul(v: Word, p: &Poly) -> Poly {
    p.map_words(|w| w.concat(v))
}

/// Strips the trailing `y` of every term.
pub fn right_div_y(p: &Poly) -> Result<Poly> {
    if let Some((w, _)) = p.iter().find(|(w, _)| w.last() != Some(Letter::Y)) {
        return Err(Error::TermNotEndingInY(w.to_string()));
    }
    Ok(p.map_words(|w| w.pop().unwrap().0))
}

/// Strips the leading `x` of every term.
pub fn left_div_x(p: &Poly) -> Result<Poly> {
    if let Some((w, _)) = p.iter().find(|(w, _)| w.first() != Some(Letter::X)) {
        return Err(Error::NotInDomain(w.to_string()));
    }
    Ok(p.map_words(|w| w.suffix(1)))
}

/// Every monomial lies in `ℚ + xℍy`.
pub fn is_admissible(p: &Poly) -> bool {
    p.words().all(|w| w.is_admissible())
}

/// Every monomial lies in `ℚ + ℍy`.
pub fn is_h1(p: &Poly) -> bool {
    p.words().all(|w| w.in_h1())
}

/// A sequence of positive integers `(k_1, …, k_r)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Composition> {
        if parts.contains(&0) {
            return Err(Error::Parse("composition parts must be positive".into()));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&k| k as usize).sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// Empty, or first part at least 2.
    pub fn is_admissible(&self) -> bool {
        self.0.first().is_none_or(|&k| k >= 2)
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// `z_k = x^{k-1} y`.
pub fn z_letter(k: u32) -> Word {
    assert!(k >= 1);
    Word::from_bits(1, k as usize)
}

pub fn z_encode(c: &Composition) -> Word {
    c.parts()
        .iter()
        .fold(Word::empty(), |acc, &k| acc.concat(z_letter(k)))
}

pub fn z_decode(w: &Word) -> Result<Composition> {
    if !w.in_h1() {
        return Err(Error::NotInH1(w.to_string()));
    }
    let mut parts = Vec::with_capacity(w.count(Letter::Y));
    let mut run = 1u32;
    for l in w.letters() {
        match l {
            Letter::X => run += 1,
            Letter::Y => {
                parts.push(run);
                run = 1;
            }
        }
    }
    Ok(Composition(parts))
}

/// `∂_n(x) = x (x+y)^{n-1} y`.
pub fn del_n_of_x(n: usize) -> Poly {
    assert!(n >= 1);
    let one = Rational::one();
    Poly::from_terms(
        Word::all_of_len(n - 1).map(|u| (Word::x().concat(u).concat(Word::y()), one.clone())),
    )
}

/// The derivation `∂_n` with `∂_n(x) = x(x+y)^{n-1}y = -∂_n(y)`.
pub fn del_n(n: usize, p: &Poly) -> Poly {
    let dx = del_n_of_x(n);
    let dy = -&dx;
    let mut b = PolyBuilder::new();
    for (w, c) in p.iter() {
        for i in 0..w.len() {
            let pre = w.prefix(i);
            let post = w.suffix(i + 1);
            let img = match w.at(i) {
                Letter::X => &dx,
                Letter::Y => &dy,
            };
            for (m, a) in img.iter() {
                b.add_owned(pre.concat(*m).concat(post), a * c);
            }
        }
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn concat_examples() {
        assert_eq!(concat(&p("x"), &p("y")), p("xy"));
        assert_eq!(concat(&p("1"), &p("xyx")), p("xyx"));
        assert_eq!(concat(&p("xy - y"), &p("y")), p("xyy - yy"));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&p("x")), p("x + y"));
        assert_eq!(phi(&p("xy")), p("-xy - yy"));
        assert_eq!(phi(&p("1")), p("1"));
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&p("x")), p("y"));
        assert_eq!(tau(&p("xxy")), p("xyy"));
    }

    #[test]
    fn one_sided_multiplication() {
        assert_eq!(right_mul(w("y"), &p("x")), p("xy"));
        assert_eq!(left_mul(w("x"), &p("yy")), p("xyy"));
    }

    #[test]
    fn right_division() {
        assert_eq!(right_div_y(&p("xy")).unwrap(), p("x"));
        assert_eq!(right_div_y(&p("2xyy - xy")).unwrap(), p("2xy - x"));
        assert_eq!(
            right_div_y(&p("x")),
            Err(Error::TermNotEndingInY("x".into()))
        );
    }

    #[test]
    fn z_coding() {
        let c = |v: Vec<u32>| Composition::new(v).unwrap();
        assert_eq!(z_encode(&c(vec![2])), w("xy"));
        assert_eq!(z_encode(&c(vec![2, 1])), w("xyy"));
        assert_eq!(z_decode(&w("xxy")).unwrap(), c(vec![3]));
        assert_eq!(z_decode(&Word::empty()).unwrap(), c(vec![]));
        assert!(matches!(z_decode(&w("yx")), Err(Error::NotInH1(_))));
        assert!(Composition::new(vec![1, 0]).is_err());
    }

    #[test]
    fn subspace_predicates() {
        assert!(is_admissible(&p("xy")));
        assert!(!is_admissible(&p("yx")));
        assert!(is_admissible(&p("1")));
        assert!(is_admissible(&p("3 + xxy")));
        assert!(is_h1(&p("y + xy + 2")));
        assert!(!is_h1(&p("yx")));
    }

    #[test]
    fn del_n_examples() {
        assert_eq!(del_n(1, &p("x")), p("xy"));
        assert_eq!(del_n(2, &p("x")), p("xxy + xyy"));
        assert_eq!(del_n(1, &p("1")), Poly::zero());
        assert_eq!(del_n(1, &p("y")), p("-xy"));
    }

    fn word_strategy(max: usize) -> impl Strategy<Value = Word> {
        (0..=max).prop_flat_map(|n| (0..(1u64 << n)).prop_map(move |b| Word::from_bits(b, n)))
    }

    fn poly_strategy(max: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec((word_strategy(max), -5i64..=5), 0..8).prop_map(|ts| {
            Poly::from_terms(
                ts.into_iter()
                    .map(|(w, c)| (w, Rational::from_integer(c.into()))),
            )
        })
    }

    proptest! {
        #[test]
        fn phi_and_tau_are_involutions(q in poly_strategy(10)) {
            prop_assert_eq!(phi(&phi(&q)), q.clone());
            prop_assert_eq!(tau(&tau(&q)), q);
        }

        #[test]
        fn tau_is_anti_multiplicative(a in word_strategy(6), b in word_strategy(6)) {
            let lhs = tau(&Poly::word(a.concat(b)));
            let rhs = concat(&tau(&Poly::word(b)), &tau(&Poly::word(a)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn tau_intertwines_left_x_and_right_y(q in poly_strategy(8)) {
            prop_assert_eq!(tau(&left_mul(Word::x(), &q)), right_mul(Word::y(), &tau(&q)));
        }

        #[test]
        fn tau_preserves_xhy(b in 0u64..512, n in 0usize..8) {
            let word = Word::x().concat(Word::from_bits(b & ((1 << n) - 1), n)).concat(Word::y());
            prop_assert!(word.dual().in_xhy());
        }

        #[test]
        fn z_code_round_trip(parts in prop::collection::vec(1u32..5, 0..6)) {
            let c = Composition::new(parts).unwrap();
            let word = z_encode(&c);
            prop_assert_eq!(z_decode(&word).unwrap(), c);
            if !word.is_empty() {
                prop_assert_eq!(z_encode(&z_decode(&word).unwrap()), word);
            }
        }

        #[test]
        fn del_n_is_leibniz(n in 1usize..4, a in word_strategy(5), b in word_strategy(5)) {
            let (pa, pb) = (Poly::word(a), Poly::word(b));
            let lhs = del_n(n, &Poly::word(a.concat(b)));
            let rhs = &concat(&del_n(n, &pa), &pb) + &concat(&pa, &del_n(n, &pb));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
