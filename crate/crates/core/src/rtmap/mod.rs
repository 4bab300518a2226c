//! Rooted tree maps: the linear operators on ℍ attached to forests.
//!
//! A forest `f` acts on letters by `•(x) = xy`, `•(y) = -xy`,
//! `B₊(g)(u) = R_y R_{x+2y} R_y^{-1} g(u)` and `(gh)(u) = g(h(u))`, and on
//! longer words through the coproduct, `f(wu) = Σ f′(w) f″(u)`. The empty
//! forest is the identity.

mod eval;
mod expr;
mod hom;
mod relations;

pub use eval::{letter_images, Plan};
pub use expr::MapExpr;
pub use hom::HomPoly;
pub use relations::{find_map_relations, RelationBasis};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rustc_hash::FxHashMap;

use crate::error::Result;
use crate::forest::Forest;
use crate::hpoly::{Letter, Poly, PolyBuilder, Word};
use crate::Rational;

/// `f(u)` for a single letter `u`.
pub fn rtm_letter(f: &Forest, u: Letter) -> Result<Poly> {
    if f.is_empty() {
        return Ok(Poly::word(Word::letter(u)));
    }
    let im = letter_images(f)?;
    Ok(im[matches!(u, Letter::Y) as usize].to_poly())
}

/// `f(p)` for a combination of maps `f`. Panics if a letter image leaves
/// `xℍy`, which the construction rules out.
pub fn rtm_apply(f: &MapExpr, p: &Poly) -> Poly {
    let forests: Vec<Forest> = f.iter().map(|(g, _)| g.clone()).collect();
    let words: Vec<Word> = p.words().collect();
    if forests.is_empty() || words.is_empty() {
        return Poly::zero();
    }
    let plan = Plan::new(&forests).expect("letter images lie in xHy");
    let values = plan.eval(&words);
    // Integer scales (the common case) accumulate in i128; anything else, or
    // anything that would overflow, goes through the rational builder.
    let mut ints: FxHashMap<Word, i128> = FxHashMap::default();
    let mut acc = PolyBuilder::new();
    for ((_, c), per_root) in p.iter().zip(&values) {
        for ((_, a), v) in f.iter().zip(per_root) {
            let scale = a * c;
            let small = scale
                .is_integer()
                .then(|| scale.to_integer().to_i128())
                .flatten();
            let Some(s) = small else {
                v.add_to(&scale, &mut acc);
                continue;
            };
            for &(b, coeff) in &v.terms {
                let w = Word::from_bits(b, v.len);
                let e = ints.entry(w).or_insert(0);
                match coeff.checked_mul(s).and_then(|t| e.checked_add(t)) {
                    Some(sum) => *e = sum,
                    None => acc.add_owned(w, Rational::from_integer(BigInt::from(coeff) * s)),
                }
            }
        }
    }
    for (w, c) in ints {
        if c != 0 {
            acc.add_owned(w, Rational::from_integer(BigInt::from(c)));
        }
    }
    acc.finish()
}

/// `f(p)` for a single forest.
pub fn rtm_apply_forest(f: &Forest, p: &Poly) -> Poly {
    rtm_apply(&MapExpr::forest(f.clone()), p)
}

/// `f(w)` for every forest and word, as `out[word][forest]`.
pub fn rtm_images(forests: &[Forest], words: &[Word]) -> Result<Vec<Vec<HomPoly>>> {
    Ok(Plan::new(forests)?.eval(words))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{enumerate_forests, forests_up_to};
    use crate::hpoly::{del_n, is_admissible};
    use proptest::prelude::*;

    fn f(s: &str) -> Forest {
        s.parse().unwrap()
    }
    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn letter_rules() {
        assert_eq!(rtm_letter(&f("()"), Letter::X).unwrap(), p("xy"));
        assert_eq!(rtm_letter(&f("()"), Letter::Y).unwrap(), p("-xy"));
        assert_eq!(rtm_letter(&f("(())"), Letter::X).unwrap(), p("xxy + 2xyy"));
        assert_eq!(rtm_letter(&f("()()"), Letter::X).unwrap(), p("xyy - xxy"));
        assert_eq!(rtm_letter(&Forest::empty(), Letter::Y).unwrap(), p("y"));
    }

    #[test]
    fn apply_examples() {
        let dot = MapExpr::forest(f("()"));
        assert_eq!(rtm_apply(&dot, &p("xy")), p("xyy - xxy"));
        assert!(rtm_apply(&dot, &Poly::one()).is_zero());
        assert_eq!(
            rtm_apply(&MapExpr::forest(Forest::empty()), &p("xy")),
            p("xy")
        );
        assert_eq!(
            rtm_apply(&dot, &p("xy - 1/2 yx")),
            rtm_apply(&dot, &p("xy")) - rtm_apply(&dot, &p("1/2 yx"))
        );
    }

    /// Independent oracle: the plain recursion of the definition, no plans,
    /// no caching, rational coefficients throughout.
    fn naive(fo: &Forest, w: &Word) -> Poly {
        if fo.is_empty() {
            return Poly::word(*w);
        }
        let Some((head, u)) = w.pop() else {
            return Poly::zero();
        };
        let mut acc = Poly::zero();
        for (l, r, c) in crate::forest::coproduct(fo).iter() {
            let left = naive(l, &head);
            let right = if r.is_empty() {
                Poly::word(Word::letter(u))
            } else {
                naive_letter(r, u)
            };
            acc = acc + (&left * &right).scale(c);
        }
        acc
    }

    fn naive_letter(fo: &Forest, u: Letter) -> Poly {
        if fo.code() == "()" {
            return match u {
                Letter::X => p("xy"),
                Letter::Y => p("-xy"),
            };
        }
        let trees = fo.trees();
        if trees.len() == 1 {
            let g = naive_letter(&trees[0].root_decompose(), u);
            let g = crate::hpoly::right_div_y(&g).unwrap();
            return crate::hpoly::right_mul(Word::y(), &(&g * &p("x + 2y")));
        }
        // Split off the last tree instead of the first to exercise commutativity.
        let (last, rest) = trees.split_last().unwrap();
        let inner = naive_letter(&last.clone().into_forest(), u);
        let g = Forest::from_trees(rest.to_vec());
        inner.map_linear(|w| naive(&g, &w))
    }

    #[test]
    fn evaluator_matches_naive_recursion() {
        for d in 1..=4 {
            for fo in enumerate_forests(d) {
                for n in 0..=5 {
                    for w in Word::all_of_len(n) {
                        assert_eq!(
                            rtm_apply_forest(&fo, &Poly::word(w)),
                            naive(&fo, &w),
                            "{fo} on {w}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn dot_is_first_derivation() {
        let dot = f("()");
        for n in 0..=8 {
            let words: Vec<Word> = Word::all_of_len(n).collect();
            let vals = rtm_images(std::slice::from_ref(&dot), &words).unwrap();
            for (w, v) in words.iter().zip(vals) {
                assert_eq!(v[0].to_poly(), del_n(1, &Poly::word(*w)), "{w}");
            }
        }
    }

    #[test]
    fn letter_images_in_xhy_and_antisymmetric() {
        for fs in forests_up_to(6).iter().skip(1) {
            for fo in fs {
                let ix = rtm_letter(fo, Letter::X).unwrap();
                let iy = rtm_letter(fo, Letter::Y).unwrap();
                assert!(ix.words().all(|w| w.in_xhy()), "{fo}");
                assert!(iy.words().all(|w| w.in_xhy()), "{fo}");
                assert_eq!(iy, -&ix, "{fo}");
            }
        }
    }

    #[test]
    fn admissible_words_stay_admissible() {
        for fs in forests_up_to(5).iter().skip(1) {
            let words: Vec<Word> = (2..=6).flat_map(Word::admissible_of_len).collect();
            let vals = rtm_images(fs, &words).unwrap();
            for row in vals {
                for v in row {
                    assert!(is_admissible(&v.to_poly()));
                }
            }
        }
    }

    #[test]
    fn unit_maps_to_zero() {
        for fo in enumerate_forests(4) {
            assert!(rtm_apply_forest(&fo, &Poly::one()).is_zero());
        }
    }

    #[test]
    fn maps_commute() {
        let all: Vec<Forest> = (1..=3).flat_map(enumerate_forests).collect();
        for g in &all {
            for h in &all {
                for w in Word::all_of_len(4) {
                    let w = Poly::word(w);
                    let gh = rtm_apply_forest(g, &rtm_apply_forest(h, &w));
                    let hg = rtm_apply_forest(h, &rtm_apply_forest(g, &w));
                    assert_eq!(gh, hg, "{g} {h} {w}");
                }
            }
        }
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(((0u64..64, 0usize..=6), -5i64..=5), 0..5).prop_map(|ts| {
            Poly::from_terms(ts.into_iter().map(|((b, n), c)| {
                (
                    Word::from_bits(b & ((1u64 << n) - 1), n),
                    crate::Rational::from_integer(c.into()),
                )
            }))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn linear_and_degree_raising(a in small_poly(), b in small_poly(), i in 0usize..8) {
            let fo = forests_up_to(3).into_iter().flatten().nth(i).unwrap();
            let m = MapExpr::forest(fo.clone());
            prop_assert_eq!(rtm_apply(&m, &(&a + &b)), rtm_apply(&m, &a) + rtm_apply(&m, &b));
            for w in a.words() {
                let img = rtm_apply(&m, &Poly::word(w));
                if !img.is_zero() {
                    prop_assert_eq!(img.homogeneous_degree(), Some(w.len() + fo.degree()));
                }
            }
        }
    }
}
