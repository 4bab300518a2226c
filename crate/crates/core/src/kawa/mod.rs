//! Rooted-tree-map relations versus the linear part of the Kawashima
//! relations `L_x φ(v ∗ w)`, and the bridge `χ_x = τ L_x φ` between them.

mod rank;
pub mod reference;
mod rows;

pub use rank::{rank_report, rank_table, verify_span_equality, RankMethod, RankReport};
pub use rows::{kawashima_rows, rtm_rows, SparseRow};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fbasis::{forest_vector, theta_inv};
use crate::forest::{enumerate_forests, Forest};
use crate::hpoly::{left_div_x, left_mul, phi, tau, Letter, Poly, Word};
use crate::quasi::harmonic;
use crate::rtmap::{rtm_apply, MapExpr};

/// `χ_x = τ L_x φ`, defined on `ℚ + ℍy`.
pub fn chi_x(p: &Poly) -> Result<Poly> {
    if let Some(w) = p.words().find(|w| !w.in_h1()) {
        return Err(Error::NotInDomain(w.to_string()));
    }
    Ok(tau(&left_mul(Word::x(), &phi(p))))
}

/// `χ_x⁻¹ = φ L_x⁻¹ τ`, defined on `xℍy + ℚy`.
pub fn chi_x_inv(p: &Poly) -> Result<Poly> {
    if let Some(w) = p.words().find(|w| !(w.in_xhy() || *w == Word::y())) {
        return Err(Error::NotInDomain(w.to_string()));
    }
    Ok(phi(&left_div_x(&tau(p))?))
}

/// Nonempty words ending in `y` of length `1..=n`.
fn hy_monomials(n: usize) -> impl Iterator<Item = Word> {
    (1..=n).flat_map(Word::ending_in_y_of_len)
}

/// Unordered pairs `{v, w}` of `ℍy` monomials with `|v| + |w| = k − 1`.
pub(crate) fn kawashima_pairs(k: usize) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for a in 1..=(k - 1) / 2 {
        let b = k - 1 - a;
        for v in Word::ending_in_y_of_len(a) {
            for w in Word::ending_in_y_of_len(b) {
                if a < b || v <= w {
                    out.push((v, w));
                }
            }
        }
    }
    out
}

/// `L_x φ(v ∗ w)` over unordered pairs of `ℍy` monomials with
/// `deg v + deg w = k − 1`.
pub fn kawashima_generators(k: usize) -> Result<Vec<Poly>> {
    if k < 3 {
        return Err(Error::DegreeTooSmall { got: k, min: 3 });
    }
    Ok(kawashima_pairs(k)
        .into_iter()
        .map(|(v, w)| {
            let vw = harmonic(&Poly::word(v), &Poly::word(w)).expect("both end in y");
            left_mul(Word::x(), &phi(&vw))
        })
        .collect())
}

/// The forests generating degree-`d` maps: `f_d`, or every forest.
pub(crate) fn generating_forests(d: usize, all_forests: bool) -> Vec<Forest> {
    if all_forests {
        enumerate_forests(d)
    } else {
        forest_vector(d).expect("d >= 1")
    }
}

/// `f(w)` for `f` in `f_d` (or all degree-`d` forests), `1 ≤ d ≤ k − 2`,
/// and `w` admissible of degree `k − d`.
pub fn rtm_generators(k: usize, all_forests: bool) -> Result<Vec<Poly>> {
    if k < 3 {
        return Err(Error::DegreeTooSmall { got: k, min: 3 });
    }
    Ok(rtm_rows(k, all_forests)
        .into_iter()
        .map(|row| rows::row_to_poly(&row, k))
        .collect())
}

/// One sampled rooted-tree-map relation `f(w)`.
#[derive(Clone, Debug)]
pub struct SampledRelation {
    pub forest: Forest,
    pub word: Word,
    pub image: Poly,
}

/// `n` relations `f(w)` of weight `k` drawn uniformly (with replacement) from
/// the `f_d` generators, reproducibly from `seed`.
pub fn sample_rtm_generators(k: usize, n: usize, seed: u64) -> Result<Vec<SampledRelation>> {
    if k < 3 {
        return Err(Error::DegreeTooSmall { got: k, min: 3 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = (k - 2) << (k - 3);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        // Every degree block holds 2^{k−3} generators.
        let i = rng.random_range(0..total);
        let d = 1 + i / (1 << (k - 3));
        let j = i % (1 << (k - 3));
        let forest = forest_vector(d)?[j >> (k - d - 2)].clone();
        let word = Word::admissible_of_len(k - d)
            .nth(j & ((1 << (k - d - 2)) - 1))
            .unwrap();
        let image = rtm_apply(&MapExpr::forest(forest.clone()), &Poly::word(word));
        out.push(SampledRelation {
            forest,
            word,
            image,
        });
    }
    Ok(out)
}

/// `f χ_x = χ_x H_w` with `w = χ_x⁻¹ f(y)`, on `ℍy` monomials of degree
/// `≤ n` (and on `1`).
pub fn intertwine_check(f: &MapExpr, n: usize) -> Result<bool> {
    let fy = f
        .iter()
        .map(|(g, c)| crate::rtmap::rtm_letter(g, Letter::Y).map(|p| p.scale(c)))
        .try_fold(Poly::zero(), |acc, p| p.map(|p| acc + p))?;
    let w = chi_x_inv(&fy)?;
    for v in std::iter::once(Word::empty()).chain(hy_monomials(n)) {
        let v = Poly::word(v);
        let lhs = rtm_apply(f, &chi_x(&v)?);
        let rhs = chi_x(&harmonic(&w, &v)?)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Writes `L_x φ(w ∗ v)` as a rooted tree map image:
/// `f = −Θ⁻¹(χ_x(w))` and `u = χ_x(v)` satisfy `f(u) = χ_x(w ∗ v)`.
pub fn kawashima_decompose(v: &Word, w: &Word) -> Result<(MapExpr, Poly)> {
    if v.is_empty() || w.is_empty() {
        return Err(Error::EmptyArgument);
    }
    for x in [v, w] {
        if !x.in_h1() {
            return Err(Error::NotInH1(x.to_string()));
        }
    }
    let f = -&theta_inv(&chi_x(&Poly::word(*w))?)?;
    let u = chi_x(&Poly::word(*v))?;
    Ok((f, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpoly::is_admissible;
    use crate::linalg::RowEchelonQ;
    use crate::Rational;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }
    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi_x(&p("y")).unwrap(), p("-xy"));
        assert_eq!(chi_x(&p("yy")).unwrap(), p("xxy"));
        assert_eq!(chi_x_inv(&p("xy")).unwrap(), p("-y"));
        assert_eq!(chi_x(&p("yx")), Err(Error::NotInDomain("yx".into())));
        assert_eq!(chi_x_inv(&p("yy")), Err(Error::NotInDomain("yy".into())));
        assert_eq!(chi_x_inv(&chi_x(&p("1")).unwrap()).unwrap(), p("1"));
    }

    #[test]
    fn chi_is_a_degree_shifting_bijection() {
        for d in 1..=9 {
            let mut ech = RowEchelonQ::new(1 << (d - 1));
            for v in Word::ending_in_y_of_len(d) {
                let img = chi_x(&Poly::word(v)).unwrap();
                assert!(img.words().all(|u| u.in_xhy() && u.len() == d + 1));
                assert_eq!(chi_x_inv(&img).unwrap(), Poly::word(v));
                let mut row = vec![Rational::default(); 1 << (d - 1)];
                for (u, c) in img.iter() {
                    row[crate::fbasis::admissible_index(u)] = c.clone();
                }
                ech.push(row);
            }
            assert!(ech.is_full());
            for u in crate::fbasis::word_vector(d + 1)
                .unwrap()
                .into_iter()
                .step_by(5)
            {
                let q = Poly::word(u);
                assert_eq!(chi_x(&chi_x_inv(&q).unwrap()).unwrap(), q);
            }
        }
    }

    #[test]
    fn generator_examples() {
        assert_eq!(kawashima_generators(3).unwrap(), vec![p("xyy - xxy")]);
        assert_eq!(kawashima_generators(4).unwrap().len(), 2);
        assert!(kawashima_generators(5).unwrap().iter().all(is_admissible));
        assert_eq!(rtm_generators(3, false).unwrap(), vec![p("xyy - xxy")]);
        for k in 3..=9 {
            assert_eq!(rtm_generators(k, false).unwrap().len(), (k - 2) << (k - 3));
        }
    }

    #[test]
    fn sampler_is_reproducible_and_valid() {
        let a = sample_rtm_generators(6, 12, 7).unwrap();
        let b = sample_rtm_generators(6, 12, 7).unwrap();
        assert_eq!(a.len(), 12);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!((&x.forest, x.word, &x.image), (&y.forest, y.word, &y.image));
            assert_eq!(x.forest.degree() + x.word.len(), 6);
            assert!(x.word.is_admissible());
            assert!(is_admissible(&x.image));
        }
    }

    #[test]
    fn intertwining_on_small_forests() {
        for d in 1..=3 {
            for f in forest_vector(d).unwrap() {
                assert!(
                    intertwine_check(&MapExpr::forest(f.clone()), 4).unwrap(),
                    "{f}"
                );
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let (f, u) = kawashima_decompose(&w("y"), &w("y")).unwrap();
        assert_eq!(f, "()".parse().unwrap());
        assert_eq!(u, p("-xy"));
        assert_eq!(rtm_apply(&f, &u), p("xxy - xyy"));
        let (f, u) = kawashima_decompose(&w("y"), &w("yy")).unwrap();
        let rhs = chi_x(&harmonic(&p("yy"), &p("y")).unwrap()).unwrap();
        assert_eq!(rtm_apply(&f, &u), rhs);
        let (f, _) = kawashima_decompose(&w("xy"), &w("y")).unwrap();
        assert_eq!(f.homogeneous_degree(), Some(1));
        assert_eq!(
            kawashima_decompose(&Word::empty(), &w("y")),
            Err(Error::EmptyArgument)
        );
    }

    fn span(rows: &[Poly], k: usize) -> RowEchelonQ {
        let mut e = RowEchelonQ::new(1 << (k - 2));
        for r in rows {
            e.push(coords(r, k));
        }
        e
    }

    fn coords(r: &Poly, k: usize) -> Vec<Rational> {
        let mut v = vec![Rational::default(); 1 << (k - 2)];
        for (u, c) in r.iter() {
            v[crate::fbasis::admissible_index(u)] = c.clone();
        }
        v
    }

    fn contains(e: &RowEchelonQ, v: Vec<Rational>) -> bool {
        let mut f = e.clone();
        !f.push(v)
    }

    #[test]
    fn duality_lies_in_kawashima_span() {
        for k in 3..=8 {
            let gens = kawashima_generators(k).unwrap();
            let e = span(&gens, k);
            for u in crate::fbasis::word_vector(k).unwrap() {
                let q = Poly::word(u);
                assert!(contains(&e, coords(&(&q - &tau(&q)), k)), "(1-τ){u}");
            }
            for g in &gens {
                assert!(contains(&e, coords(&tau(g), k)));
            }
        }
    }

    #[test]
    fn decomposition_identity_and_membership() {
        for total in 2..=6 {
            let k = total + 1;
            let e = span(&rtm_generators(k, false).unwrap(), k);
            for (v, w) in kawashima_pairs(k)
                .into_iter()
                .flat_map(|(a, b)| [(a, b), (b, a)])
            {
                let (f, u) = kawashima_decompose(&v, &w).unwrap();
                assert!(is_admissible(&u));
                let wv = harmonic(&Poly::word(w), &Poly::word(v)).unwrap();
                assert_eq!(rtm_apply(&f, &u), chi_x(&wv).unwrap(), "{v} {w}");
                let kaw = left_mul(Word::x(), &phi(&wv));
                assert!(contains(&e, coords(&kaw, k)));
            }
        }
    }
}
