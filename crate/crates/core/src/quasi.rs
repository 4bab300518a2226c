//! The harmonic (stuffle) product on `ℍ¹ = ℚ + ℍy`, the fused product `⊛`
//! and the multiplication operator `H_w`.

use num_bigint::BigInt;
use num_traits::Zero;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::hpoly::{z_decode, z_letter, Composition, Poly, PolyBuilder, Word};
use crate::Rational;

type Counts = Vec<(Word, u128)>;

/// Stuffle product of two compositions as word counts.
///
/// Dynamic programming over suffix pairs `(a[i..], b[j..])`; only two rows of
/// the table are alive at a time. Coefficients are Delannoy-bounded, which
/// fits in `u128` for every word length `Word` can hold.
pub(crate) fn stuffle_monomials(a: &[u32], b: &[u32]) -> Counts {
    let (la, lb) = (a.len(), b.len());
    let suffix_b: Vec<Word> = (0..=lb)
        .map(|j| {
            b[j..]
                .iter()
                .fold(Word::empty(), |acc, &k| acc.concat(z_letter(k)))
        })
        .collect();
    // row[j] = a[i+1..] * b[j..]
    let mut below: Vec<Counts> = suffix_b.iter().map(|w| vec![(*w, 1)]).collect();
    for i in (0..la).rev() {
        let a_tail = a[i..]
            .iter()
            .fold(Word::empty(), |acc, &k| acc.concat(z_letter(k)));
        let mut row: Vec<Counts> = vec![Vec::new(); lb + 1];
        row[lb] = vec![(a_tail, 1)];
        for j in (0..lb).rev() {
            let mut acc: FxHashMap<Word, u128> = FxHashMap::default();
            let mut put = |head: Word, tail: &Counts| {
                for (w, c) in tail {
                    let e = acc.entry(head.concat(*w)).or_insert(0);
                    *e = e.checked_add(*c).expect("stuffle coefficient overflow");
                }
            };
            put(z_letter(a[i]), &below[j]);
            put(z_letter(b[j]), &row[j + 1]);
            put(z_letter(a[i] + b[j]), &below[j + 1]);
            row[j] = acc.into_iter().collect();
        }
        below = row;
    }
    std::mem::take(&mut below[0])
}

fn check_h1(p: &Poly) -> Result<()> {
    match p.words().find(|w| !w.in_h1()) {
        Some(w) => Err(Error::NotInH1(w.to_string())),
        None => Ok(()),
    }
}

fn decode(w: &Word) -> Composition {
    z_decode(w).expect("checked to lie in H^1")
}

/// The harmonic product `p ∗ q`, extended bilinearly.
pub fn harmonic(p: &Poly, q: &Poly) -> Result<Poly> {
    check_h1(p)?;
    check_h1(q)?;
    let mut out = PolyBuilder::new();
    let mut cache: FxHashMap<(Word, Word), Counts> = FxHashMap::default();
    for (v, a) in p.iter() {
        for (w, b) in q.iter() {
            let coeff = a * b;
            // Commutative, so one orientation per pair is enough.
            let key = if v <= w { (*v, *w) } else { (*w, *v) };
            let counts = cache.entry(key).or_insert_with(|| {
                stuffle_monomials(decode(&key.0).parts(), decode(&key.1).parts())
            });
            for (m, c) in counts.iter() {
                out.add_owned(*m, &coeff * Rational::from_integer(BigInt::from(*c)));
            }
        }
    }
    Ok(out.finish())
}

/// `H_w(v) = w ∗ v`.
pub fn h_w(w: &Poly, v: &Poly) -> Result<Poly> {
    harmonic(w, v)
}

/// `z_p v ⊛ z_q w = z_{p+q} (v ∗ w)`, extended bilinearly.
pub fn circledast(p: &Poly, q: &Poly) -> Result<Poly> {
    check_h1(p)?;
    check_h1(q)?;
    if p.is_zero() || q.is_zero() {
        return Ok(Poly::zero());
    }
    if p.words().chain(q.words()).any(|w| w.is_empty()) {
        return Err(Error::ConstantArgument);
    }
    let mut out = PolyBuilder::new();
    for (v, a) in p.iter() {
        let cv = decode(v);
        for (w, b) in q.iter() {
            let cw = decode(w);
            let head = z_letter(cv.parts()[0] + cw.parts()[0]);
            let coeff = a * b;
            for (m, c) in stuffle_monomials(&cv.parts()[1..], &cw.parts()[1..]) {
                out.add_owned(
                    head.concat(m),
                    &coeff * Rational::from_integer(BigInt::from(c)),
                );
            }
        }
    }
    Ok(out.finish())
}

/// The harmonic product of two compositions, as a polynomial in z-letters.
pub fn harmonic_compositions(a: &Composition, b: &Composition) -> Poly {
    Poly::from_terms(
        stuffle_monomials(a.parts(), b.parts())
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (w, Rational::from_integer(BigInt::from(c)))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpoly::is_admissible;
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic(&p("1"), &p("xyy")).unwrap(), p("xyy"));
        assert_eq!(harmonic(&p("xyy"), &p("1")).unwrap(), p("xyy"));
        assert_eq!(harmonic(&p("y"), &p("y")).unwrap(), p("2yy + xy"));
        assert_eq!(harmonic(&p("xy"), &p("y")).unwrap(), p("xyy + yxy + xxy"));
        assert_eq!(harmonic(&p("2"), &p("3y")).unwrap(), p("6y"));
    }

    #[test]
    fn harmonic_rejects_non_h1() {
        assert_eq!(
            harmonic(&p("yx"), &p("y")),
            Err(Error::NotInH1("yx".into()))
        );
        assert!(harmonic(&p("y"), &p("x")).is_err());
    }

    #[test]
    fn circledast_examples() {
        assert_eq!(circledast(&p("y"), &p("y")).unwrap(), p("xy"));
        assert_eq!(circledast(&p("xy"), &p("y")).unwrap(), p("xxy"));
        assert_eq!(circledast(&p("yy"), &p("y")).unwrap(), p("xyy"));
        assert_eq!(circledast(&p("1"), &p("y")), Err(Error::ConstantArgument));
        assert!(matches!(
            circledast(&p("x"), &p("y")),
            Err(Error::NotInH1(_))
        ));
    }

    #[test]
    fn h_w_examples() {
        assert_eq!(h_w(&p("1"), &p("xyxy")).unwrap(), p("xyxy"));
        assert_eq!(h_w(&p("y"), &p("y")).unwrap(), p("2yy + xy"));
        assert_eq!(h_w(&p("y"), &p("xy")).unwrap(), p("xyy + yxy + xxy"));
    }

    #[test]
    fn weight_additive() {
        let a = p("xyy + yxy");
        let b = p("xxyy - yyyy");
        let prod = harmonic(&a, &b).unwrap();
        assert_eq!(prod.homogeneous_degree(), Some(7));
    }

    #[test]
    fn admissible_closed() {
        for a in Word::admissible_of_len(4) {
            for b in Word::admissible_of_len(3) {
                let prod = harmonic(&Poly::word(a), &Poly::word(b)).unwrap();
                assert!(is_admissible(&prod), "{a} * {b}");
            }
        }
    }

    fn h1_word(max: usize) -> impl Strategy<Value = Word> {
        (1..=max).prop_flat_map(|n| {
            (0..(1u64 << (n - 1))).prop_map(move |b| Word::from_bits((b << 1) | 1, n))
        })
    }

    proptest! {
        #[test]
        fn commutative(a in h1_word(5), b in h1_word(4)) {
            let (a, b) = (Poly::word(a), Poly::word(b));
            prop_assert_eq!(harmonic(&a, &b).unwrap(), harmonic(&b, &a).unwrap());
        }

        #[test]
        fn associative(a in h1_word(3), b in h1_word(3), c in h1_word(3)) {
            let (a, b, c) = (Poly::word(a), Poly::word(b), Poly::word(c));
            let l = harmonic(&harmonic(&a, &b).unwrap(), &c).unwrap();
            let r = harmonic(&a, &harmonic(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }
    }
}
