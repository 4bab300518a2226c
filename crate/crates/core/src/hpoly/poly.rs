use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::word::{Letter, Word};
use crate::error::{Error, Result};
use crate::Rational;

/// A finite ℚ-linear combination of words.
///
/// Terms are kept sorted by word (lexicographic, `x < y`) with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Word, Rational)>,
}

/// Accumulates terms before producing a canonical [`Poly`].
#[derive(Default)]
pub struct PolyBuilder {
    acc: FxHashMap<Word, Rational>,
}

impl PolyBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        PolyBuilder {
            acc: FxHashMap::with_capacity_and_hasher(n, Default::default()),
        }
    }

    pub fn add(&mut self, w: Word, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.acc.get_mut(&w) {
            Some(e) => *e += c,
            None => {
                self.acc.insert(w, c.clone());
            }
        }
    }

    pub fn add_owned(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.acc.get_mut(&w) {
            Some(e) => *e += c,
            None => {
                self.acc.insert(w, c);
            }
        }
    }

    /// Adds `scale * p`.
    pub fn add_poly(&mut self, p: &Poly, scale: &Rational) {
        if scale.is_one() {
            for (w, c) in p.iter() {
                self.add(*w, c);
            }
        } else {
            for (w, c) in p.iter() {
                self.add_owned(*w, c * scale);
            }
        }
    }

    pub fn finish(self) -> Poly {
        let mut terms: Vec<(Word, Rational)> =
            self.acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| t.0);
        Poly { terms }
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::word(Word::empty())
    }

    pub fn constant(c: Rational) -> Poly {
        Poly::monomial(Word::empty(), c)
    }

    pub fn word(w: Word) -> Poly {
        Poly::monomial(w, Rational::one())
    }

    pub fn monomial(w: Word, c: Rational) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(w, c)],
            }
        }
    }

    pub fn x() -> Poly {
        Poly::word(Word::x())
    }

    pub fn y() -> Poly {
        Poly::word(Word::y())
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I: IntoIterator<Item = (Word, Rational)>>(terms: I) -> Poly {
        let mut b = PolyBuilder::new();
        for (w, c) in terms {
            b.add_owned(w, c);
        }
        b.finish()
    }

    /// Builds from terms already sorted by word, distinct, nonzero.
    pub fn iter(&self) -> impl ExactSizeIterator<Item = &(Word, Rational)> + '_ {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        self.terms.iter().map(|(w, _)| *w)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        match self.terms.binary_search_by(|(t, _)| t.cmp(w)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// The common degree of all terms, if there is one. `None` for zero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.terms.first()?.0.len();
        self.terms.iter().all(|(w, _)| w.len() == d).then_some(d)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.iter().map(|(w, _)| w.len()).max().unwrap_or(0)
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(w, c)| (*w, c * s)).collect(),
        }
    }

    /// Applies a linear map given on words, extended linearly.
    pub fn map_linear<F: FnMut(Word) -> Poly>(&self, mut f: F) -> Poly {
        let mut b = PolyBuilder::new();
        for (w, c) in self.iter() {
            b.add_poly(&f(*w), c);
        }
        b.finish()
    }

    /// Applies a map on words that is injective, keeping coefficients.
    pub fn map_words<F: FnMut(Word) -> Word>(&self, mut f: F) -> Poly {
        let mut terms: Vec<(Word, Rational)> =
            self.terms.iter().map(|(w, c)| (f(*w), c.clone())).collect();
        terms.sort_unstable_by_key(|t| t.0);
        if terms.windows(2).any(|p| p[0].0 == p[1].0) {
            return Poly::from_terms(terms);
        }
        Poly { terms }
    }

    /// Appends letter `l` to every word.
    pub fn push_letter(&self, l: Letter) -> Poly {
        // Appending a fixed letter preserves the word order.
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.push(l), c.clone()))
                .collect(),
        }
    }

    pub fn into_terms(self) -> Vec<(Word, Rational)> {
        self.terms
    }
}

fn merge(a: &Poly, b: &Poly, negate_b: bool) -> Poly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let sb = |c: &Rational| if negate_b { -c } else { c.clone() };
    while i < a.terms.len() && j < b.terms.len() {
        let (wa, ca) = &a.terms[i];
        let (wb, cb) = &b.terms[j];
        match wa.cmp(wb) {
            std::cmp::Ordering::Less => {
                out.push((*wa, ca.clone()));
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((*wb, sb(cb)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { ca - cb } else { ca + cb };
                if !c.is_zero() {
                    out.push((*wa, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    out.extend(b.terms[j..].iter().map(|(w, c)| (*w, sb(c))));
    Poly { terms: out }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        merge(self, rhs, false)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        merge(&self, &rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        merge(self, rhs, true)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        merge(&self, &rhs, true)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(w, c)| (*w, -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for (_, c) in self.terms.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

/// Concatenation product.
impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        super::ops::concat(self, rhs)
    }
}

impl From<Word> for Poly {
    fn from(w: Word) -> Poly {
        Poly::word(w)
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim().replace('−', "-");
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if w.is_empty() {
                f.write_str(&fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{} {w}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Poly {
    type Err = Error;

    /// Accepts `±c w ± c w …` with optional `*`/`·` between coefficient and
    /// word; whitespace is ignored and `−` is read as `-`.
    fn from_str(s: &str) -> Result<Poly> {
        let s: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '−' { '-' } else { c })
            .collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        let mut b = PolyBuilder::new();
        while i < chars.len() {
            let mut sign = Rational::one();
            let mut saw_sign = false;
            while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                if chars[i] == '-' {
                    sign = -sign;
                }
                saw_sign = true;
                i += 1;
            }
            if i > 0 && !saw_sign {
                return Err(Error::Parse(format!("expected sign before term in `{s}`")));
            }
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            let coeff_str: String = chars[start..i].iter().collect();
            if i < chars.len() && (chars[i] == '*' || chars[i] == '·') {
                if coeff_str.is_empty() {
                    return Err(Error::Parse("`*` without coefficient".into()));
                }
                i += 1;
            }
            let wstart = i;
            while i < chars.len() && (chars[i] == 'x' || chars[i] == 'y') {
                i += 1;
            }
            let word_str: String = chars[wstart..i].iter().collect();
            if coeff_str.is_empty() && word_str.is_empty() {
                return Err(Error::Parse(format!("empty term in `{s}`")));
            }
            let coeff = if coeff_str.is_empty() {
                Rational::one()
            } else {
                parse_rational(&coeff_str)?
            };
            let word = if word_str.is_empty() {
                Word::empty()
            } else {
                word_str.parse()?
            };
            b.add_owned(word, sign * coeff);
            if i < chars.len() && chars[i] != '+' && chars[i] != '-' {
                return Err(Error::Parse(format!("unexpected `{}` in `{s}`", chars[i])));
            }
        }
        Ok(b.finish())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    word: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermJson {
                    coeff: fmt_rational(c),
                    word: w.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Poly, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let mut b = PolyBuilder::new();
        for t in raw.terms {
            let c = parse_rational(&t.coeff).map_err(serde::de::Error::custom)?;
            let w: Word = t.word.parse().map_err(serde::de::Error::custom)?;
            b.add_owned(w, c);
        }
        Ok(b.finish())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print_canonical() {
        assert_eq!(p("xyy − xxy").to_string(), "-xxy + xyy");
        assert_eq!(p("2xyy - 1/2 xy + 3").to_string(), "3 - 1/2 xy + 2 xyy");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("xy - xy").to_string(), "0");
        assert_eq!(p("1").to_string(), "1");
        assert_eq!(p("2*xy").to_string(), "2 xy");
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<Poly>().is_err());
        assert!("xz".parse::<Poly>().is_err());
        assert!("x y".parse::<Poly>().is_ok()); // whitespace is dropped: word xy
        assert!("2/0 x".parse::<Poly>().is_err());
        assert!("x +".parse::<Poly>().is_err());
    }

    #[test]
    fn arithmetic_merges() {
        let a = p("x + 2y");
        let b = p("y - x");
        assert_eq!((&a + &b).to_string(), "3 y");
        assert_eq!((&a - &a), Poly::zero());
        assert_eq!((-&b).to_string(), "x - y");
    }

    #[test]
    fn json_shape() {
        let a = p("xyy - xxy");
        let j = serde_json::to_string(&a).unwrap();
        assert_eq!(
            j,
            r#"{"terms":[{"coeff":"-1","word":"xxy"},{"coeff":"1","word":"xyy"}]}"#
        );
        let back: Poly = serde_json::from_str(&j).unwrap();
        assert_eq!(back, a);
    }
}
