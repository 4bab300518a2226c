use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::tree::{Forest, Tree};
use crate::hpoly::{fmt_rational, parse_rational};
use crate::Rational;

/// A ℚ-linear combination of ordered forest pairs `left ⊗ right`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorPoly {
    terms: BTreeMap<(Forest, Forest), Rational>,
}

impl TensorPoly {
    pub fn zero() -> TensorPoly {
        TensorPoly::default()
    }

    pub fn unit() -> TensorPoly {
        let mut t = TensorPoly::zero();
        t.add_term(Forest::empty(), Forest::empty(), Rational::one());
        t
    }

    pub fn add_term(&mut self, left: Forest, right: Forest, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((left, right)) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Forest, &Forest, &Rational)> {
        self.terms.iter().map(|((l, r), c)| (l, r, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, left: &Forest, right: &Forest) -> Rational {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Componentwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn mul(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((a, b), c1) in &self.terms {
            for ((c, d), c2) in &other.terms {
                out.add_term(a.mul(c), b.mul(d), c1 * c2);
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    coeff: String,
    left: String,
    right: String,
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    terms: Vec<PairJson>,
}

impl Serialize for TensorPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TensorJson {
            terms: self
                .iter()
                .map(|(l, r, c)| PairJson {
                    coeff: fmt_rational(c),
                    left: l.code().to_string(),
                    right: r.code().to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<TensorPoly, D::Error> {
        let raw = TensorJson::deserialize(d)?;
        let mut out = TensorPoly::zero();
        for t in raw.terms {
            let c = parse_rational(&t.coeff).map_err(serde::de::Error::custom)?;
            let l: Forest = t.left.parse().map_err(serde::de::Error::custom)?;
            let r: Forest = t.right.parse().map_err(serde::de::Error::custom)?;
            out.add_term(l, r, c);
        }
        Ok(out)
    }
}

/// One term `c · left ⊗ right` of a coproduct.
#[derive(Clone, Debug)]
pub struct Split {
    pub left: Forest,
    pub right: Forest,
    pub coeff: Rational,
}

/// Memoized Connes–Kreimer coproducts, one cache per owner.
#[derive(Default)]
pub struct Coproducts {
    cache: FxHashMap<Forest, Arc<Vec<Split>>>,
}

impl Coproducts {
    pub fn new() -> Self {
        Self::default()
    }

    /// `Δ(f)` as a list of splits sorted by `(left, right)`.
    pub fn get(&mut self, f: &Forest) -> Arc<Vec<Split>> {
        if let Some(v) = self.cache.get(f) {
            return v.clone();
        }
        let tp = self.compute(f);
        let v: Arc<Vec<Split>> = Arc::new(
            tp.terms
                .into_iter()
                .map(|((left, right), coeff)| Split { left, right, coeff })
                .collect(),
        );
        self.cache.insert(f.clone(), v.clone());
        v
    }

    fn compute(&mut self, f: &Forest) -> TensorPoly {
        if f.is_empty() {
            return TensorPoly::unit();
        }
        match f.as_tree() {
            Some(t) => self.tree(&t),
            None => {
                let mut acc = TensorPoly::unit();
                for t in f.trees() {
                    let dt = self.as_tensor(&t.into_forest());
                    acc = acc.mul(&dt);
                }
                acc
            }
        }
    }

    fn as_tensor(&mut self, f: &Forest) -> TensorPoly {
        let splits = self.get(f);
        let mut out = TensorPoly::zero();
        for s in splits.iter() {
            out.add_term(s.left.clone(), s.right.clone(), s.coeff.clone());
        }
        out
    }

    /// `Δ(t) = t ⊗ 𝕀 + (id ⊗ B₊) Δ(f_t)`.
    fn tree(&mut self, t: &Tree) -> TensorPoly {
        let mut out = TensorPoly::zero();
        out.add_term(t.clone().into_forest(), Forest::empty(), Rational::one());
        let below = self.get(&t.root_decompose());
        for s in below.iter() {
            out.add_term(
                s.left.clone(),
                Tree::b_plus(&s.right).into_forest(),
                s.coeff.clone(),
            );
        }
        out
    }
}

/// The coproduct `Δ(f)`.
pub fn coproduct(f: &Forest) -> TensorPoly {
    Coproducts::new().as_tensor(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::enumerate_forests;

    fn f(s: &str) -> Forest {
        s.parse().unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn single_vertex() {
        let d = coproduct(&f("()"));
        assert_eq!(d.len(), 2);
        assert_eq!(d.coeff(&f("()"), &Forest::empty()), q(1));
        assert_eq!(d.coeff(&Forest::empty(), &f("()")), q(1));
    }

    #[test]
    fn cherry() {
        let d = coproduct(&f("(()())"));
        let mut want = TensorPoly::zero();
        want.add_term(f("(()())"), Forest::empty(), q(1));
        want.add_term(f("()()"), f("()"), q(1));
        want.add_term(f("()"), f("(())"), q(2));
        want.add_term(Forest::empty(), f("(()())"), q(1));
        assert_eq!(d, want);
    }

    #[test]
    fn unit_terms_and_degrees() {
        for d in 0..=6 {
            for g in enumerate_forests(d) {
                let dg = coproduct(&g);
                if !g.is_empty() {
                    assert_eq!(dg.coeff(&g, &Forest::empty()), q(1));
                    assert_eq!(dg.coeff(&Forest::empty(), &g), q(1));
                }
                for (l, r, _) in dg.iter() {
                    assert_eq!(l.degree() + r.degree(), d);
                }
            }
        }
    }

    #[test]
    fn multiplicative_on_small_pairs() {
        let fs: Vec<Forest> = (0..=3).flat_map(enumerate_forests).collect();
        for a in &fs {
            for b in &fs {
                assert_eq!(coproduct(&a.mul(b)), coproduct(a).mul(&coproduct(b)));
            }
        }
    }

    #[test]
    fn json_shape() {
        let d = coproduct(&f("()"));
        let j = serde_json::to_string(&d).unwrap();
        assert_eq!(
            j,
            r#"{"terms":[{"coeff":"1","left":"","right":"()"},{"coeff":"1","left":"()","right":""}]}"#
        );
        let back: TensorPoly = serde_json::from_str(&j).unwrap();
        assert_eq!(back, d);
    }
}
