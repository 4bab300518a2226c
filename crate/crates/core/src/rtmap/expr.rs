use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::forest::Forest;
use crate::hpoly::{fmt_rational, parse_rational};
use crate::Rational;

/// A ℚ-linear combination of rooted tree maps, keyed by canonical forest.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct MapExpr {
    terms: BTreeMap<Forest, Rational>,
}

impl MapExpr {
    pub fn zero() -> MapExpr {
        MapExpr::default()
    }

    pub fn forest(f: Forest) -> MapExpr {
        MapExpr::from_terms([(f, Rational::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Forest, Rational)>>(terms: I) -> MapExpr {
        let mut m = MapExpr::zero();
        for (f, c) in terms {
            m.add_term(f, c);
        }
        m
    }

    pub fn add_term(&mut self, f: Forest, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(f).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Forest, &Rational)> {
        self.terms.iter()
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

    pub fn coeff(&self, f: &Forest) -> Rational {
        self.terms.get(f).cloned().unwrap_or_else(Rational::zero)
    }

    /// The common degree of all forests, if there is one.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Forest::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn scale(&self, s: &Rational) -> MapExpr {
        MapExpr::from_terms(self.terms.iter().map(|(f, c)| (f.clone(), c * s)))
    }
}

impl std::ops::Neg for &MapExpr {
    type Output = MapExpr;
    fn neg(self) -> MapExpr {
        self.scale(&-Rational::one())
    }
}

impl From<Forest> for MapExpr {
    fn from(f: Forest) -> MapExpr {
        MapExpr::forest(f)
    }
}

/// Prints terms as `c·code`, e.g. `1·() - 2·(())`; `𝕀` prints as `1·`.
impl fmt::Display for MapExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (forest, c)) in self.terms.iter().enumerate() {
            let mag = fmt_rational(&c.abs());
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{mag}·{forest}")?,
                (0, true) => write!(f, "-{mag}·{forest}")?,
                (_, false) => write!(f, " + {mag}·{forest}")?,
                (_, true) => write!(f, " - {mag}·{forest}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MapExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MapExpr({self})")
    }
}

/// Accepts a bare forest code (`(())`, or empty for `𝕀`) or a signed sum of
/// `c·code` / `c*code` terms.
impl FromStr for MapExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<MapExpr> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() || s.chars().all(|c| c == '(' || c == ')') {
            return Ok(MapExpr::forest(s.parse()?));
        }
        let mut out = MapExpr::zero();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'+' => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ => (false, rest),
            };
            let code_start = body.find(['(', ')', '+', '-']).unwrap_or(body.len());
            let code_len = body[code_start..]
                .find(|c| c != '(' && c != ')')
                .unwrap_or(body.len() - code_start);
            let head = body[..code_start].trim_end_matches(['*', '·']);
            if head.is_empty() && code_len == 0 {
                return Err(Error::Parse(format!("empty term in `{s}`")));
            }
            let mut c = if head.is_empty() {
                Rational::one()
            } else {
                parse_rational(head)?
            };
            if neg {
                c = -c;
            }
            out.add_term(body[code_start..code_start + code_len].parse()?, c);
            rest = &body[code_start + code_len..];
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    forest: String,
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    terms: Vec<TermJson>,
}

impl Serialize for MapExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MapJson {
            terms: self
                .terms
                .iter()
                .map(|(f, c)| TermJson {
                    coeff: fmt_rational(c),
                    forest: f.code().to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MapExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<MapExpr, D::Error> {
        let j = MapJson::deserialize(d)?;
        let mut m = MapExpr::zero();
        for t in j.terms {
            let c = parse_rational(&t.coeff).map_err(serde::de::Error::custom)?;
            let f: Forest = t.forest.parse().map_err(serde::de::Error::custom)?;
            m.add_term(f, c);
        }
        Ok(m)
    }
}
