//! The rooted tree map evaluator.
//!
//! Letter images are cached process-wide. Applying maps to words goes
//! through a [`Plan`]: the closure of the requested forests under taking
//! left factors of `Δ`, with each coproduct flattened to index triples.
//! Words are then walked in trie order so shared prefixes are evaluated
//! once, using
//! `g(pu) = Σ g′(p) · g″(u)` over `Δ(g) = Σ g′ ⊗ g″`.

use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_traits::ToPrimitive;
use rustc_hash::FxHashMap;

use super::hom::{mul_coeff, HomPoly};
use crate::error::{Error, Result};
use crate::forest::{Coproducts, Forest};
use crate::hpoly::{Letter, Word};
use crate::par;

/// Images of `x` and `y`.
pub type LetterImages = Arc<[HomPoly; 2]>;

#[derive(Default)]
struct Engine {
    letters: RwLock<FxHashMap<Forest, LetterImages>>,
    coproducts: Mutex<Coproducts>,
}

fn engine() -> &'static Engine {
    static ENGINE: OnceLock<Engine> = OnceLock::new();
    ENGINE.get_or_init(Engine::default)
}

fn idx(u: Letter) -> usize {
    match u {
        Letter::X => 0,
        Letter::Y => 1,
    }
}

/// `R_y R_{x+2y} R_y^{-1}` on a homogeneous polynomial.
fn graft(p: &HomPoly) -> Result<HomPoly> {
    let mut terms = Vec::with_capacity(2 * p.terms.len());
    for &(b, c) in &p.terms {
        if b & 1 == 0 {
            let w = Word::from_bits(b, p.len);
            return Err(Error::TermNotEndingInY(w.to_string()));
        }
        let stem = (b >> 1) << 2;
        terms.push((stem | 0b01, c));
        terms.push((stem | 0b11, mul_coeff(c, 2)));
    }
    terms.sort_unstable_by_key(|&(b, _)| b);
    Ok(HomPoly {
        len: p.len + 1,
        terms,
    })
}

/// `f(x)` and `f(y)` for a nonempty forest.
pub fn letter_images(f: &Forest) -> Result<LetterImages> {
    assert!(!f.is_empty(), "the empty forest acts as the identity");
    if let Some(v) = engine().letters.read().unwrap().get(f) {
        return Ok(v.clone());
    }
    let images = compute_letter_images(f)?;
    let v: LetterImages = Arc::new(images);
    engine()
        .letters
        .write()
        .unwrap()
        .entry(f.clone())
        .or_insert_with(|| v.clone());
    Ok(v)
}

fn compute_letter_images(f: &Forest) -> Result<[HomPoly; 2]> {
    if f.code() == "()" {
        let xy = HomPoly {
            len: 2,
            terms: vec![(0b01, 1)],
        };
        return Ok([xy.clone(), xy.neg()]);
    }
    let mut trees = f.trees();
    if trees.len() == 1 {
        let below = letter_images(&trees[0].root_decompose())?;
        return Ok([graft(&below[0])?, graft(&below[1])?]);
    }
    // f = g·h with h a single tree: f(u) = g(h(u)).
    let h = trees.remove(0).into_forest();
    let g = Forest::from_trees(trees);
    let hu = letter_images(&h)?;
    let plan = Plan::new(std::slice::from_ref(&g))?;
    Ok([plan.apply_hom(0, &hu[0]), plan.apply_hom(0, &hu[1])])
}

/// Right factor of one split.
#[derive(Clone)]
enum Right {
    Unit,
    Image(LetterImages),
}

struct Node {
    degree: usize,
    splits: Vec<(usize, Right, i128)>,
}

/// A closed set of forests ready for evaluation on words.
pub struct Plan {
    nodes: Vec<Node>,
    roots: Vec<usize>,
}

impl Plan {
    /// Prepares evaluation of `roots` (the empty forest is allowed).
    pub fn new(roots: &[Forest]) -> Result<Plan> {
        let mut index: FxHashMap<Forest, usize> = FxHashMap::default();
        let mut order: Vec<Forest> = vec![Forest::empty()];
        index.insert(Forest::empty(), 0);
        let mut root_ids = Vec::with_capacity(roots.len());
        for r in roots {
            let id = *index.entry(r.clone()).or_insert_with(|| {
                order.push(r.clone());
                order.len() - 1
            });
            root_ids.push(id);
        }
        let mut raw = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let f = order[i].clone();
            let splits = engine().coproducts.lock().unwrap().get(&f);
            raw.push(splits.clone());
            if !f.is_empty() {
                for s in splits.iter() {
                    if !index.contains_key(&s.left) {
                        index.insert(s.left.clone(), order.len());
                        order.push(s.left.clone());
                    }
                }
            }
            i += 1;
        }
        let mut nodes = Vec::with_capacity(order.len());
        for (f, splits) in order.iter().zip(raw) {
            let mut list = Vec::new();
            if !f.is_empty() {
                for s in splits.iter() {
                    let right = if s.right.is_empty() {
                        Right::Unit
                    } else {
                        Right::Image(letter_images(&s.right)?)
                    };
                    let c = s
                        .coeff
                        .to_integer()
                        .to_i128()
                        .expect("coproduct coefficient");
                    list.push((index[&s.left], right, c));
                }
            }
            nodes.push(Node {
                degree: f.degree(),
                splits: list,
            });
        }
        Ok(Plan {
            nodes,
            roots: root_ids,
        })
    }

    /// Values of every node on the empty word.
    fn base(&self) -> Vec<HomPoly> {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, n)| {
                if i == 0 {
                    HomPoly::word(Word::empty())
                } else {
                    HomPoly::zero(n.degree)
                }
            })
            .collect()
    }

    fn extend_node(&self, prev: &[HomPoly], node: usize, u: Letter, plen: usize) -> HomPoly {
        let n = &self.nodes[node];
        let len = n.degree + plen + 1;
        if node == 0 {
            let mut acc = FxHashMap::default();
            prev[0].concat_into(&HomPoly::word(Word::letter(u)), 1, &mut acc);
            return HomPoly::from_map(len, acc);
        }
        let unit = HomPoly::word(Word::letter(u));
        let mut acc = FxHashMap::default();
        for (left, right, c) in &n.splits {
            let lv = &prev[*left];
            if lv.is_zero() {
                continue;
            }
            let rv = match right {
                Right::Unit => &unit,
                Right::Image(im) => &im[idx(u)],
            };
            lv.concat_into(rv, *c, &mut acc);
        }
        HomPoly::from_map(len, acc)
    }

    /// Values of the roots on each word of a sorted, duplicate-free list.
    fn eval_sorted(&self, words: &[Word]) -> Vec<Vec<HomPoly>> {
        let mut out = Vec::with_capacity(words.len());
        let mut levels: Vec<Vec<HomPoly>> = vec![self.base()];
        let mut path = Word::empty();
        for (i, w) in words.iter().enumerate() {
            let mut common = 0;
            while common < path.len() && common < w.len() && path.at(common) == w.at(common) {
                common += 1;
            }
            common = common.min(levels.len() - 1);
            levels.truncate(common + 1);
            path = w.prefix(common);
            let extends_later = |w: &Word| {
                words
                    .get(i + 1)
                    .is_some_and(|n| n.len() > w.len() && n.prefix(w.len()) == *w)
            };
            if w.len() == common {
                let top = levels.last().unwrap();
                out.push(self.roots.iter().map(|&r| top[r].clone()).collect());
                continue;
            }
            for j in common..w.len() {
                let u = w.at(j);
                let prev = levels.last().unwrap();
                let last = j + 1 == w.len();
                if last && !extends_later(w) {
                    out.push(
                        self.roots
                            .iter()
                            .map(|&r| self.extend_node(prev, r, u, j))
                            .collect(),
                    );
                } else {
                    let next: Vec<HomPoly> = (0..self.nodes.len())
                        .map(|g| self.extend_node(prev, g, u, j))
                        .collect();
                    levels.push(next);
                    path = w.prefix(j + 1);
                    if last {
                        let top = levels.last().unwrap();
                        out.push(self.roots.iter().map(|&r| top[r].clone()).collect());
                    }
                }
            }
        }
        out
    }

    /// Values `roots × words` as `out[word][root]`, in the given word order.
    ///
    /// Words are split into chunks that are evaluated in parallel.
    pub fn eval(&self, words: &[Word]) -> Vec<Vec<HomPoly>> {
        let mut order: Vec<usize> = (0..words.len()).collect();
        order.sort_by(|&a, &b| words[a].cmp(&words[b]));
        order.dedup_by(|a, b| words[*a] == words[*b]);
        let sorted: Vec<Word> = order.iter().map(|&i| words[i]).collect();
        let chunk = par::chunk_len(sorted.len()).max(64);
        let values = par::map_chunks(&sorted, chunk, |c| self.eval_sorted(c));
        let mut pos: FxHashMap<Word, usize> = FxHashMap::default();
        for (k, w) in sorted.iter().enumerate() {
            pos.insert(*w, k);
        }
        words.iter().map(|w| values[pos[w]].clone()).collect()
    }

    /// `root(q)` for a homogeneous polynomial `q`.
    pub fn apply_hom(&self, root: usize, q: &HomPoly) -> HomPoly {
        let words: Vec<Word> = q
            .terms
            .iter()
            .map(|&(b, _)| Word::from_bits(b, q.len))
            .collect();
        let degree = self.nodes[self.roots[root]].degree;
        let len = degree + q.len;
        let values = self.eval_sorted(&words);
        let mut acc: FxHashMap<u64, i128> = FxHashMap::default();
        for ((_, c), v) in q.terms.iter().zip(values) {
            for &(b, d) in &v[root].terms {
                let e = acc.entry(b).or_insert(0);
                *e = super::hom::add_coeff(*e, mul_coeff(*c, d));
            }
        }
        HomPoly::from_map(len, acc)
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    /// Number of forests in the closure, including `𝕀`.
    pub fn closure_size(&self) -> usize {
        self.nodes.len()
    }
}
