use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An unordered rooted tree, held as its canonical parenthesis string.
///
/// A vertex is `(` + its children's codes in ascending string order + `)`,
/// so two trees are isomorphic iff their codes are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree(Arc<str>);

/// A finite multiset of trees; the empty forest is the unit `𝕀`.
///
/// Its code is the concatenation of the tree codes in ascending order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Forest(Arc<str>);

/// Splits a concatenation of balanced groups into the groups.
fn top_level_groups(code: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in code.bytes().enumerate() {
        match c {
            b'(' => depth += 1,
            _ => {
                depth -= 1;
                if depth == 0 {
                    out.push(&code[start..=i]);
                    start = i + 1;
                }
            }
        }
    }
    out
}

fn canonicalize_groups(s: &str) -> Result<Vec<String>> {
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    for &c in bytes {
        match c {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced parentheses in `{s}`")));
                }
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character `{}` in forest `{s}`",
                    other as char
                )))
            }
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in `{s}`")));
    }
    let mut groups = Vec::new();
    for g in top_level_groups(s) {
        let inner = canonicalize_groups(&g[1..g.len() - 1])?;
        groups.push(format!("({})", inner.concat()));
    }
    groups.sort();
    Ok(groups)
}

impl Tree {
    /// The single vertex `•`.
    pub fn single() -> Tree {
        Tree(Arc::from("()"))
    }

    pub fn code(&self) -> &str {
        &self.0
    }

    /// Number of vertices.
    pub fn degree(&self) -> usize {
        self.0.len() / 2
    }

    /// Grafts all trees of `f` onto a new root.
    pub fn b_plus(f: &Forest) -> Tree {
        Tree(Arc::from(format!("({})", f.code())))
    }

    /// The forest left after removing the root.
    pub fn root_decompose(&self) -> Forest {
        Forest(Arc::from(&self.0[1..self.0.len() - 1]))
    }

    pub fn into_forest(self) -> Forest {
        Forest(self.0)
    }
}

impl Forest {
    pub fn empty() -> Forest {
        Forest(Arc::from(""))
    }

    pub fn single() -> Forest {
        Tree::single().into_forest()
    }

    pub fn code(&self) -> &str {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn trees(&self) -> Vec<Tree> {
        top_level_groups(&self.0)
            .into_iter()
            .map(|g| Tree(Arc::from(g)))
            .collect()
    }

    pub fn tree_count(&self) -> usize {
        top_level_groups(&self.0).len()
    }

    /// The tree itself when the forest has exactly one tree.
    pub fn as_tree(&self) -> Option<Tree> {
        let g = top_level_groups(&self.0);
        (g.len() == 1).then(|| Tree(self.0.clone()))
    }

    pub fn from_trees<I: IntoIterator<Item = Tree>>(trees: I) -> Forest {
        let mut codes: Vec<Tree> = trees.into_iter().collect();
        codes.sort();
        let s: String = codes.iter().map(|t| t.code()).collect();
        Forest(Arc::from(s))
    }

    /// Disjoint union.
    pub fn mul(&self, other: &Forest) -> Forest {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        Forest::from_trees(self.trees().into_iter().chain(other.trees()))
    }
}

impl From<Tree> for Forest {
    fn from(t: Tree) -> Forest {
        t.into_forest()
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tree> {
        let groups = canonicalize_groups(s.trim())?;
        match <[String; 1]>::try_from(groups) {
            Ok([g]) => Ok(Tree(Arc::from(g))),
            Err(_) => Err(Error::Parse(format!("`{s}` is not a single tree"))),
        }
    }
}

impl FromStr for Forest {
    type Err = Error;

    /// Accepts any balanced string, canonicalizing child order.
    fn from_str(s: &str) -> Result<Forest> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        Ok(Forest(Arc::from(canonicalize_groups(&s)?.concat())))
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("𝕀")
        } else {
            f.write_str(&self.0)
        }
    }
}

pub fn b_plus(f: &Forest) -> Tree {
    Tree::b_plus(f)
}

pub fn root_decompose(t: &Tree) -> Forest {
    t.root_decompose()
}

pub fn forest_mul(f: &Forest, g: &Forest) -> Forest {
    f.mul(g)
}
