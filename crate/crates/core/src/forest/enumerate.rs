use super::tree::{Forest, Tree};

/// All forests of each degree `0..=max`, canonical and sorted by code.
pub fn forests_up_to(max: usize) -> Vec<Vec<Forest>> {
    let mut forests: Vec<Vec<Forest>> = vec![vec![Forest::empty()]];
    let mut trees: Vec<Vec<Tree>> = vec![Vec::new()];
    for d in 1..=max {
        let mut td: Vec<Tree> = forests[d - 1].iter().map(Tree::b_plus).collect();
        td.sort();
        trees.push(td);
        // All trees of degree <= d, indexed; multisets are chosen with
        // non-increasing index so each appears once.
        let pool: Vec<&Tree> = trees[1..=d].iter().flatten().collect();
        let mut out = Vec::new();
        let mut chosen: Vec<&Tree> = Vec::new();
        multisets(&pool, pool.len(), d, &mut chosen, &mut out);
        out.sort();
        forests.push(out);
    }
    forests
}

fn multisets<'a>(
    pool: &[&'a Tree],
    limit: usize,
    remaining: usize,
    chosen: &mut Vec<&'a Tree>,
    out: &mut Vec<Forest>,
) {
    if remaining == 0 {
        out.push(Forest::from_trees(chosen.iter().map(|t| (*t).clone())));
        return;
    }
    for i in (0..limit).rev() {
        let t = pool[i];
        if t.degree() <= remaining {
            chosen.push(t);
            multisets(pool, i + 1, remaining - t.degree(), chosen, out);
            chosen.pop();
        }
    }
}

/// All rooted trees with `d` vertices, sorted by code.
pub fn enumerate_trees(d: usize) -> Vec<Tree> {
    if d == 0 {
        return Vec::new();
    }
    let mut t: Vec<Tree> = forests_up_to(d - 1)
        .pop()
        .unwrap()
        .iter()
        .map(Tree::b_plus)
        .collect();
    t.sort();
    t
}

/// All rooted forests with `d` vertices, sorted by code.
pub fn enumerate_forests(d: usize) -> Vec<Forest> {
    forests_up_to(d).pop().unwrap()
}
