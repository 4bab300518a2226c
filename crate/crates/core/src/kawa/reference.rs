//! Reference relation counts for weights 2 through 13.
//!
//! `R` is the number of independent relations spanned by rooted tree maps;
//! `C` is the conjectured total number of linear relations among MZVs of
//! that weight. Both are stored values, not derived here.

pub const MIN_K: usize = 2;
pub const MAX_K: usize = 13;

const R: [usize; 12] = [0, 1, 2, 5, 10, 23, 46, 98, 200, 413, 838, 1713];
const C: [usize; 12] = [0, 1, 3, 6, 14, 29, 60, 123, 249, 503, 1012, 2032];

/// Stored `R_k`, if `k` is tabulated.
pub fn r_ref(k: usize) -> Option<usize> {
    k.checked_sub(MIN_K).and_then(|i| R.get(i)).copied()
}

/// Stored `C_k`, if `k` is tabulated.
pub fn c_ref(k: usize) -> Option<usize> {
    k.checked_sub(MIN_K).and_then(|i| C.get(i)).copied()
}
