//! Ranks of the two relation families and of their union.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use super::reference::{c_ref, r_ref};
use super::rows::{kawashima_rows, rtm_rows_of_degree, SparseRow};
use crate::linalg::{rank_integer_rows, MersennePrime, ModEchelon, M31, M61};

/// Largest column count (`2^{k−2}`) ranked exactly over ℚ by default.
pub const EXACT_MAX_COLS: usize = 256;

/// How a rank was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMethod {
    /// Fraction-free elimination over ℤ.
    Exact,
    /// Elimination modulo `2^61 − 1` and `2^31 − 1`, required to agree.
    Modular,
}

/// Relation ranks at one weight, next to the tabulated values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankReport {
    pub k: usize,
    pub r_rtm: usize,
    pub r_kaw: usize,
    pub r_joint: usize,
    #[serde(rename = "R_ref")]
    pub r_ref: Option<usize>,
    #[serde(rename = "C_ref")]
    pub c_ref: Option<usize>,
    #[serde(skip)]
    pub method: Option<RankMethod>,
    /// False only if the two primes disagreed (the larger rank is kept).
    #[serde(skip, default = "yes")]
    pub primes_agree: bool,
    #[serde(skip)]
    pub seconds: f64,
}

impl RankReport {
    /// Both spans coincide.
    pub fn spans_equal(&self) -> bool {
        self.r_rtm == self.r_kaw && self.r_kaw == self.r_joint
    }

    /// `r_rtm` equals the stored `R_k` (true when nothing is stored).
    pub fn matches_reference(&self) -> bool {
        self.r_ref.is_none_or(|r| r == self.r_rtm)
    }
}

fn yes() -> bool {
    true
}

/// Scales to a primitive vector with a positive leading entry, for dedup.
fn primitive(mut row: SparseRow) -> SparseRow {
    let g = row.iter().fold(0i128, |acc, &(_, c)| acc.gcd(&c));
    if g > 1 || row.first().is_some_and(|&(_, c)| c < 0) {
        let s = if row[0].1 < 0 { -g } else { g };
        for (_, c) in row.iter_mut() {
            *c /= s;
        }
    }
    row
}

/// Drops zero rows and rows proportional to an earlier one.
fn distinct(
    rows: impl IntoIterator<Item = SparseRow>,
    seen: &mut FxHashSet<SparseRow>,
) -> Vec<SparseRow> {
    rows.into_iter()
        .filter(|r| !r.is_empty())
        .map(primitive)
        .filter(|r| seen.insert(r.clone()))
        .collect()
}

fn to_bigint_rows(rows: &[SparseRow], cols: usize) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let mut d = vec![BigInt::default(); cols];
            for &(j, c) in r {
                d[j] = BigInt::from(c);
            }
            d
        })
        .collect()
}

fn to_mod<F: MersennePrime>(rows: &[SparseRow], cols: usize) -> Vec<Vec<u64>> {
    rows.iter()
        .map(|r| {
            let mut d = vec![0u64; cols];
            for &(j, c) in r {
                d[j] = c.rem_euclid(F::P as i128) as u64;
            }
            d
        })
        .collect()
}

struct ModRanks<F: MersennePrime> {
    rtm: ModEchelon<F>,
    kaw: ModEchelon<F>,
}

impl<F: MersennePrime> ModRanks<F> {
    fn new(cols: usize) -> Self {
        ModRanks {
            rtm: ModEchelon::new(cols),
            kaw: ModEchelon::new(cols),
        }
    }

    /// Returns `(r_rtm, r_kaw, r_joint)`; the joint rank extends the
    /// rooted-tree-map echelon by the Kawashima rows.
    fn finish(self, kaw_rows: &[SparseRow], cols: usize) -> (usize, usize, usize) {
        let mut joint = self.rtm.clone();
        for chunk in kaw_rows.chunks(256) {
            if joint.rank() == cols {
                break;
            }
            joint.push_batch(to_mod::<F>(chunk, cols));
        }
        (self.rtm.rank(), self.kaw.rank(), joint.rank())
    }
}

/// Ranks at weight `k`; `method = None` picks exact arithmetic when the
/// coordinate space has at most [`EXACT_MAX_COLS`] dimensions.
pub fn rank_report(k: usize, all_forests: bool, method: Option<RankMethod>) -> RankReport {
    let start = Instant::now();
    let cols = if k >= 2 { 1usize << (k - 2) } else { 0 };
    let method = method.unwrap_or(if cols <= EXACT_MAX_COLS {
        RankMethod::Exact
    } else {
        RankMethod::Modular
    });
    let mut report = RankReport {
        k,
        r_rtm: 0,
        r_kaw: 0,
        r_joint: 0,
        r_ref: r_ref(k),
        c_ref: c_ref(k),
        method: Some(method),
        primes_agree: true,
        seconds: 0.0,
    };
    if k < 3 {
        report.seconds = start.elapsed().as_secs_f64();
        return report;
    }
    let mut seen = FxHashSet::default();
    let kaw = distinct(kawashima_rows(k), &mut FxHashSet::default());
    match method {
        RankMethod::Exact => {
            let rtm: Vec<SparseRow> = (1..=k - 2)
                .flat_map(|d| distinct(rtm_rows_of_degree(k, d, all_forests), &mut seen))
                .collect();
            let joint: Vec<SparseRow> = {
                let mut s = seen.clone();
                rtm.iter()
                    .cloned()
                    .chain(distinct(kaw.iter().cloned(), &mut s))
                    .collect()
            };
            report.r_rtm = rank_integer_rows(to_bigint_rows(&rtm, cols), cols);
            report.r_kaw = rank_integer_rows(to_bigint_rows(&kaw, cols), cols);
            report.r_joint = rank_integer_rows(to_bigint_rows(&joint, cols), cols);
        }
        RankMethod::Modular => {
            let mut a = ModRanks::<M61>::new(cols);
            let mut b = ModRanks::<M31>::new(cols);
            for d in 1..=k - 2 {
                let rows = distinct(rtm_rows_of_degree(k, d, all_forests), &mut seen);
                for chunk in rows.chunks(256) {
                    if a.rtm.rank() < cols {
                        a.rtm.push_batch(to_mod::<M61>(chunk, cols));
                    }
                    if b.rtm.rank() < cols {
                        b.rtm.push_batch(to_mod::<M31>(chunk, cols));
                    }
                }
            }
            for chunk in kaw.chunks(256) {
                a.kaw.push_batch(to_mod::<M61>(chunk, cols));
                b.kaw.push_batch(to_mod::<M31>(chunk, cols));
            }
            let ra = a.finish(&kaw, cols);
            let rb = b.finish(&kaw, cols);
            // A rank modulo p never exceeds the rank over ℚ.
            report.primes_agree = ra == rb;
            report.r_rtm = ra.0.max(rb.0);
            report.r_kaw = ra.1.max(rb.1);
            report.r_joint = ra.2.max(rb.2);
        }
    }
    report.seconds = start.elapsed().as_secs_f64();
    report
}

/// Reports for `k = 2..=k_max`.
pub fn rank_table(k_max: usize, all_forests: bool) -> Vec<RankReport> {
    (2..=k_max)
        .map(|k| rank_report(k, all_forests, None))
        .collect()
}

/// `r_rtm = r_kaw = r_joint` at weight `k`.
pub fn verify_span_equality(k: usize) -> bool {
    rank_report(k, false, None).spans_equal()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_table_matches_reference() {
        for r in rank_table(7, false) {
            assert_eq!(Some(r.r_rtm), r.r_ref, "k={}", r.k);
            assert!(r.spans_equal(), "k={}", r.k);
        }
    }

    #[test]
    fn exact_and_modular_agree() {
        for k in 3..=8 {
            let e = rank_report(k, false, Some(RankMethod::Exact));
            let m = rank_report(k, false, Some(RankMethod::Modular));
            assert!(m.primes_agree);
            assert_eq!(
                (e.r_rtm, e.r_kaw, e.r_joint),
                (m.r_rtm, m.r_kaw, m.r_joint),
                "k={k}"
            );
        }
    }

    #[test]
    fn all_forests_give_the_same_span() {
        for k in 3..=7 {
            let a = rank_report(k, false, None);
            let b = rank_report(k, true, None);
            assert_eq!(a.r_rtm, b.r_rtm);
            assert_eq!(b.r_joint, b.r_rtm);
        }
    }

    #[test]
    fn json_shape() {
        let r = rank_report(5, false, None);
        let j = serde_json::to_string(&r).unwrap();
        assert_eq!(
            j,
            r#"{"k":5,"r_rtm":5,"r_kaw":5,"r_joint":5,"R_ref":5,"C_ref":6}"#
        );
    }
}
