//! A numerical oracle for multiple zeta values.
//!
//! Everything is evaluated at `1/2`, where the series decay geometrically,
//! in fixed-point integers with `bits` fractional bits. `ζ(w)` is assembled
//! from the split of its iterated integral at `1/2`:
//! `ζ(u₁…uₙ) = Σ_j Li_{τ(u₁…u_j)}(1/2) · Li_{u_{j+1}…uₙ}(1/2)`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::hpoly::{z_decode, z_encode, Composition, Poly, Word};

/// Target absolute error and the working precision used to reach it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionSpec {
    pub target: f64,
    pub bits: u32,
}

impl PrecisionSpec {
    /// At least 128 bits and at least twice the bits the target implies.
    pub fn new(target: f64) -> PrecisionSpec {
        assert!(
            target > 0.0 && target.is_finite(),
            "target error must be positive"
        );
        let needed = (-target.log2()).ceil().max(0.0) as u32;
        PrecisionSpec {
            target,
            bits: (2 * needed).max(128),
        }
    }

    pub fn with_bits(self, bits: u32) -> PrecisionSpec {
        PrecisionSpec {
            bits: bits.max(self.bits),
            ..self
        }
    }

    fn one(&self) -> BigInt {
        BigInt::from(1u8) << self.bits
    }

    fn as_f64(&self, x: &BigInt) -> f64 {
        let keep = 100.min(self.bits);
        let y = x >> (self.bits - keep);
        y.to_f64().unwrap() / 2f64.powi(keep as i32)
    }
}

impl Default for PrecisionSpec {
    fn default() -> Self {
        PrecisionSpec::new(1e-10)
    }
}

/// Upper bound on `Σ_{m>n} 2^{−m} m^{depth−1}`.
fn tail_bound(n: usize, depth: usize) -> f64 {
    let e = depth.saturating_sub(1) as i32;
    let q = 0.5 * (1.0 + 1.0 / (n as f64 + 1.0)).powi(e);
    if q >= 1.0 {
        return f64::INFINITY;
    }
    let first = 2f64.powi(-(n as i32 + 1)) * (n as f64 + 1.0).powi(e);
    first / (1.0 - q)
}

/// Smallest truncation keeping the tail below `err`.
fn terms_for(err: f64, depth: usize) -> usize {
    let mut n = 8;
    while tail_bound(n, depth) > err {
        n += 1;
    }
    n
}

/// `Li_c(1/2)` scaled by `2^bits`, with truncation error below `err`.
fn li_half_fixed(parts: &[u32], prec: &PrecisionSpec, err: f64) -> BigInt {
    let one = prec.one();
    if parts.is_empty() {
        return one;
    }
    let n = terms_for(err, parts.len());
    let powers = |k: u32| -> Vec<BigInt> {
        (0..=n)
            .map(|m| {
                if m == 0 {
                    BigInt::zero()
                } else {
                    BigInt::from(m).pow(k)
                }
            })
            .collect()
    };
    // cum[m] = Σ_{j ≤ m} (innermost levels), starting from the constant 1.
    let mut cum: Vec<BigInt> = vec![one; n + 1];
    for (level, &k) in parts.iter().enumerate().rev() {
        let pw = powers(k);
        let top = level == 0;
        let mut next = vec![BigInt::zero(); n + 1];
        let mut run = BigInt::zero();
        for m in 1..=n {
            let inner = if level + 1 == parts.len() {
                &cum[0]
            } else {
                &cum[m - 1]
            };
            let mut term = inner / &pw[m];
            if top {
                term >>= m;
            }
            run += term;
            next[m] = run.clone();
        }
        cum = next;
    }
    cum[n].clone()
}

/// `Li_c(1/2) = Σ_{m₁>…>m_r≥1} 2^{−m₁} / ∏ mᵢ^{kᵢ}`.
pub fn li_half(c: &Composition, prec: &PrecisionSpec) -> f64 {
    prec.as_f64(&li_half_fixed(c.parts(), prec, prec.target / 4.0))
}

/// `Li_w(1/2)` for a word ending in `y` (or empty), cached per call site.
struct LiCache<'a> {
    prec: &'a PrecisionSpec,
    err: f64,
    map: FxHashMap<Word, BigInt>,
}

impl LiCache<'_> {
    fn get(&mut self, w: Word) -> BigInt {
        if let Some(v) = self.map.get(&w) {
            return v.clone();
        }
        let c = z_decode(&w).expect("ends in y");
        let v = li_half_fixed(c.parts(), self.prec, self.err);
        self.map.insert(w, v.clone());
        v
    }
}

fn zeta_fixed_cached(w: &Word, cache: &mut LiCache<'_>) -> Result<BigInt> {
    if !w.is_admissible() {
        return Err(Error::NotAdmissible(w.to_string()));
    }
    let n = w.len();
    let mut acc = BigInt::zero();
    for j in 0..=n {
        let a = cache.get(w.prefix(j).dual());
        let b = cache.get(w.suffix(j));
        acc += a * b;
    }
    Ok(acc >> cache.prec.bits)
}

fn cache_for(prec: &PrecisionSpec, max_len: usize) -> LiCache<'_> {
    // Each ζ is a sum of n + 1 products of values in [0, 1].
    let err = prec.target / (4.0 * (max_len as f64 + 1.0));
    LiCache {
        prec,
        err,
        map: FxHashMap::default(),
    }
}

/// `ζ(w)` for an admissible word.
pub fn zeta_num(w: &Word, prec: &PrecisionSpec) -> Result<f64> {
    let mut cache = cache_for(prec, w.len());
    Ok(prec.as_f64(&zeta_fixed_cached(w, &mut cache)?))
}

/// `ζ(k₁, …, k_r)` for an admissible composition.
pub fn zeta_composition(c: &Composition, prec: &PrecisionSpec) -> Result<f64> {
    zeta_num(&z_encode(c), prec)
}

/// `Σ c_w ζ(w)` for a polynomial of admissible words without constant term.
pub fn zeta_of_poly(p: &Poly, prec: &PrecisionSpec) -> Result<f64> {
    if let Some(w) = p.words().find(|w| w.is_empty() || !w.is_admissible()) {
        return Err(Error::NotAdmissible(w.to_string()));
    }
    let mut cache = cache_for(prec, p.max_degree());
    let mut acc = num_rational::BigRational::zero();
    for (w, c) in p.iter() {
        let z = zeta_fixed_cached(w, &mut cache)?;
        acc += c * num_rational::BigRational::from_integer(z);
    }
    let scaled = acc.numer() / acc.denom();
    Ok(prec.as_f64(&scaled))
}

/// `|Σ c_w ζ(w)| ≤ target · (1 + Σ |c_w|)`.
pub fn relation_check_numeric(p: &Poly, prec: &PrecisionSpec) -> Result<bool> {
    let v = zeta_of_poly(p, prec)?;
    let mass: f64 = p
        .iter()
        .map(|(_, c)| c.abs().to_f64().unwrap_or(f64::INFINITY))
        .sum();
    Ok(v.abs() <= prec.target * (1.0 + mass))
}

/// `value ± target`, with as many decimals as the target supports.
pub fn format_with_error(value: f64, prec: &PrecisionSpec) -> String {
    let digits = (-prec.target.log10()).ceil().max(0.0) as usize;
    format!("{value:.digits$} ± {:e}", prec.target)
}
