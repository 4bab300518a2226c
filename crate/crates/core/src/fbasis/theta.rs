use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use rustc_hash::FxHashMap;

use super::{admissible_index, forest_vector};
use crate::error::{Error, Result};
use crate::hpoly::{Letter, Poly, PolyBuilder};
use crate::linalg::MatQ;
use crate::rtmap::{rtm_letter, MapExpr};
use crate::Rational;

/// `Θ(f) = f(x)`.
pub fn theta(f: &MapExpr) -> Result<Poly> {
    let mut acc = PolyBuilder::new();
    for (g, c) in f.iter() {
        acc.add_poly(&rtm_letter(g, Letter::X)?, c);
    }
    Ok(acc.finish())
}

/// Row `i` holds the coordinates of `f_d[i](x)` against `w_{d+1}`.
pub fn theta_matrix(d: usize) -> Result<MatQ> {
    let f = forest_vector(d)?;
    let n = f.len();
    let mut m = MatQ::zeros(n, n);
    for (i, g) in f.iter().enumerate() {
        for (w, c) in rtm_letter(g, Letter::X)?.iter() {
            m.set(i, admissible_index(w), c.clone());
        }
    }
    Ok(m)
}

/// Inverse of the Θ matrix, built once per degree.
fn inverse(d: usize) -> Result<Arc<MatQ>> {
    static CACHE: OnceLock<Mutex<FxHashMap<usize, Arc<MatQ>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().unwrap().get(&d) {
        return Ok(m.clone());
    }
    let inv = Arc::new(theta_matrix(d)?.inverse()?);
    cache.lock().unwrap().insert(d, inv.clone());
    Ok(inv)
}

/// The unique combination of `f_d` entries with `f(x) = p`.
///
/// `p` must be homogeneous of degree `d + 1 ≥ 2` with every word in `xℍy`.
pub fn theta_inv(p: &Poly) -> Result<MapExpr> {
    if p.is_zero() {
        return Ok(MapExpr::zero());
    }
    if let Some((w, _)) = p.iter().find(|(w, _)| !w.in_xhy()) {
        return Err(Error::NotInXHY(w.to_string()));
    }
    let n = p.homogeneous_degree().ok_or(Error::NonHomogeneous)?;
    let d = n - 1;
    let mut coords = vec![Rational::zero(); 1 << (d - 1)];
    for (w, c) in p.iter() {
        coords[admissible_index(w)] = c.clone();
    }
    // p = cᵀ M  ⇒  c = (M⁻¹)ᵀ p, i.e. c_j = Σ_i p_i (M⁻¹)_{ij}.
    let inv = inverse(d)?;
    let forests = forest_vector(d)?;
    let mut out = MapExpr::zero();
    for (j, f) in forests.into_iter().enumerate() {
        let mut c = Rational::zero();
        for (i, pi) in coords.iter().enumerate() {
            if !pi.is_zero() {
                c += pi * inv.get(i, j);
            }
        }
        out.add_term(f, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fbasis::{mat_b, word_vector};
    use crate::linalg::MatF2;
    use num_integer::Integer;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        let dot: MapExpr = "()".parse().unwrap();
        assert_eq!(theta(&dot).unwrap(), p("xy"));
        assert_eq!(theta_inv(&p("xy")).unwrap(), dot);
        assert_eq!(
            theta_inv(&p("xxy + 2xyy")).unwrap(),
            "(())".parse().unwrap()
        );
        assert_eq!(theta_inv(&p("yx")), Err(Error::NotInXHY("yx".into())));
        assert_eq!(theta_inv(&p("xy + xyy")), Err(Error::NonHomogeneous));
    }

    #[test]
    fn round_trips() {
        for d in 1..=8 {
            for f in forest_vector(d).unwrap() {
                let m = MapExpr::forest(f);
                assert_eq!(theta_inv(&theta(&m).unwrap()).unwrap(), m);
            }
            for w in word_vector(d + 1).unwrap().into_iter().step_by(7) {
                let q = Poly::word(w);
                assert_eq!(theta(&theta_inv(&q).unwrap()).unwrap(), q);
            }
        }
        let mixed = p("3 xxyy - 1/2 xyxy + xyyy");
        assert_eq!(theta(&theta_inv(&mixed).unwrap()).unwrap(), mixed);
    }

    #[test]
    fn theta_matrix_mod_two_is_b() {
        for d in 1..=8 {
            let m = theta_matrix(d).unwrap();
            let rows: Vec<Vec<u8>> = (0..m.rows())
                .map(|i| m.row(i).iter().map(|c| c.numer().is_odd() as u8).collect())
                .collect();
            let f2 = MatF2::from_rows(&rows);
            assert_eq!(f2, mat_b(d));
            assert!(f2.det().unwrap());
        }
    }
}
