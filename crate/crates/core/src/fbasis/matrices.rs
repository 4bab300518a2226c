use super::word_vector;
use crate::linalg::MatF2;

/// `A_n`, of shape `2^{n−1} × 2^n`:
/// `A_1 = (1 1)`, `A_n = [[A_{n−1}, E, 0], [0, E, A_{n−1}]]` with `E` the
/// identity of size `2^{n−2}`.
pub fn mat_a(n: usize) -> MatF2 {
    assert!(n >= 1, "A_n needs n >= 1");
    if n == 1 {
        return MatF2::from_rows(&[vec![1, 1]]);
    }
    let prev = mat_a(n - 1);
    let h = 1usize << (n - 2);
    let mut m = MatF2::zeros(2 * h, 4 * h);
    m.paste(0, 0, &prev);
    m.paste(0, 2 * h, &MatF2::identity(h));
    m.paste(h, h, &MatF2::identity(h));
    m.paste(h, 2 * h, &prev);
    m
}

/// `E⁽ʲ⁾_d`, of shape `2^d × 2^{d−1}`: column `i` has its single 1 in row
/// `2i` for `j = 1` and row `2i + 1` for `j = 2`.
pub fn mat_e(d: usize, j: u8) -> MatF2 {
    assert!(d >= 1, "E_d needs d >= 1");
    assert!(j == 1 || j == 2, "E^(j) exists for j = 1, 2");
    let cols = 1usize << (d - 1);
    let mut m = MatF2::zeros(2 * cols, cols);
    for i in 0..cols {
        m.set(2 * i + (j as usize - 1), i, true);
    }
    m
}

/// `B_d`: `B_1 = (1)`, then `B_{d−1}(E⁽¹⁾_{d−1})ᵗ` stacked over `B_{d−1}A_{d−1}`.
pub fn mat_b(d: usize) -> MatF2 {
    assert!(d >= 1, "B_d needs d >= 1");
    if d == 1 {
        return MatF2::identity(1);
    }
    let prev = mat_b(d - 1);
    prev.mul(&mat_e(d - 1, 1).transpose())
        .vstack(&prev.mul(&mat_a(d - 1)))
}

/// `T_d`, the permutation with `T_d w_d = τ(w_d)`.
pub fn mat_t(d: usize) -> MatF2 {
    let w = word_vector(d).expect("T_d needs d >= 2");
    let n = w.len();
    let mut m = MatF2::zeros(n, n);
    for (i, v) in w.iter().enumerate() {
        let t = v.dual();
        let j = w.binary_search(&t).expect("τ preserves xHy");
        m.set(i, j, true);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_a() {
        assert_eq!(mat_a(1), MatF2::from_rows(&[vec![1, 1]]));
        assert_eq!(
            mat_a(2),
            MatF2::from_rows(&[vec![1, 1, 1, 0], vec![0, 1, 1, 1]])
        );
        assert_eq!(mat_a(5).shape(), (16, 32));
    }

    #[test]
    fn small_b_and_e() {
        assert_eq!(mat_b(1), MatF2::from_rows(&[vec![1]]));
        assert_eq!(mat_b(2), MatF2::from_rows(&[vec![1, 0], vec![1, 1]]));
        assert_eq!(
            mat_e(2, 1),
            MatF2::from_rows(&[vec![1, 0], vec![0, 0], vec![0, 1], vec![0, 0]])
        );
        assert_eq!(
            mat_e(2, 2),
            MatF2::from_rows(&[vec![0, 0], vec![1, 0], vec![0, 0], vec![0, 1]])
        );
        for d in 1..=8 {
            assert_eq!(mat_b(d).shape(), (1 << (d - 1), 1 << (d - 1)));
        }
    }

    #[test]
    fn t_is_an_involution_realizing_tau() {
        assert_eq!(mat_t(3), MatF2::from_rows(&[vec![0, 1], vec![1, 0]]));
        for d in 2..=8 {
            let t = mat_t(d);
            assert!(t.mul(&t).is_identity());
            let w = word_vector(d).unwrap();
            for (i, v) in w.iter().enumerate() {
                let j = (0..w.len()).find(|&j| t.get(i, j)).unwrap();
                assert_eq!(w[j], v.dual());
            }
        }
    }
}
