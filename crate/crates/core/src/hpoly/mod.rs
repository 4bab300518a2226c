//! The free algebra `ℍ = ℚ⟨x, y⟩`: words, polynomials, the automorphism
//! `φ`, the anti-automorphism `τ`, one-sided multiplications, the
//! z-coding of compositions and the derivations `∂_n`.

mod ops;
mod poly;
mod word;

pub use ops::{
    concat, del_n, del_n_of_x, is_admissible, is_h1, left_div_x, left_mul, phi, right_div_y,
    right_mul, tau, z_decode, z_encode, z_letter, Composition,
};
pub use poly::{fmt_rational, parse_rational, Poly, PolyBuilder};
pub use word::{Letter, Word};
