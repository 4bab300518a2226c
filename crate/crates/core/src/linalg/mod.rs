//! Exact linear algebra: GF(2) bit matrices, rational matrices with
//! fraction-free rank, and echelon forms over Mersenne prime fields.

mod gf2;
mod matq;
mod modp;

pub use gf2::{det_f2, MatF2};
pub(crate) use matq::rank_integer_rows;
pub use matq::{kernel_q, rank_q, rref, solve_q, MatQ, RowEchelonQ};
pub use modp::{rank_mod_sparse, MersennePrime, ModEchelon, M31, M61};
