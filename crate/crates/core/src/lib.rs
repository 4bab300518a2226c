//! Rooted tree maps on the free algebra ℚ⟨x,y⟩ and the linear relations
//! among multiple zeta values they produce.
//!
//! The `parallel` feature (on by default) runs batch work on the current
//! rayon pool; without it every loop is sequential. Results never depend on
//! the schedule.

pub mod error;
pub mod fbasis;
pub mod forest;
pub mod hpoly;
pub mod kawa;
pub mod linalg;
pub mod mzvnum;
mod par;
pub mod quasi;
pub mod rtmap;

pub use error::{Error, Result};
pub use forest::{coproduct, Forest, TensorPoly, Tree};
pub use hpoly::{Composition, Letter, Poly, Word};
pub use rtmap::{rtm_apply, rtm_letter, MapExpr};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;
