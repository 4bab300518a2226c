//! Unordered rooted trees and forests, grafting, the Connes–Kreimer
//! coproduct, and exhaustive enumeration by degree.

mod coproduct;
mod enumerate;
mod tree;

pub use coproduct::{coproduct, Coproducts, Split, TensorPoly};
pub use enumerate::{enumerate_forests, enumerate_trees, forests_up_to};
pub use tree::{b_plus, forest_mul, root_decompose, Forest, Tree};
