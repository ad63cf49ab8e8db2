//! Finite fields, dense polynomials, and the factorization-flavoured
//! primitives the rest of the crate needs.

pub mod factor;
pub mod field;
pub mod parse;
pub mod poly;

pub use factor::{
    antiderivative, is_irreducible, is_squarefree, pth_root_in_quotient, roots, splitting_field,
    Embedding, SplittingField,
};
pub use field::{Elem, Field};
pub use parse::{parse_elem, parse_poly};
pub use poly::Poly;
