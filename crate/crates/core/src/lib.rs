//! Etale covers of the affine line by pointed hyperelliptic curves over
//! finite fields of odd characteristic.
//!
//! A curve `y^2 = f(x)` with `f` monic squarefree of degree `2g + 1` is
//! pointed at its unique point at infinity `P`. The crate decides whether
//! `X \ {P}` is an etale cover of the affine line, builds such covers, and
//! certifies their minimal degree by two independent computations.

pub mod algebra;
pub mod cartier;
pub mod cli;
pub mod covers;
pub mod curve;
pub mod elliptic;
pub mod error;
pub mod linalg;
pub mod moduli;
pub mod report;

pub use error::{Error, Result};
