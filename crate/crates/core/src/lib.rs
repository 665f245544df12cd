//! Quadratic Poisson brackets on `S(n,d) = Mat(n x d) x Mat(d x n)`, the
//! decoupling maps relating `d` copies of `S(n,1)` to `S(n,d)`, and numerical
//! checks of the identities that hold between them.

pub mod decoupling;
pub mod error;
pub mod factorization;
pub mod tensor_kit;
pub mod brackets;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
