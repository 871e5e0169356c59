//! Bivariate polynomials, their level curves, and functions constant on them.
//!
//! The crate decides whether a polynomial `P(z1, z2)` is a proper power as a
//! formal power series, certifies irreducibility of `C^n - P`, decomposes
//! `f = h(P)` exactly, and checks numerically that `f` is constant on the
//! level curves `P = c` exactly when such an `h` exists.

pub mod algebra;
pub mod cli;
pub mod decompose;
pub mod leaf;
pub mod numeric;
pub mod power;

pub use algebra::{GaussianRational, Polynomial, UnivariatePoly};
