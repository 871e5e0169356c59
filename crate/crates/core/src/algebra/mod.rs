//! Exact arithmetic over `Q(i)`: Gaussian rationals, sparse bivariate and
//! dense univariate polynomials, gcd and squarefree decomposition.

mod gaussian;
mod gcd;
mod poly;
mod squarefree;
mod univariate;

pub use gaussian::{GaussianRational, ParseGaussianError};
pub use gcd::{gcd_bivariate, is_squarefree};
pub use poly::{arith, ArithKind, DegreeData, Exponent, Polynomial};
pub use squarefree::{squarefree_decomposition, SquarefreeDecomposition};
pub use univariate::UnivariatePoly;

pub(crate) use gaussian::ratio_to_f64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("gcd of two zero polynomials")]
    BothZero,
}
